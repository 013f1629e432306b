#!/usr/bin/env python3
"""Build data/compas.csv from the ProPublica two-year recidivism table.

The raw table is read either from a local path or from the copy bundled in
the `responsibly` wheel on PyPI:

    pip download --no-deps responsibly==0.1.2 -d /tmp/wheels
    python3 tools/datasets/prepare_compas.py --wheel /tmp/wheels/responsibly-0.1.2-py3-none-any.whl

Rows are filtered the usual ProPublica way (screening within 30 days of
arrest, known recidivism flag, ordinary charge degree, available score).
Race is regrouped into Caucasian / African-American / Other.
"""
import argparse
import csv
import io
import sys
import zipfile

MEMBER = "responsibly/dataset/compas/compas-scores-two-years.csv"
FEATURES = ["sex", "age_cat", "race", "juv_fel_count", "juv_misd_count",
            "juv_other_count", "priors_count", "c_charge_degree"]
LABEL = "two_year_recid"


def read_rows(args):
    if args.csv:
        with open(args.csv, newline="", encoding="utf-8") as fh:
            return list(csv.DictReader(fh))
    with zipfile.ZipFile(args.wheel) as zf:
        text = zf.read(MEMBER).decode("utf-8")
    return list(csv.DictReader(io.StringIO(text)))


def keep(row):
    try:
        days = int(row["days_b_screening_arrest"])
    except ValueError:
        return False
    return (-30 <= days <= 30 and row["is_recid"] != "-1"
            and row["c_charge_degree"] != "O" and row["score_text"] != "N/A")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--csv", help="path to compas-scores-two-years.csv")
    src.add_argument("--wheel", help="path to a responsibly wheel")
    ap.add_argument("--out", default="data/compas.csv")
    args = ap.parse_args()

    rows = [r for r in read_rows(args) if keep(r)]
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(FEATURES + [LABEL])
        for r in rows:
            race = r["race"] if r["race"] in ("Caucasian", "African-American") else "Other"
            vals = [r[f] for f in FEATURES]
            vals[FEATURES.index("race")] = race
            w.writerow(vals + [r[LABEL]])
    print(f"wrote {len(rows)} rows to {args.out}", file=sys.stderr)


if __name__ == "__main__":
    main()
