#!/usr/bin/env python3
"""Build data/lsac.csv from the LSAC bar passage study table.

Expects the cleaned table distributed with the fairness-datasets survey
(law_school_clean.csv, columns decile1b, decile3, lsat, ugpa, zfygpa, zgpa,
fulltime, fam_inc, male, race, tier, pass_bar) or the original
bar_pass_prediction.csv, whose race1 column is then used. Race becomes
White / Non-White; fulltime 1 is full-time and 2 part-time.

    python3 tools/datasets/prepare_lsac.py --csv law_school_clean.csv
"""
import argparse
import csv

NUMERIC = ["decile1b", "decile3", "lsat", "ugpa", "zfygpa", "zgpa", "fam_inc", "tier"]
OUT = ["decile1b", "decile3", "lsat", "ugpa", "zfygpa", "zgpa", "fulltime", "fam_inc",
       "male", "race", "tier", "pass_bar"]


def as_int_text(v):
    return str(int(float(v))) if v not in ("", "NA") else ""


def race_group(r):
    if "race1" in r:
        v = r["race1"].strip().lower()
        return "" if v in ("", "na") else ("White" if v == "white" else "Non-White")
    v = r.get("race", "").strip()
    if v in ("", "NA"):
        return ""
    if v in ("White", "Non-White"):
        return v
    # numeric coding of the original study: 7 is white
    return "White" if as_int_text(v) == "7" else "Non-White"


def male_flag(r):
    if r.get("male", "") not in ("", "NA", None):
        return as_int_text(r["male"])
    g = r.get("gender", "").strip().lower()
    return {"male": "1", "female": "0"}.get(g, "")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--csv", required=True)
    ap.add_argument("--out", default="data/lsac.csv")
    args = ap.parse_args()

    with open(args.csv, newline="", encoding="utf-8-sig") as fh:
        rows = list(csv.DictReader(fh))
    n = 0
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(OUT)
        for r in rows:
            ft = {"1": "full-time", "2": "part-time"}.get(as_int_text(r.get("fulltime", "")), "")
            out = {c: r.get(c, "") for c in NUMERIC}
            out["fulltime"] = ft
            out["male"] = male_flag(r)
            out["race"] = race_group(r)
            out["pass_bar"] = as_int_text(r.get("pass_bar", ""))
            w.writerow([out[c] for c in OUT])
            n += 1
    print(f"wrote {n} rows to {args.out} (rows with empty cells are dropped on load)")


if __name__ == "__main__":
    main()
