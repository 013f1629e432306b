#!/usr/bin/env python3
"""Build data/adult.csv from the UCI Adult census files.

The raw files (adult.data, adult.test) are read from a directory or from the
copies bundled in the `responsibly` wheel on PyPI:

    pip download --no-deps responsibly==0.1.2 -d /tmp/wheels
    python3 tools/datasets/prepare_adult.py --wheel /tmp/wheels/responsibly-0.1.2-py3-none-any.whl

Both files are concatenated and rows with a missing value ("?") dropped,
which leaves 45222 rows. Categorical features are regrouped:

    age            <25 | 25-60 | >60         (25 and 60 fall in 25-60)
    workclass      private | non-private
    marital-status married | never-married | other
    occupation     office | heavy-work | service | other
    native-country US | non-US

fnlwgt and education (duplicated by educational-num) are not kept.
"""
import argparse
import csv
import io
import os
import zipfile

PREFIX = "responsibly/dataset/adult/"
RAW = ["age", "workclass", "fnlwgt", "education", "educational-num", "marital-status",
       "occupation", "relationship", "race", "gender", "capital-gain", "capital-loss",
       "hours-per-week", "native-country", "income"]
OUT = ["age", "workclass", "educational-num", "marital-status", "occupation",
       "relationship", "race", "gender", "capital-gain", "capital-loss",
       "hours-per-week", "native-country", "income"]

OCCUPATION = {
    "Adm-clerical": "office", "Exec-managerial": "office", "Prof-specialty": "office",
    "Sales": "office", "Tech-support": "office",
    "Craft-repair": "heavy-work", "Farming-fishing": "heavy-work",
    "Handlers-cleaners": "heavy-work", "Machine-op-inspct": "heavy-work",
    "Transport-moving": "heavy-work",
    "Other-service": "service", "Priv-house-serv": "service", "Protective-serv": "service",
    "Armed-Forces": "other",
}


def raw_text(args, name):
    if args.dir:
        with open(os.path.join(args.dir, name), encoding="utf-8") as fh:
            return fh.read()
    with zipfile.ZipFile(args.wheel) as zf:
        return zf.read(PREFIX + name).decode("utf-8")


def records(text):
    for line in io.StringIO(text):
        line = line.strip()
        if not line or line.startswith("|"):
            continue
        cells = [c.strip() for c in line.split(",")]
        if len(cells) != len(RAW):
            continue
        yield dict(zip(RAW, cells))


def recode(r):
    age = int(r["age"])
    r["age"] = "<25" if age < 25 else (">60" if age > 60 else "25-60")
    r["workclass"] = "private" if r["workclass"] == "Private" else "non-private"
    ms = r["marital-status"]
    r["marital-status"] = ("married" if ms.startswith("Married")
                           else "never-married" if ms == "Never-married" else "other")
    r["occupation"] = OCCUPATION[r["occupation"]]
    r["native-country"] = "US" if r["native-country"] == "United-States" else "non-US"
    r["income"] = r["income"].rstrip(".")
    return r


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--dir", help="directory holding adult.data and adult.test")
    src.add_argument("--wheel", help="path to a responsibly wheel")
    ap.add_argument("--out", default="data/adult.csv")
    args = ap.parse_args()

    rows = []
    for name in ("adult.data", "adult.test"):
        for r in records(raw_text(args, name)):
            if any(v == "?" for v in r.values()):
                continue
            rows.append(recode(r))
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(OUT)
        for r in rows:
            w.writerow([r[c] for c in OUT])
    print(f"wrote {len(rows)} rows to {args.out}")


if __name__ == "__main__":
    main()
