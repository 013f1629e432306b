#!/usr/bin/env python3
"""Build data/taiwan_credit.csv from the UCI "default of credit card clients" table.

Input is the table exported to CSV (the UCI .xls saved as CSV, or the common
UCI_Credit_Card.csv mirror). A leading title row, as in the .xls export, is
skipped. Codes are turned into the labels used by data/schemas/taiwan_credit.json:

    sex        1 male, 2 female
    education  1 graduate school, 2 university, 3 high school, anything else others
    marriage   1 married, 2 single, anything else others
    age        <35 | >=35
    PAY_0 (September) .. PAY_6 (April) become pay_sep .. pay_apr; the bill and
    payment amounts are renamed the same way.

    python3 tools/datasets/prepare_taiwan.py --csv default_of_credit_card_clients.csv
"""
import argparse
import csv

MONTHS = ["sep", "aug", "jul", "jun", "may", "apr"]
PAY = ["PAY_0", "PAY_2", "PAY_3", "PAY_4", "PAY_5", "PAY_6"]
LABELS = ["default payment next month", "default.payment.next.month", "Y"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--csv", required=True)
    ap.add_argument("--out", default="data/taiwan_credit.csv")
    args = ap.parse_args()

    with open(args.csv, newline="", encoding="utf-8-sig") as fh:
        lines = list(csv.reader(fh))
    if "LIMIT_BAL" not in lines[0]:
        lines = lines[1:]
    header = lines[0]
    label = next(name for name in LABELS if name in header)
    out_header = (["limit_bal", "sex", "education", "marriage", "age"]
                  + [f"pay_{m}" for m in MONTHS] + [f"bill_amt_{m}" for m in MONTHS]
                  + [f"pay_amt_{m}" for m in MONTHS] + ["default"])
    n = 0
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(out_header)
        for cells in lines[1:]:
            if not cells:
                continue
            r = dict(zip(header, cells))
            edu = {"1": "graduate school", "2": "university", "3": "high school"}
            row = [r["LIMIT_BAL"],
                   "male" if r["SEX"] == "1" else "female",
                   edu.get(r["EDUCATION"], "others"),
                   {"1": "married", "2": "single"}.get(r["MARRIAGE"], "others"),
                   "<35" if float(r["AGE"]) < 35 else ">=35"]
            row += [r[p] for p in PAY]
            row += [r[f"BILL_AMT{i}"] for i in range(1, 7)]
            row += [r[f"PAY_AMT{i}"] for i in range(1, 7)]
            row.append(str(int(float(r[label]))))
            w.writerow(row)
            n += 1
    print(f"wrote {n} rows to {args.out}")


if __name__ == "__main__":
    main()
