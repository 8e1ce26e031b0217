#!/usr/bin/env python3
"""Convert a cardiotoxicity (CTRCD) export to fnclass long format.

The column names of the public export are not assumed: pass them explicitly.
Two layouts are supported:

  long:  one row per (patient, time)  -> --id-col --label-col --time-col --value-col
  wide:  one row per patient          -> --id-col --label-col --value-cols c1,c2,... [--times t1,t2,...]

Labels are mapped with --positive (values meaning CTRCD) and optionally
--negative; anything else is an error unless --drop-unknown is given.
"""

import argparse
import csv
import sys


def parse_args(argv):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("input")
    ap.add_argument("-o", "--output", default="-")
    ap.add_argument("--delimiter", default=",")
    ap.add_argument("--id-col", required=True)
    ap.add_argument("--label-col", required=True)
    ap.add_argument("--positive", required=True, help="comma-separated label values meaning positive")
    ap.add_argument("--negative", help="comma-separated label values meaning negative (default: everything else)")
    ap.add_argument("--drop-unknown", action="store_true")
    ap.add_argument("--time-col")
    ap.add_argument("--value-col")
    ap.add_argument("--value-cols", help="wide layout: measurement columns in time order")
    ap.add_argument("--times", help="wide layout: time of each value column (default 0,1,2,...)")
    a = ap.parse_args(argv)
    if bool(a.value_cols) == bool(a.time_col or a.value_col):
        ap.error("give either --time-col/--value-col (long) or --value-cols (wide)")
    if not a.value_cols and not (a.time_col and a.value_col):
        ap.error("long layout needs both --time-col and --value-col")
    return a


def label_of(raw, pos, neg):
    raw = raw.strip()
    if raw in pos:
        return 1
    if neg is None or raw in neg:
        return 0
    return None


def number(text, where):
    try:
        return float(text)
    except ValueError:
        sys.exit(f"{where}: not a number: {text!r}")


def main(argv=None):
    a = parse_args(argv)
    pos = {s.strip() for s in a.positive.split(",")}
    neg = None if a.negative is None else {s.strip() for s in a.negative.split(",")}

    rows = []
    with open(a.input, newline="") as fh:
        reader = csv.DictReader(fh, delimiter=a.delimiter)
        for lineno, rec in enumerate(reader, start=2):
            lab = label_of(rec[a.label_col], pos, neg)
            if lab is None:
                if a.drop_unknown:
                    continue
                sys.exit(f"line {lineno}: unknown label {rec[a.label_col]!r}")
            pid = rec[a.id_col].strip()
            if a.value_cols:
                cols = [c.strip() for c in a.value_cols.split(",")]
                times = ([number(t, "--times") for t in a.times.split(",")] if a.times
                         else [float(i) for i in range(len(cols))])
                if len(times) != len(cols):
                    sys.exit("--times and --value-cols differ in length")
                vals = [(t, rec[c].strip()) for t, c in zip(times, cols)]
                if any(v in ("", "NA") for _, v in vals):
                    continue  # incomplete follow-up
                for t, v in vals:
                    rows.append((pid, lab, t, number(v, f"line {lineno}")))
            else:
                v = rec[a.value_col].strip()
                if v in ("", "NA"):
                    continue
                rows.append((pid, lab, number(rec[a.time_col], f"line {lineno}"), number(v, f"line {lineno}")))

    rows.sort(key=lambda r: (r[0], r[2]))
    out = sys.stdout if a.output == "-" else open(a.output, "w", newline="")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["id", "label", "t", "value"])
    for pid, lab, t, v in rows:
        w.writerow([pid, lab, repr(t), repr(v)])
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    main()
