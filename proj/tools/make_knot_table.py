#!/usr/bin/env python3
"""Regenerate data/knots-up-to-9.jsonl from the KnotInfo CSV dump.

Usage: make_knot_table.py path/to/knotinfo_data_complete.csv > data/knots-up-to-9.jsonl

The CSV ships in the `database_knotinfo` pip package.
"""
import csv
import json
import sys

MAX_CROSSINGS = 9


def main() -> int:
    csv.field_size_limit(10**9)
    with open(sys.argv[1], newline="") as fh:
        rows = csv.DictReader(fh, delimiter="|")
        for row in rows:
            name = row["name"]
            if "_" not in name or name == "0_1":
                continue
            try:
                crossings = int(row["crossing_number"])
            except ValueError:
                continue
            if crossings > MAX_CROSSINGS:
                continue
            entry = {
                "name": name,
                "pd": json.loads(row["pd_notation"]),
                "loops": 0,
                "rasmussen": int(row["rasmussen_invariant"]),
                "positive": row["positive"] == "Y",
            }
            print(json.dumps(entry, separators=(",", ":")))
    return 0


if __name__ == "__main__":
    sys.exit(main())
