#!/usr/bin/env python3
"""Download UCI datasets into data/ in the loader's CSV convention.

The repository bundles Iris; Ionosphere is fetched on demand with this
script because its license asks for distribution through the archive.
The file is stored as plain CSV with the class label in the last column
('g'/'b' strings are fine: the loader maps string labels to contiguous
integers by first appearance).

Usage:
    python3 scripts/fetch_uci.py ionosphere
    python3 scripts/fetch_uci.py ionosphere --dest /tmp/ionosphere.csv
"""

from __future__ import annotations

import argparse
import sys
import urllib.request
from pathlib import Path

_BASE = "https://archive.ics.uci.edu/ml/machine-learning-databases"

DATASETS = {
    "ionosphere": {
        "url": f"{_BASE}/ionosphere/ionosphere.data",
        "columns": 35,  # 34 features + class string
        "label_column": 34,
    },
    "iris": {
        "url": f"{_BASE}/iris/iris.data",
        "columns": 5,  # 4 features + species string
        "label_column": 4,
    },
}


def fetch(name: str, dest: Path, timeout: float) -> int:
    meta = DATASETS[name]
    print(f"downloading {meta['url']}")
    with urllib.request.urlopen(meta["url"], timeout=timeout) as response:
        text = response.read().decode("utf-8")
    rows = [line for line in text.splitlines() if line.strip()]
    bad = [line for line in rows if line.count(",") != meta["columns"] - 1]
    if bad:
        raise SystemExit(f"unexpected format: {len(bad)} rows do not have {meta['columns']} cells")
    dest.parent.mkdir(parents=True, exist_ok=True)
    dest.write_text("\n".join(rows) + "\n", encoding="utf-8")
    print(f"wrote {len(rows)} rows to {dest} (label column {meta['label_column']})")
    return len(rows)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("dataset", choices=sorted(DATASETS))
    parser.add_argument("--dest", default=None, help="output path (default: data/<name>.csv)")
    parser.add_argument("--timeout", type=float, default=30.0)
    args = parser.parse_args(argv)

    dest = Path(args.dest) if args.dest else Path(__file__).resolve().parents[1] / "data" / f"{args.dataset}.csv"
    try:
        fetch(args.dataset, dest, args.timeout)
    except OSError as exc:
        print(f"download failed: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
