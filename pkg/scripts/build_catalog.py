#!/usr/bin/env python3
"""Write the shipped group catalog as one JSON definition file per group."""

import argparse
from pathlib import Path

from twistspec.catalog import shipped_catalog, write_catalog


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("catalog"),
                        help="target directory (default ./catalog)")
    args = parser.parse_args()
    paths = write_catalog(args.out)
    print(f"wrote {len(paths)} of {len(shipped_catalog())} definitions "
          f"to {args.out}/")


if __name__ == "__main__":
    main()
