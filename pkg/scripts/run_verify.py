#!/usr/bin/env python3
"""Run the full verification suite; forwards any CLI flags.

Examples:
    python scripts/run_verify.py
    python scripts/run_verify.py --config configs/default.json --out out/verify
"""

import sys

from waveline.cli import main

if __name__ == "__main__":
    sys.exit(main(["verify", *sys.argv[1:]]))
