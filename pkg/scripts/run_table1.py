"""Run the Table 1 battery and print it next to the expected values.

    python3 scripts/run_table1.py [--group 24_12 72_42 ...] [--format json]

Exit status 3 if a verified row disagrees, 0 otherwise.
"""
import sys

from helpx.cli import main

if __name__ == "__main__":
    sys.exit(main(["table1", *sys.argv[1:]]))
