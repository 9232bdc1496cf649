#!/usr/bin/env -S uv run --script
# /// script
# requires-python = ">=3.12"
# dependencies = [
#   "bcd-sat",
# ]
# ///
"""Main entry point for the bcd-sat solver."""

from bcdsat.cli import main

if __name__ == "__main__":
    main()
