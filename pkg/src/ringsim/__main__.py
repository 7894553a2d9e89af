"""Module entry point so `python -m ringsim` matches the `ringsim` script."""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
