"""Module entry point: ``python -m chain_of_scheduling``."""

import sys

from chain_of_scheduling.cli.app import main

if __name__ == "__main__":
    sys.exit(main())
