"""Module entry point for the CLI."""

import sys

from chain_of_scheduling.cli.app import main

if __name__ == "__main__":
    sys.exit(main())
