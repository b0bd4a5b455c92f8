"""Module entry point for the e2e pipeline."""

import sys

from chain_of_scheduling.e2e.pipeline import main

if __name__ == "__main__":
    sys.exit(main())
