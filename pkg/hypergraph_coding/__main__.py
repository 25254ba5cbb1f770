"""Main entry point for the hypergraph-coding command line."""

import sys

import dotenv

from hypergraph_coding.utils import cli


def main() -> None:
    """Load ``.env`` and run the command line."""
    dotenv.load_dotenv()
    sys.exit(cli.main())


if __name__ == "__main__":
    main()
