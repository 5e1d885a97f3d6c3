import sys

from src.api.cli import main

if __name__ == "__main__":
    sys.exit(main())
