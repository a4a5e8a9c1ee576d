"""Entry point for python -m heterocut."""

from heterocut.cli import main

if __name__ == "__main__":
    main()
