"""Allow `python -m sawcascade ...` to behave like the installed script."""

from sawcascade.cli import main

if __name__ == "__main__":
    main()
