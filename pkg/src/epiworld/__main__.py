"""Module entry point for `python -m epiworld`."""

from .cli import script

if __name__ == "__main__":
    script()
