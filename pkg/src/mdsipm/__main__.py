"""Entry point for mdsipm - runs as python -m mdsipm or via console script."""

from .cli import run_cli


def main() -> None:
    """Run the CLI.

    Raises:
        SystemExit: Always, carrying the command's exit code.
    """
    raise SystemExit(run_cli())


if __name__ == "__main__":
    main()
