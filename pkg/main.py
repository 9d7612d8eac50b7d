import logging
import sys

from src.cli.commands import run
from src.config.settings import get_settings

logging.basicConfig(
    level=get_settings().log_level,
    format='%(asctime)s - %(levelname)s - %(message)s',
    stream=sys.stderr,
)


def main() -> int:
    """
    Entry point for the loop engine command line.
    Run `python main.py --help` for the list of subcommands.
    """
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
