"""
Entry point for python -m polarmod
"""
import logging
import sys

from .dependency_checker import DependencyChecker
from .utils.log_helpers import configure_logging, log_message


def main():
    missing = DependencyChecker.missing_required()
    if missing:
        configure_logging('ERROR')
        DependencyChecker.log_dependency_status()
        for package in missing:
            log_message(f'Missing required package {package}. Install it with: '
                        f'{DependencyChecker.get_install_command(package)}', logging.ERROR)
        return 2

    from .cli import main as cli_main
    return cli_main()


if __name__ == '__main__':
    sys.exit(main())
