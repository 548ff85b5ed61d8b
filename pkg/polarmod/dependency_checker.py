"""
Dependency checker utility for Polarized Modulo
"""
import importlib
import logging

from .utils.log_helpers import log_message


class DependencyChecker:
    """Check and report on package dependencies"""

    REQUIRED_PACKAGES = {
        'pyparsing': {
            'name': 'pyparsing',
            'version': '3.0.0',
            'install_name': 'pyparsing',
            'description': 'Formula grammar and parse error locations'
        }
    }

    OPTIONAL_PACKAGES = {
        'pytest': {
            'name': 'pytest',
            'version': '7.0.0',
            'install_name': 'pytest',
            'description': 'Test runner'
        },
        'hypothesis': {
            'name': 'hypothesis',
            'version': '6.0.0',
            'install_name': 'hypothesis',
            'description': 'Property-based test generation'
        }
    }

    @staticmethod
    def check_all_dependencies():
        """Check all required and optional dependencies

        Returns:
            dict: Status of all dependencies
        """
        results = {
            'all_required_met': True,
            'required': {},
            'optional': {}
        }

        for package_import, info in DependencyChecker.REQUIRED_PACKAGES.items():
            is_available = DependencyChecker.check_package(package_import)
            results['required'][package_import] = {
                'available': is_available,
                'info': info
            }
            if not is_available:
                results['all_required_met'] = False

        for package_import, info in DependencyChecker.OPTIONAL_PACKAGES.items():
            results['optional'][package_import] = {
                'available': DependencyChecker.check_package(package_import),
                'info': info
            }

        return results

    @staticmethod
    def check_package(package_name):
        """Check if a package is importable

        Args:
            package_name (str): Import name

        Returns:
            bool: True if the package is available
        """
        try:
            importlib.import_module(package_name)
            return True
        except ImportError:
            return False

    @staticmethod
    def get_install_command(package_import_name):
        """Get pip install command for a package

        Args:
            package_import_name (str): Package import name

        Returns:
            str: Pip install command
        """
        known = {**DependencyChecker.OPTIONAL_PACKAGES, **DependencyChecker.REQUIRED_PACKAGES}
        info = known.get(package_import_name)
        install_name = info['install_name'] if info else package_import_name
        return f'python -m pip install {install_name}'

    @staticmethod
    def missing_required():
        """Import names of the required packages that cannot be imported"""
        return [name for name in DependencyChecker.REQUIRED_PACKAGES
                if not DependencyChecker.check_package(name)]

    @staticmethod
    def log_dependency_status():
        """Log dependency status to the package logger"""
        results = DependencyChecker.check_all_dependencies()

        log_message('=== Required Dependencies ===', logging.DEBUG)
        for package, status in results['required'].items():
            status_str = 'available' if status['available'] else 'missing'
            level = logging.DEBUG if status['available'] else logging.ERROR
            log_message(f'{package}: {status_str} - {status["info"]["description"]}', level)

        log_message('=== Optional Dependencies ===', logging.DEBUG)
        for package, status in results['optional'].items():
            status_str = 'available' if status['available'] else 'missing'
            log_message(f'{package}: {status_str} - {status["info"]["description"]}',
                        logging.DEBUG)

        return results
