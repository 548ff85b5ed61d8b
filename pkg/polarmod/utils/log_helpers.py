"""
Tagged application log for Polarized Modulo
"""
import logging
import sys


LOG_TAG = 'Polarized Modulo'
LOGGER_NAME = 'polarmod'


def get_logger():
    """Return the package logger"""
    return logging.getLogger(LOGGER_NAME)


def log_message(message, level=logging.INFO):
    """Log a message under the application tag

    Args:
        message (str): Text to log
        level (int): logging level
    """
    get_logger().log(level, message)


def configure_logging(level='WARNING', stream=None):
    """Attach a single stderr handler to the package logger

    Args:
        level (str): Level name
        stream: Output stream, stderr when omitted
    """
    logger = get_logger()
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(logging.Formatter(f'[{LOG_TAG}] %(levelname)s: %(message)s'))
    logger.addHandler(handler)
    logger.setLevel(getattr(logging, str(level).upper(), logging.WARNING))
    logger.propagate = False
    return logger
