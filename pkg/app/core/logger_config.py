import logging
import sys

from app.core.config import get_config

def get_logger(name: str) -> logging.Logger:
    logger = logging.getLogger(name)
    logger.setLevel(get_config().log_level.upper())

    # Avoid adding handlers multiple times (important in multi-import apps).
    # stderr keeps stdout free for graph pipelines.
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
        handler.setFormatter(formatter)
        logger.addHandler(handler)
        logger.propagate = False

    return logger
