"""Package loggers, children of the aiida logger so the REPORT level and handlers apply."""

from aiida.common.log import AIIDA_LOGGER, LOG_LEVEL_REPORT

LOGGER = AIIDA_LOGGER.getChild("loglip_sde")


def get_logger(name: str):
    """Logger for a sub-module, e.g. ``get_logger(__name__)``."""
    return LOGGER.getChild(name.rsplit(".", 1)[-1] if name.startswith("loglip_sde") else name)


def report(logger, message: str, *args):
    """Log at the aiida ``REPORT`` level, the level used for experiment progress."""
    logger.log(LOG_LEVEL_REPORT, message, *args)
