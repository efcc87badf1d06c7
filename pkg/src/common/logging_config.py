import logging
import os

LOG_FORMAT = "%(asctime)s [%(levelname)s] [%(filename)s:%(lineno)s] - %(message)s"


def configure_logging(log_file_abs_path=None, level=logging.INFO):
    handlers = [logging.StreamHandler()]
    if log_file_abs_path:
        os.makedirs(os.path.dirname(log_file_abs_path) or ".", exist_ok=True)
        handlers.insert(0, logging.FileHandler(log_file_abs_path))

    # force=True so that a second CLI invocation in the same process picks up its own handlers
    logging.basicConfig(
        level=level,
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )

    return logging.getLogger(__name__)
