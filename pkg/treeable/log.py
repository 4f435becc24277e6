# Copyright (c) 2026 The treeable developers
# SPDX-License-Identifier: MIT

import logging
import sys
from typing import Optional


# -------------------------------------------------------------------------------------
LOG = logging.getLogger("treeable")
LOG.addHandler(logging.NullHandler())

_STREAM_HANDLER = None  # type: Optional[logging.Handler]


def configure_logging(enable_py_logger: bool, level: int = logging.ERROR) -> None:
    """
    Configure treeable logging behaviour.

    :arg enable_py_logger:
        If False, the "treeable" logger only carries its NullHandler and
        messages are processed according to the python logging configuration of
        the application (lost unless another handler is configured).

        If True, a handler printing to stderr is attached to the "treeable"
        logger. Calling this function again replaces that handler.
    :arg level:
        Python logging level. By default only ERROR messages are logged.
    """
    global _STREAM_HANDLER  # pylint: disable=global-statement
    if _STREAM_HANDLER is not None:
        LOG.removeHandler(_STREAM_HANDLER)
        _STREAM_HANDLER = None
    LOG.setLevel(level)
    if enable_py_logger:
        _STREAM_HANDLER = logging.StreamHandler(sys.stderr)
        _STREAM_HANDLER.setFormatter(
            logging.Formatter("%(levelname)s: %(name)s: %(message)s")
        )
        LOG.addHandler(_STREAM_HANDLER)
