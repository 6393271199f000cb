"""Utility functions and helpers."""

from .logging import get_logger, log_event, setup_logging

__all__ = ["get_logger", "log_event", "setup_logging"]
