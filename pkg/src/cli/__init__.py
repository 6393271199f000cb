"""Command-line frontend."""

from . import commands
from .registry import (
    EXIT_ERROR,
    EXIT_NOT_CONVERGED,
    EXIT_OK,
    CommandHandler,
    CommandRegistry,
)

__all__ = [
    "EXIT_ERROR",
    "EXIT_NOT_CONVERGED",
    "EXIT_OK",
    "CommandHandler",
    "CommandRegistry",
    "commands",
]
