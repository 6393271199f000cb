"""CLI commands; importing this package registers them."""

from .filter import FilterCommand
from .simulate import SimulateCommand
from .validate import ValidateCommand
from .variogram import VariogramCommand

__all__ = ["FilterCommand", "SimulateCommand", "ValidateCommand", "VariogramCommand"]
