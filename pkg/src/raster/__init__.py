"""Binary raster IO."""

from .gridf64 import MAGIC, GridHeader, read_grid, write_grid

__all__ = ["MAGIC", "GridHeader", "read_grid", "write_grid"]
