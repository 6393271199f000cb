"""GRIDF64 raster files.

A file is one ASCII header line ``GRIDF64 <nx> <ny> <dx> <dy>\\n`` followed
by nx * ny little-endian binary64 values, row-major (node (i, j) at index
j * nx + i), with nothing after the payload.
"""

import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from src.errors import GridFormatError, GridTruncationError, InvalidArgumentError

MAGIC = "GRIDF64"
MAX_HEADER_BYTES = 1024
_TOKEN = re.compile(rb"\S+")


@dataclass(frozen=True)
class GridHeader:
    """Grid dimensions and spacings of a raster."""

    nx: int
    ny: int
    dx: float
    dy: float

    def __post_init__(self) -> None:
        if self.nx < 1 or self.ny < 1:
            raise InvalidArgumentError(
                f"grid dimensions must be positive, got {self.nx}x{self.ny}"
            )
        spacings = (self.dx, self.dy)
        if not all(math.isfinite(d) and d > 0 for d in spacings):
            raise InvalidArgumentError(
                f"grid spacings must be positive, got {self.dx}, {self.dy}"
            )

    @property
    def size(self) -> int:
        return self.nx * self.ny

    def encode(self) -> bytes:
        line = f"{MAGIC} {self.nx} {self.ny} {float(self.dx)!r} {float(self.dy)!r}\n"
        return line.encode("ascii")


def _parse_header(raw: bytes) -> tuple[GridHeader, int]:
    end = raw.find(b"\n", 0, MAX_HEADER_BYTES)
    if end < 0:
        raise GridFormatError(
            "header line is not terminated", offset=min(len(raw), MAX_HEADER_BYTES)
        )
    line = raw[:end]
    tokens = list(_TOKEN.finditer(line))
    if not tokens:
        raise GridFormatError("empty header", offset=0)
    magic = tokens[0].group().decode("ascii", errors="replace")
    if magic != MAGIC:
        raise GridFormatError(
            f"bad magic '{magic}', expected '{MAGIC}'", offset=tokens[0].start()
        )
    if len(tokens) != 5:
        raise GridFormatError(
            f"header has {len(tokens)} tokens, expected 5", offset=tokens[-1].end()
        )

    def number(index: int, kind: type[int] | type[float]) -> float:
        token = tokens[index]
        try:
            return kind(token.group().decode("ascii"))
        except (UnicodeDecodeError, ValueError) as exc:
            raise GridFormatError(
                f"header field {index} is not a valid {kind.__name__}: "
                f"{token.group()!r}",
                offset=token.start(),
            ) from exc

    nx, ny = int(number(1, int)), int(number(2, int))
    dx, dy = float(number(3, float)), float(number(4, float))
    try:
        header = GridHeader(nx=nx, ny=ny, dx=dx, dy=dy)
    except InvalidArgumentError as exc:
        raise GridFormatError(str(exc), offset=tokens[1].start()) from exc
    return header, end + 1


def read_grid(path: str | Path) -> tuple[GridHeader, np.ndarray]:
    """Read a raster as its header and a flat float64 vector.

    Raises:
        GridFormatError: On a malformed header or non-finite values
        GridTruncationError: If the payload length does not match the header
    """
    raw = Path(path).read_bytes()
    header, start = _parse_header(raw)
    expected = 8 * header.size
    available = len(raw) - start
    if available < expected:
        raise GridTruncationError(
            f"payload has {available} bytes, header announces {expected}",
            offset=len(raw),
        )
    if available > expected:
        raise GridTruncationError(
            f"{available - expected} trailing bytes after the payload",
            offset=start + expected,
        )
    payload = np.frombuffer(raw, dtype="<f8", count=header.size, offset=start)
    values = payload.astype(np.float64)
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise GridFormatError(
            f"non-finite value at node {bad[0]}", offset=start + 8 * int(bad[0])
        )
    return header, values


def write_grid(path: str | Path, header: GridHeader, values: np.ndarray) -> None:
    """Write a raster; reading it back reproduces header and values bit for bit.

    Raises:
        InvalidArgumentError: On a size mismatch or non-finite values
    """
    data = np.asarray(values, dtype=np.float64).ravel()
    if data.size != header.size:
        raise InvalidArgumentError(
            f"{data.size} values do not fill a {header.nx}x{header.ny} grid"
        )
    bad = np.flatnonzero(~np.isfinite(data))
    if bad.size:
        raise InvalidArgumentError(f"cannot write non-finite value at node {bad[0]}")
    Path(path).write_bytes(header.encode() + data.astype("<f8").tobytes())
