"""Binary PGM (P5, maxval 255) reader/writer."""

from __future__ import annotations

import os

import numpy as np

from .blocks import GrayImage
from .errors import FormatError


def _header_tokens(data: bytes):
    """Yield whitespace-delimited header tokens, skipping '#' comments."""
    i = 0
    n = len(data)
    while True:
        while i < n and data[i:i + 1].isspace():
            i += 1
        if i < n and data[i] == ord("#"):
            while i < n and data[i] not in (0x0A, 0x0D):
                i += 1
            continue
        if i >= n:
            raise FormatError("truncated PGM header")
        start = i
        while i < n and not data[i:i + 1].isspace():
            i += 1
        yield data[start:i], i


def read_pgm(path: str | os.PathLike) -> GrayImage:
    with open(path, "rb") as fh:
        data = fh.read()
    tokens = _header_tokens(data)
    magic, _ = next(tokens)
    if magic != b"P5":
        raise FormatError(f"not a binary PGM (magic {magic!r})")
    try:
        width = int(next(tokens)[0])
        height = int(next(tokens)[0])
        maxval, end = next(tokens)
        maxval = int(maxval)
    except (StopIteration, ValueError) as exc:
        raise FormatError("malformed PGM header") from exc
    if maxval != 255:
        raise FormatError(f"only maxval 255 is supported, got {maxval}")
    if width < 1 or height < 1:
        raise FormatError("PGM dimensions must be positive")
    raster = data[end + 1:]  # exactly one whitespace byte separates header and raster
    if len(raster) < width * height:
        raise FormatError("PGM raster shorter than header promises")
    px = np.frombuffer(raster[: width * height], dtype=np.uint8).reshape(height, width)
    return GrayImage(px)


def write_pgm(img: GrayImage, path: str | os.PathLike) -> None:
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(img.pixels.tobytes())
