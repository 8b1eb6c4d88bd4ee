"""Grayscale images, 3D code blocks, and the bit-plane transform between them.

A code block is an M x H x W tensor of integer symbols drawn from an L-symbol
alphabet, laid out channel-major (r, p, q).  8-bit grayscale images map to
binary blocks with M=8 planes, plane 0 holding the most significant bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

BIT_PLANES = 8


class Coordinate(NamedTuple):
    r: int
    p: int
    q: int


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class GrayImage:
    """An 8-bit grayscale image; pixels are row-major uint8."""

    pixels: np.ndarray

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 2 or px.size == 0:
            raise ValueError(f"expected a non-empty 2-D pixel array, got shape {px.shape}")
        if px.dtype != np.uint8:
            if not np.issubdtype(px.dtype, np.integer):
                raise ValueError("pixel intensities must be integers")
            if px.min() < 0 or px.max() > 255:
                raise ValueError("pixel intensities must lie in [0, 255]")
            px = px.astype(np.uint8)
        else:
            px = px.copy()
        object.__setattr__(self, "pixels", _frozen(px))

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]


@dataclass(frozen=True)
class CodeBlock3D:
    """Discrete symbol tensor of shape M x H x W over an L-symbol alphabet."""

    symbols: np.ndarray
    alphabet_size: int = 2

    def __post_init__(self):
        sym = np.asarray(self.symbols)
        if sym.ndim != 3 or min(sym.shape) < 1:
            raise ValueError(f"expected a non-empty 3-D symbol array, got shape {sym.shape}")
        if not np.issubdtype(sym.dtype, np.integer):
            raise ValueError("symbols must be integer indices")
        if self.alphabet_size < 1:
            raise ValueError("alphabet_size must be >= 1")
        if sym.min() < 0 or sym.max() >= self.alphabet_size:
            raise ValueError(f"symbols must lie in [0, {self.alphabet_size - 1}]")
        object.__setattr__(self, "symbols", _frozen(sym.astype(np.int64)))

    @property
    def planes(self) -> int:
        return self.symbols.shape[0]

    @property
    def height(self) -> int:
        return self.symbols.shape[1]

    @property
    def width(self) -> int:
        return self.symbols.shape[2]

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.symbols.shape


def to_bitplanes(img: GrayImage) -> CodeBlock3D:
    """Expand a grayscale image into its 8 bit-planes (plane 0 = MSB)."""
    px = img.pixels.astype(np.int64)
    shifts = np.arange(BIT_PLANES - 1, -1, -1).reshape(-1, 1, 1)
    planes = (px[None] >> shifts) & 1
    return CodeBlock3D(planes, alphabet_size=2)


def from_bitplanes(block: CodeBlock3D) -> GrayImage:
    """Reassemble an image from its bit-planes; exact inverse of to_bitplanes."""
    if block.planes != BIT_PLANES or block.alphabet_size != 2:
        raise ValueError(
            f"bit-plane blocks need M={BIT_PLANES}, L=2; "
            f"got M={block.planes}, L={block.alphabet_size}"
        )
    weights = (1 << np.arange(BIT_PLANES - 1, -1, -1, dtype=np.int64)).reshape(-1, 1, 1)
    return GrayImage((block.symbols * weights).sum(axis=0))


def _tile_bounds(extent: int, r: int) -> list[tuple[int, int]]:
    # last tile absorbs the remainder, keeping the tile count exactly r
    base = extent // r
    bounds = [(i * base, (i + 1) * base) for i in range(r - 1)]
    bounds.append(((r - 1) * base, extent))
    return bounds


def split_patches(img: GrayImage, r: int) -> list[GrayImage]:
    """Cut the image into an r x r grid of tiles, raster tile order."""
    if r < 1:
        raise ValueError("patch grid must be >= 1")
    if r > min(img.height, img.width):
        raise ValueError(f"patch grid {r} exceeds min(H, W) = {min(img.height, img.width)}")
    rows = _tile_bounds(img.height, r)
    cols = _tile_bounds(img.width, r)
    return [
        GrayImage(img.pixels[r0:r1, c0:c1])
        for (r0, r1) in rows
        for (c0, c1) in cols
    ]


def assemble_patches(tiles: list[GrayImage], r: int) -> GrayImage:
    """Inverse of split_patches: stitch an r x r tile list back into one image."""
    if len(tiles) != r * r:
        raise ValueError(f"expected {r * r} tiles, got {len(tiles)}")
    rows = [
        np.concatenate([t.pixels for t in tiles[i * r:(i + 1) * r]], axis=1)
        for i in range(r)
    ]
    return GrayImage(np.concatenate(rows, axis=0))
