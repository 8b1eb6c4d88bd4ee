"""Coding orders, translation-invariant causal masks, and diagonal-plane schedules.

A mask is a binary tensor over (output plane r, input plane s, spatial offset
mu, nu) that zeroes every filter tap reaching a code outside the causal
context of the output position.  Under the 3D zigzag order the context of
(r, p, q) is every coordinate with a strictly smaller index sum r+p+q, and the
codes sharing one sum form a diagonal-plane group that decodes in parallel.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable

import numpy as np

from .blocks import Coordinate


class CodingOrder(str, Enum):
    RASTER2D = "raster2d"
    ZIGZAG2D = "zigzag2d"
    ZIGZAG3D = "zigzag3d"
    RASTER3D_BY_ROW = "raster3d-by-row"


_2D_ORDERS = (CodingOrder.RASTER2D, CodingOrder.ZIGZAG2D)

INPUT = "input"
HIDDEN = "hidden"


@dataclass(frozen=True)
class MaskSet:
    """Binary filter mask, identical at every spatial position.

    bits[r, s, mu + S//2, nu + S//2] says whether the tap from input plane s
    at spatial offset (mu, nu) may feed output plane r.
    """

    order: CodingOrder
    planes: int
    kernel: int
    layer_kind: str
    bits: np.ndarray

    def offsets(self, r: int = 0, s: int = 0) -> set[tuple[int, int]]:
        """The enabled (mu, nu) offsets for one (r, s) plane pair."""
        c = self.kernel // 2
        mu, nu = np.nonzero(self.bits[r, s])
        return {(int(m) - c, int(n) - c) for m, n in zip(mu, nu)}


def build_mask(order: CodingOrder, kernel: int, planes: int, layer_kind: str) -> MaskSet:
    """Construct the causal mask for one layer."""
    order = CodingOrder(order)
    if kernel < 1 or kernel % 2 == 0:
        raise ValueError(f"kernel size must be odd and positive, got {kernel}")
    if planes < 1:
        raise ValueError("planes must be >= 1")
    if layer_kind not in (INPUT, HIDDEN):
        raise ValueError(f"layer_kind must be '{INPUT}' or '{HIDDEN}'")
    if order in _2D_ORDERS and planes != 1:
        raise ValueError(f"{order.value} masks are defined for planes=1")

    c = kernel // 2
    off = np.arange(kernel) - c
    mu = off[:, None]
    nu = off[None, :]
    r = np.arange(planes)[:, None, None, None]
    s = np.arange(planes)[None, :, None, None]
    hidden = layer_kind == HIDDEN

    if order is CodingOrder.ZIGZAG3D:
        diag = s + mu[None, None] + nu[None, None]
        bits = (diag <= r) if hidden else (diag < r)
    elif order is CodingOrder.ZIGZAG2D:
        d = mu + nu
        bits = ((d <= 0) if hidden else (d < 0))[None, None]
    elif order is CodingOrder.RASTER2D:
        bits = (mu < 0) | ((mu == 0) & (nu < 0))
        if hidden:
            bits = bits | ((mu == 0) & (nu == 0))
        bits = bits[None, None]
    else:  # RASTER3D_BY_ROW: groups are rows per channel
        row = (mu <= 0) if hidden else (mu < 0)
        bits = (s < r) | ((s == r) & row[None, None])

    bits = np.broadcast_to(bits, (planes, planes, kernel, kernel)).astype(np.uint8)
    return MaskSet(order, planes, kernel, layer_kind, bits.copy())


@dataclass(frozen=True)
class GroupSchedule:
    """Partition of all M*H*W coordinates into ordered decode groups."""

    planes: int
    height: int
    width: int
    order: CodingOrder
    groups: tuple[np.ndarray, ...]  # each (n_k, 3) int array of (r, p, q)

    @property
    def group_count(self) -> int:
        return len(self.groups)

    def flat_order(self) -> np.ndarray:
        """All coordinates concatenated in stream order, shape (M*H*W, 3)."""
        return np.concatenate(self.groups, axis=0)


def _zigzag_group(k: int, m: int, h: int, w: int) -> np.ndarray:
    coords = []
    c_hi = min(k, h - 1 + w - 1)
    c_lo = max(k - (m - 1), 0)
    for c in range(c_hi, c_lo - 1, -1):
        r = k - c
        if r < 0 or r >= m:
            continue
        for p in range(min(c, h - 1), max(c - (w - 1), 0) - 1, -1):
            coords.append((r, p, c - p))
    return np.array(coords, dtype=np.int64).reshape(-1, 3)


def build_schedule(m: int, h: int, w: int, order: CodingOrder) -> GroupSchedule:
    """Enumerate decode groups with their deterministic within-group order."""
    order = CodingOrder(order)
    if min(m, h, w) < 1:
        raise ValueError("dimensions must be >= 1")
    if order in _2D_ORDERS and m != 1:
        raise ValueError(f"{order.value} schedules are defined for planes=1")

    if order in (CodingOrder.ZIGZAG3D, CodingOrder.ZIGZAG2D):
        k_count = m + h + w - 2
        groups = tuple(_zigzag_group(k, m, h, w) for k in range(k_count))
    elif order is CodingOrder.RASTER3D_BY_ROW:
        q = np.arange(w, dtype=np.int64)
        groups = tuple(
            np.stack([np.full(w, r, np.int64), np.full(w, p, np.int64), q], axis=1)
            for r in range(m)
            for p in range(h)
        )
    else:  # RASTER2D: no code dividing, one code per group
        groups = tuple(
            np.array([[0, p, q]], dtype=np.int64) for p in range(h) for q in range(w)
        )
    return GroupSchedule(m, h, w, order, groups)


def dop(m: int, h: int, w: int) -> Fraction:
    """Average diagonal-plane group size M*H*W / (M+H+W-2)."""
    if min(m, h, w) < 1:
        raise ValueError("dimensions must be >= 1")
    return Fraction(m * h * w, m + h + w - 2)


def dop_light(m: int, h: int, w: int, r: int) -> Fraction:
    """DOP after splitting into an r x r patch grid."""
    if r < 1:
        raise ValueError("patch grid must be >= 1")
    denom = m + Fraction(h, r) + Fraction(w, r) - 2
    return Fraction(m * h * w, 1) / denom


def context_of(coord: Coordinate, order: CodingOrder) -> Callable[[Coordinate], bool]:
    """Predicate: is another coordinate strictly before `coord` in coding order?

    Codes in the same group are not part of each other's context.
    """
    order = CodingOrder(order)
    r, p, q = coord
    if order in (CodingOrder.ZIGZAG3D, CodingOrder.ZIGZAG2D):
        k = r + p + q
        return lambda other: other[0] + other[1] + other[2] < k
    if order is CodingOrder.RASTER3D_BY_ROW:
        return lambda other: (other[0], other[1]) < (r, p)
    return lambda other: (other[1], other[2]) < (p, q)  # raster2d, single plane


def format_mask(mask: MaskSet) -> str:
    """ASCII rendering: one S x S grid per (r, s) plane pair."""
    c = mask.kernel // 2
    lines = [
        f"{mask.order.value} {mask.layer_kind} mask, planes={mask.planes}, kernel={mask.kernel}"
    ]
    for r in range(mask.planes):
        for s in range(mask.planes):
            lines.append(f"r={r} s={s}")
            for i in range(mask.kernel):
                row = "".join("#" if mask.bits[r, s, i, j] else "." for j in range(mask.kernel))
                lines.append(f"  {row}")
    lines.append(f"(rows are mu = {-c}..{c} top to bottom, cols nu = {-c}..{c})")
    return "\n".join(lines)


def format_schedule(schedule: GroupSchedule) -> str:
    """ASCII rendering of group indices, one H x W grid per plane."""
    index = np.empty((schedule.planes, schedule.height, schedule.width), dtype=np.int64)
    for k, grp in enumerate(schedule.groups):
        index[grp[:, 0], grp[:, 1], grp[:, 2]] = k
    pad = len(str(schedule.group_count - 1))
    lines = [
        f"{schedule.order.value} schedule, {schedule.group_count} groups "
        f"for {schedule.planes}x{schedule.height}x{schedule.width}"
    ]
    for r in range(schedule.planes):
        lines.append(f"plane r={r}")
        for p in range(schedule.height):
            lines.append("  " + " ".join(str(index[r, p, q]).rjust(pad) for q in range(schedule.width)))
    return "\n".join(lines)
