"""Shared fixtures for the test suite: hand-built reference tile systems
and small enumeration utilities.

The two 4-tile systems below are written out from their arithmetic
definitions, not produced by any code under test.  The counter rows
display successive integers in binary; the triangle system computes
parity of binomial coefficients.  Expected patterns for both come from
independent closed forms (bit extraction, math.comb) so the simulator
and the generators can be checked against them separately.
"""

from __future__ import annotations

import itertools
import math

from patsolve import ColorGrid, Tile, TileSystem


def counter_tas(m: int, n: int) -> TileSystem:
    # tile (b, c): b = bit carried up from the row below, c = carry coming
    # in from the east; the displayed bit is b xor c, the outgoing carry
    # b and c.  Seed: all-zero south row, carry 1 injected on the west.
    tiles = [
        Tile(north=b ^ c, east=b & c, south=b, west=c, color=b ^ c)
        for b, c in itertools.product((0, 1), repeat=2)
    ]
    return TileSystem(
        m=m,
        n=n,
        tiles=tuple(tiles),
        seed_north=(0,) * m,
        seed_east=(1,) * n,
    )


def counter_color(x: int, y: int) -> int:
    return (y >> (x - 1)) & 1


def sierpinski_tas(m: int, n: int) -> TileSystem:
    # tile (s, w): xor rule, both outputs are s xor w
    tiles = [
        Tile(north=s ^ w, east=s ^ w, south=s, west=w, color=s ^ w)
        for s, w in itertools.product((0, 1), repeat=2)
    ]
    return TileSystem(
        m=m,
        n=n,
        tiles=tuple(tiles),
        seed_north=(1,) + (0,) * (m - 1),
        seed_east=(0,) * n,
    )


def sierpinski_color(x: int, y: int) -> int:
    return math.comb(x + y - 2, x - 1) % 2


def onto_colorings(m: int, n: int, k: int = 2):
    """Every onto k-colouring of the m x n grid, as ColorGrid values."""
    for cells in itertools.product(range(k), repeat=m * n):
        if set(cells) == set(range(k)):
            yield ColorGrid(m, n, k, cells)


def grid_from_fn(m: int, n: int, k: int, fn) -> ColorGrid:
    cells = tuple(fn(x, y) for y in range(1, n + 1) for x in range(1, m + 1))
    return ColorGrid(m, n, k, cells)
