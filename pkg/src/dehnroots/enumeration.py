"""Exhaustive enumeration of data sets of a given degree and genus.

Search strategy.  Twice the genus is ``2*gt*n + (1 - n) + sum (n/x)(x - 1)``,
so for each orbit genus ``gt`` the cones must carry total weight
``W = 2g - 1 + n - 2*gt*n`` where a cone of order ``x`` weighs
``(n/x)(x - 1) >= n/2``.  Divisor multisets hitting ``W`` exactly with lcm
``n`` are expanded over unit residues, and ``a`` is then forced by the
congruence condition.

``oracle_enumerate`` shares none of this: it walks every ``a``, ``gt`` and
cone multiset and tests the definition through the rational orbifold Euler
characteristic.
"""
from __future__ import annotations

import logging
import random
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import gcd, lcm
from typing import Iterator

import numpy as np

from . import _kernels
from .core import ConeDatum, DataSet, canonical_form, trivial

log = logging.getLogger(__name__)

__all__ = [
    "EnumerationQuery",
    "divisors",
    "enumerate_data_sets",
    "iter_data_sets",
    "enumerate_for_genus",
    "oracle_enumerate",
    "a_spectrum",
    "genus_spectrum",
    "find_data_set",
    "max_automorphism_order",
]


def max_automorphism_order(g: int) -> int:
    return 4 * g + 2


@dataclass(frozen=True)
class EnumerationQuery:
    n: int
    g: int

    def __post_init__(self):
        if self.n < 1 or self.g < 1:
            raise ValueError(f"need n >= 1 and g >= 1, got n={self.n}, g={self.g}")
        if self.n > max_automorphism_order(self.g):
            warnings.warn(
                f"degree {self.n} exceeds 4g+2={max_automorphism_order(self.g)}; "
                "the enumeration will be empty",
                stacklevel=3,
            )


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _units(x: int) -> list[int]:
    return [c for c in range(1, x) if gcd(c, x) == 1]


def _divisor_multisets(n: int, target: int) -> Iterator[tuple[int, ...]]:
    """Nondecreasing tuples of divisors ``x > 1`` of ``n`` with weight sum ``target`` and lcm ``n``."""
    xs = divisors(n)[1:]
    wts = [(n // x) * (x - 1) for x in xs]  # increasing in x
    chosen: list[int] = []

    def rec(start, remaining):
        if remaining == 0:
            if chosen and lcm(*chosen) == n:
                yield tuple(chosen)
            return
        for i in range(start, len(xs)):
            if wts[i] > remaining:
                break
            chosen.append(xs[i])
            yield from rec(i, remaining - wts[i])
            chosen.pop()

    yield from rec(0, target)


def _cells(n: int, g: int) -> list[tuple[int, tuple[int, ...]]]:
    cells = []
    gt = 0
    while True:
        w = 2 * g - 1 + n - 2 * gt * n
        if 2 * w < n:
            break
        cells.extend((gt, ms) for ms in _divisor_multisets(n, w))
        gt += 1
    return cells


def _expand_cell(n: int, gt: int, multiset: tuple[int, ...]) -> list[DataSet]:
    groups: dict[int, int] = {}
    for x in multiset:
        groups[x] = groups.get(x, 0) + 1
    choices = [
        [[(c, x) for c in combo] for combo in combinations_with_replacement(_units(x), m)]
        for x, m in groups.items()
    ]
    out = []
    for pick in product(*choices):
        cones = [cone for part in pick for cone in part]
        a = (-sum((n // x) * c for c, x in cones)) % n
        if gcd(a, n) != 1:
            continue
        out.append(DataSet(n, gt, a, tuple(ConeDatum(c, x) for c, x in cones)))
    return out


def _expand_star(args):
    return _expand_cell(*args)


def iter_data_sets(n: int, g: int) -> Iterator[DataSet]:
    """Lazily yield data sets of degree ``n`` and genus ``g`` in generation order."""
    EnumerationQuery(n, g)
    if n == 1:
        yield trivial(g)
        return
    for gt, ms in _cells(n, g):
        yield from _expand_cell(n, gt, ms)


def enumerate_data_sets(n: int, g: int, *, workers: int = 1,
                        schedule_seed: int | None = None) -> list[DataSet]:
    """All data sets of degree ``n`` and genus ``g``, sorted and duplicate free.

    Cells ``(gt, divisor multiset)`` are independent.  With ``workers > 1``
    they are farmed out to a process pool; ``schedule_seed`` shuffles the
    order in which cells are processed.  Either way the merged result is
    globally sorted, so the output does not depend on the schedule.
    """
    EnumerationQuery(n, g)
    if n == 1:
        return [trivial(g)]
    cells = [(n, gt, ms) for gt, ms in _cells(n, g)]
    if schedule_seed is not None:
        random.Random(schedule_seed).shuffle(cells)
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_expand_star, cells))
    else:
        chunks = [_expand_cell(*c) for c in cells]
    return sorted(d for chunk in chunks for d in chunk)


def enumerate_for_genus(g: int, *, workers: int = 1) -> dict[int, list[DataSet]]:
    """Data sets of genus ``g`` for every degree ``1..4g+2``, empty entries kept."""
    if g < 1:
        raise ValueError("genus must be >= 1")
    return {n: enumerate_data_sets(n, g, workers=workers)
            for n in range(1, max_automorphism_order(g) + 1)}


def oracle_enumerate(n: int, g: int) -> list[DataSet]:
    """Unpruned brute force over ``a``, ``gt``, cone count and cone multisets."""
    if n < 1 or g < 1:
        raise ValueError("need n >= 1 and g >= 1")
    pairs = [(c, x) for x in range(2, n + 1) if n % x == 0 for c in range(1, x)]
    ell_max = (2 * g - 1 + n) * 2 // n
    found = set()
    for a in range(1, n + 1):
        for gt in range(0, g + 1):
            for ell in range(0, ell_max + 1):
                for cones in combinations_with_replacement(pairs, ell):
                    if n == 1 and (a != 1 or cones):
                        continue
                    if n > 1 and not cones:
                        continue
                    if gcd(a, n) != 1 or any(gcd(c, x) != 1 for c, x in cones):
                        continue
                    if (a + sum(Fraction(n, x) * c for c, x in cones)) % n != 0:
                        continue
                    chi = 2 - 2 * gt + (Fraction(1, n) - 1) + sum(Fraction(1, x) - 1 for _, x in cones)
                    if chi * n != 2 - 2 * g:
                        continue
                    found.add((n, gt, a, tuple(sorted(cones, key=lambda p: (p[1], p[0])))))
    return sorted(canonical_form((n_, gt, a, list(cs))) for n_, gt, a, cs in found)


# ------------------------------------------------------------- residue spectra

def _tables(n: int):
    divs = divisors(n)
    index = {d: i for i, d in enumerate(divs)}
    lcm_idx = np.array([[index[lcm(d, e)] for e in divs] for d in divs], dtype=np.int64)
    cone_div, cone_wt, shift_rows = [], [], []
    for x in divs[1:]:
        cone_div.append(index[x])
        cone_wt.append((n // x) * (x - 1))
        shift_rows.append([(n // x) * c for c in _units(x)])
    width = max((len(r) for r in shift_rows), default=1)
    shifts = np.zeros((len(shift_rows), width), dtype=np.int64)
    nshift = np.zeros(len(shift_rows), dtype=np.int64)
    for j, row in enumerate(shift_rows):
        shifts[j, : len(row)] = row
        nshift[j] = len(row)
    return (lcm_idx, np.array(cone_div, dtype=np.int64),
            np.array(cone_wt, dtype=np.int64), shifts, nshift, index[n])


def a_spectrum(n: int, g: int, *, spherical_ell2: bool = False) -> tuple[int, ...]:
    """Sorted residues ``a`` realized by some data set of degree ``n`` and genus ``g``.

    Equal to ``sorted({D.a for D in enumerate_data_sets(n, g)})`` but computed
    by a reachability table over (weight, lcm, residue) without listing the
    data sets.  ``spherical_ell2`` restricts to ``gt = 0`` with exactly two
    cones.
    """
    if n == 1:
        return () if spherical_ell2 else (1,)
    if n > max_automorphism_order(g):
        return ()
    if spherical_ell2:
        return _a_spectrum_sph2(n, g)
    lcm_idx, cone_div, cone_wt, shifts, nshift, top = _tables(n)
    wmax = 2 * g - 1 + n
    reach = _kernels.reach_table(n, wmax, lcm_idx, cone_div, cone_wt, shifts, nshift)
    found = set()
    gt = 0
    while (w := wmax - 2 * gt * n) > 0:
        for r in np.flatnonzero(reach[w, top]):
            a = (-int(r)) % n
            if gcd(a, n) == 1:
                found.add(a)
        gt += 1
    return tuple(sorted(found))


def _a_spectrum_sph2(n: int, g: int) -> tuple[int, ...]:
    w = 2 * g - 1 + n
    xs = divisors(n)[1:]
    found = set()
    for i, x1 in enumerate(xs):
        for x2 in xs[i:]:
            if (n // x1) * (x1 - 1) + (n // x2) * (x2 - 1) != w or lcm(x1, x2) != n:
                continue
            for c1 in _units(x1):
                for c2 in _units(x2):
                    a = -((n // x1) * c1 + (n // x2) * c2) % n
                    if gcd(a, n) == 1:
                        found.add(a)
    return tuple(sorted(found))


def genus_spectrum(g: int, *, spherical_ell2: bool = False) -> dict[int, tuple[int, ...]]:
    """Map each degree ``1..4g+2`` to its realized ``a`` residues (empty entries dropped)."""
    out = {}
    for n in range(1, max_automorphism_order(g) + 1):
        s = a_spectrum(n, g, spherical_ell2=spherical_ell2)
        if s:
            out[n] = s
    return out


def find_data_set(n: int, g: int, a: int, *, spherical_ell2: bool = False) -> DataSet | None:
    """First data set (in generation order) of degree ``n``, genus ``g`` and residue ``a``."""
    for d in iter_data_sets(n, g):
        if d.a == a and (not spherical_ell2 or (d.g_orb == 0 and d.ell == 2)):
            return d
    return None
