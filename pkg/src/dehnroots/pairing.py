"""Data set pairs: compatibility, root-class enumeration, maximum degrees, witnesses.

Two data sets of degrees ``n1, n2`` with inverse residues ``k1, k2`` pair up
when ``(n/n1)k1 + (n/n2)k2 = 1 (mod n)`` for ``n = lcm(n1, n2)``.  Each
unordered pair is one conjugacy class of roots of the twist, of degree ``n``.
"""
from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd, lcm

import numpy as np

from . import _kernels
from .core import ConeDatum, DataSet, genus, inverse_mod, validate
from .enumeration import enumerate_for_genus, find_data_set, genus_spectrum

__all__ = [
    "RootClass",
    "MaxDegree",
    "is_compatible_pair",
    "pair_degree",
    "enumerate_root_classes",
    "max_root_degree",
    "max_root_class",
    "max_degree_for_genus",
    "witness_pair",
]


def is_compatible_pair(d1: DataSet, d2: DataSet) -> bool:
    n = lcm(d1.n, d2.n)
    return ((n // d1.n) * inverse_mod(d1.a, d1.n) + (n // d2.n) * inverse_mod(d2.a, d2.n)) % n == 1 % n


def pair_degree(d1: DataSet, d2: DataSet) -> int:
    if not is_compatible_pair(d1, d2):
        raise ValueError(f"{d1} and {d2} do not form a data set pair")
    return lcm(d1.n, d2.n)


@dataclass(frozen=True)
class RootClass:
    """One conjugacy class of roots: ``d1`` sits on the larger-genus side.

    For equal genera the pair is unordered and stored with
    ``d1.sort_key <= d2.sort_key``; :meth:`of` picks the orientation.
    """

    d1: DataSet
    d2: DataSet

    def __post_init__(self):
        g1, g2 = genus(self.d1), genus(self.d2)
        if g1 < g2 or (g1 == g2 and self.d2.sort_key < self.d1.sort_key):
            raise ValueError("RootClass not in canonical orientation; use RootClass.of()")
        if g1 + g2 < 2:
            raise ValueError("total genus must be at least 2")
        if not is_compatible_pair(self.d1, self.d2):
            raise ValueError(f"({self.d1}, {self.d2}) is not a data set pair")

    @classmethod
    def of(cls, a: DataSet, b: DataSet) -> "RootClass":
        ga, gb = genus(a), genus(b)
        if ga < gb or (ga == gb and b.sort_key < a.sort_key):
            a, b = b, a
        return cls(a, b)

    @property
    def degree(self) -> int:
        return lcm(self.d1.n, self.d2.n)

    @property
    def g1(self) -> int:
        return genus(self.d1)

    @property
    def g2(self) -> int:
        return genus(self.d2)

    @property
    def total_genus(self) -> int:
        return self.g1 + self.g2

    @property
    def sort_key(self) -> tuple:
        return (self.degree, self.d1.sort_key, self.d2.sort_key)

    def to_dict(self) -> dict:
        return {"degree": self.degree, "g1": self.g1, "g2": self.g2,
                "d1": self.d1.to_dict(), "d2": self.d2.to_dict()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(", ", ": "))

    @classmethod
    def from_dict(cls, d: dict) -> "RootClass":
        return cls.of(DataSet.from_dict(d["d1"]), DataSet.from_dict(d["d2"]))

    def __str__(self):
        return f"({self.d1}, {self.d2})"


def _group_by_residue(sets: dict[int, list[DataSet]]) -> dict[int, dict[int, list[DataSet]]]:
    out: dict[int, dict[int, list[DataSet]]] = {}
    for n, lst in sets.items():
        for d in lst:
            out.setdefault(n, {}).setdefault(d.a, []).append(d)
    return out


def _pairs_in_cell(args) -> list[RootClass]:
    n1, n2, side1, side2, same = args
    n = lcm(n1, n2)
    out = []
    if n == 1:
        return out
    for a1, l1 in side1.items():
        k1 = inverse_mod(a1, n1)
        for a2, l2 in side2.items():
            if ((n // n1) * k1 + (n // n2) * inverse_mod(a2, n2)) % n != 1:
                continue
            for d1 in l1:
                for d2 in l2:
                    if same and d2.sort_key < d1.sort_key:
                        continue
                    out.append(RootClass(d1, d2))
    return out


def enumerate_root_classes(g1: int, g2: int, *, workers: int = 1,
                           schedule_seed: int | None = None) -> list[RootClass]:
    """Every conjugacy class of roots for the split ``g1 >= g2 >= 1``.

    Degree-one pairs (the twist itself) are left out.  Output is sorted by
    ``(degree, d1, d2)`` whatever the worker count or cell order.
    """
    if not g1 >= g2 >= 1:
        raise ValueError(f"need g1 >= g2 >= 1, got ({g1}, {g2})")
    same = g1 == g2
    side1 = _group_by_residue(enumerate_for_genus(g1))
    side2 = side1 if same else _group_by_residue(enumerate_for_genus(g2))
    cells = [(n1, n2, side1[n1], side2[n2], same) for n1 in side1 for n2 in side2]
    if schedule_seed is not None:
        random.Random(schedule_seed).shuffle(cells)
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_pairs_in_cell, cells, chunksize=8))
    else:
        chunks = [_pairs_in_cell(c) for c in cells]
    return sorted((rc for chunk in chunks for rc in chunk), key=lambda rc: rc.sort_key)


def _flatten(spec: dict[int, tuple[int, ...]]):
    ns, ks, As = [], [], []
    for n, residues in spec.items():
        for a in residues:
            ns.append(n)
            ks.append(inverse_mod(a, n))
            As.append(a)
    return (np.array(ns, dtype=np.int64), np.array(ks, dtype=np.int64), As)


def _best(spec1, spec2):
    n1, k1, a1 = _flatten(spec1)
    n2, k2, a2 = _flatten(spec2)
    best, i, j = _kernels.best_pair(n1, k1, n2, k2, 0)
    if i < 0:
        return 0, None
    return int(best), ((int(n1[i]), a1[i]), (int(n2[j]), a2[j]))


def max_root_degree(g1: int, g2: int, *, spherical_ell2: bool = False, spectra=None) -> int:
    """Largest degree of a root for the split ``(g1, g2)``.

    Compatibility only sees ``(n, a)``, so the search runs over the residue
    spectra of both genera instead of the full list of pairs.
    ``spherical_ell2`` restricts both sides to spheres with two cones.
    ``spectra`` is an optional memo dict shared across calls.
    """
    return _max_root(g1, g2, spherical_ell2, spectra)[0]


def _max_root(g1, g2, spherical_ell2=False, spectra=None):
    if not g1 >= g2 >= 1:
        raise ValueError(f"need g1 >= g2 >= 1, got ({g1}, {g2})")
    spectra = {} if spectra is None else spectra

    def spec(g):
        key = (g, spherical_ell2)
        if key not in spectra:
            spectra[key] = genus_spectrum(g, spherical_ell2=spherical_ell2)
        return spectra[key]

    return _best(spec(g1), spec(g2))


def max_root_class(g1: int, g2: int, *, spherical_ell2: bool = False, spectra=None) -> RootClass | None:
    """A root class attaining :func:`max_root_degree`."""
    m, where = _max_root(g1, g2, spherical_ell2, spectra)
    if where is None:
        return None
    (n1, a1), (n2, a2) = where
    d1 = find_data_set(n1, g1, a1, spherical_ell2=spherical_ell2)
    d2 = find_data_set(n2, g2, a2, spherical_ell2=spherical_ell2)
    rc = RootClass.of(d1, d2)
    assert rc.degree == m
    return rc


@dataclass(frozen=True)
class MaxDegree:
    g: int
    m: int
    split: tuple[int, int]
    root: RootClass | None


def splits(g: int) -> list[tuple[int, int]]:
    """Genus splits ``(g1, g2)`` with ``g1 >= g2 >= 1``, ``g1`` ascending."""
    return [(g1, g - g1) for g1 in range((g + 1) // 2, g)]


def max_degree_for_genus(g: int, *, spherical_ell2: bool = False, spectra=None,
                         with_root: bool = True) -> MaxDegree:
    """``m(g)``: the largest root degree over all splits of genus ``g``."""
    if g < 2:
        raise ValueError("genus must be >= 2")
    spectra = {} if spectra is None else spectra
    best, arg = -1, None
    for g1, g2 in splits(g):
        m = max_root_degree(g1, g2, spherical_ell2=spherical_ell2, spectra=spectra)
        if m > best:
            best, arg = m, (g1, g2)
    root = max_root_class(*arg, spherical_ell2=spherical_ell2, spectra=spectra) if with_root else None
    return MaxDegree(g, best, arg, root)


def _witness_sides(g1: int, g2: int) -> tuple[DataSet, DataSet]:
    n1, n2 = 4 * g1, 4 * g2 + 2
    n = lcm(n1, n2)
    units1 = [a for a in range(1, n1) if gcd(a, n1) == 1]
    units2 = [a for a in range(1, n2) if gcd(a, n2) == 1]
    for a1 in units1:
        k1 = inverse_mod(a1, n1)
        for a2 in units2:
            if ((n // n1) * k1 + (n // n2) * inverse_mod(a2, n2)) % n != 1:
                continue
            c_last = (-a1 - 2 * g1) % n1
            raw1 = (n1, 0, a1, [(1, 2), (c_last, n1)])
            raw2 = (n2, 0, a2, [(a2 % 2, 2), ((a2 * g2) % (2 * g2 + 1), 2 * g2 + 1)])
            if not (validate(raw1) and validate(raw2)):
                continue
            d1 = DataSet(n1, 0, a1, (ConeDatum(1, 2), ConeDatum(c_last, n1)))
            d2 = DataSet(n2, 0, a2, tuple(sorted((ConeDatum(c, x) for c, x in raw2[3]),
                                                 key=lambda cd: cd.key)))
            return d1, d2
    raise RuntimeError(f"no witness pair of degree lcm({n1}, {n2}) for ({g1}, {g2})")


def witness_pair(g1: int, g2: int) -> RootClass:
    """A root class of degree ``lcm(4*g1, 4*g2 + 2)``.

    The genus-``g1`` side is ``(4g1, 0, a1; (1,2), (c,4g1))`` and the
    genus-``g2`` side ``(4g2+2, 0, a2; (a2,2), (a2*g2, 2g2+1))``; the unit
    residues are searched exhaustively in ascending order.
    """
    if g1 < 1 or g2 < 1:
        raise ValueError("both genera must be >= 1")
    d1, d2 = _witness_sides(g1, g2)
    if genus(d1) != g1 or genus(d2) != g2:
        raise AssertionError("witness data sets have the wrong genus")
    return RootClass.of(d1, d2)
