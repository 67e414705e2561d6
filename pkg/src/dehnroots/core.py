"""Data sets: value types, validation, genus, canonical form, residue arithmetic.

A data set ``(n, gt, a; (c1,x1), ..., (cl,xl))`` encodes one equivalence
class of cyclic actions of order ``n`` with a distinguished fixed point.
Residues are stored as least positive representatives: ``1 <= a <= n`` and
``1 <= c < x``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable

__all__ = [
    "ConeDatum",
    "DataSet",
    "ValidationReport",
    "FAILURE_CODES",
    "validate",
    "genus",
    "canonical_form",
    "inverse_mod",
    "turning_fraction",
    "is_spherical",
    "trivial",
    "parse_data_set",
]

FAILURE_CODES = ("range", "divisibility", "unit-a", "unit-c", "congruence", "trivial-shape")


@dataclass(frozen=True)
class ConeDatum:
    """A non-distinguished cone point: rotation class ``c`` modulo order ``x``."""

    c: int
    x: int

    def __post_init__(self):
        if not (isinstance(self.x, int) and isinstance(self.c, int)):
            raise TypeError("cone entries must be integers")
        if self.x < 2 or not 1 <= self.c < self.x or gcd(self.c, self.x) != 1:
            raise ValueError(f"invalid cone datum ({self.c},{self.x})")

    @property
    def key(self) -> tuple[int, int]:
        return (self.x, self.c)

    def weight(self, n: int) -> int:
        """Contribution ``(n/x)(x-1)`` of this cone to twice the genus."""
        return (n // self.x) * (self.x - 1)


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple[str, ...] = ()

    @property
    def overall(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.overall

    def to_dict(self) -> dict:
        return {"overall": self.overall, "failures": list(self.failures)}


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def validate(candidate) -> ValidationReport:
    """Check a raw ``(n, gt, a, cones)`` tuple against the data set definition.

    Every violated condition is reported.  Nothing is normalized: a residue
    outside its least-positive range is a ``range`` failure.
    """
    failures: list[str] = []

    def fail(code):
        if code not in failures:
            failures.append(code)

    try:
        n, gt, a, cones = candidate
        cones = [tuple(p) for p in cones]
    except (TypeError, ValueError):
        return ValidationReport(("range",))
    if not all(_is_int(v) for v in (n, gt, a)) or not all(
        len(p) == 2 and _is_int(p[0]) and _is_int(p[1]) for p in cones
    ):
        return ValidationReport(("range",))

    if n < 1 or gt < 0 or not 1 <= a <= n:
        fail("range")
    usable = []  # cones whose arithmetic can be evaluated
    for c, x in cones:
        if x <= 1 or not 1 <= c < x:
            fail("range")
        if x >= 1 and n >= 1 and n % x:
            fail("divisibility")
        if x >= 1 and gcd(c, x) != 1:
            fail("unit-c")
        if x >= 1:
            usable.append((c, x))
    if n >= 1 and gcd(a, n) != 1:
        fail("unit-a")
    if n >= 1 and len(usable) == len(cones) and "divisibility" not in failures:
        if (a + sum((n // x) * c for c, x in usable)) % n:
            fail("congruence")
    if n == 1 and (a != 1 or cones):
        fail("trivial-shape")
    if n > 1 and not cones:
        fail("trivial-shape")
    return ValidationReport(tuple(sorted(failures, key=FAILURE_CODES.index)))


@dataclass(frozen=True)
class DataSet:
    """A validated data set in canonical form (cones ascending by ``(x, c)``).

    Use :func:`canonical_form` to build one from an arbitrary-order tuple.
    """

    n: int
    g_orb: int
    a: int
    cones: tuple[ConeDatum, ...] = field(default=())

    def __post_init__(self):
        cones = tuple(
            cd if isinstance(cd, ConeDatum) else ConeDatum(*cd) for cd in self.cones
        )
        object.__setattr__(self, "cones", cones)
        report = validate(self.raw())
        if not report:
            raise ValueError(f"invalid data set {self.raw()}: {', '.join(report.failures)}")
        if list(cones) != sorted(cones, key=lambda cd: cd.key):
            raise ValueError("cones not in canonical order; use canonical_form()")
        if self.n > 1 and lcm(*(cd.x for cd in cones)) != self.n:
            # cannot happen for a valid tuple
            raise AssertionError(f"lcm of cone orders differs from degree in {self.raw()}")

    @property
    def ell(self) -> int:
        return len(self.cones)

    @property
    def degree(self) -> int:
        return self.n

    @property
    def genus(self) -> int:
        return genus(self)

    @property
    def k(self) -> int:
        """Inverse of ``a`` modulo ``n``, in ``[1, n]``."""
        return inverse_mod(self.a, self.n)

    def raw(self) -> tuple:
        return (self.n, self.g_orb, self.a, [(cd.c, cd.x) for cd in self.cones])

    @property
    def sort_key(self) -> tuple:
        return (self.n, self.g_orb, self.a, tuple((cd.c, cd.x) for cd in self.cones))

    def __lt__(self, other: "DataSet") -> bool:
        return self.sort_key < other.sort_key

    def to_dict(self) -> dict:
        return {"n": self.n, "gt": self.g_orb, "a": self.a,
                "cones": [[cd.c, cd.x] for cd in self.cones]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(", ", ": "))

    @classmethod
    def from_dict(cls, d: dict) -> "DataSet":
        return canonical_form((d["n"], d["gt"], d["a"], [tuple(p) for p in d["cones"]]))

    def __str__(self):
        cones = ", ".join(f"({cd.c},{cd.x})" for cd in self.cones)
        return f"({self.n}, {self.g_orb}, {self.a}; {cones})" if cones else \
            f"({self.n}, {self.g_orb}, {self.a};)"


def trivial(g: int) -> DataSet:
    """The degree-one data set ``(1, g, 1;)``."""
    return DataSet(1, g, 1, ())


def canonical_form(candidate) -> DataSet:
    """Sort the cones of a valid tuple ascending by ``(x, c)``; idempotent."""
    if isinstance(candidate, DataSet):
        return candidate
    report = validate(candidate)
    if not report:
        raise ValueError(f"invalid data set {candidate!r}: {', '.join(report.failures)}")
    n, gt, a, cones = candidate
    ordered = sorted((ConeDatum(c, x) for c, x in cones), key=lambda cd: cd.key)
    return DataSet(n, gt, a, tuple(ordered))


def genus(D: DataSet) -> int:
    twice = 2 * D.g_orb * D.n + 1 - D.n + sum(cd.weight(D.n) for cd in D.cones)
    if twice % 2:
        raise ArithmeticError(f"half-integral genus for {D}")
    return twice // 2


def inverse_mod(a: int, n: int) -> int:
    """Return ``k`` in ``[1, n]`` with ``a*k = 1 (mod n)``."""
    if n < 1:
        raise ValueError("modulus must be positive")
    if n == 1:
        return 1
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit modulo {n}")
    return pow(a, -1, n)


def turning_fraction(D: DataSet) -> Fraction:
    """Rotation at the distinguished point as a fraction of a full turn, in ``[0, 1)``."""
    return Fraction(inverse_mod(D.a, D.n) % D.n, D.n)


def is_spherical(D: DataSet) -> bool:
    return D.n > 1 and D.g_orb == 0


def reconstruct_a(n: int, cones: Iterable[tuple[int, int]]) -> int:
    """The residue ``a`` forced by the cones, in ``[1, n]``."""
    r = (-sum((n // x) * c for c, x in cones)) % n
    return r or n


_PAIR = re.compile(r"\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)")
_TEXT = re.compile(
    r"^\s*\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*;(.*)\)\s*$", re.S)


def parse_data_set(text: str, normalize: bool = True) -> tuple:
    """Parse the text form ``(n, gt, a; (c1,x1), ...)`` or the JSON form.

    Returns a raw tuple suitable for :func:`validate`.  With ``normalize``
    negative or oversized residues are reduced to least positive
    representatives; validation never does this itself.
    """
    s = text.strip()
    if s.startswith("{"):
        d = json.loads(s)
        n, gt, a = d["n"], d["gt"], d["a"]
        cones = [tuple(p) for p in d["cones"]]
    else:
        m = _TEXT.match(s)
        if not m:
            raise ValueError(f"cannot parse data set literal: {text!r}")
        n, gt, a = (int(v) for v in m.groups()[:3])
        rest = m.group(4)
        cones = [(int(c), int(x)) for c, x in _PAIR.findall(rest)]
        leftover = _PAIR.sub("", rest).replace(",", "").strip()
        if leftover:
            raise ValueError(f"cannot parse cone list: {rest!r}")
    if normalize:
        if n >= 1:
            a = a % n or n
        cones = [(c % x if x > 0 else c, x) for c, x in cones]
    return (n, gt, a, cones)


def format_pair(d1: DataSet, d2: DataSet) -> str:
    return f"({d1}, {d2})"

