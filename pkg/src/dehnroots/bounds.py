"""Closed-form degree bounds, spherical thresholds, and the theorem checker.

``verify_theorems`` treats every bound and non-existence statement as a
falsifiable claim about the enumerated data.  None of them is used to prune
the enumeration.
"""
from __future__ import annotations

import json
import logging
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .core import is_spherical
from .enumeration import enumerate_data_sets, enumerate_for_genus, max_automorphism_order
from .pairing import enumerate_root_classes, max_root_degree, splits, witness_pair

log = logging.getLogger(__name__)

__all__ = [
    "PrimePowerProfile",
    "bound_U",
    "bound_U_pair",
    "bound_U_stable",
    "spherical_threshold",
    "ell2_threshold",
    "TheoremCheck",
    "TheoremReport",
    "verify_theorems",
]


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class PrimePowerProfile:
    """Largest prime-power factor and smallest prime divisor of ``n``."""

    n: int
    max_prime_power: int
    min_prime: int

    @classmethod
    def of(cls, n: int) -> "PrimePowerProfile":
        if n < 2:
            raise ValueError("profile needs n >= 2")
        powers = {p: p ** e for p, e in _factor(n).items()}
        top = max(powers.values())
        # distinct primes never share a prime power, so the maximum is unique
        assert sum(1 for v in powers.values() if v == top) == 1
        return cls(n, top, min(powers))


def bound_U(g: int) -> int:
    if g < 2:
        raise ValueError("genus must be >= 2")
    return 4 * g * g + 2 * g


def bound_U_pair(g1: int, g2: int) -> int:
    if not g1 >= g2 >= 1:
        raise ValueError(f"need g1 >= g2 >= 1, got ({g1}, {g2})")
    return 16 * g1 * g2 + 4 * (2 * g1 - g2) - 2


def bound_U_stable(g1: int, g2: int, N: int) -> int:
    """Stable bound, valid for odd ``N >= 1`` when both genera exceed ``N + 3``."""
    if N < 1 or N % 2 == 0:
        raise ValueError(f"N must be a positive odd integer, got {N}")
    if g1 < g2:
        raise ValueError("need g1 >= g2")
    if g2 <= N + 3:
        raise ValueError(f"both genera must exceed N+3={N + 3}, got ({g1}, {g2})")
    return 16 * g1 * g2 + 4 * (2 * g1 - N * g2) - 2 * N


def spherical_threshold(g: int) -> Fraction:
    """Degrees strictly above ``(2/3)(2g-1)`` force a spherical action."""
    if g < 1:
        raise ValueError("genus must be >= 1")
    return Fraction(2, 3) * (2 * g - 1)


def ell2_threshold(n: int, g: int) -> Fraction:
    """Degrees strictly above this force two cones for spherical actions."""
    prof = PrimePowerProfile.of(n)
    denom = 2 - Fraction(2, prof.min_prime) - Fraction(1, prof.max_prime_power)
    if denom <= 0:
        raise ArithmeticError(f"non-positive denominator for n={n}")
    return Fraction(2 * g - 1) / denom


# ------------------------------------------------------------ theorem checks

@dataclass
class TheoremCheck:
    theorem: str
    statement: str
    range: str
    instances: int = 0
    witnesses: list = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.witnesses:
            return "fail"
        return "pass" if self.instances else "vacuous"

    def record(self, ok: bool, witness=None) -> None:
        self.instances += 1
        if not ok:
            self.witnesses.append(witness)

    def to_dict(self) -> dict:
        return {"theorem": self.theorem, "statement": self.statement, "range": self.range,
                "status": self.status, "instances": self.instances,
                "witnesses": [_jsonable(w) for w in self.witnesses]}


def _jsonable(w):
    if hasattr(w, "to_dict"):
        return w.to_dict()
    if isinstance(w, (list, tuple)):
        return [_jsonable(v) for v in w]
    if isinstance(w, dict):
        return {k: _jsonable(v) for k, v in w.items()}
    return w


@dataclass
class TheoremReport:
    g_max: int
    checks: list[TheoremCheck]

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def check(self, theorem: str) -> TheoremCheck:
        return next(c for c in self.checks if c.theorem == theorem)

    def to_json(self, indent=2) -> str:
        return json.dumps([c.to_dict() for c in self.checks], indent=indent)

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            lines.append(f"{c.status.upper():8} {c.theorem:28} {c.range:24} "
                         f"({c.instances} instances) {c.statement}")
            for w in c.witnesses[:5]:
                lines.append(f"         witness: {json.dumps(_jsonable(w))}")
        lines.append("ALL PASS" if self.passed else "FAILURES PRESENT")
        return "\n".join(lines)


_STATEMENTS = {
    "lcm-equals-degree": "lcm of cone orders equals n for every nontrivial data set",
    "no-trivial-ell0": "no nontrivial data set has zero cones",
    "no-spherical-ell1": "no spherical data set has exactly one cone",
    "spherical-threshold": "n > (2/3)(2g-1) forces orbit genus 0",
    "ell2-threshold": "spherical and n above the prime-power threshold forces two cones",
    "hyperelliptic-ell": "spherical degree-2 data sets have 2g+1 cones",
    "degree3-ell": "spherical degree-3 data sets have g+1 cones",
    "spherical-3-2-iff-g1": "a spherical (3,2) data set exists iff g = 1",
    "spherical-6-2-iff-g-le-2": "a spherical (6,2) data set exists iff g <= 2",
    "even-ell2": "even n >= 4 with n > (4/3)(2g-1): spherical forces two cones",
    "odd-ell2": "odd n >= 5 with n > (15/17)(2g-1): spherical forces two cones",
    "max-order": "no data set of degree above 4g+2; degree 4g+2 is realized",
    "no-order-4g+1": "no data set of degree 4g+1",
    "odd-action-bound": "no spherical (4g-N, 2) data set when N odd and g > N+3",
    "not-both-2-mod-4": "no root class has both degrees = 2 mod 4",
    "pair-bound": "root degree <= 16 g1 g2 + 4(2 g1 - g2) - 2",
    "genus-bound": "root degree <= 4g^2 + 2g",
    "guaranteed-degree": "a root of degree lcm(4 g1, 4 g2 + 2) exists",
    "lower-bound": "m(g) >= 2g^2 + 2g",
    "stable-bound": "root degree <= 16 g1 g2 + 4(2 g1 - N g2) - 2N when both g_i > N+3",
    "spectrum-agrees": "residue-spectrum maximum equals the enumerated maximum",
}


def _new_checks(g_max: int) -> dict[str, TheoremCheck]:
    per_genus = f"g=1..{g_max}"
    per_split = f"splits of g=2..{g_max}"
    ranges = {k: per_genus for k in _STATEMENTS}
    for k in ("not-both-2-mod-4", "pair-bound", "genus-bound", "guaranteed-degree",
              "stable-bound", "spectrum-agrees"):
        ranges[k] = per_split
    ranges["lower-bound"] = f"g=2..{g_max}"
    ranges["odd-action-bound"] = f"odd N, N+3 < g <= {g_max}"
    return {k: TheoremCheck(k, s, ranges[k]) for k, s in _STATEMENTS.items()}


def _check_genus(g: int) -> list[tuple[str, bool, object]]:
    """Per-genus data set checks, as ``(theorem, ok, witness)`` records."""
    out = []
    by_n = enumerate_for_genus(g)
    for n, lst in by_n.items():
        for d in lst:
            if n == 1:
                continue
            out.append(("lcm-equals-degree", lcm(*(c.x for c in d.cones)) == n, d))
            out.append(("no-trivial-ell0", d.ell >= 1, d))
            sph = is_spherical(d)
            if sph:
                out.append(("no-spherical-ell1", d.ell != 1, d))
            if n > spherical_threshold(g):
                out.append(("spherical-threshold", d.g_orb == 0, d))
            if sph and n > ell2_threshold(n, g):
                out.append(("ell2-threshold", d.ell == 2, d))
            if sph and n == 2:
                out.append(("hyperelliptic-ell", d.ell == 2 * g + 1, d))
            if sph and n == 3:
                out.append(("degree3-ell", d.ell == g + 1, d))
            if sph and n >= 4 and n % 2 == 0 and n > Fraction(4, 3) * (2 * g - 1):
                out.append(("even-ell2", d.ell == 2, d))
            if sph and n >= 5 and n % 2 == 1 and n > Fraction(15, 17) * (2 * g - 1):
                out.append(("odd-ell2", d.ell == 2, d))
    has32 = any(is_spherical(d) and d.ell == 2 for d in by_n[3])
    out.append(("spherical-3-2-iff-g1", has32 == (g == 1), {"g": g, "exists": has32}))
    has62 = any(is_spherical(d) and d.ell == 2 for d in by_n[6])
    out.append(("spherical-6-2-iff-g-le-2", has62 == (g <= 2), {"g": g, "exists": has62}))
    top = max_automorphism_order(g)
    out.append(("max-order", bool(by_n[top]), {"g": g, "n": top}))
    for n in range(top + 1, top + 5):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            found = enumerate_data_sets(n, g)
        out.append(("max-order", not found, {"g": g, "n": n, "found": found[:3]}))
    found = by_n[4 * g + 1]
    out.append(("no-order-4g+1", not found, {"g": g, "found": found[:3]}))
    for N in range(1, g - 3, 2):
        n = 4 * g - N
        bad = [d for d in by_n.get(n, []) if is_spherical(d) and d.ell == 2]
        out.append(("odd-action-bound", not bad, {"g": g, "N": N, "found": bad[:3]}))
    return out


def _check_split(g1: int, g2: int) -> list[tuple[str, bool, object]]:
    out = []
    classes = enumerate_root_classes(g1, g2)
    for rc in classes:
        both = rc.d1.n % 4 == 2 and rc.d2.n % 4 == 2
        out.append(("not-both-2-mod-4", not both, rc))
    m = max((rc.degree for rc in classes), default=0)
    out.append(("pair-bound", m <= bound_U_pair(g1, g2), {"split": [g1, g2], "max": m}))
    out.append(("genus-bound", m <= bound_U(g1 + g2), {"split": [g1, g2], "max": m}))
    w = witness_pair(g1, g2)
    present = w in set(classes)
    out.append(("guaranteed-degree",
                present and w.degree == lcm(4 * g1, 4 * g2 + 2) and m >= w.degree,
                {"split": [g1, g2], "witness": w}))
    for N in range(1, g2 - 3, 2):
        out.append(("stable-bound", m <= bound_U_stable(g1, g2, N),
                    {"split": [g1, g2], "N": N, "max": m}))
    fast = max_root_degree(g1, g2)
    out.append(("spectrum-agrees", fast == m, {"split": [g1, g2], "enumerated": m, "spectrum": fast}))
    return out


def _run(task):
    kind, args = task
    return _check_genus(*args) if kind == "genus" else _check_split(*args)


def verify_theorems(g_max: int, *, workers: int = 1) -> TheoremReport:
    """Check every bound and non-existence statement for all genera up to ``g_max``."""
    if g_max < 2:
        raise ValueError("g_max must be >= 2")
    tasks = [("genus", (g,)) for g in range(1, g_max + 1)]
    tasks += [("split", s) for g in range(2, g_max + 1) for s in splits(g)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run, tasks))
    else:
        results = [_run(t) for t in tasks]
    checks = _new_checks(g_max)
    split_max: dict[int, int] = {}
    for (kind, args), recs in zip(tasks, results):
        for name, ok, witness in recs:
            checks[name].record(ok, witness)
            if kind == "split" and name == "pair-bound":
                g = sum(args)
                split_max[g] = max(split_max.get(g, 0), witness["max"])
    for g in range(2, g_max + 1):
        checks["lower-bound"].record(split_max[g] >= 2 * g * g + 2 * g, {"g": g, "m": split_max[g]})
    log.info("verified %d theorem families up to g=%d", len(checks), g_max)
    return TheoremReport(g_max, list(checks.values()))
