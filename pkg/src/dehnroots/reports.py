"""Maximum-degree tables, classification listings, and the errata cross-check.

The printed classification lists and tables ship as JSON under ``data/``.
They are compared against recomputed values and never used as ground truth.
"""
from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from functools import lru_cache
from importlib import resources

from .bounds import bound_U, bound_U_pair, bound_U_stable
from .core import DataSet, genus, inverse_mod, parse_data_set, validate
from .pairing import (RootClass, enumerate_root_classes, is_compatible_pair,
                      max_degree_for_genus, max_root_degree, splits)

__all__ = [
    "BoundRow",
    "ratio_string",
    "table1",
    "table2",
    "rows_to_csv",
    "rows_to_markdown",
    "rows_to_json",
    "table_discrepancies",
    "ErrataEntry",
    "ClassificationReport",
    "classification_report",
    "printed_classification",
    "printed_tables",
]


def ratio_string(m: int, U: int) -> str:
    """``m/U`` rounded half-up to two decimals."""
    return str((Decimal(m) / Decimal(U)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class BoundRow:
    g: int
    m: int
    U: int
    ratio: str
    split: tuple[int, int] | None = None
    U_stable: int | None = None
    m_spherical: int | None = None

    def to_dict(self) -> dict:
        g1, g2 = self.split if self.split else (None, None)
        return {"g": self.g, "g1": g1, "g2": g2, "m": self.m, "U_stable": self.U_stable,
                "U": self.U, "ratio": self.ratio, "m_spherical": self.m_spherical}


def table1(g_from: int, g_to: int) -> list[BoundRow]:
    """Rows ``(g, m(g), U(g), ratio)``.

    ``m_spherical`` is the same maximum restricted to pairs of spherical
    two-cone data sets; it is reported alongside so any gap is visible.
    """
    if not 2 <= g_from <= g_to:
        raise ValueError("need 2 <= g_from <= g_to")
    rows = []
    spectra: dict = {}
    for g in range(g_from, g_to + 1):
        m = max_degree_for_genus(g, spectra=spectra, with_root=False).m
        ms = max_degree_for_genus(g, spherical_ell2=True, spectra=spectra, with_root=False).m
        U = bound_U(g)
        rows.append(BoundRow(g, m, U, ratio_string(m, U), m_spherical=ms))
    return rows


def table2(N: int, g_from: int, g_to: int) -> list[BoundRow]:
    """Rows for every split with both genera above ``N + 3``, sorted by ``(g, g1)``."""
    if N < 1 or N % 2 == 0:
        raise ValueError("N must be a positive odd integer")
    rows = []
    spectra: dict = {}
    for g in range(g_from, g_to + 1):
        for g1, g2 in splits(g):
            if g2 <= N + 3:
                continue
            m = max_root_degree(g1, g2, spectra=spectra)
            ms = max_root_degree(g1, g2, spherical_ell2=True, spectra=spectra)
            U = bound_U_pair(g1, g2)
            rows.append(BoundRow(g, m, U, ratio_string(m, U), split=(g1, g2),
                                 U_stable=bound_U_stable(g1, g2, N), m_spherical=ms))
    return rows


CSV_HEADERS = ["g", "g1", "g2", "m", "U_stable", "U", "ratio"]


def rows_to_csv(rows: list[BoundRow]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_HEADERS, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: ("" if v is None else v) for k, v in r.to_dict().items()})
    return buf.getvalue()


def rows_to_json(rows: list[BoundRow]) -> str:
    return json.dumps([r.to_dict() for r in rows], indent=2)


def rows_to_markdown(rows: list[BoundRow]) -> str:
    if rows and rows[0].split is not None:
        N = _stable_N(rows[0])
        head = ["g", "(g1,g2)", "m(g1,g2)", f"U(g1,g2,{N})", "U(g1,g2)"]
        body = [[r.g, f"({r.split[0]}, {r.split[1]})", r.m, r.U_stable, r.U] for r in rows]
    else:
        head = ["g", "m(g)", "U(g)", "m(g)/U(g)"]
        body = [[r.g, r.m, r.U, r.ratio] for r in rows]
    lines = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
    lines += ["| " + " | ".join(map(str, b)) + " |" for b in body]
    return "\n".join(lines) + "\n"


def rows_to_text(rows: list[BoundRow]) -> str:
    out = []
    for r in rows:
        if r.split:
            out.append(f"g={r.g} split={r.split[0]},{r.split[1]} m={r.m} "
                       f"U_stable={r.U_stable} U={r.U}")
        else:
            out.append(f"g={r.g} m={r.m} U={r.U} ratio={r.ratio}")
    return "\n".join(out) + "\n"


def _stable_N(row: BoundRow) -> int:
    # recover N from U_stable = 16 g1 g2 + 8 g1 - N (4 g2 + 2)
    g1, g2 = row.split
    return (16 * g1 * g2 + 8 * g1 - row.U_stable) // (4 * g2 + 2)


@lru_cache(maxsize=None)
def _load(name: str) -> dict:
    with resources.files("dehnroots").joinpath("data").joinpath(name).open() as fh:
        return json.load(fh)


def printed_tables() -> dict:
    return _load("printed_tables.json")


def printed_classification() -> dict:
    return _load("printed_classification.json")


def table_discrepancies(rows: list[BoundRow]) -> list[dict]:
    """Differences between regenerated rows and the printed tables on their overlap."""
    printed = printed_tables()
    out = []
    for r in rows:
        if r.split is None:
            ref = next((p for p in printed["table1"] if p["g"] == r.g), None)
            fields = ("m", "U", "ratio")
        else:
            ref = next((p for p in printed["table2"]["rows"]
                        if (p["g1"], p["g2"]) == r.split), None)
            if ref is not None and _stable_N(r) != printed["table2"]["N"]:
                ref = None
            fields = ("m", "U_stable", "U")
        if ref is None:
            continue
        for f in fields:
            if getattr(r, f) != ref[f]:
                out.append({"g": r.g, "split": r.split, "field": f,
                            "printed": ref[f], "computed": getattr(r, f)})
        if r.m_spherical is not None and r.m_spherical != r.m:
            out.append({"g": r.g, "split": r.split, "field": "m_spherical",
                        "printed": None, "computed": r.m_spherical})
    return out


# ------------------------------------------------------------ classification

@dataclass
class ErrataEntry:
    location: str
    printed: str | None
    status: str  # confirmed | typo-suspected | missing
    corrected: str | None = None
    reason: str | None = None

    def to_dict(self) -> dict:
        return {"location": self.location, "printed": self.printed, "status": self.status,
                "corrected": self.corrected, "reason": self.reason}


@dataclass
class ClassificationReport:
    g1: int
    g2: int
    groups: dict[int, list[RootClass]]
    errata: list[ErrataEntry] = field(default_factory=list)
    notes: list[dict] = field(default_factory=list)

    def count(self, status: str) -> int:
        return sum(1 for e in self.errata if e.status == status)

    def to_dict(self) -> dict:
        return {
            "g1": self.g1, "g2": self.g2,
            "degrees": {str(n): [rc.to_dict() for rc in lst] for n, lst in self.groups.items()},
            "errata": [e.to_dict() for e in self.errata],
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def errata_json(self) -> str:
        """Just the non-confirmed cross-check entries."""
        return json.dumps([e.to_dict() for e in self.errata if e.status != "confirmed"], indent=2)

    def to_text(self) -> str:
        lines = [f"Root classes for genus split ({self.g1}, {self.g2})"]
        for n, lst in self.groups.items():
            lines.append(f"For n = {n}:")
            lines += [f"  ({_roman(i + 1)}) {rc}" for i, rc in enumerate(lst)]
        if self.errata:
            c = Counter(e.status for e in self.errata)
            lines.append("")
            lines.append("Cross-check against printed list: "
                         + ", ".join(f"{k} {c[k]}" for k in ("confirmed", "typo-suspected", "missing")))
            for e in self.errata:
                if e.status == "confirmed":
                    continue
                shown = f"printed {e.printed}" if e.printed else "absent from printed list"
                lines.append(f"  [{e.status}] {e.location}: {shown}")
                if e.reason:
                    lines.append(f"      reason: {e.reason}")
                if e.corrected:
                    lines.append(f"      corrected: {e.corrected}")
        for note in self.notes:
            lines.append(f"  note: {note['kind']} {note['label'] if 'label' in note else note['tuple']}: "
                         f"{note['detail']}")
        return "\n".join(lines) + "\n"


def _roman(i: int) -> str:
    vals = [(10, "x"), (9, "ix"), (5, "v"), (4, "iv"), (1, "i")]
    out = ""
    for v, s in vals:
        while i >= v:
            out += s
            i -= v
    return out


def _cone_diff(a: list, b: list) -> int:
    ca, cb = Counter(map(tuple, a)), Counter(map(tuple, b))
    return max(sum((ca - cb).values()), sum((cb - ca).values()))


def _raw_distance(raw: tuple, d: DataSet) -> int:
    n, gt, a, cones = raw
    return (n != d.n) + (gt != d.g_orb) + (a != d.a) + _cone_diff(cones, [(c.c, c.x) for c in d.cones])


def _pair_distance(p1: tuple, p2: tuple, rc: RootClass) -> int:
    return min(_raw_distance(p1, rc.d1) + _raw_distance(p2, rc.d2),
               _raw_distance(p1, rc.d2) + _raw_distance(p2, rc.d1))


def _fmt_raw(raw: tuple) -> str:
    n, gt, a, cones = raw
    inner = ", ".join(f"({c},{x})" for c, x in cones)
    return f"({n}, {gt}, {a}; {inner})" if inner else f"({n}, {gt}, {a};)"


def _check_printed(entry: dict, g1: int, g2: int) -> tuple[RootClass | None, str | None]:
    raws = [parse_data_set(entry["d1"], normalize=False), parse_data_set(entry["d2"], normalize=False)]
    problems = []
    for label, raw in zip(entry["labels"], raws):
        rep = validate(raw)
        if not rep:
            problems.append(f"{label} = {_fmt_raw(raw)} fails validation ({', '.join(rep.failures)})")
    if problems:
        return None, "; ".join(problems)
    d1, d2 = (DataSet.from_dict({"n": r[0], "gt": r[1], "a": r[2], "cones": r[3]}) for r in raws)
    if sorted((genus(d1), genus(d2)), reverse=True) != [g1, g2]:
        return None, f"genera ({genus(d1)}, {genus(d2)}) do not match split ({g1}, {g2})"
    if not is_compatible_pair(d1, d2):
        from math import lcm
        n = lcm(d1.n, d2.n)
        k1, k2 = inverse_mod(d1.a, d1.n), inverse_mod(d2.a, d2.n)
        lhs = ((n // d1.n) * k1 + (n // d2.n) * k2) % n
        return None, f"pair congruence fails: {n // d1.n}*{k1} + {n // d2.n}*{k2} = {lhs} mod {n}, not 1"
    rc = RootClass.of(d1, d2)
    if rc.degree != entry["degree"]:
        return None, f"listed under n={entry['degree']} but the pair has degree {rc.degree}"
    return rc, None


def _label_notes(entries: list[dict]) -> list[dict]:
    by_label: dict[str, list] = {}
    by_tuple: dict[tuple, list] = {}
    for e in entries:
        for label, text in zip(e["labels"], (e["d1"], e["d2"])):
            if label not in e.get("defines", []):
                continue
            raw = parse_data_set(text, normalize=False)
            key = (raw[0], raw[1], raw[2], tuple(sorted(map(tuple, raw[3]), key=lambda p: (p[1], p[0]))))
            by_label.setdefault(label, []).append((e["location"], key))
            by_tuple.setdefault(key, []).append((e["location"], label))
    notes = []
    for label, defs in by_label.items():
        if len({k for _, k in defs}) > 1:
            notes.append({"kind": "label-collision", "label": label,
                          "detail": "; ".join(f"{loc}: {_fmt_raw(k)}" for loc, k in defs)})
    for key, uses in by_tuple.items():
        labels = sorted({lab for _, lab in uses})
        if len(labels) > 1:
            notes.append({"kind": "alias", "tuple": _fmt_raw(key),
                          "detail": "defined as " + ", ".join(labels)})
    return notes


def classification_report(g1: int, g2: int) -> ClassificationReport:
    """Root classes grouped by degree, cross-checked against any printed list for the split."""
    classes = enumerate_root_classes(g1, g2)
    groups: dict[int, list[RootClass]] = {}
    for rc in classes:
        groups.setdefault(rc.degree, []).append(rc)
    report = ClassificationReport(g1, g2, groups)
    printed = printed_classification()["splits"].get(f"{g1},{g2}")
    if printed is None:
        return report

    known = set(classes)
    matched: set[RootClass] = set()
    pending = []
    for entry in printed:
        rc, reason = _check_printed(entry, g1, g2)
        text = f"({entry['d1']}, {entry['d2']})"
        if rc is not None and rc in known:
            matched.add(rc)
            report.errata.append(ErrataEntry(entry["location"], text, "confirmed"))
        else:
            reason = reason or "valid pair not produced by the enumeration"
            err = ErrataEntry(entry["location"], text, "typo-suspected", reason=reason)
            report.errata.append(err)
            pending.append((entry, err))
    unmatched = [rc for rc in classes if rc not in matched]
    for entry, err in pending:
        pool = [rc for rc in unmatched if rc.degree == entry["degree"]] or unmatched
        if not pool:
            continue
        p1 = parse_data_set(entry["d1"], normalize=False)
        p2 = parse_data_set(entry["d2"], normalize=False)
        best = min(pool, key=lambda rc: (_pair_distance(p1, p2, rc), rc.sort_key))
        err.corrected = str(best)
        unmatched.remove(best)
    for rc in unmatched:
        report.errata.append(ErrataEntry(f"genus {g1 + g2}, n={rc.degree} (not printed)", None,
                                         "missing", corrected=str(rc)))
    report.notes = _label_notes(printed)
    return report
