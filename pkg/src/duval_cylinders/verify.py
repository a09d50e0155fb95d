"""Independent checks of a cylinder certificate.

The complement check is structural.  Each singular fibre is contracted onto a
single component, which gives a Hirzebruch surface ``F_N`` with minimal section
the image of ``D_0``.  The removed curves must then become:

* ``fiber``: ``D_0``, one general fibre and every singular fibre, whose
  complement is ``A^1 x (A^1 minus m points)``;
* ``star`` 2: ``D_0``, a second section ``G`` with ``G.D_0 = 0`` and
  ``G^2 = N``, and one fibre;
* ``star`` 3: ``D_0``, a second section with ``G.D_0 = 1`` and ``G^2 = N + 2``,
  and the general fibre through their meeting point.

In the star cases a singular fibre may keep one terminal (-1)-curve.  That
curve becomes a fibre that is not removed, so everything contracted onto it
must meet ``D_0`` or ``G``.  Only lattice, surface and fibration data are used.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional

from duval_cylinders.fibration import FibrationData, SingularFiber
from duval_cylinders.lattice import DivisorClass, canonical_class, pair
from duval_cylinders.surface import ClassOnS, SurfaceModel, _components, mumford_pullback


@dataclass
class VerifyReport:
    equivalence_ok: bool = False
    effective_ok: bool = False
    roots_covered_ok: bool = False
    pattern_ok: bool = False
    pattern_detail: dict = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return self.equivalence_ok and self.effective_ok and self.roots_covered_ok and self.pattern_ok

    def to_json(self) -> dict:
        return {
            "accepted": self.accepted,
            "equivalence_ok": self.equivalence_ok,
            "effective_ok": self.effective_ok,
            "roots_covered_ok": self.roots_covered_ok,
            "pattern_ok": self.pattern_ok,
            "pattern_detail": self.pattern_detail,
            "failures": list(self.failures),
        }


def _contract(matrix: dict, contract: set) -> Optional[dict]:
    """Blow down ``contract`` one (-1)-curve at a time; ``None`` if that gets stuck."""
    m = {u: dict(row) for u, row in matrix.items()}
    left = set(contract)
    while left:
        e = next((x for x in sorted(left) if m[x][x] == -1), None)
        if e is None:
            return None
        left.discard(e)
        row = m.pop(e)
        for u in m:
            m[u].pop(e)
        for u in m:
            for v in m:
                m[u][v] += row[u] * row[v]
    return m


def _is_section_curve(surface: SurfaceModel, g: DivisorClass) -> bool:
    if g in surface.negative_curves:
        return True
    K = canonical_class(surface.k)
    return pair(g, g) == 0 and pair(g, K) == -2 and all(pair(g, c) >= 0 for c in surface.negative_curves)


def _check_star(
    surface: SurfaceModel,
    fib: FibrationData,
    gamma: DivisorClass,
    removed: set,
    general_fibres: int,
    variant: int,
    detail: dict,
) -> list[str]:
    problems = []
    d0 = fib.section
    if not _is_section_curve(surface, gamma):
        problems.append("second section is not the class of a smooth rational curve")
    partial: list[tuple[SingularFiber, DivisorClass]] = []
    full: list[SingularFiber] = []
    for fibre in fib.fibers:
        kept = [c for c in fibre.components if c.cls not in removed]
        if not kept:
            full.append(fibre)
        elif len(kept) == 1 and kept[0].self_int == -1 and kept[0].multiplicity == 1:
            partial.append((fibre, kept[0].cls))
        else:
            problems.append(f"fibre {fibre.index} keeps {len(kept)} curves")
    if len(full) + general_fibres != 1:
        problems.append(f"{len(full) + general_fibres} fibres removed entirely, expected 1")
    if variant == 3 and general_fibres != 1:
        problems.append("the extra fibre through the meeting point must be a general fibre")
    # whatever is contracted onto a kept curve must land on the boundary
    for fibre, kept in partial:
        rest = [c.cls for c in fibre.components if c.cls != kept]
        groups = _components(len(rest), lambda a, b: a != b and pair(rest[a], rest[b]) > 0)
        for group in groups:
            if not any(pair(rest[i], d0) > 0 or pair(rest[i], gamma) > 0 for i in group):
                problems.append(f"fibre {fibre.index}: a contracted part misses both sections")
    if variant == 3:
        if pair(gamma, d0) != 1:
            problems.append("the two sections do not meet once")
        if any(pair(c.cls, gamma) > 0 and pair(c.cls, d0) > 0 for f in fib.fibers for c in f.components):
            problems.append("the two sections meet on a singular fibre")
    if problems:
        return problems

    curves = {"D0": d0, "G": gamma}
    for fibre in fib.fibers:
        for pos, comp in enumerate(fibre.components):
            curves[(fibre.index, pos)] = comp.cls
    matrix = {u: {v: pair(cu, cv) for v, cv in curves.items()} for u, cu in curves.items()}
    choices = []
    for fibre, kept in partial:
        pos = next(p for p, c in enumerate(fibre.components) if c.cls == kept)
        choices.append([(fibre.index, pos)])
    for fibre in full:
        choices.append([(fibre.index, p) for p in range(len(fibre.components))])
    for survivors in product(*choices):
        keep = set(survivors)
        drop = {u for u in curves if isinstance(u, tuple) and u not in keep}
        m = _contract(matrix, drop)
        if m is None:
            continue
        if any(m[u][u] != 0 or m[u]["D0"] != 1 or m[u]["G"] != 1 for u in keep):
            continue
        N = -m["D0"]["D0"]
        meet, g2 = m["G"]["D0"], m["G"]["G"]
        found = 2 if (meet, g2) == (0, N) else 3 if (meet, g2) == (1, N + 2) else None
        detail.update({"hirzebruch_degree": int(N), "sections_meet": int(meet), "second_section_square": int(g2)})
        if found == variant:
            detail["matched_variant"] = variant
            return []
    return [f"no contraction to a Hirzebruch surface gives star variant {variant}"]


def verify_certificate(surface: SurfaceModel, fib: FibrationData, H: ClassOnS, cert) -> VerifyReport:
    report = VerifyReport()
    fail = report.failures.append
    k = surface.k
    f = fib.fiber_class
    same_fibration = cert.fiber_class == f and cert.section == fib.section

    # (a) effectiveness
    negative = [t.curve for t in cert.support if t.coeff < 0]
    report.effective_ok = not negative and cert.epsilon >= 0
    if negative:
        fail(f"negative coefficients on {negative}")
    if cert.epsilon < 0:
        fail("negative epsilon")

    # (b) exact Q-linear equivalence, tested on root-orthogonal lifts
    total = DivisorClass.zero(k)
    for term in cert.support:
        total = total + mumford_pullback(surface, term.cls).rep * term.coeff
    report.equivalence_ok = total == H.rep
    if not report.equivalence_ok:
        fail("sum of coefficients times pullbacks differs from H")

    # (c) every singular point is removed, and lies on Supp(D)
    removed_list = [cls for _, cls in cert.removed]
    removed = set(removed_list)
    carried = {t.cls for t in cert.support if t.coeff > 0}
    roots = list(surface.roots)
    missing = [str(r) for r in roots if r not in removed]
    groups = _components(len(roots), lambda a, b: a != b and pair(roots[a], roots[b]) > 0)
    isolated = [g for g in groups if not any(pair(roots[i], c) > 0 for i in g for c in carried)]
    report.roots_covered_ok = not missing and not isolated
    if missing:
        fail(f"roots not removed: {missing}")
    if isolated:
        fail(f"{len(isolated)} singular points off the support of D")

    # (d) the removed set and the complement pattern
    problems = [] if same_fibration else ["certificate refers to a different fibration"]
    if removed != carried | set(roots):
        problems.append("removed curves differ from the support of D plus the roots")
    if any(removed_list.count(c) > 1 for c in removed if c != f):
        problems.append("a curve is listed twice")
    if fib.section not in removed:
        problems.append("D_0 is not removed")
    general_fibres = removed_list.count(f)
    components = {c.cls for fibre in fib.fibers for c in fibre.components}
    sections = [c for c in removed if c != fib.section and pair(c, f) == 1]
    others = [c for c in removed if c not in components and c != fib.section and c != f and c not in sections]
    if others:
        problems.append(f"removed curves outside the fibration frame: {[str(c) for c in others]}")
    census = {
        "general_fibres": general_fibres,
        "second_sections": len(sections),
        "fully_removed_fibres": sum(all(c.cls in removed for c in fibre.components) for fibre in fib.fibers),
        "singular_fibres": len(fib.fibers),
    }
    report.pattern_detail = {"pattern": cert.pattern, "param": cert.param, "census": census}
    if not problems:
        if cert.pattern == "fiber":
            if sections:
                problems.append("a second section is removed in the fibre pattern")
            if general_fibres != 1:
                problems.append(f"{general_fibres} general fibres removed, expected 1")
            if census["fully_removed_fibres"] != len(fib.fibers):
                problems.append("a singular fibre is not removed entirely")
            if cert.param != len(fib.fibers):
                problems.append(f"pattern parameter {cert.param} but {len(fib.fibers)} singular fibres")
            if not problems:
                report.pattern_detail["matched_variant"] = "fiber"
        elif cert.pattern == "star":
            if len(sections) != 1:
                problems.append(f"{len(sections)} second sections removed, expected 1")
            elif cert.param not in (2, 3):
                problems.append(f"unknown star variant {cert.param}")
            else:
                problems += _check_star(
                    surface, fib, sections[0], removed, general_fibres, cert.param, report.pattern_detail
                )
        else:
            problems.append(f"unknown pattern {cert.pattern!r}")
    report.pattern_ok = not problems
    report.failures += problems
    return report
