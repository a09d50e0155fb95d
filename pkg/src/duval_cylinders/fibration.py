"""P^1-fibrations on the resolution and the shapes of their singular fibres.

Given a conic class ``f`` and a section, the reducible fibres are found as
connected groups of negative curves annihilating ``f``.  Their multiplicities
come from the kernel of the group's intersection matrix; the dual graph is then
checked against the three admissible shapes:

* ``I1``: a chain ``E' = D_{i,0} - D_{i,1} - ... - D_{i,alpha} = E`` with
  (-1)-curves at both ends, the section meeting ``E'``;
* ``I2``: a chain with (-1)-curves at both ends whose interior (-2)-curve
  ``D_{i,0}`` meets the section, splitting it into arms of lengths
  ``beta >= beta'`` that end in ``E_i`` and ``E_i'``;
* ``II``: two (-2)-leaves ``D_{i,0}`` (meeting the section) and ``D_{i,1}``
  attached to ``D_{i,2}``, followed by a chain up to the (-1)-curve
  ``E_i = D_{i,gamma}``; every curve from ``D_{i,2}`` on has multiplicity 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from duval_cylinders.errors import FibrationError
from duval_cylinders.exact import nullspace
from duval_cylinders.lattice import DivisorClass, canonical_class, pair
from duval_cylinders.surface import SurfaceModel, _components

I1, I2, II = "I1", "I2", "II"
_KIND_ORDER = {I1: 0, I2: 1, II: 2}


@dataclass(frozen=True)
class FiberComponent:
    name: str
    cls: DivisorClass
    multiplicity: int
    self_int: int


@dataclass(frozen=True)
class SingularFiber:
    """One reducible fibre; ``components`` are listed as ``D_{i,0}, D_{i,1}, ...``."""

    kind: str
    index: int
    components: tuple[FiberComponent, ...]
    params: tuple[int, ...]

    @property
    def alpha(self) -> int:
        assert self.kind == I1
        return self.params[0]

    @property
    def gamma(self) -> int:
        assert self.kind == II
        return self.params[0]

    def component(self, lam: int) -> FiberComponent:
        return self.components[lam]

    @property
    def terminal(self) -> FiberComponent:
        """The curve called ``E_i``."""
        return self.components[self.params[0]]

    @property
    def terminal_prime(self) -> Optional[FiberComponent]:
        """The curve called ``E_i'`` (types I1 and I2 only)."""
        if self.kind == I1:
            return self.components[0]
        if self.kind == I2:
            return self.components[-1]
        return None

    def class_sum(self, k: int) -> DivisorClass:
        total = DivisorClass.zero(k)
        for comp in self.components:
            total = total + comp.cls * comp.multiplicity
        return total

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "index": self.index,
            "params": list(self.params),
            "components": [
                {"name": c.name, "class": c.cls.to_json(), "mult": c.multiplicity, "self_int": c.self_int}
                for c in self.components
            ],
        }


@dataclass(frozen=True)
class FibrationData:
    fiber_class: DivisorClass
    section: DivisorClass
    n: int
    fibers: tuple[SingularFiber, ...]
    stray: tuple[DivisorClass, ...] = ()
    named: dict = field(default_factory=dict, compare=False, hash=False)

    def _of_kind(self, kind: str) -> tuple[SingularFiber, ...]:
        return tuple(f for f in self.fibers if f.kind == kind)

    @property
    def r(self) -> int:
        return len(self._of_kind(I1))

    @property
    def s(self) -> int:
        return len(self._of_kind(I2))

    @property
    def t(self) -> int:
        return len(self._of_kind(II))

    @property
    def rst(self) -> tuple[int, int, int]:
        return (self.r, self.s, self.t)

    @property
    def alpha(self) -> tuple[int, ...]:
        return tuple(f.params[0] for f in self._of_kind(I1))

    @property
    def beta(self) -> tuple[int, ...]:
        return tuple(f.params[0] for f in self._of_kind(I2))

    @property
    def beta_prime(self) -> tuple[int, ...]:
        return tuple(f.params[1] for f in self._of_kind(I2))

    @property
    def gamma(self) -> tuple[int, ...]:
        return tuple(f.params[0] for f in self._of_kind(II))

    @property
    def k(self) -> int:
        return self.fiber_class.k

    @property
    def satisfies_star(self) -> bool:
        return not self.stray

    def signature(self) -> tuple:
        """``(n, (r,s,t), alpha, [(beta, beta')], gamma)`` with multisets sorted."""
        return (
            self.n,
            self.rst,
            tuple(sorted(self.alpha)),
            tuple(sorted(zip(self.beta, self.beta_prime))),
            tuple(sorted(self.gamma)),
        )

    def component_classes(self) -> list[DivisorClass]:
        return [c.cls for f in self.fibers for c in f.components]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rst": list(self.rst),
            "alpha": list(self.alpha),
            "beta": list(self.beta),
            "beta_prime": list(self.beta_prime),
            "gamma": list(self.gamma),
            "fiber_class": self.fiber_class.to_json(),
            "section": self.section.to_json(),
            "fibers": [f.to_json() for f in self.fibers],
        }


def find_fibrations(surface: SurfaceModel) -> list[tuple[DivisorClass, DivisorClass]]:
    """All ``(fiber_class, section)`` pairs with the section a negative curve."""
    out = []
    for f in surface.conic_classes:
        for c in sorted(surface.negative_curves):
            if pair(f, c) == 1:
                out.append((f, c))
    return out


class _Reject(Exception):
    pass


def _path_order(members: list[int], adj: dict[int, set[int]], start: int) -> list[int]:
    order, prev, cur = [start], None, start
    while True:
        nxt = [w for w in adj[cur] if w != prev]
        if not nxt:
            return order
        prev, cur = cur, nxt[0]
        order.append(cur)


def _shape(
    classes: list[DivisorClass], mults: list[int], section: DivisorClass
) -> tuple[str, list[int], tuple[int, ...]]:
    """Return (kind, component order D_0..D_m, params) for one reducible fibre."""
    size = len(classes)
    adj = {i: set() for i in range(size)}
    for i in range(size):
        for j in range(i + 1, size):
            p = pair(classes[i], classes[j])
            if p == 1:
                adj[i].add(j)
                adj[j].add(i)
            elif p != 0:
                raise _Reject(f"fibre components meet with multiplicity {p}")
    selfs = [pair(c, c) for c in classes]
    touching = [i for i in range(size) if pair(classes[i], section) != 0]
    if len(touching) != 1 or pair(classes[touching[0]], section) != 1:
        raise _Reject("section does not meet the fibre in a single reduced point")
    s0 = touching[0]
    if mults[s0] != 1:
        raise _Reject("section meets a multiple component")
    is_path = all(len(adj[i]) <= 2 for i in range(size))
    if all(m == 1 for m in mults):
        if not is_path:
            raise _Reject("reduced fibre is not a chain")
        ends = [i for i in range(size) if len(adj[i]) <= 1]
        if any(selfs[i] != -1 for i in ends) or any(selfs[i] != -2 for i in range(size) if i not in ends):
            raise _Reject("chain fibre is not (-1)-(-2)...(-2)-(-1)")
        if s0 in ends:
            order = _path_order(list(range(size)), adj, s0)
            return I1, order, (size - 1,)
        if selfs[s0] != -2:
            raise _Reject("section meets an interior (-1)-curve")
        arms = []
        for nb in adj[s0]:
            arm, prev, cur = [nb], s0, nb
            while True:
                nxt = [w for w in adj[cur] if w != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                arm.append(cur)
            arms.append(arm)
        arms.sort(key=lambda arm: (-len(arm), classes[arm[-1]].coeffs))
        return I2, [s0] + arms[0] + arms[1], (len(arms[0]), len(arms[1]))
    # remaining possibility: type II
    if sorted(set(mults)) != [1, 2] or mults.count(1) != 2:
        raise _Reject(f"unexpected multiplicity profile {mults}")
    if len(adj[s0]) != 1 or selfs[s0] != -2:
        raise _Reject("section-side leaf of a double fibre is malformed")
    hub = next(iter(adj[s0]))
    other = [i for i in range(size) if mults[i] == 1 and i != s0][0]
    if adj[other] != {hub} or selfs[other] != -2:
        raise _Reject("second leaf of a double fibre is malformed")
    tail = [hub]
    prev, cur = None, hub
    while True:
        nxt = [w for w in adj[cur] if w not in (s0, other) and w != prev]
        if len(nxt) > 1:
            raise _Reject("double fibre branches twice")
        if not nxt:
            break
        prev, cur = cur, nxt[0]
        tail.append(cur)
    if len(tail) + 2 != size:
        raise _Reject("double fibre is not a tree of the expected shape")
    if selfs[tail[-1]] != -1 or any(selfs[i] != -2 for i in tail[:-1]):
        raise _Reject("double fibre chain is not (-2)...(-2)-(-1)")
    return II, [s0, other] + tail, (len(tail) + 1,)


def decompose_fibers(
    surface: SurfaceModel,
    fiber_class: DivisorClass,
    section: DivisorClass,
    strict: bool = True,
) -> FibrationData | str:
    """Split the reducible fibres of ``fiber_class`` into typed, named components.

    Returns a failure tag (a string) when the data is not a fibration satisfying
    the three conditions: section of negative self-intersection, fibres made of
    (-1)- and (-2)-curves of the admissible shapes, and no further curve of
    self-intersection <= -2.  With ``strict=False`` stray (-2)-curves are tolerated
    and recorded in ``FibrationData.stray``.
    """
    k = surface.k
    if pair(fiber_class, section) != 1:
        return "section does not meet the fibre class once"
    n = -pair(section, section)
    if n < 0:
        return "section has positive self-intersection"
    K = canonical_class(k)
    curves = [c for c in surface.negative_curves if pair(c, fiber_class) == 0]
    if section in curves:
        return "section lies in a fibre"
    groups = _components(len(curves), lambda a, b: a != b and pair(curves[a], curves[b]) > 0)
    raw = []
    try:
        for group in groups:
            classes = [curves[i] for i in group]
            gram = [[pair(a, b) for b in classes] for a in classes]
            kernel = nullspace(gram)
            if len(kernel) != 1:
                raise _Reject("fibre components do not carry a unique fibre")
            vec = kernel[0]
            scale = sum((m * pair(c, section) for m, c in zip(vec, classes)), Fraction(0))
            if scale == 0:
                raise _Reject("section misses a fibre")
            mults = [m / scale for m in vec]
            if any(m <= 0 or m.denominator != 1 for m in mults):
                raise _Reject("fibre multiplicities are not positive integers")
            total = DivisorClass.zero(k)
            for m, c in zip(mults, classes):
                total = total + c * m
            if total != fiber_class:
                raise _Reject("components do not add up to the fibre class")
            kind, order, params = _shape(classes, [int(m) for m in mults], section)
            comps = [(classes[i], int(mults[i]), int(pair(classes[i], classes[i]))) for i in order]
            raw.append((kind, params, comps))
    except _Reject as exc:
        if strict:
            return f"fibre shape: {exc}"
        raise FibrationError(str(exc)) from exc
    stray = tuple(
        r for r in surface.roots if r != section and pair(r, fiber_class) != 0
    )
    if stray and strict:
        return "stray (-2)-curve outside the fibres and section"

    def sort_key(item):
        kind, params, comps = item
        return (_KIND_ORDER[kind], params, [c[0].coeffs for c in comps])

    raw.sort(key=sort_key)
    fibers, named = [], {"D_0": section, "F": fiber_class}
    for index, (kind, params, comps) in enumerate(raw, start=1):
        names = [f"D_{{{index},{lam}}}" for lam in range(len(comps))]
        parts = tuple(FiberComponent(nm, cls, m, si) for nm, (cls, m, si) in zip(names, comps))
        fib = SingularFiber(kind, index, parts, params)
        fibers.append(fib)
        for part in parts:
            named[part.name] = part.cls
        named[f"E_{index}"] = fib.terminal.cls
        if fib.terminal_prime is not None:
            named[f"E_{index}'"] = fib.terminal_prime.cls
    data = FibrationData(fiber_class, section, int(n), tuple(fibers), stray, named)
    for fib in data.fibers:
        assert len(fib.components) == sum(fib.params) + 1
    assert pair(K, K) == 8 - sum(data.alpha) - sum(data.beta) - sum(data.beta_prime) - sum(data.gamma)
    return data


def valid_fibrations(surface: SurfaceModel) -> list[FibrationData]:
    out = []
    for f, sec in find_fibrations(surface):
        data = decompose_fibers(surface, f, sec)
        if isinstance(data, FibrationData):
            out.append(data)
    return out


def select_fibration(
    surface: SurfaceModel,
    expected: Optional[tuple] = None,
    use_catalog: bool = True,
) -> FibrationData:
    """Pick one fibration satisfying the three conditions.

    If ``expected`` (a ``FibrationData.signature()``) is given, or the surface
    is a catalog surface with a tabulated signature, a candidate with that
    signature is returned.  Only sections with ``5 - d <= n <= 2`` are
    considered; among them larger ``n`` wins, ties broken by enumeration order.
    """
    candidates = [c for c in valid_fibrations(surface) if 5 - surface.degree <= c.n <= 2]
    if not candidates:
        raise FibrationError(
            f"no fibration with 5-d <= n <= 2 satisfying the section/fibre conditions "
            f"on degree {surface.degree} {surface.dynkin}"
        )
    if expected is None and use_catalog:
        from duval_cylinders.catalog import expected_signature

        expected = expected_signature(surface)
    if expected is not None:
        for cand in candidates:
            if cand.signature() == expected:
                return cand
    best_n = max(c.n for c in candidates)
    return next(c for c in candidates if c.n == best_n)


def fiber_names(fib: FibrationData) -> dict[str, DivisorClass]:
    return dict(fib.named)


def singular_fiber(fib: FibrationData, index: int) -> SingularFiber:
    return fib.fibers[index - 1]


def classes_of(components: Sequence[FiberComponent]) -> list[DivisorClass]:
    return [c.cls for c in components]
