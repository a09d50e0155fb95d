"""Explicit H-polar cylinders: an effective Q-divisor D ~ H whose support has a cylinder complement.

The constructions work in the class group of the singular surface with the basis
``D_0`` (only when the section is not contracted), ``F`` and the terminal curves
``E_i`` of the I1 and I2 fibres.  On the singular surface ``E_i' ~ F - E_i`` for
chain fibres and ``2 E_l ~ F`` for double fibres.  Every divisor is reported as
non-negative coefficients on named curves of the resolution, together with the
curves removed on the resolution and the shape of the complement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from duval_cylinders.errors import DuValError, FibrationError, HypothesisError, NotAmpleError, OutOfScopeError, PositivityError
from duval_cylinders.exact import solve
from duval_cylinders.fibration import I1, I2, II, FibrationData, SingularFiber, decompose_fibers, select_fibration
from duval_cylinders.lattice import DivisorClass, canonical_class, pair
from duval_cylinders.linsys import gamma_class
from duval_cylinders.surface import ClassOnS, SurfaceModel, is_ample, mumford_pullback

FIBER, STAR = "fiber", "star"


@dataclass(frozen=True)
class AmpleDivisor:
    """An ample class with its coordinates ``a_0 D_0 + a F + sum b_i E_i + sum c_j E_{r+j}``."""

    on_s_tilde: ClassOnS
    a0: Fraction
    a: Fraction
    b: tuple[Fraction, ...]
    c: tuple[Fraction, ...]


@dataclass(frozen=True)
class SupportTerm:
    curve: str
    cls: DivisorClass
    coeff: Fraction

    def to_json(self) -> dict:
        return {"curve": self.curve, "class": self.cls.to_json(), "coeff": str(self.coeff)}

    @classmethod
    def from_json(cls, data: dict) -> "SupportTerm":
        return cls(data["curve"], DivisorClass.from_json(data["class"]), Fraction(data["coeff"]))


@dataclass(frozen=True)
class CylinderCertificate:
    """``D = sum coeff * f_*(curve)`` and the boundary of the cylinder on the resolution.

    ``pattern`` is ``"fiber"`` (parameter: number of singular fibres removed) or
    ``"star"`` (parameter: 2 when the second section is disjoint from ``D_0``,
    3 when an extra fibre through their meeting point is removed).
    """

    lemma: str
    epsilon: Fraction
    support: tuple[SupportTerm, ...]
    pattern: str
    param: int
    removed: tuple[tuple[str, DivisorClass], ...]
    fiber_class: DivisorClass
    section: DivisorClass

    def divisor_class(self) -> DivisorClass:
        total = DivisorClass.zero(self.fiber_class.k)
        for term in self.support:
            total = total + term.cls * term.coeff
        return total

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma,
            "epsilon": str(self.epsilon),
            "support": [t.to_json() for t in self.support],
            "pattern": {"kind": self.pattern, "param": self.param},
            "removed": [{"curve": name, "class": cls.to_json()} for name, cls in self.removed],
            "fibration": {"fiber_class": self.fiber_class.to_json(), "section": self.section.to_json()},
        }

    @classmethod
    def from_json(cls, data: dict) -> "CylinderCertificate":
        return cls(
            lemma=data["lemma"],
            epsilon=Fraction(data["epsilon"]),
            support=tuple(SupportTerm.from_json(t) for t in data["support"]),
            pattern=data["pattern"]["kind"],
            param=int(data["pattern"]["param"]),
            removed=tuple((item["curve"], DivisorClass.from_json(item["class"])) for item in data["removed"]),
            fiber_class=DivisorClass.from_json(data["fibration"]["fiber_class"]),
            section=DivisorClass.from_json(data["fibration"]["section"]),
        )


def choose_epsilon(strict_upper_bounds: Sequence[Fraction]) -> Fraction:
    """Half the smallest bound; 1 when there is no bound."""
    bounds = [Fraction(b) for b in strict_upper_bounds]
    if not bounds:
        return Fraction(1)
    if any(b <= 0 for b in bounds):
        raise PositivityError(f"non-positive epsilon bound in {bounds}")
    return min(bounds) / 2


def _positive(value: Fraction, what: str) -> Fraction:
    if value <= 0:
        raise PositivityError(f"{what} = {value} is not positive")
    return value


# -- coordinates ---------------------------------------------------------------


def _basis(fib: FibrationData) -> list[DivisorClass]:
    out = [fib.section] if fib.n <= 1 else []
    out.append(fib.fiber_class)
    out += [fibre.terminal.cls for fibre in fib.fibers if fibre.kind in (I1, I2)]
    return out


def _solve_coords(surface: SurfaceModel, classes: Sequence[DivisorClass], H: ClassOnS) -> list[Fraction]:
    """Exact coordinates of ``H`` in the images of ``classes``, which must be a basis."""
    if len(classes) != surface.rho:
        raise DuValError(f"{len(classes)} basis classes for a class group of rank {surface.rho}")
    lifts = [mumford_pullback(surface, c).rep for c in classes]
    gram = [[pair(u, v) for v in lifts] for u in lifts]
    coords = solve(gram, [pair(u, H.rep) for u in lifts])
    total = DivisorClass.zero(surface.k)
    for x, u in zip(coords, lifts):
        total = total + u * x
    if total != H.rep:
        raise DuValError("class is not in the span of the basis")
    return coords


def _require_ample(surface: SurfaceModel, H: ClassOnS) -> None:
    if H.rep.k != surface.k:
        raise DuValError(f"class has k={H.rep.k}, surface has k={surface.k}")
    try:
        ample = is_ample(surface, H)
    except ValueError as exc:
        raise NotAmpleError(str(exc)) from exc
    if not ample:
        raise NotAmpleError("H is not ample")


def coords_of(surface: SurfaceModel, fib: FibrationData, H: ClassOnS) -> AmpleDivisor:
    _require_ample(surface, H)
    coords = _solve_coords(surface, _basis(fib), H)
    if fib.n <= 1:
        a0, coords = coords[0], coords[1:]
    else:
        a0 = Fraction(0)
    a, rest = coords[0], coords[1:]
    b, c = tuple(rest[: fib.r]), tuple(rest[fib.r :])
    assert all(x < 0 for x in b), "ampleness forces negative I1 coordinates"
    return AmpleDivisor(H, a0, a, b, c)


def d_rsprime(H: AmpleDivisor) -> tuple[int, Fraction]:
    """``(s', a + sum b_i + sum of the negative c_j)``."""
    negative = [x for x in H.c if x < 0]
    return len(negative), H.a + sum(H.b, Fraction(0)) + sum(negative, Fraction(0))


# -- divisor bookkeeping ---------------------------------------------------------


class _Builder:
    def __init__(self, fib: FibrationData, strict: bool = True):
        # strict: a negative coefficient is a bug, not a deliberate out-of-range epsilon
        self.fib = fib
        self.strict = strict
        self.terms: dict[str, list] = {}
        self.removed: dict[str, DivisorClass] = {}

    def add(self, name: str, cls: DivisorClass, coeff: Fraction) -> None:
        if name in self.terms:
            self.terms[name][1] += coeff
        else:
            self.terms[name] = [cls, Fraction(coeff)]

    def remove(self, name: str, cls: DivisorClass) -> None:
        self.removed[name] = cls

    def remove_fibre(self, fibre: SingularFiber, keep: Optional[str] = None) -> None:
        for comp in fibre.components:
            name = curve_name(fibre, comp.cls)
            if name != keep:
                self.remove(name, comp.cls)

    def certificate(self, lemma: str, epsilon: Fraction, pattern: str, param: int) -> CylinderCertificate:
        support = []
        for name, (cls, coeff) in self.terms.items():
            if coeff < 0 and self.strict:
                raise PositivityError(f"coefficient of {name} is {coeff}")
            if coeff != 0:
                support.append(SupportTerm(name, cls, coeff))
        return CylinderCertificate(
            lemma=lemma,
            epsilon=epsilon,
            support=tuple(support),
            pattern=pattern,
            param=param,
            removed=tuple(self.removed.items()),
            fiber_class=self.fib.fiber_class,
            section=self.fib.section,
        )


def curve_name(fibre: SingularFiber, cls: DivisorClass) -> str:
    """``E_i`` / ``E_i'`` for the terminal (-1)-curves, ``D_{i,lambda}`` otherwise."""
    if cls == fibre.terminal.cls:
        return f"E_{fibre.index}"
    if fibre.terminal_prime is not None and cls == fibre.terminal_prime.cls:
        return f"E_{fibre.index}'"
    return next(c.name for c in fibre.components if c.cls == cls)


def _E(fibre: SingularFiber):
    return f"E_{fibre.index}", fibre.terminal.cls


def _E_prime(fibre: SingularFiber):
    return f"E_{fibre.index}'", fibre.terminal_prime.cls


def _sorted_chains(fib: FibrationData, H: AmpleDivisor) -> list[tuple[SingularFiber, int, Fraction]]:
    """I1 fibres as ``(fibre, alpha, b/alpha)`` in increasing ratio, ties kept in fibre order."""
    chains = [(fibre, fibre.alpha, H.b[i] / fibre.alpha) for i, fibre in enumerate(fib.fibers[: fib.r])]
    return sorted(chains, key=lambda item: item[2])


def _last_below(chains, upto: int) -> int:
    """Largest 1-based ``i < upto`` whose ratio is below the ratio at ``upto``."""
    q = chains[upto - 1][2]
    return max(i for i in range(1, upto) if chains[i - 1][2] < q)


def _start(fib: FibrationData, H: AmpleDivisor, pick) -> _Builder:
    out = _Builder(fib, pick is choose_epsilon)
    out.remove("D_0", fib.section)
    if fib.n <= 1 and H.a0:
        out.add("D_0", fib.section, H.a0)
    return out


# -- constructions ---------------------------------------------------------------


def cylinder_general(surface: SurfaceModel, fib: FibrationData, H: AmpleDivisor, pick=choose_epsilon) -> CylinderCertificate:
    """Remove ``D_0``, one general fibre and every singular fibre."""
    s_prime, d = d_rsprime(H)
    if d <= 0:
        raise HypothesisError(f"d_(r,s') = {d} is not positive")
    if fib.n <= 1:
        _positive(H.a0, "a_0")
    r, s, t = fib.rst
    eps = pick([d / r]) if r else Fraction(0)
    T = (d - r * eps) / (s + t + 1)
    out = _start(fib, H, pick)
    out.add("F", fib.fiber_class, T)
    out.remove("F", fib.fiber_class)
    for i, fibre in enumerate(fib.fibers):
        if fibre.kind == I1:
            out.add(*_E(fibre), eps)
            out.add(*_E_prime(fibre), -H.b[i] + eps)
        elif fibre.kind == I2:
            c = H.c[i - r]
            if c < 0:
                out.add(*_E_prime(fibre), -c + T)
                out.add(*_E(fibre), T)
            else:
                out.add(*_E(fibre), c + T)
                out.add(*_E_prime(fibre), T)
        else:
            out.add(*_E(fibre), 2 * T)
        out.remove_fibre(fibre)
    return out.certificate("fiber-complement", eps, FIBER, r + s + t)


def _star_chains(out: _Builder, chains, split: int) -> None:
    """Chains up to ``split`` keep ``E_i``; the others keep ``E_i'``."""
    for pos, (fibre, _, _) in enumerate(chains, start=1):
        keep = _E(fibre)[0] if pos <= split else _E_prime(fibre)[0]
        out.remove_fibre(fibre, keep=keep)


def _add_gamma(out: _Builder, gamma: DivisorClass, coeff: Fraction) -> None:
    out.add("Gamma", gamma, coeff)
    out.remove("Gamma", gamma)


def case_s1t0(surface: SurfaceModel, fib: FibrationData, H: AmpleDivisor, pick=choose_epsilon) -> CylinderCertificate:
    r = fib.r
    if fib.n < 2 or fib.rst[1:] != (1, 0):
        raise HypothesisError("needs n >= 2 and (s, t) = (1, 0)")
    gamma = gamma_class(fib, 1)
    n, beta = fib.n, fib.beta[0]
    a, c = H.a, H.c[0]
    sum_b = sum(H.b, Fraction(0))
    pair_fibre = fib.fibers[r]
    if beta >= 2:
        _positive(a + sum_b, "a + sum b")
        _positive(a + sum_b + Fraction(beta - 2, beta - 1) * c, "a + sum b + (beta-2)/(beta-1) c")
    chains = _sorted_chains(fib, H)
    out = _start(fib, H, pick)

    if r == 0 or (beta >= 2 and chains[-1][2] < c / (beta - 1)):
        if c >= 0:
            return cylinder_general(surface, fib, H, pick)
        _add_gamma(out, gamma, -c / (beta - 1))
        for fibre, alpha, q in chains:
            out.add(*_E_prime(fibre), alpha * (c / (beta - 1) - q))
        rest = a + sum_b + Fraction(beta - 2, beta - 1) * c
        out.add(*_E(pair_fibre), rest)
        out.add(*_E_prime(pair_fibre), rest)
        _star_chains(out, chains, split=r)
        out.remove_fibre(pair_fibre)
        return out.certificate("s1t0-r0" if r == 0 else "s1t0-separated", Fraction(0), STAR, 2)

    q_r = chains[-1][2]
    d = _positive(a + sum_b - q_r + c, "d")
    d_prime = _positive(a + sum_b + (beta - 2) * q_r, "d'")
    if chains[0][2] == q_r:
        split, weight, bounds = 0, 0, []
    else:
        split = _last_below(chains, r)
        weight = sum(alpha for _, alpha, _ in chains[:split])
        bounds = [q_r - chains[split - 1][2]]
    k_d, k_dp = n - weight - beta + 1, n - weight
    assert k_dp >= k_d >= 0
    if k_d:
        bounds.append(d / k_d)
    if k_dp:
        bounds.append(d_prime / k_dp)
    eps = pick(bounds)
    _add_gamma(out, gamma, -q_r + eps)
    for pos, (fibre, alpha, q) in enumerate(chains, start=1):
        if pos <= split:
            out.add(*_E_prime(fibre), alpha * (q_r - q - eps))
        else:
            out.add(*_E(fibre), alpha * eps)
    out.add(*_E(pair_fibre), d - k_d * eps)
    out.add(*_E_prime(pair_fibre), d_prime - k_dp * eps)
    _star_chains(out, chains, split)
    out.remove_fibre(pair_fibre)
    return out.certificate("s1t0-split" if split else "s1t0-equal", eps, STAR, 2)


def case_s0t1(surface: SurfaceModel, fib: FibrationData, H: AmpleDivisor, pick=choose_epsilon) -> CylinderCertificate:
    r = fib.r
    if fib.n < 2 or fib.rst[1:] != (0, 1):
        raise HypothesisError("needs n >= 2 and (s, t) = (0, 1)")
    gamma = gamma_class(fib, 2)
    n, g = fib.n, fib.gamma[0]
    chains = _sorted_chains(fib, H)
    q_r = chains[-1][2]
    d = _positive(2 * H.a + 2 * sum(H.b, Fraction(0)) - (4 - g) * q_r, "d")
    if chains[0][2] == q_r:
        split, weight, bounds = 0, 0, []
    else:
        split = _last_below(chains, r)
        weight = sum(alpha for _, alpha, _ in chains[:split])
        bounds = [q_r - chains[split - 1][2]]
    k_d = 2 * n - g + 2 - 2 * weight
    assert k_d >= 0
    if k_d:
        bounds.append(d / k_d)
    eps = pick(bounds)
    out = _start(fib, H, pick)
    _add_gamma(out, gamma, -q_r + eps)
    for pos, (fibre, alpha, q) in enumerate(chains, start=1):
        if pos <= split:
            out.add(*_E_prime(fibre), alpha * (q_r - q - eps))
        else:
            out.add(*_E(fibre), alpha * eps)
    double = fib.fibers[r]
    out.add(*_E(double), d - k_d * eps)
    _star_chains(out, chains, split)
    out.remove_fibre(double)
    return out.certificate("s0t1-split" if split else "s0t1-equal", eps, STAR, 2)


def _case_s0t0(surface: SurfaceModel, fib: FibrationData, H: AmpleDivisor, low: bool, pick=choose_epsilon) -> CylinderCertificate:
    if fib.rst[1:] != (0, 0):
        raise HypothesisError("needs (s, t) = (0, 0)")
    if low != (fib.n <= 1):
        raise HypothesisError("section self-intersection does not match the case")
    gamma = gamma_class(fib, 3)
    n = fib.n
    if sum(fib.alpha) not in (n + 2, n + 3):
        raise HypothesisError("needs alpha in {n+2, n+3}")
    chains = _sorted_chains(fib, H)
    running, r1 = 0, 0
    for r1, (_, alpha, _) in enumerate(chains, start=1):
        running += alpha
        if running >= n + 1:
            break
    alpha_1 = running
    q = chains[r1 - 1][2]
    d = _positive(
        H.a + sum((alpha * qi for _, alpha, qi in chains[:r1]), Fraction(0)) + (n + 1 - alpha_1) * q, "d"
    )
    bounds = []
    if low:
        d0 = _positive(H.a0 + q, "d_0")
        bounds.append(d0)
    if chains[0][2] == q:
        split, weight = 0, 0
    else:
        split = _last_below(chains, r1)
        weight = sum(alpha for _, alpha, _ in chains[:split])
        bounds.append(q - chains[split - 1][2])
    k_d = n + 1 - weight
    assert k_d >= 1
    bounds.append(d / k_d)
    eps = pick(bounds)
    out = _Builder(fib, pick is choose_epsilon)
    out.remove("D_0", fib.section)
    if low:
        out.add("D_0", fib.section, d0 - eps)
    _add_gamma(out, gamma, -q + eps)
    out.add("F_0", fib.fiber_class, d - k_d * eps)
    out.remove("F_0", fib.fiber_class)
    for pos, (fibre, alpha, qi) in enumerate(chains, start=1):
        if pos <= split:
            out.add(*_E_prime(fibre), alpha * (q - qi - eps))
        else:
            out.add(*_E(fibre), alpha * (qi - q + eps))
    _star_chains(out, chains, split)
    tag = "s0t0-low-n" if low else "s0t0"
    return out.certificate(f"{tag}-split" if split else f"{tag}-equal", eps, STAR, 3)


def case_s0t0(surface: SurfaceModel, fib: FibrationData, H: AmpleDivisor, pick=choose_epsilon) -> CylinderCertificate:
    return _case_s0t0(surface, fib, H, low=False, pick=pick)


def case_s0t0_low_n(surface: SurfaceModel, fib: FibrationData, H: AmpleDivisor, pick=choose_epsilon) -> CylinderCertificate:
    return _case_s0t0(surface, fib, H, low=True, pick=pick)


# -- the two surfaces handled through a second contracted section ---------------


@dataclass(frozen=True)
class TwoSectionFrame:
    """A fibration whose reducible fibres all meet a second, contracted section ``D_inf``."""

    fib: FibrationData
    far_section: DivisorClass


def _two_section_frames(surface: SurfaceModel, shape: tuple[int, ...]) -> list[TwoSectionFrame]:
    """Fibrations with two root sections, only I1 fibres of the given alphas, the far ends on ``D_inf``."""
    out = []
    for f in surface.conic_classes:
        sections = [root for root in surface.roots if pair(root, f) == 1]
        for near in sections:
            for far in sections:
                if near == far or pair(near, far) != 0:
                    continue
                data = decompose_fibers(surface, f, near, strict=False)
                if not isinstance(data, FibrationData) or data.stray != (far,):
                    continue
                if data.rst != (len(shape), 0, 0) or tuple(sorted(data.alpha)) != shape:
                    continue
                out.append(TwoSectionFrame(data, far))
    return out


@lru_cache(maxsize=None)
def _frame_cached(degree: int, roots: tuple, shape: tuple[int, ...]) -> Optional[TwoSectionFrame]:
    from duval_cylinders.surface import build_surface

    frames = _two_section_frames(build_surface(degree, roots), shape)
    return frames[0] if frames else None


def _frame(surface: SurfaceModel, shape: tuple[int, ...]) -> TwoSectionFrame:
    frame = _frame_cached(surface.degree, tuple(surface.roots), shape)
    if frame is None:
        raise FibrationError(f"no two-section fibration of shape {shape} on {surface.dynkin}")
    return frame


def _frame_start(frame: TwoSectionFrame, pick) -> _Builder:
    out = _Builder(frame.fib, pick is choose_epsilon)
    out.remove("D_0", frame.fib.section)
    out.remove("D_inf", frame.far_section)
    return out


def cylinder_2A1_8lines(surface: SurfaceModel, H: ClassOnS, pick=choose_epsilon) -> CylinderCertificate:
    """Degree 4, type 2A1 with 8 lines: four fibres ``E_i' + E_i`` between two contracted sections."""
    _require_ample(surface, H)
    frame = _frame(surface, (1, 1, 1, 1))
    fibres = frame.fib.fibers
    coords = _solve_coords(surface, [fibre.terminal.cls for fibre in fibres], H)
    for i, (fibre, x) in enumerate(zip(fibres, coords)):
        # a_i is the degree of H on E_i'
        assert x == pair(H.rep, fibre.terminal_prime.cls)
        _positive(x, f"a_{i + 1}")
    eps = pick(coords)
    out = _frame_start(frame, pick)
    # sum E_i ~ 2F on S, so taking eps off every E_i puts 2 eps on F
    out.add("F", frame.fib.fiber_class, 2 * eps)
    out.remove("F", frame.fib.fiber_class)
    for fibre, x in zip(fibres, coords):
        out.add(*_E(fibre), x - eps)
        out.remove(*_E(fibre))
    return out.certificate("2A1-8lines", eps, STAR, 2)


def cylinder_4A1(surface: SurfaceModel, H: ClassOnS, pick=choose_epsilon) -> CylinderCertificate:
    """Cubic of type 4A1: fibres ``E_1'+D_1+E_1``, ``E_2'+D_2+E_2`` and ``E_3'+E_3``."""
    _require_ample(surface, H)
    frame = _frame(surface, (1, 2, 2))
    long1, long2, short = sorted(frame.fib.fibers, key=lambda fibre: -fibre.alpha)
    a1, a2, a3 = _solve_coords(surface, [long1.terminal.cls, long2.terminal.cls, short.terminal.cls], H)
    _positive(-a3, "-a_3")
    bounds = [_positive(a1 + a3, "a_1 + a_3"), _positive(a2 + a3, "a_2 + a_3")]
    eps = pick(bounds)
    out = _frame_start(frame, pick)
    out.add(*_E(long1), a1 + a3 - eps)
    out.add(*_E(long2), a2 + a3 - eps)
    out.add(*_E(short), eps)
    out.add(*_E_prime(short), -a3 + eps)
    out.remove_fibre(long1, keep=_E_prime(long1)[0])
    out.remove_fibre(long2, keep=_E_prime(long2)[0])
    out.remove_fibre(short)
    return out.certificate("4A1-cubic", eps, STAR, 2)


def frame_fibration(surface: SurfaceModel) -> Optional[FibrationData]:
    """The fibration used by the two special constructions, if the surface is one of them."""
    from duval_cylinders.catalog import is_four_a1_cubic, is_two_a1_eight_lines

    if is_four_a1_cubic(surface):
        return _frame(surface, (1, 2, 2)).fib
    if is_two_a1_eight_lines(surface):
        return _frame(surface, (1, 1, 1, 1)).fib
    return None


def construction_basis(surface: SurfaceModel) -> list[DivisorClass]:
    """The classes whose coefficients the construction for ``surface`` reads off."""
    from duval_cylinders.catalog import is_four_a1_cubic, is_two_a1_eight_lines

    if is_four_a1_cubic(surface):
        fibres = sorted(_frame(surface, (1, 2, 2)).fib.fibers, key=lambda fibre: -fibre.alpha)
        return [fibre.terminal.cls for fibre in fibres]
    if is_two_a1_eight_lines(surface):
        return [fibre.terminal.cls for fibre in _frame(surface, (1, 1, 1, 1)).fib.fibers]
    return _basis(fibration_for(surface))


# -- dispatch --------------------------------------------------------------------


@lru_cache(maxsize=None)
def _fibration_cached(degree: int, roots: tuple) -> FibrationData:
    from duval_cylinders.surface import build_surface

    return select_fibration(build_surface(degree, roots))


def fibration_for(surface: SurfaceModel) -> FibrationData:
    """The fibration the dispatcher uses (special surfaces included)."""
    special = frame_fibration(surface)
    if special is not None:
        return special
    return _fibration_cached(surface.degree, tuple(surface.roots))


def construct_cylinder(
    surface: SurfaceModel, H: ClassOnS, fib: Optional[FibrationData] = None, pick=choose_epsilon
) -> CylinderCertificate:
    """One H-polar cylinder certificate.

    ``fib`` overrides the fibration chosen by ``select_fibration``; it must satisfy
    the section and fibre conditions.  ``pick`` maps the strict upper bounds on
    epsilon to the value used; anything but the default is only for testing the
    verifier with out-of-range choices.
    """
    from duval_cylinders.catalog import is_four_a1_cubic, is_two_a1_eight_lines

    if surface.rho <= 1:
        raise OutOfScopeError("Picard rank 1 surfaces are outside the construction")
    _require_ample(surface, H)
    if fib is None:
        if is_four_a1_cubic(surface):
            return cylinder_4A1(surface, H, pick)
        if is_two_a1_eight_lines(surface):
            return cylinder_2A1_8lines(surface, H, pick)
        fib = _fibration_cached(surface.degree, tuple(surface.roots))
    elif not fib.satisfies_star:
        raise HypothesisError("the fibration has stray (-2)-curves")
    amp = coords_of(surface, fib, H)
    _, value = d_rsprime(amp)
    if value > 0:
        return cylinder_general(surface, fib, amp, pick)
    K = canonical_class(surface.k)
    deg = pair(K, K)
    # Outside the small cases the value is positive, so landing here otherwise is a bug.
    gamma_total = sum(fib.gamma)
    beta_prime = sum(fib.beta_prime)
    if gamma_total >= 4 or (gamma_total > 0 and deg + beta_prime >= 6 - fib.n) or (
        gamma_total == 0 and deg + beta_prime >= 7 - fib.n
    ):
        raise PositivityError(f"d_(r,s') = {value} is not positive")
    st = fib.rst[1:]
    if st == (1, 0):
        return case_s1t0(surface, fib, amp, pick)
    if st == (0, 1):
        return case_s0t1(surface, fib, amp, pick)
    if st == (0, 0):
        if fib.n >= 2:
            return case_s0t0(surface, fib, amp, pick)
        return case_s0t0_low_n(surface, fib, amp, pick)
    raise AssertionError(f"no construction for (s, t) = {st}")
