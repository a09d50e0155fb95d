"""Auxiliary divisor classes built from a fibration: the seven Delta classes and Gamma.

Every Delta class comes with a closed-form lower bound on ``dim |Delta|``.  The
bound is a Riemann-Roch value ``chi(Delta) - 1 = (1/2) Delta.(Delta - K)``,
which is recomputed here directly from the class and compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from duval_cylinders.errors import HypothesisError
from duval_cylinders.fibration import I1, I2, II, FibrationData
from duval_cylinders.lattice import DivisorClass, canonical_class, pair


@dataclass(frozen=True)
class DeltaVariant:
    index: int
    half: bool
    cls: DivisorClass
    bound: Fraction
    riemann_roch: Fraction

    @property
    def offset(self) -> Fraction:
        """``bound - (1/2) Delta.(Delta - K)``.

        Zero except for index 4 with ``beta != 2``.  There the closed form
        exceeds the Riemann-Roch value; with ``beta = 1`` the class is ``E - E'``,
        whose linear system is empty.
        """
        return self.bound - self.riemann_roch


def riemann_roch_value(cls: DivisorClass) -> Fraction:
    """``chi(O(D)) - 1`` on a rational surface, i.e. ``(1/2) D.(D - K)``."""
    K = canonical_class(cls.k)
    return pair(cls, cls - K) / 2


def _D(fib: FibrationData, i: int, lam: int) -> DivisorClass:
    return fib.fibers[i - 1].components[lam].cls


def _chain_sum(fib: FibrationData, i: int, weights) -> DivisorClass:
    """``sum_lam weight(lam) * D_{i,lam}`` over the given ``(lam, weight)`` pairs."""
    total = DivisorClass.zero(fib.k)
    for lam, w in weights:
        if w:
            total = total + _D(fib, i, lam) * w
    return total


def _base(fib: FibrationData, upto: int | None = None) -> DivisorClass:
    """``D_0 + nF - sum_{i<=upto} sum_lam lam D_{i,lam}`` over I1 fibres."""
    out = fib.section + fib.fiber_class * fib.n
    count = fib.r if upto is None else upto
    for i in range(1, count + 1):
        alpha = fib.fibers[i - 1].params[0]
        out = out - _chain_sum(fib, i, [(lam, lam) for lam in range(1, alpha + 1)])
    return out


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise HypothesisError(msg)


def _total(values) -> int:
    return sum(values)


def _sorted_ok(fib: FibrationData) -> None:
    kinds = [f.kind for f in fib.fibers]
    assert kinds == sorted(kinds, key={I1: 0, I2: 1, II: 2}.get)


def r_prime(fib: FibrationData) -> tuple[int, int]:
    """``(r', alpha')`` with ``r'`` the first index where ``alpha_1 + ... + alpha_i >= n + 1``."""
    running = 0
    for i, a in enumerate(fib.alpha, start=1):
        running += a
        if running >= fib.n + 1:
            return i, running
    raise HypothesisError("alpha < n + 1")


def delta_class(fib: FibrationData, index: int, half: bool = False) -> DeltaVariant:
    _sorted_ok(fib)
    n, r, s, t = fib.n, fib.r, fib.s, fib.t
    alpha = _total(fib.alpha)
    beta = _total(fib.beta)
    gamma = _total(fib.gamma)
    _require(not half or index == 1, "the half class only exists for index 1")
    if index == 1:
        cls = fib.section * 2 + fib.fiber_class * (2 * n)
        for i in range(1, r + 1):
            a_i = fib.fibers[i - 1].params[0]
            cls = cls - _chain_sum(fib, i, [(lam, 2 * lam) for lam in range(1, a_i + 1)])
        for j in range(1, s + 1):
            b_j = fib.fibers[r + j - 1].params[0]
            cls = cls - _chain_sum(fib, r + j, [(mu, 2 * mu) for mu in range(1, b_j + 1)])
        for kk in range(1, t + 1):
            g_k = fib.fibers[r + s + kk - 1].params[0]
            cls = cls - _chain_sum(fib, r + s + kk, [(nu, nu) for nu in range(1, g_k + 1)])
        bound = Fraction(3 * n + 2 - 3 * alpha - 3 * beta - gamma)
        if half:
            _require(t == 0, "the half class needs t = 0")
            cls = cls * Fraction(1, 2)
            bound = Fraction(n + 1 - alpha - beta)
    elif index in (2, 3, 4):
        _require(s == 1 and t == 0 and fib.beta_prime == (1,), "needs s = 1, t = 0 and beta' = 1")
        fibre = r + 1
        e_prime = fib.fibers[fibre - 1].terminal_prime.cls
        beta_side = [(mu, mu) for mu in range(1, beta + 1)]
        if index == 2:
            _require(r >= 1, "needs an I1 fibre")
            cls = _base(fib) + fib.fibers[r - 1].terminal.cls - _chain_sum(fib, fibre, beta_side)
            bound = Fraction(n + 2 - alpha - beta)
        elif index == 3:
            cls = _base(fib) - e_prime
            bound = Fraction(n - alpha)
        else:
            cls = (
                _base(fib) * (beta - 1)
                - _chain_sum(fib, fibre, [(mu, (beta - 2) * mu) for mu in range(1, beta + 1)])
                - e_prime
            )
            bound = Fraction((beta - 1) * (n + 2 - alpha - beta)) + Fraction(n * (beta - 1) * (beta - 2), 2)
    elif index in (5, 6):
        want = 2 if index == 5 else 3
        _require(s == 0 and t == 1 and gamma == want, f"needs s = 0, t = 1 and gamma = {want}")
        _require(r >= 1, "needs an I1 fibre")
        fibre = r + 1
        e_r = fib.fibers[r - 1].terminal.cls
        if index == 5:
            cls = _base(fib) + e_r - _chain_sum(fib, fibre, [(1, 1), (2, 1)])
            bound = Fraction(n + 1 - alpha)
        else:
            cls = _base(fib) * 2 + e_r - _chain_sum(fib, fibre, [(1, 1), (2, 2), (3, 3)])
            bound = Fraction(3 * n + 1 - 3 * alpha)
    elif index == 7:
        _require(s == 0 and t == 0 and alpha >= n + 1, "needs s = t = 0 and alpha >= n + 1")
        rp, ap = r_prime(fib)
        a_rp = fib.alpha[rp - 1]
        cls = _base(fib, upto=rp)
        start = (n + 1) - (ap - a_rp)
        cls = cls + _chain_sum(fib, rp, [(start + mu, mu) for mu in range(1, ap - (n + 1) + 1)])
        bound = Fraction(0)
    else:
        raise HypothesisError(f"no Delta class with index {index}")
    return DeltaVariant(index, half, cls, bound, riemann_roch_value(cls))


def applicable_deltas(fib: FibrationData) -> list[tuple[int, bool]]:
    """All ``(index, half)`` whose hypotheses hold for ``fib``."""
    out = []
    for index, half in [(1, False), (1, True), (2, False), (3, False), (4, False), (5, False), (6, False), (7, False)]:
        try:
            delta_class(fib, index, half)
        except HypothesisError:
            continue
        out.append((index, half))
    return out


def gamma_class(fib: FibrationData, case: int) -> DivisorClass:
    """The section class ``Gamma`` used by the three cases without an I2/II fibre excess."""
    n, r, s, t = fib.n, fib.r, fib.s, fib.t
    K = canonical_class(fib.k)
    deg = pair(K, K)
    if case == 1:
        _require(s == 1 and t == 0 and fib.beta_prime == (1,) and deg == 5 - n,
                 "needs s = 1, t = 0, beta' = 1 and (-K)^2 = 5 - n")
        fibre = fib.fibers[r]
        beta = fibre.params[0]
        cls = (
            _base(fib)
            - _chain_sum(fib, r + 1, [(mu, mu) for mu in range(1, beta + 1)])
            + fibre.terminal.cls
        )
    elif case == 2:
        _require(s == 0 and t == 1 and fib.gamma[0] in (2, 3) and deg == 5 - n,
                 "needs s = 0, t = 1, gamma in {2, 3} and (-K)^2 = 5 - n")
        g = fib.gamma[0]
        cls = _base(fib) - _chain_sum(fib, r + 1, [(mu, g - 2) for mu in range(1, g + 1)])
    elif case == 3:
        _require(s == 0 and t == 0 and deg in (6 - n, 5 - n), "needs s = t = 0 and (-K)^2 in {6-n, 5-n}")
        cls = _base(fib) + fib.fiber_class
    else:
        raise HypothesisError(f"no Gamma class for case {case}")
    self_int = pair(cls, cls)
    if case in (1, 2):
        assert self_int == -1 and pair(cls, K) == -1, "Gamma is not a (-1)-class"
    else:
        assert self_int in (-1, 0) and pair(cls, K) == -self_int - 2, "Gamma has wrong invariants"
    assert pair(cls, fib.fiber_class) == 1
    return cls
