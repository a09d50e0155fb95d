"""Corrupted certificates for the verifier: each should be rejected."""

from __future__ import annotations

from dataclasses import replace
from itertools import islice

from duval_cylinders.catalog import load_catalog
from duval_cylinders.cylinder import SupportTerm, construct_cylinder, fibration_for
from duval_cylinders.sampling import ample_stream


def flip_sign(cert, i):
    t = cert.support[i]
    support = cert.support[:i] + (SupportTerm(t.curve, t.cls, -t.coeff),) + cert.support[i + 1:]
    return replace(cert, support=support)


def drop_term(cert, i):
    return replace(cert, support=cert.support[:i] + cert.support[i + 1:])


def drop_removed(cert, i):
    return replace(cert, removed=cert.removed[:i] + cert.removed[i + 1:])


def double_coeff(cert, i):
    t = cert.support[i]
    support = cert.support[:i] + (SupportTerm(t.curve, t.cls, 2 * t.coeff),) + cert.support[i + 1:]
    return replace(cert, support=support)


def too_large(bounds):
    return 2 * min(bounds) if bounds else 1


def at_bound(bounds):
    return min(bounds) if bounds else 1


def mutants(count=50, seed=0):
    """``(kind, label, surface, fib, H, corrupted certificate)``, cycling over kinds and surfaces."""
    out = []
    entries = list(load_catalog())
    kinds = ["flip_sign", "drop_term", "drop_removed", "double_coeff", "eps_too_large", "eps_at_bound"]
    step = 0
    while len(out) < count:
        entry = entries[step % len(entries)]
        kind = kinds[step % len(kinds)]
        step += 1
        surface = entry.surface()
        fib = fibration_for(surface)
        for H in islice(ample_stream(surface, seed + step), 40):
            good = construct_cylinder(surface, H)
            i = step % len(good.support)
            if kind == "flip_sign":
                bad = flip_sign(good, i)
            elif kind == "drop_term":
                bad = drop_term(good, i)
            elif kind == "drop_removed":
                bad = drop_removed(good, step % len(good.removed))
            elif kind == "double_coeff":
                bad = double_coeff(good, i)
            else:
                pick = too_large if kind == "eps_too_large" else at_bound
                bad = construct_cylinder(surface, H, pick=pick)
                if bad.epsilon == good.epsilon:
                    continue  # no epsilon on this route; try another class
            out.append((kind, entry.label, surface, fib, H, bad))
            break
        if step > 10 * count:
            raise RuntimeError("could not build enough mutants")
    return out
