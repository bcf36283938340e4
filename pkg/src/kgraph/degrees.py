"""Multidegree arithmetic: elements of N^k and Z^k stored as plain int tuples.

Degrees are compared componentwise; ``join`` is the componentwise max.  A
"grade" is a signed degree (difference of two degrees).
"""

from __future__ import annotations

import itertools

from .errors import DegreeOutOfRange


def check(n, k, signed=False):
    """Coerce to an int tuple of length k; reject negatives unless signed."""
    try:
        n = tuple(int(e) for e in n)
    except TypeError:
        raise DegreeOutOfRange(f"degree must be a length-{k} tuple, got {n!r}")
    if len(n) != k:
        raise DegreeOutOfRange(f"degree {n} has length {len(n)}, expected {k}")
    if not signed and any(e < 0 for e in n):
        raise DegreeOutOfRange(f"degree {n} has a negative entry")
    return n


def zero(k):
    return (0,) * k


def unit(k, color):
    return tuple(1 if i == color - 1 else 0 for i in range(k))


def add(m, n):
    return tuple(a + b for a, b in zip(m, n))


def sub(m, n):
    return tuple(a - b for a, b in zip(m, n))


def neg(m):
    return tuple(-a for a in m)


def scale(m, t):
    return tuple(a * t for a in m)


def leq(m, n):
    return all(a <= b for a, b in zip(m, n))


def join(m, n):
    return tuple(max(a, b) for a, b in zip(m, n))


def meet(m, n):
    return tuple(min(a, b) for a, b in zip(m, n))


def nonneg(m):
    return all(a >= 0 for a in m)


def is_zero(m):
    return all(a == 0 for a in m)


def total(m):
    return sum(m)


def supnorm(m):
    return max(abs(a) for a in m) if m else 0


def pos_part(m):
    return tuple(max(a, 0) for a in m)


def neg_part(m):
    return tuple(max(-a, 0) for a in m)


def absdeg(m):
    return tuple(abs(a) for a in m)


def mixed_sign(m):
    return any(a > 0 for a in m) and any(a < 0 for a in m)


def box(bound):
    """All degrees <= bound, lexicographically ascending."""
    return itertools.product(*(range(b + 1) for b in bound))


def box_by_total(bound):
    """All degrees <= bound, sorted by (total, lex)."""
    return sorted(box(bound), key=lambda n: (sum(n), n))


def grade_sort_key(p):
    """Deterministic grade order: mixed-sign grades first, then by sup norm, then lex.

    Mixed-sign grades are the genuinely higher-rank phenomena; surfacing them
    first yields the most informative period/isotropy certificates.
    """
    return (0 if mixed_sign(p) else 1, supnorm(p), p)


def period_candidates(k, pmax):
    """Nonzero elements of Z^k with sup norm <= pmax, one per +/- pair.

    The canonical representative has positive first nonzero entry; candidates
    come back in grade_sort_key order.
    """
    out = []
    for p in itertools.product(range(-pmax, pmax + 1), repeat=k):
        if all(e == 0 for e in p):
            continue
        lead = next(e for e in p if e != 0)
        if lead < 0:
            continue
        out.append(p)
    out.sort(key=grade_sort_key)
    return out


def fmt(n):
    return ",".join(str(e) for e in n)


def parse(text, k=None, signed=False):
    parts = [s.strip() for s in str(text).split(",")]
    try:
        n = tuple(int(s) for s in parts)
    except ValueError:
        raise DegreeOutOfRange(f"cannot parse degree literal {text!r}")
    if k is not None:
        n = check(n, k, signed=signed)
    elif not signed and any(e < 0 for e in n):
        raise DegreeOutOfRange(f"degree {n} has a negative entry")
    return n
