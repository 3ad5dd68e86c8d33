"""Partition combinatorics: the indexing backbone for every formula.

Partitions are plain tuples of weakly decreasing positive integers; the empty
partition is ().  Both the parts encoding and the multiplicity encoding
(1^m1 2^m2 ...) are supported, conversion is lossless.
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .algebra import HalfPowerPolynomial


def as_partition(seq):
    "Validate and freeze an iterable of parts into a partition tuple."
    parts = tuple(int(x) for x in seq)
    if any(p <= 0 for p in parts):
        raise ValueError("partition parts must be positive")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError("partition parts must be weakly decreasing")
    return parts


def parse_partition(text):
    'Parse "3+2+1" or "[3,2,1]" (also "3,2,1"); empty string is ().'
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    s = s.replace("+", ",")
    items = [t for t in (piece.strip() for piece in s.split(",")) if t]
    return as_partition(sorted((int(t) for t in items), reverse=True))


@lru_cache(maxsize=None)
def all_partitions(n):
    "All partitions of n in descending lexicographic order."
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return ((),)
    out = []
    r = (n,)
    out.append(r)
    while True:
        i = len(r) - 1
        while i >= 0 and r[i] == 1:
            i -= 1
        if i < 0:
            break
        rest = len(r) - i
        r = r[:i] + (r[i] - 1,)
        while rest > 0:
            nxt = min(r[-1], rest)
            r += (nxt,)
            rest -= nxt
        out.append(r)
    return tuple(out)


def weight(lam):
    return sum(lam)


def length(lam):
    return len(lam)


def conjugate(lam):
    "Transpose of the Young diagram; an involution."
    if not lam:
        return ()
    cols = [0] * lam[0]
    for part in lam:
        for j in range(part):
            cols[j] += 1
    return tuple(cols)


def multiplicities(lam):
    "Multiplicity encoding as a dict {part value d: m_d}."
    mult = {}
    for part in lam:
        mult[part] = mult.get(part, 0) + 1
    return mult


def n_lambda(lam):
    "The weighted row statistic sum of (i-1)*lambda_i."
    return sum(i * part for i, part in enumerate(lam))


def z_pi(pi):
    "Centralizer order of the cycle type pi in the symmetric group."
    z = 1
    for d, m in multiplicities(pi).items():
        z *= factorial(m) * d ** m
    return z


def hooks(lam):
    "Hook lengths of all boxes, as a descending-sorted list."
    conj = conjugate(lam)
    out = []
    for i, part in enumerate(lam):
        for j in range(part):
            out.append(part - j + conj[j] - i - 1)
    return sorted(out, reverse=True)


def ell_odd(lam):
    return sum(1 for part in lam if part % 2 == 1)


def ell_even(lam):
    return sum(1 for part in lam if part % 2 == 0)


def sgn(lam):
    "Parity (-1)**(number of even parts)."
    return -1 if ell_even(lam) % 2 else 1


def union(lam, mu):
    "Multiset union: multiplicities add."
    return tuple(sorted(lam + tuple(mu), reverse=True))


def stretch(lam, s):
    "Multiply every part by s (written s.lam)."
    if s < 1:
        raise ValueError("stretch factor must be positive")
    return tuple(part * s for part in lam)


def repeat(lam, s):
    "Union of s copies (written s lam): multiplicities scale by s."
    if s < 1:
        raise ValueError("repeat factor must be positive")
    return tuple(sorted(lam * s, reverse=True))


@lru_cache(maxsize=None)
def centralizer_order_poly(lam):
    """Centralizer order of a unipotent-type class with partition lam,
    as a polynomial in q: q^(|lam| + 2 n_lam) * prod_d phi_{m_d}(q^{-1}).
    """
    e0 = 2 * (weight(lam) + 2 * n_lambda(lam))
    poly = HalfPowerPolynomial.u_power(e0)
    for m in multiplicities(lam).values():
        for i in range(1, m + 1):
            poly = poly * (HalfPowerPolynomial.from_int(1)
                           - HalfPowerPolynomial.u_power(-2 * i))
    return poly


def centralizer_order(lam, q):
    "Integer centralizer order at a concrete prime power q."
    value = centralizer_order_poly(lam).evaluate(Fraction(q))
    assert value.denominator == 1
    return int(value)


def partition_count(n):
    "p(n) via Euler's pentagonal-number recurrence."
    table = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > m and g2 > m:
                break
            s = -1 if k % 2 == 0 else 1
            if g1 <= m:
                total += s * table[m - g1]
            if g2 <= m:
                total += s * table[m - g2]
            k += 1
        table[m] = total
    return table[n]
