import random
from fractions import Fraction
from itertools import permutations

import pytest

from realcharvar.partitions import (all_partitions, conjugate,
                                    multiplicities, z_pi)
from realcharvar.symfun import (POWERSUM, SCHUR, SymFunc, WeightMismatch,
                                a_minus, a_minus_from_characters,
                                a_minus_from_pieri, a_plus,
                                a_plus_from_characters, a_plus_from_pieri,
                                c_d_via_genfun, c_pi, d_pi, pieri_col,
                                pieri_row, power_to_schur, schur_to_power,
                                sn_character)


def _cycle_type(perm):
    seen = [False] * len(perm)
    parts = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        parts.append(length)
    return tuple(sorted(parts, reverse=True))


def test_character_examples():
    assert sn_character((2,), (1, 1)) == 1
    assert sn_character((1, 1), (2,)) == -1
    assert sn_character((2, 1), (3,)) == -1


def test_character_standard_rep_brute_force():
    # trace of the 2-dimensional standard representation on a 3-cycle:
    # permutation-matrix trace (fixed points) minus the trivial summand
    traces = []
    for perm in permutations(range(3)):
        if _cycle_type(perm) == (3,):
            fixed = sum(1 for i in range(3) if perm[i] == i)
            traces.append(fixed - 1)
    assert traces and all(t == -1 for t in traces)
    assert sn_character((2, 1), (3,)) == -1


def test_character_weight_mismatch():
    with pytest.raises(WeightMismatch):
        sn_character((2,), (1, 1, 1))


def test_character_orthogonality():
    for n in range(1, 7):
        for l1 in all_partitions(n):
            for l2 in all_partitions(n):
                total = sum(Fraction(sn_character(l1, p) * sn_character(l2, p),
                                     z_pi(p))
                            for p in all_partitions(n))
                assert total == (1 if l1 == l2 else 0)


def test_character_degree_hook_formula():
    from math import factorial
    from realcharvar.partitions import hooks
    for n in range(1, 8):
        for lam in all_partitions(n):
            dim = factorial(n)
            for h in hooks(lam):
                dim //= h
            assert sn_character(lam, (1,) * n) == dim


def test_power_to_schur_examples():
    assert power_to_schur(SymFunc(POWERSUM, {(1,): 1})) == SymFunc(SCHUR, {(1,): 1})
    assert power_to_schur(SymFunc(POWERSUM, {(2,): 1})) == \
        SymFunc(SCHUR, {(2,): 1, (1, 1): -1})
    assert power_to_schur(SymFunc(POWERSUM, {(1, 1): 1})) == \
        SymFunc(SCHUR, {(2,): 1, (1, 1): 1})


def test_basis_conversion_roundtrip():
    rng = random.Random(42)
    for w in range(7):
        terms = {lam: Fraction(rng.randint(-6, 6), rng.randint(1, 3))
                 for lam in all_partitions(w)}
        f = SymFunc(SCHUR, terms)
        assert power_to_schur(schur_to_power(f)) == f
        g = SymFunc(POWERSUM, terms)
        assert schur_to_power(power_to_schur(g)) == g


def test_pieri_examples():
    assert pieri_row(SymFunc(SCHUR, {(1,): 1}), 1) == \
        SymFunc(SCHUR, {(2,): 1, (1, 1): 1})
    assert pieri_col(SymFunc(SCHUR, {(2,): 1}), 2) == \
        SymFunc(SCHUR, {(3, 1): 1, (2, 1, 1): 1})
    assert pieri_row(SymFunc(SCHUR, {(): 1}), 3) == SymFunc(SCHUR, {(3,): 1})


def test_pieri_against_power_multiplication():
    # multiplication by s_(n) in the power-sum basis is multiplication by
    # the degree-n complete homogeneous sum; cross-check through conversion
    h2 = SymFunc(POWERSUM, {(2,): Fraction(1, 2), (1, 1): Fraction(1, 2)})
    for lam in all_partitions(3):
        f = SymFunc(SCHUR, {lam: 1})
        lhs = pieri_row(f, 2)
        fp = schur_to_power(f)
        prod = {}
        for pi, c in fp.terms.items():
            for rho, e in h2.terms.items():
                key = tuple(sorted(pi + rho, reverse=True))
                prod[key] = prod.get(key, Fraction(0)) + c * e
        assert power_to_schur(SymFunc(POWERSUM, prod)) == lhs


def test_c_d_examples():
    assert c_pi((2,)) == Fraction(1, 2) and d_pi((2,)) == Fraction(1, 2)
    assert c_pi((1, 1)) == Fraction(5, 2) and d_pi((1, 1)) == Fraction(1, 2)
    assert c_pi(()) == 1 and d_pi(()) == 1
    assert c_pi((1,)) == 2 and d_pi((1,)) == 0
    assert c_pi((2, 2)) == Fraction(3, 8) and d_pi((2, 2)) == Fraction(3, 8)


def test_c_d_generating_products():
    cg, dg = c_d_via_genfun(8)
    assert cg[(1,)] == 2
    assert (1,) not in dg
    assert cg[()] == 1 and dg[()] == 1
    for w in range(9):
        for pi in all_partitions(w):
            assert cg.get(pi, Fraction(0)) == c_pi(pi), pi
            assert dg.get(pi, Fraction(0)) == d_pi(pi), pi


def test_c_d_block_multiplicativity():
    for w in range(1, 9):
        for pi in all_partitions(w):
            pc = Fraction(1)
            pd = Fraction(1)
            for v, m in multiplicities(pi).items():
                pc *= c_pi((v,) * m)
                pd *= d_pi((v,) * m)
            assert pc == c_pi(pi)
            assert pd == d_pi(pi)


def test_a_examples():
    assert a_plus((1, 1)) == 3 and a_minus((1, 1)) == 1
    assert a_plus((2,)) == 2 and a_minus((2,)) == 0
    assert a_plus(()) == 1 and a_minus(()) == 1
    for w in (1, 3, 5, 7, 9):
        for lam in all_partitions(w):
            assert a_minus(lam) == 0


def test_a_three_route_agreement():
    for w in range(9):
        for lam in all_partitions(w):
            ap = a_plus(lam)
            am = a_minus(lam)
            assert a_plus_from_characters(lam) == ap, lam
            assert a_minus_from_characters(lam) == am, lam
            assert a_plus_from_pieri(lam) == ap, lam
            assert a_minus_from_pieri(lam) == am, lam


def test_schur_sum_identities():
    # (sum of all s) (sum of s_(n)) carries a+ on conjugates, degree <= 8
    bound = 8
    base = SymFunc(SCHUR, {lam: 1 for w in range(bound + 1)
                           for lam in all_partitions(w)}, bound)
    total = SymFunc(SCHUR, {}, bound)
    for n in range(bound + 1):
        total = total + pieri_row(base, n)
    for w in range(bound + 1):
        for lam in all_partitions(w):
            assert total.coefficient(lam) == a_plus(conjugate(lam))
    # (sum over even-row partitions of s) (sum of s_(1^n)) = sum of all s
    evens = SymFunc(SCHUR, {lam: 1 for w in range(bound + 1)
                            for lam in all_partitions(w)
                            if all(part % 2 == 0 for part in lam)}, bound)
    recovered = SymFunc(SCHUR, {}, bound)
    for n in range(bound + 1):
        recovered = recovered + pieri_col(evens, n)
    assert recovered == base
