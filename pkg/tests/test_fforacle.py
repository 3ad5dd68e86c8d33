from fractions import Fraction
from math import comb

import pytest

from realcharvar.epoly import MATCHED, TRANSPOSED, SurfaceData
from realcharvar.fforacle import (GroupTooLarge,
                                  NoPrimitiveRoot, PrimeField,
                                  SingularMatrix, UnsupportedRank,
                                  class_fn_C_brute, class_fn_F_brute,
                                  class_fn_F_closed, class_fn_F_signed,
                                  class_fn_N, class_table, classify,
                                  compare_with_formula, companion, convolve,
                                  count_representation_variety,
                                  delta_identity, enumerate_classes,
                                  f_closed_poly, f_degree_prediction,
                                  formula_count, group_order, mat_det,
                                  mat_identity, mat_inv, mat_mul,
                                  poly_star, primitive_roots_of_unity)

F3 = PrimeField(3)
F5 = PrimeField(5)
F7 = PrimeField(7)


def test_prime_field_validation():
    with pytest.raises(ValueError):
        PrimeField(9)
    with pytest.raises(ValueError):
        PrimeField(2)
    assert F5.inv(2) == 3


def test_matrix_helpers():
    A = ((1, 2), (0, 1))
    assert mat_det(A, 5) == 1
    Ai = mat_inv(A, F5)
    assert mat_mul(A, Ai, 5) == mat_identity(2)
    with pytest.raises(SingularMatrix):
        mat_inv(((1, 1), (1, 1)), F5)
    B = ((1, 2, 0), (0, 1, 3), (1, 0, 2))
    assert mat_det(B, 7) == 1
    Bi = mat_inv(B, F7)
    assert mat_mul(B, Bi, 7) == mat_identity(3)


def test_poly_star():
    # roots of t - 2 invert to roots of t - 2^(-1)
    q = 5
    f = ((-2) % q, 1)
    fs = poly_star(f, F5)
    assert fs == ((-3) % q, 1)  # 2^(-1) = 3 mod 5
    # an irreducible quadratic fixed by star: t^2 + 1 over F_3
    assert poly_star((1, 0, 1), F3) == (1, 0, 1)


def test_class_counts():
    assert enumerate_classes(1, F3).class_count() == 2
    assert enumerate_classes(2, F3).class_count() == 8
    t25 = enumerate_classes(2, F5)
    assert sum(t25.sizes) == 480
    assert t25.class_count() == 24
    with pytest.raises(UnsupportedRank):
        enumerate_classes(4, F3)


def test_class_equation():
    for q, field in ((3, F3), (5, F5), (7, F7)):
        for n in (1, 2, 3):
            table = class_table(n, field)
            assert sum(table.sizes) == group_order(n, q)


def test_classify_examples():
    t23 = class_table(2, F3)
    assert classify(mat_identity(2), t23) == (((2, 1), (1, 1)),)
    # companion matrix of an irreducible quadratic: regular semisimple
    comp = companion((1, 0, 1), 3)
    assert classify(comp, t23) == (((1, 0, 1), (1,)),)
    # a nontrivial unipotent Jordan block
    assert classify(((1, 1), (0, 1)), t23) == (((2, 1), (2,)),)
    with pytest.raises(SingularMatrix):
        classify(((1, 1), (1, 1)), t23)


def test_classify_roundtrip():
    for field in (F3, F5, F7):
        for n in (1, 2, 3):
            table = class_table(n, field)
            for i, rep in enumerate(table.reps):
                assert table.index[classify(rep, table)] == i


def test_F_closed_equals_brute():
    for field in (F3, F5):
        for n in (1, 2, 3):
            table = class_table(n, field)
            closed = class_fn_F_closed(table)
            brute = class_fn_F_brute(table)
            assert closed == brute, (n, field.q)
            assert closed.mean() == 2


def test_F_identity_value():
    table = class_table(2, F3)
    idx = table.scalar_class_index(1)
    assert class_fn_F_closed(table).values[idx] == 18  # q^3 - q^2 at q=3


def test_F_supported_on_symmetric_labels():
    for field in (F3, F5):
        table = class_table(2, field)
        F = class_fn_F_closed(table)
        for label, v in zip(table.labels, F.values):
            assign = dict(label)
            symmetric = all(assign.get(poly_star(f, field)) == lam
                            for f, lam in label)
            if not symmetric:
                assert v == 0, label


def test_F_monic_degree_prediction():
    for field in (F3, F5):
        for n in (1, 2, 3):
            table = class_table(n, field)
            for label in table.labels:
                poly = f_closed_poly(label, field)
                if poly.is_zero():
                    continue
                pred = f_degree_prediction(label, field)
                assert poly.q_degree() == pred
                assert poly.terms[poly.max_exp()] == 1


def test_F_leading_behavior_across_fields():
    # same symmetric-type classes (support in t-1, t+1) exist at every odd q;
    # the evaluation ratio pins the common degree
    import math
    t3 = class_table(2, F3)
    t5 = class_table(2, F5)
    for lam1 in ((2,), (1, 1)):
        lab3 = (((2, 1), lam1),)
        lab5 = (((4, 1), lam1),)
        v3 = f_closed_poly(lab3, F3).evaluate(Fraction(3))
        v5 = f_closed_poly(lab5, F5).evaluate(Fraction(5))
        if v3 == 0:
            assert v5 == 0
            continue
        est = math.log(v5 / v3) / math.log(5 / 3)
        assert round(est) == f_degree_prediction(lab3, F3)


def test_N_examples():
    t1 = class_table(1, F5)
    n1 = class_fn_N(t1)
    assert n1.values[t1.scalar_class_index(1)] == 4
    assert sum(n1.values) == 4  # supported on the identity only
    t23 = class_table(2, F3)
    n2 = class_fn_N(t23)
    assert n2.group_sum() == t23.group_order
    assert n2.values[t23.scalar_class_index(1)] == 18


def test_N_group_too_large():
    with pytest.raises(GroupTooLarge):
        class_fn_N(class_table(3, F5))


def test_convolution_unit_and_commutativity():
    table = class_table(2, F3)
    n_fn = class_fn_N(table)
    f_fn = class_fn_F_closed(table)
    delta = delta_identity(table)
    assert convolve(delta, n_fn, table) == n_fn
    assert convolve(n_fn, delta, table) == n_fn
    assert convolve(f_fn, n_fn, table) == convolve(n_fn, f_fn, table)


def test_N_squared_is_commutator_count():
    table = class_table(2, F3)
    n_fn = class_fn_N(table)
    assert convolve(n_fn, n_fn, table) == class_fn_C_brute(table)


def test_signed_split():
    table = class_table(2, F5)
    full = class_fn_F_closed(table)
    plus, minus = class_fn_F_signed(table)
    assert [p + m for p, m in zip(plus.values, minus.values)] == list(full.values)
    for v, det in zip(plus.values, table.dets):
        if v:
            assert det == 1
    for v, det in zip(minus.values, table.dets):
        if v:
            assert det == 4


def test_primitive_roots():
    assert primitive_roots_of_unity(F5, 4) == (2, 3)
    assert primitive_roots_of_unity(PrimeField(13), 4) == (5, 8)
    assert primitive_roots_of_unity(F7, 4) == ()
    assert primitive_roots_of_unity(F7, 2) == (6,)


def test_count_rank1():
    for q in (3, 5, 7, 11):
        field = PrimeField(q)
        for g in range(0, 4):
            for r in range(1, g + 2):
                surf = SurfaceData(g, r)
                counted = count_representation_variety(1, field, surf, q - 1)
                assert counted == 2 ** (r - 1) * (q - 1) ** (g + 1)
                assert counted == formula_count(1, field, surf)


def test_count_rank1_direct_enumeration():
    # literal tuple sweep over (A, b, x) at q=3, g=1, r=1 (s=1): the defining
    # equations in GL_1 are A b A^T = b and A * x (x^T)^(-1) = xi = -1
    q = 3
    units = (1, 2)
    direct = 0
    for a in units:
        for b in units:
            for x in units:
                form_ok = (a * b * a) % q == b % q
                prod_ok = (a * x * pow(x, q - 2, q)) % q == q - 1
                if form_ok and prod_ok:
                    direct += 1
    got = count_representation_variety(1, PrimeField(q), SurfaceData(1, 1), q - 1)
    assert direct == got == 4


def test_count_rank2_element_level_sweep():
    # validate the whole pipeline against a literal element-level count over
    # GL_2(F_5): no class tables, no kernels, just the defining equations
    q = 5
    els = [((a, b), (c, d)) for a in range(q) for b in range(q)
           for c in range(q) for d in range(q) if (a * d - b * c) % q]
    sym = [B for B in els if B[0][1] == B[1][0]]

    def mul(A, B):
        return mat_mul(A, B, q)

    def inv(B):
        return mat_inv(B, F5)

    def tr(B):
        return ((B[0][0], B[1][0]), (B[0][1], B[1][1]))

    F_el = {A: sum(1 for B in sym if mul(mul(A, B), tr(A)) == B) for A in els}
    N_el = {A: 0 for A in els}
    for B in els:
        N_el[mul(B, inv(tr(B)))] += 1

    xi_id = ((2, 0), (0, 2))
    # genus 1, one circle: F * N at xi
    direct1 = sum(F_el[A] * N_el[mul(inv(A), xi_id)] for A in els)
    assert direct1 == count_representation_variety(
        2, F5, SurfaceData(1, 1), 2) == 480 * 4
    # genus 2, one circle: F * N * N at xi
    nn = {A: 0 for A in els}
    for B in els:
        nb = N_el[B]
        if nb:
            Bi = inv(B)
            for A in els:
                if N_el[A]:
                    nn_key = mul(B, A)
                    nn[nn_key] += nb * N_el[A]
    direct2 = sum(F_el[A] * nn[mul(inv(A), xi_id)] for A in els)
    assert direct2 == count_representation_variety(
        2, F5, SurfaceData(2, 1), 2) == 480 * 1984


def test_count_rank2_main_value():
    surf = SurfaceData(2, 1)
    counted = count_representation_variety(2, F5, surf, 2)
    assert counted == 480 * 1984
    assert counted == count_representation_variety(2, F5, surf, 3)
    assert counted % group_order(2, 5) == 0


def test_count_rank2_bad_root():
    surf = SurfaceData(2, 1)
    with pytest.raises(NoPrimitiveRoot):
        count_representation_variety(2, F5, surf, 4)  # order 2, not 4
    with pytest.raises(NoPrimitiveRoot):
        count_representation_variety(2, F7, surf, 3)  # 4 does not divide 6


def test_count_rank2_components():
    for g, r in ((2, 1), (2, 2), (2, 3), (3, 2)):
        surf = SurfaceData(g, r)
        total = compare_with_formula(2, F5, surf)
        assert total["equal"], total
        acc = 0
        for k in range(1, r + 1, 2):
            rep = compare_with_formula(2, F5, surf, k=k)
            assert rep["equal"], rep
            acc += comb(r, k) * rep["counted"]
        assert acc == total["counted"]


def test_sign_tuples_decompose_total():
    # g=2, r=2: the two components w = (+,-) and (-,+) carry equal counts
    # and sum to the full count
    surf = SurfaceData(2, 2)
    total = count_representation_variety(2, F5, surf, 2)
    c1 = count_representation_variety(2, F5, surf, 2, w=(1, -1))
    c2 = count_representation_variety(2, F5, surf, 2, w=(-1, 1))
    assert c1 == c2
    assert c1 + c2 == total


def test_sign_tuple_validation():
    surf = SurfaceData(2, 2)
    with pytest.raises(ValueError):
        count_representation_variety(2, F5, surf, 2, w=(1, 1))  # product +1
    with pytest.raises(ValueError):
        count_representation_variety(2, F5, surf, 2, w=(1,))  # wrong length


def test_transposed_convention_fails():
    flags = []
    for g, r in ((2, 2), (2, 3), (3, 2)):
        rep = compare_with_formula(2, F5, SurfaceData(g, r),
                                   convention=TRANSPOSED)
        flags.append(rep["equal"])
    assert not all(flags)
    # and matched agrees on the same cases
    for g, r in ((2, 2), (2, 3), (3, 2)):
        assert compare_with_formula(2, F5, SurfaceData(g, r),
                                    convention=MATCHED)["equal"]


def test_report_fields():
    rep = compare_with_formula(2, F5, SurfaceData(2, 1))
    assert set(rep) == {"n", "q", "g", "r", "k", "xi", "counted", "formula",
                        "convention", "equal"}
    assert rep["xi"] == 2 and rep["k"] is None
    assert rep["counted"] == rep["formula"] == 480 * 1984


def test_report_json_line():
    import json
    from realcharvar.fforacle import report_line
    rep = compare_with_formula(2, F5, SurfaceData(2, 1))
    line = report_line(rep)
    assert "\n" not in line
    assert json.loads(line) == rep


def test_thread_count_env(monkeypatch):
    # chunked sweeps must give identical results regardless of thread count
    import realcharvar.fforacle as ff
    table = class_table(3, F3)
    serial = class_fn_F_brute(table)
    monkeypatch.setenv("REALCHARVAR_ORACLE_THREADS", "3")
    assert ff._thread_count() == 3
    assert class_fn_F_brute(table) == serial
    monkeypatch.setenv("REALCHARVAR_ORACLE_THREADS", "bogus")
    with pytest.raises(ValueError):
        ff._thread_count()
