"""Verification suites shared by the command line and the acceptance tests.

Each criterion is a callable returning (ok, detail).  Everything is exact;
the detail string carries enough context to chase a failure.  The worked
low-rank closed forms are rebuilt here, independently of the summation code,
as frozen regression targets.
"""

import time
from fractions import Fraction
from math import comb

from .algebra import (HalfPowerPolynomial, ONE, Q, Q_MINUS_ONE, RF_ONE,
                      RationalFunction, moebius)
from .epoly import (TRANSPOSED, SurfaceData, component_sum_check,
                    e_poly, e_poly_component, e_poly_rational,
                    euler_char_component, gen_function_check)
from .partitions import all_partitions
from .symfun import (a_minus, a_minus_from_characters, a_minus_from_pieri,
                     a_plus, a_plus_from_characters, a_plus_from_pieri,
                     c_d_via_genfun, c_pi, d_pi)
from . import fforacle


def _qp(k):
    return HalfPowerPolynomial.q_power(k)


def closed_form_e1(g, r):
    "Rank 1: 2^(r-1) (q-1)^g."
    return (Q_MINUS_ONE ** g) * (2 ** (r - 1))


def closed_form_e2(g, r):
    "Rank 2 worked closed form (three terms)."
    inner = ((_qp(3) - Q) ** (g - 1)) * (2 ** r) \
        + ((_qp(2) - ONE) ** (g - 1)) * (3 ** r - 1) \
        - ((_qp(2) - Q) ** (g - 1)) * (2 ** (2 * r - 1))
    return (Q_MINUS_ONE ** g) * inner * Fraction(1, 2)


def closed_form_e3(g, r):
    "Rank 3 worked closed form (seven terms), as a rational function."
    q1 = RationalFunction(Q)
    q2 = RationalFunction(_qp(2))
    q3 = RationalFunction(_qp(3))
    group3 = RationalFunction((_qp(3) - ONE) * (_qp(3) - Q) * (_qp(3) - _qp(2)))
    inner = RationalFunction(2 ** r)
    inner = inner + RationalFunction(4 ** r) / (q3 ** (g - 1))
    inner = inner + RationalFunction(4 ** r) / ((q2 + q1) ** (g - 1))
    inner = inner - RationalFunction(4 ** r) / ((q2 + q1 + 1) ** (g - 1))
    inner = inner - RationalFunction(6 ** r) / ((q3 + q2 + q1) ** (g - 1))
    inner = inner + RationalFunction(Fraction(8 ** r, 3)) / (
        ((q1 + 1) ** (g - 1)) * ((q2 + q1 + 1) ** (g - 1)))
    inner = inner - RationalFunction(Fraction(2 ** r, 3)) / (
        ((q1 - 1) ** (g - 1)) * ((q2 - 1) ** (g - 1)))
    return (RationalFunction(Q_MINUS_ONE) * Fraction(1, 2)
            * (group3 ** (g - 1)) * inner)


def criterion_closed_forms():
    "Ranks 1-3 against the worked closed forms, g in 1..4, all r."
    for g in range(1, 5):
        for r in range(1, g + 2):
            surf = SurfaceData(g, r)
            if e_poly(1, surf) != closed_form_e1(g, r):
                return False, "rank 1 mismatch at g=%d r=%d" % (g, r)
            if e_poly(2, surf) != closed_form_e2(g, r):
                return False, "rank 2 mismatch at g=%d r=%d" % (g, r)
            if RationalFunction(e_poly(3, surf)) != closed_form_e3(g, r):
                return False, "rank 3 mismatch at g=%d r=%d" % (g, r)
    return True, "ranks 1-3 match for g in 1..4, r in 1..g+1"


def telescope_values(g, r, n_max):
    "The E-values for the degenerate genus checks, exact."
    surf = SurfaceData(g, r)
    if g == 0:
        return [e_poly_rational(n, surf) for n in range(1, n_max + 1)]
    return [RationalFunction(e_poly(n, surf)) for n in range(1, n_max + 1)]


def criterion_genus_specializations():
    "Genus 0 collapse and the two genus 1 constants, ranks up to 6."
    vals = telescope_values(0, 1, 6)
    if vals[0] != RF_ONE:
        return False, "g=0 rank 1 is not 1"
    if any(not v.is_zero() for v in vals[1:]):
        return False, "g=0 ranks 2..6 not all zero"
    qm1 = RationalFunction(Q_MINUS_ONE)
    if any(v != qm1 for v in telescope_values(1, 1, 6)):
        return False, "g=1 r=1 is not q-1 for some rank"
    if any(v != qm1 * 2 for v in telescope_values(1, 2, 6)):
        return False, "g=1 r=2 is not 2(q-1) for some rank"
    return True, "g=0: (1,0,...,0); g=1: q-1 and 2(q-1) up to rank 6"


GENFUN_CASES = ((0, 1), (1, 1), (1, 2), (2, 1), (2, 2), (3, 2))


def criterion_generating_function():
    "Plethystic-product identity at truncations 4 and 6."
    for g, r in GENFUN_CASES:
        for n_max in (4, 6):
            if not gen_function_check(n_max, SurfaceData(g, r)):
                return False, "identity fails at g=%d r=%d N=%d" % (g, r, n_max)
    return True, "holds for %s at N in {4, 6}" % (GENFUN_CASES,)


def criterion_coefficients():
    "Triple agreement for a+/a- and both routes to c_pi/d_pi, degree <= 8."
    for w in range(9):
        for lam in all_partitions(w):
            ap = a_plus(lam)
            am = a_minus(lam)
            if a_plus_from_characters(lam) != ap:
                return False, "a+ character route differs at %s" % (lam,)
            if a_plus_from_pieri(lam) != ap:
                return False, "a+ Pieri route differs at %s" % (lam,)
            if a_minus_from_characters(lam) != am:
                return False, "a- character route differs at %s" % (lam,)
            if a_minus_from_pieri(lam) != am:
                return False, "a- Pieri route differs at %s" % (lam,)
    cg, dg = c_d_via_genfun(8)
    for w in range(9):
        for pi in all_partitions(w):
            if cg.get(pi, Fraction(0)) != c_pi(pi):
                return False, "c coefficient differs at %s" % (pi,)
            if dg.get(pi, Fraction(0)) != d_pi(pi):
                return False, "d coefficient differs at %s" % (pi,)
    return True, "all routes agree through degree 8"


def criterion_components():
    "Binomial component sums and k-independence at odd rank."
    for n in range(1, 5):
        for g in range(1, 4):
            for r in range(1, g + 2):
                if not component_sum_check(n, SurfaceData(g, r)):
                    return False, "component sum fails at n=%d g=%d r=%d" % (n, g, r)
    for n in (1, 3, 5):
        for g in range(1, 4):
            for r in range(1, g + 2):
                surf = SurfaceData(g, r)
                vals = [e_poly_component(n, surf, k) for k in range(1, r + 1, 2)]
                if any(v != vals[0] for v in vals[1:]):
                    return False, "odd rank %d depends on k at g=%d r=%d" % (n, g, r)
    return True, "sums hold for n<=4, g<=3; odd ranks 1,3,5 independent of k"


def criterion_euler():
    "Euler characteristics: mu(n) n^(g-2) at odd rank, zero at even rank."
    for g in (2, 3, 4):
        for n in (1, 3, 5, 7, 9):
            want = moebius(n) * n ** (g - 2)
            for r in range(1, g + 2):
                for k in range(1, r + 1, 2):
                    got = euler_char_component(n, SurfaceData(g, r), k)
                    if got != want:
                        return (False, "odd n=%d g=%d r=%d k=%d: %s != %d"
                                % (n, g, r, k, got, want))
        for n in (2, 4, 6, 8):
            for r in (1, g + 1):
                got = euler_char_component(n, SurfaceData(g, r), 1)
                if got != 0:
                    return False, "even n=%d g=%d r=%d: %s != 0" % (n, g, r, got)
    return True, "mu(n) n^(g-2) for odd n<=9, zero for even n<=8, g in 2..4"


def criterion_oracle_f():
    "Closed F equals brute-force F on every class; mean value 2."
    for q in (3, 5):
        field = fforacle.PrimeField(q)
        for n in (1, 2, 3):
            table = fforacle.class_table(n, field)
            closed = fforacle.class_fn_F_closed(table)
            brute = fforacle.class_fn_F_brute(table)
            if closed != brute:
                bad = [lab for lab, a, b in
                       zip(table.labels, closed.values, brute.values) if a != b]
                return False, "F mismatch at n=%d q=%d: %s" % (n, q, bad[:3])
            if closed.mean() != 2:
                return False, "mean F != 2 at n=%d q=%d" % (n, q)
    return True, "closed = brute and mean 2 for n<=3, q in {3,5}"


def criterion_oracle_algebra():
    "Convolution square root of the commutator count; class equations."
    field3 = fforacle.PrimeField(3)
    table = fforacle.class_table(2, field3)
    n_fn = fforacle.class_fn_N(table)
    if fforacle.convolve(n_fn, n_fn, table) != fforacle.class_fn_C_brute(table):
        return False, "N*N != C on GL_2(F_3)"
    for q in (3, 5, 7):
        field = fforacle.PrimeField(q)
        for n in (1, 2, 3):
            table = fforacle.class_table(n, field)
            if sum(table.sizes) != table.group_order:
                return False, "class equation fails at n=%d q=%d" % (n, q)
    return True, "N*N = C on GL_2(F_3); class equations for n<=3, q in {3,5,7}"


ORACLE_MAIN_CASES = ((2, 1), (2, 2), (2, 3), (3, 2))


def criterion_oracle_main(qs=(5, 13), collect=None):
    """Rank-2 counts against the formula, components, roots, and conventions.

    When collect is a list, every comparison report is appended to it.
    """
    transposed_failed = False
    for q in qs:
        field = fforacle.PrimeField(q)
        roots = fforacle.primitive_roots_of_unity(field, 4)
        for g, r in ORACLE_MAIN_CASES:
            surf = SurfaceData(g, r)
            report = fforacle.compare_with_formula(2, field, surf)
            if collect is not None:
                collect.append(report)
            if not report["equal"]:
                return False, "total mismatch: %r" % (report,)
            total = 0
            for k in range(1, r + 1, 2):
                rep_k = fforacle.compare_with_formula(2, field, surf, k=k)
                if collect is not None:
                    collect.append(rep_k)
                if not rep_k["equal"]:
                    return False, "component mismatch: %r" % (rep_k,)
                total += comb(r, k) * rep_k["counted"]
            if total != report["counted"]:
                return False, "components do not sum at q=%d g=%d r=%d" % (q, g, r)
            counts = {fforacle.count_representation_variety(2, field, surf, xi)
                      for xi in roots}
            if len(counts) != 1:
                return False, "count depends on xi at q=%d g=%d r=%d" % (q, g, r)
            if r >= 2:
                rep_t = fforacle.compare_with_formula(2, field, surf,
                                                      convention=TRANSPOSED)
                if collect is not None:
                    collect.append(rep_t)
                if not rep_t["equal"]:
                    transposed_failed = True
    if not transposed_failed:
        return False, "transposed convention never failed with r >= 2"
    return True, "matched agrees everywhere (q in %s); transposed refuted" % (qs,)


def criterion_oracle_rank1():
    "Rank-1 closure: counted = 2^(r-1) (q-1)^(g+1) = |GL_1| E_1."
    for q in (3, 5, 7, 11):
        field = fforacle.PrimeField(q)
        for g in range(0, 4):
            for r in range(1, g + 2):
                surf = SurfaceData(g, r)
                counted = fforacle.count_representation_variety(
                    1, field, surf, q - 1)
                want = 2 ** (r - 1) * (q - 1) ** (g + 1)
                if counted != want:
                    return (False, "count %d != %d at q=%d g=%d r=%d"
                            % (counted, want, q, g, r))
                if counted != fforacle.formula_count(1, field, surf):
                    return False, "formula product differs at q=%d g=%d r=%d" % (q, g, r)
    return True, "closure holds for q in {3,5,7,11}, g <= 3, all r"


CRITERIA = (
    ("closed-forms", "worked closed forms for ranks 1-3", criterion_closed_forms, 5.0),
    ("genus-specializations", "genus 0 and genus 1 degenerations", criterion_genus_specializations, 10.0),
    ("generating-function", "plethystic product identity", criterion_generating_function, 60.0),
    ("coefficient-routes", "a+/a- and c/d multi-route agreement", criterion_coefficients, 30.0),
    ("component-sums", "component decomposition consistency", criterion_components, 60.0),
    ("euler-characteristics", "Euler characteristics of components", criterion_euler, 120.0),
    ("oracle-f", "closed vs brute-force symmetric-form counts", criterion_oracle_f, 120.0),
    ("oracle-algebra", "convolution identities and class equations", criterion_oracle_algebra, 60.0),
    ("oracle-main", "point counts against the rank-2 formula", criterion_oracle_main, 300.0),
    ("oracle-rank1", "rank-1 counting closure", criterion_oracle_rank1, 60.0),
)


def run_criteria(names=None, out=None):
    """Run the named criteria (all when names is None), print one line each.

    Returns True when every selected criterion passes.
    """
    selected = [c for c in CRITERIA if names is None or c[0] in names]
    all_ok = True
    for name, _desc, fn, _budget in selected:
        start = time.time()
        ok, detail = fn()
        elapsed = time.time() - start
        line = "%-24s %s  (%.2fs)  %s" % (name, "PASS" if ok else "FAIL",
                                          elapsed, detail)
        print(line, file=out)
        all_ok = all_ok and ok
    return all_ok
