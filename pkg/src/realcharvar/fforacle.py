"""Independent finite-field verification over GL_n(F_q), n <= 3.

Conjugacy classes are labelled by maps from monic irreducible polynomials to
partitions.  The class functions F (invariant symmetric forms), N (symmetric
square roots) and C (commutator presentations) are built both from closed
formulas and from brute-force sweeps, convolved through a precomputed
pair-distribution kernel, and evaluated at scalar classes to count points of
the representation variety.  Counts are compared against the closed-form
E-polynomials; mismatches are reported, never suppressed.

numpy is used only to vectorize group sweeps (kernel building, brute-force
counting); all class-function values are exact Python integers.
"""

import json
import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import epoly
from .algebra import half_poly_eval
from .partitions import (all_partitions, centralizer_order, conjugate,
                         ell_odd, multiplicities, n_lambda, weight)


class UnsupportedRank(ValueError):
    "Class enumeration is implemented for n <= 3."


class SingularMatrix(ValueError):
    "Only invertible matrices have a conjugacy label here."


class GroupTooLarge(ValueError):
    "A requested sweep exceeds the feasibility envelope."


class KernelMissing(ValueError):
    "No convolution kernel is available at this rank/field size."


class NoPrimitiveRoot(ValueError):
    "The field has no primitive 2n-th root of unity."


_GROUP_BUDGET = 2_000_000      # elements swept in one pass
_PAIR_BUDGET = 10_000_000      # pairs for the commutator brute force


def _thread_count():
    raw = os.environ.get("REALCHARVAR_ORACLE_THREADS", "1")
    try:
        k = int(raw)
    except ValueError:
        raise ValueError("REALCHARVAR_ORACLE_THREADS must be an integer")
    return max(1, k)


def _chunked_map(fn, items):
    "Run fn over items, in a thread pool when configured; order preserved."
    k = _thread_count()
    items = list(items)
    if k <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=k) as pool:
        return list(pool.map(fn, items))


def _is_prime(m):
    if m < 2:
        return False
    p = 2
    while p * p <= m:
        if m % p == 0:
            return False
        p += 1
    return True


class PrimeField:
    "Odd prime field F_q with tabulated inverses."

    __slots__ = ("q", "_inv")

    def __init__(self, q):
        if not _is_prime(q):
            raise ValueError("q = %d is not prime" % q)
        if q == 2:
            raise ValueError("the symmetric-form split needs odd characteristic")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "_inv",
                           tuple([0] + [pow(a, q - 2, q) for a in range(1, q)]))

    def __setattr__(self, name, value):
        raise AttributeError("PrimeField is immutable")

    def inv(self, a):
        a %= self.q
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv[a]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and self.q == other.q

    def __hash__(self):
        return hash(("PrimeField", self.q))

    def __repr__(self):
        return "PrimeField(%d)" % self.q


# -- small dense matrices over F_q (tuples of row tuples) ---------------

def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_scalar(n, a, q):
    a %= q
    return tuple(tuple(a if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(A, B, q):
    n = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) % q
                       for j in range(n)) for i in range(n))


def mat_transpose(A):
    n = len(A)
    return tuple(tuple(A[j][i] for j in range(n)) for i in range(n))


def mat_det(A, q):
    n = len(A)
    if n == 1:
        return A[0][0] % q
    if n == 2:
        return (A[0][0] * A[1][1] - A[0][1] * A[1][0]) % q
    if n == 3:
        return (A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
                - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
                + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0])) % q
    raise UnsupportedRank("determinant for n <= 3 only")


def mat_inv(A, field):
    q = field.q
    n = len(A)
    d = mat_det(A, q)
    if d == 0:
        raise SingularMatrix("matrix is not invertible")
    di = field.inv(d)
    if n == 1:
        return ((di,),)
    if n == 2:
        a, b = A[0]
        c, e = A[1]
        return ((e * di % q, -b * di % q), (-c * di % q, a * di % q))
    # adjugate for n = 3
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != i]
            cols = [c for c in range(3) if c != j]
            minor = (A[rows[0]][cols[0]] * A[rows[1]][cols[1]]
                     - A[rows[0]][cols[1]] * A[rows[1]][cols[0]])
            cof[i][j] = (-1) ** (i + j) * minor
    return tuple(tuple(cof[j][i] * di % q for j in range(3)) for i in range(3))


# -- monic polynomials over F_q (ascending coefficient tuples) ----------

def poly_mul(f, g, q):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % q
    return tuple(out)


def poly_pow(f, e, q):
    out = (1,)
    for _ in range(e):
        out = poly_mul(out, f, q)
    return out


def poly_eval(f, x, q):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % q
    return acc


def poly_star(f, field):
    "The polynomial whose roots are the inverse roots of f (monic)."
    q = field.q
    c0 = f[0] % q
    if c0 == 0:
        raise ValueError("star of a polynomial divisible by t")
    inv0 = field.inv(c0)
    rev = tuple(reversed(f))
    return tuple(c * inv0 % q for c in rev)


@lru_cache(maxsize=None)
def irreducibles(field, d):
    "Sorted monic irreducible polynomials of degree d, excluding t itself."
    q = field.q
    if d == 1:
        return tuple((c, 1) for c in range(1, q))
    if d == 2:
        out = []
        for b in range(q):
            for c in range(q):
                f = (c, b, 1)
                if all(poly_eval(f, x, q) for x in range(q)):
                    out.append(f)
        return tuple(sorted(out))
    if d == 3:
        out = []
        for b in range(q):
            for c in range(q):
                for e in range(q):
                    f = (e, c, b, 1)
                    if all(poly_eval(f, x, q) for x in range(q)):
                        out.append(f)
        return tuple(sorted(out))
    raise UnsupportedRank("irreducibles up to degree 3 only")


def companion(f, q):
    "Companion matrix of a monic polynomial."
    d = len(f) - 1
    return tuple(tuple((1 if j == i + 1 else 0) if i < d - 1 else (-f[j]) % q
                       for j in range(d)) for i in range(d))


def block_diag(blocks):
    n = sum(len(b) for b in blocks)
    rows = []
    offset = 0
    for b in blocks:
        for r in b:
            rows.append((0,) * offset + tuple(r) + (0,) * (n - offset - len(b)))
        offset += len(b)
    return tuple(rows)


def charpoly(A, q):
    "Characteristic polynomial, ascending coefficients, monic; n <= 3."
    n = len(A)
    if n == 1:
        return ((-A[0][0]) % q, 1)
    if n == 2:
        tr = (A[0][0] + A[1][1]) % q
        return (mat_det(A, q), (-tr) % q, 1)
    if n == 3:
        tr = (A[0][0] + A[1][1] + A[2][2]) % q
        m2 = 0
        for i in range(3):
            rows = [r for r in range(3) if r != i]
            m2 += (A[rows[0]][rows[0]] * A[rows[1]][rows[1]]
                   - A[rows[0]][rows[1]] * A[rows[1]][rows[0]])
        return ((-mat_det(A, q)) % q, m2 % q, (-tr) % q, 1)
    raise UnsupportedRank("charpoly for n <= 3 only")


def poly_div_exact(f, g, q, field):
    "Divide monic f by monic g; remainder must vanish."
    f = list(f)
    out = [0] * (len(f) - len(g) + 1)
    for i in range(len(f) - len(g), -1, -1):
        c = f[i + len(g) - 1] % q
        out[i] = c
        if c:
            for j, b in enumerate(g):
                f[i + j] = (f[i + j] - c * b) % q
    assert all(x % q == 0 for x in f[:len(g) - 1])
    return tuple(out)


def factor_monic(f, field):
    "Factor a monic polynomial of degree <= 3 with nonzero constant term."
    q = field.q
    factors = {}
    rest = f
    for a in range(1, q):
        lin = ((-a) % q, 1)
        while len(rest) > 1 and poly_eval(rest, a, q) == 0:
            factors[lin] = factors.get(lin, 0) + 1
            rest = poly_div_exact(rest, lin, q, field)
    if len(rest) > 1:
        # no roots left: degree 2 or 3 remainder is irreducible
        factors[rest] = factors.get(rest, 0) + 1
    return factors


def kernel_dim(M, q):
    "Dimension of the kernel by Gaussian elimination mod q."
    n = len(M)
    rows = [list(r) for r in M]
    rank = 0
    for col in range(n):
        piv = None
        for r in range(rank, n):
            if rows[r][col] % q:
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], q - 2, q)
        rows[rank] = [x * inv % q for x in rows[rank]]
        for r in range(n):
            if r != rank and rows[r][col] % q:
                c = rows[r][col]
                rows[r] = [(x - c * y) % q for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return n - rank


def poly_eval_matrix(f, A, q):
    n = len(A)
    acc = mat_scalar(n, 0, q)
    for c in reversed(f):
        acc = mat_mul(acc, A, q)
        acc = tuple(tuple((acc[i][j] + (c if i == j else 0)) % q for j in range(n))
                    for i in range(n))
    return acc


def group_order(n, q):
    order = 1
    for i in range(n):
        order *= q ** n - q ** i
    return order


# -- conjugacy class tables ----------------------------------------------

class ClassTable:
    """Conjugacy classes of GL_n(F_q): labels, representatives, sizes.

    A label is a sorted tuple of (irreducible polynomial, partition) pairs
    with total weighted degree n.  The class equation is verified at
    construction time.
    """

    def __init__(self, n, field):
        if not 1 <= n <= 3:
            raise UnsupportedRank("class tables for n <= 3 only")
        self.n = n
        self.field = field
        self.q = field.q
        self.group_order = group_order(n, field.q)
        pool = []
        for d in range(1, n + 1):
            pool.extend((f, d) for f in irreducibles(field, d))
        labels = []

        def rec(i, remaining, acc):
            if remaining == 0:
                labels.append(tuple(sorted(acc)))
                return
            if i == len(pool):
                return
            f, d = pool[i]
            rec(i + 1, remaining, acc)
            if d <= remaining:
                for w in range(1, remaining // d + 1):
                    for lam in all_partitions(w):
                        rec(i + 1, remaining - d * w, acc + [(f, lam)])

        rec(0, n, [])
        self.labels = tuple(sorted(labels))
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.reps = tuple(self._representative(lab) for lab in self.labels)
        self.sizes = tuple(self.group_order // self._centralizer(lab)
                           for lab in self.labels)
        if sum(self.sizes) != self.group_order:
            raise AssertionError("class equation failed for n=%d, q=%d" % (n, field.q))
        self.dets = tuple(mat_det(rep, self.q) for rep in self.reps)
        self._element_class = None
        self._kernel = None
        self._conv_cache = {}

    def _representative(self, label):
        blocks = []
        for f, lam in label:
            for part in lam:
                blocks.append(companion(poly_pow(f, part, self.q), self.q))
        return block_diag(blocks)

    def _centralizer(self, label):
        total = 1
        for f, lam in label:
            total *= centralizer_order(lam, self.q ** (len(f) - 1))
        return total

    def class_count(self):
        return len(self.labels)

    def scalar_class_index(self, a):
        "Index of the class of the scalar matrix a * identity."
        a %= self.q
        lam = (1,) * self.n
        label = ((((-a) % self.q, 1), lam),)
        return self.index[label]

    # -- element-to-class lookup (n <= 2) --------------------------------

    def element_class_array(self):
        """cls[encode(A)] = class index for every invertible A; n <= 2.

        Encoding is the base-q digit string of the matrix entries.
        """
        if self._element_class is not None:
            return self._element_class
        q = self.q
        if self.n == 1:
            cls = np.full(q, -1, dtype=np.int32)
            for a in range(1, q):
                cls[a] = self.index[((((-a) % q, 1), (1,)),)]
        elif self.n == 2:
            cls = np.full(q ** 4, -1, dtype=np.int32)
            memo = {}
            for a in range(q):
                for b in range(q):
                    for c in range(q):
                        for d in range(q):
                            det = (a * d - b * c) % q
                            if det == 0:
                                continue
                            tr = (a + d) % q
                            scalar = (b == 0 and c == 0 and a == d)
                            key = (tr, det, scalar)
                            idx = memo.get(key)
                            if idx is None:
                                label = self._label_from_quadratic(tr, det, scalar)
                                idx = self.index[label]
                                memo[key] = idx
                            cls[((a * q + b) * q + c) * q + d] = idx
        else:
            raise KernelMissing("element lookup for n <= 2 only")
        self._element_class = cls
        return cls

    def _label_from_quadratic(self, tr, det, scalar):
        "Class label of a 2x2 matrix from charpoly and scalar flag."
        q = self.q
        f = (det % q, (-tr) % q, 1)
        roots = [x for x in range(1, q) if poly_eval(f, x, q) == 0]
        if len(roots) == 0:
            return ((f, (1,)),)
        if len(roots) == 2:
            l1 = (((-roots[0]) % q, 1), (1,))
            l2 = (((-roots[1]) % q, 1), (1,))
            return tuple(sorted((l1, l2)))
        a = roots[0]
        lin = ((-a) % q, 1)
        return ((lin, (1, 1)),) if scalar else ((lin, (2,)),)

    def class_of_matrix(self, A):
        "Class index of an invertible matrix, via the lookup when available."
        if self.n <= 2:
            cls = self.element_class_array()
            idx = 0
            for row in A:
                for x in row:
                    idx = idx * self.q + (x % self.q)
            c = int(cls[idx])
            if c < 0:
                raise SingularMatrix("matrix is not invertible")
            return c
        return self.index[classify(A, self)]

    # -- group element arrays (n = 2, numpy) -----------------------------

    def _group_arrays(self):
        "(elements, inverses) as (m, 4) int64 arrays; n = 2 only."
        q = self.q
        if self.n != 2:
            raise KernelMissing("group arrays for n = 2 only")
        if q ** 4 > _GROUP_BUDGET:
            raise GroupTooLarge("q = %d is beyond the sweep budget" % q)
        idx = np.arange(q ** 4, dtype=np.int64)
        d = idx % q
        c = (idx // q) % q
        b = (idx // q ** 2) % q
        a = idx // q ** 3
        det = (a * d - b * c) % q
        keep = det != 0
        a, b, c, d, det = a[keep], b[keep], c[keep], d[keep], det[keep]
        inv_table = np.array([0] + [pow(int(x), q - 2, q) for x in range(1, q)],
                             dtype=np.int64)
        di = inv_table[det]
        ia = d * di % q
        ib = (-b) * di % q
        ic = (-c) * di % q
        id_ = a * di % q
        E = np.stack([a, b, c, d], axis=1)
        Einv = np.stack([ia, ib, ic, id_], axis=1) % q
        return E, Einv

    def kernel(self):
        """Pair-distribution kernel K[t, c1, c2] for convolution.

        K[t][c1][c2] counts B in class c1 with B^(-1) g_t in class c2, one
        group sweep per target class t.  Symmetric in (c1, c2).
        """
        if self._kernel is not None:
            return self._kernel
        q = self.q
        C = len(self.labels)
        if self.n == 1:
            K = np.zeros((C, C, C), dtype=np.int64)
            for t in range(C):
                gt = self.reps[t][0][0]
                for b in range(1, q):
                    c1 = self.class_of_matrix(((b,),))
                    c2 = self.class_of_matrix(((pow(b, q - 2, q) * gt % q,),))
                    K[t, c1, c2] += 1
            self._kernel = K
            return K
        if self.n != 2:
            raise KernelMissing("kernels for n <= 2 only")
        E, Einv = self._group_arrays()
        cls = self.element_class_array()
        enc = ((E[:, 0] * q + E[:, 1]) * q + E[:, 2]) * q + E[:, 3]
        c1 = cls[enc]
        K = np.zeros((C, C, C), dtype=np.int64)

        def fill(t):
            g = self.reps[t]
            g00, g01 = g[0]
            g10, g11 = g[1]
            p00 = (Einv[:, 0] * g00 + Einv[:, 1] * g10) % q
            p01 = (Einv[:, 0] * g01 + Einv[:, 1] * g11) % q
            p10 = (Einv[:, 2] * g00 + Einv[:, 3] * g10) % q
            p11 = (Einv[:, 2] * g01 + Einv[:, 3] * g11) % q
            enc2 = ((p00 * q + p01) * q + p10) * q + p11
            c2 = cls[enc2]
            pair = c1.astype(np.int64) * C + c2
            K[t] = np.bincount(pair, minlength=C * C).reshape(C, C)

        _chunked_map(fill, range(C))
        self._kernel = K
        return K


_TABLES = {}


def class_table(n, field):
    "Cached class table for (n, q)."
    key = (n, field.q)
    table = _TABLES.get(key)
    if table is None:
        table = ClassTable(n, field)
        _TABLES[key] = table
    return table


def enumerate_classes(n, field):
    "Build (or fetch) the conjugacy-class table of GL_n(F_q), n <= 3."
    return class_table(n, field)


def classify(A, table):
    """Conjugacy label of an invertible matrix: factor the characteristic
    polynomial, then recover each partition from kernel ranks of f(A)^j."""
    q = table.q
    if mat_det(A, q) == 0:
        raise SingularMatrix("matrix is not invertible")
    label = []
    for f, e in factor_monic(charpoly(A, q), table.field).items():
        # e is the multiplicity of f in the charpoly, i.e. the weight of mu(f)
        d = len(f) - 1
        if e == 1:
            label.append((f, (1,)))
            continue
        M = poly_eval_matrix(f, A, q)
        prev = 0
        col_counts = []
        P = mat_identity(len(A))
        total = 0
        while total < e:
            P = mat_mul(P, M, q)
            k = kernel_dim(P, q)
            c = (k - prev) // d
            if c == 0:
                raise AssertionError("rank profile stalled")
            col_counts.append(c)
            prev = k
            total += c
        lam = conjugate(tuple(col_counts))
        label.append((f, lam))
    label = tuple(sorted(label))
    if label not in table.index:
        raise AssertionError("label %r missing from the table" % (label,))
    return label


class ClassFunction:
    "Integer-valued class function on a fixed class table."

    __slots__ = ("table", "values")

    def __init__(self, table, values):
        values = tuple(int(v) for v in values)
        if len(values) != table.class_count():
            raise ValueError("value count does not match the class count")
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("ClassFunction is immutable")

    def __eq__(self, other):
        return (isinstance(other, ClassFunction) and self.table is other.table
                and self.values == other.values)

    def __hash__(self):
        return hash(self.values)

    def support(self):
        return tuple(i for i, v in enumerate(self.values) if v)

    def group_sum(self):
        "Sum over all group elements (class sizes times values)."
        return sum(s * v for s, v in zip(self.table.sizes, self.values))

    def mean(self):
        "Inner product with the trivial character."
        return Fraction(self.group_sum(), self.table.group_order)


def delta_identity(table):
    "The convolution unit: indicator of the identity class."
    values = [0] * table.class_count()
    values[table.scalar_class_index(1)] = 1
    return ClassFunction(table, values)


# -- the class function F: closed formula and brute force ----------------

def _f_linear_block_poly(i, m):
    """Symbolic count of invariant forms on one primary block at t -+ 1:
    block size i with multiplicity m, as a polynomial in q."""
    from .algebra import HalfPowerPolynomial as HPP
    if i % 2 == 1:
        half_pairs = m // 2 if m % 2 == 0 else (m + 1) // 2
        poly = HPP.q_power((i * m * m + m) // 2)
    else:
        if m % 2 == 1:
            return HPP()
        half_pairs = m // 2
        poly = HPP.q_power(i * m * m // 2)
    for j in range(1, half_pairs + 1):
        poly = poly * (HPP.from_int(1) - HPP.q_power(1 - 2 * j))
    return poly


def _f_selfdual_block_poly(i, m, d):
    "One primary block of a self-dual irreducible of degree 2d."
    from .algebra import HalfPowerPolynomial as HPP
    poly = HPP.q_power(i * d * m * m)
    for j in range(1, m + 1):
        poly = poly * (HPP.from_int(1) + HPP.q_power(-d * j) * ((-1) ** j))
    return poly


def _cross_block_exponent(lam):
    "sum over block sizes i < j of i * m_i * m_j."
    mult = multiplicities(lam)
    sizes = sorted(mult)
    total = 0
    for a, i in enumerate(sizes):
        for j in sizes[a + 1:]:
            total += i * mult[i] * mult[j]
    return total


def f_closed_poly(label, field):
    """The closed-formula value of F on a class, as a polynomial in q.

    Zero off symmetric labels; otherwise a product over the support of
    linear-block counts, self-dual Hermitian counts, and centralizer orders
    for dual pairs.
    """
    from .algebra import HalfPowerPolynomial as HPP
    from .partitions import centralizer_order_poly
    q = field.q
    assign = dict(label)
    for f, lam in label:
        if assign.get(poly_star(f, field)) != lam:
            return HPP()
    poly = HPP.from_int(1)
    done = set()
    for f, lam in label:
        if f in done:
            continue
        fs = poly_star(f, field)
        d_f = len(f) - 1
        if f == fs:
            if d_f == 1:
                if f[0] % q not in (1, q - 1):
                    # linear self-dual means root +-1 only
                    return HPP()
                poly = poly * HPP.q_power(_cross_block_exponent(lam))
                for i, m in multiplicities(lam).items():
                    poly = poly * _f_linear_block_poly(i, m)
            else:
                if d_f % 2:
                    return HPP()
                half = d_f // 2
                poly = poly * HPP.q_power(d_f * _cross_block_exponent(lam))
                for i, m in multiplicities(lam).items():
                    poly = poly * _f_selfdual_block_poly(i, m, half)
            done.add(f)
        else:
            poly = poly * centralizer_order_poly(lam).substitute_exponents(d_f)
            done.add(f)
            done.add(fs)
    return poly


def f_degree_prediction(label, field):
    "Predicted q-degree of F on a symmetric class (None off support)."
    assign = dict(label)
    for f, lam in label:
        if assign.get(poly_star(f, field)) != lam:
            return None
    twice = 0
    for f, lam in label:
        d_f = len(f) - 1
        if d_f == 1 and f[0] % field.q in (1, field.q - 1):
            twice += ell_odd(lam)
        twice += 2 * d_f * n_lambda(lam) + d_f * weight(lam)
    assert twice % 2 == 0
    return twice // 2


def class_fn_F_closed(table):
    "F from the closed case-by-case formula, on every class."
    values = []
    for label in table.labels:
        poly = f_closed_poly(label, table.field)
        v = half_poly_eval(poly, Fraction(table.q)) if not poly.is_zero() else Fraction(0)
        assert v.denominator == 1 and v >= 0
        values.append(int(v))
    return ClassFunction(table, values)


def _symmetric_invertible_matrices(n, q):
    "All invertible symmetric matrices as an (m, n, n) int64 array."
    if n == 1:
        arr = np.arange(1, q, dtype=np.int64).reshape(-1, 1, 1)
        return arr
    if n == 2:
        a, b, d = np.meshgrid(np.arange(q), np.arange(q), np.arange(q),
                              indexing="ij")
        a, b, d = a.ravel(), b.ravel(), d.ravel()
        det = (a * d - b * b) % q
        keep = det != 0
        a, b, d = a[keep], b[keep], d[keep]
        out = np.zeros((len(a), 2, 2), dtype=np.int64)
        out[:, 0, 0] = a
        out[:, 0, 1] = b
        out[:, 1, 0] = b
        out[:, 1, 1] = d
        return out
    if n == 3:
        grids = np.meshgrid(*[np.arange(q)] * 6, indexing="ij")
        a, b, c, d, e, f = [g.ravel() for g in grids]
        # symmetric matrix [[a, b, c], [b, d, e], [c, e, f]]
        det = (a * (d * f - e * e) - b * (b * f - e * c)
               + c * (b * e - d * c)) % q
        keep = det != 0
        a, b, c, d, e, f = a[keep], b[keep], c[keep], d[keep], e[keep], f[keep]
        out = np.zeros((len(a), 3, 3), dtype=np.int64)
        out[:, 0, 0] = a
        out[:, 0, 1] = b
        out[:, 0, 2] = c
        out[:, 1, 0] = b
        out[:, 1, 1] = d
        out[:, 1, 2] = e
        out[:, 2, 0] = c
        out[:, 2, 1] = e
        out[:, 2, 2] = f
        return out
    raise UnsupportedRank("symmetric sweeps for n <= 3 only")


def class_fn_F_brute(table):
    "F by brute force: count invertible symmetric B with A B A^T = B."
    n, q = table.n, table.q
    if q ** (n * (n + 1) // 2) > _GROUP_BUDGET:
        raise GroupTooLarge("too many symmetric matrices at q = %d" % q)
    sym = _symmetric_invertible_matrices(n, q)

    def count_for(rep):
        A = np.array(rep, dtype=np.int64)
        ABAT = np.einsum("ij,mjk,lk->mil", A, sym, A) % q
        return int(np.all(ABAT == sym, axis=(1, 2)).sum())

    values = _chunked_map(count_for, table.reps)
    return ClassFunction(table, values)


def class_fn_F_signed(table):
    "Split F into its determinant = +1 and determinant = -1 parts."
    F = class_fn_F_closed(table)
    plus = [v if d == 1 else 0 for v, d in zip(F.values, table.dets)]
    minus = [v if d == table.q - 1 else 0 for v, d in zip(F.values, table.dets)]
    return ClassFunction(table, plus), ClassFunction(table, minus)


def class_fn_N(table):
    "N by a single sweep: accumulate the class of B (B^T)^(-1) over B."
    n, q = table.n, table.q
    if table.group_order > _GROUP_BUDGET:
        raise GroupTooLarge("group order %d exceeds the sweep budget"
                            % table.group_order)
    counts = [0] * table.class_count()
    if n == 1:
        counts[table.scalar_class_index(1)] = q - 1
        return ClassFunction(table, counts)
    if n != 2:
        raise GroupTooLarge("N sweeps are implemented for n <= 2")
    E, Einv = table._group_arrays()
    cls = table.element_class_array()
    # M = B * (B^-1)^T entrywise
    b00, b01, b10, b11 = E[:, 0], E[:, 1], E[:, 2], E[:, 3]
    i00, i01, i10, i11 = Einv[:, 0], Einv[:, 1], Einv[:, 2], Einv[:, 3]
    m00 = (b00 * i00 + b01 * i01) % q
    m01 = (b00 * i10 + b01 * i11) % q
    m10 = (b10 * i00 + b11 * i01) % q
    m11 = (b10 * i10 + b11 * i11) % q
    enc = ((m00 * q + m01) * q + m10) * q + m11
    hist = np.bincount(cls[enc], minlength=table.class_count()).tolist()
    # the sweep counts hits per class; N is the per-element value
    values = []
    for h, size in zip(hist, table.sizes):
        assert h % size == 0
        values.append(h // size)
    return ClassFunction(table, values)


def class_fn_C_brute(table):
    "C by enumerating all commutator pairs; feasible for tiny groups."
    n, q = table.n, table.q
    if n != 2:
        raise GroupTooLarge("commutator brute force is for n = 2")
    if table.group_order ** 2 > _PAIR_BUDGET:
        raise GroupTooLarge("too many pairs at q = %d" % q)
    els = []
    for a in range(q):
        for b in range(q):
            for c in range(q):
                for d in range(q):
                    if (a * d - b * c) % q:
                        els.append(((a, b), (c, d)))
    invs = {A: mat_inv(A, table.field) for A in els}
    counts = [0] * table.class_count()
    for X in els:
        Xi = invs[X]
        for Y in els:
            comm = mat_mul(mat_mul(X, Y, q), mat_mul(Xi, invs[Y], q), q)
            counts[table.class_of_matrix(comm)] += 1
    # per-class hit totals to per-element values
    values = []
    for h, size in zip(counts, table.sizes):
        assert h % size == 0
        values.append(h // size)
    return ClassFunction(table, values)


# -- convolution ---------------------------------------------------------

def convolve_at(phi, psi, table, target):
    "One value of the convolution (phi * psi)(representative of target)."
    K = table.kernel()
    if K is None:
        raise KernelMissing("no kernel available")
    supp_phi = phi.support()
    supp_psi = psi.support()
    # kernel is symmetric in (c1, c2); iterate the sparser side outside
    if len(supp_psi) < len(supp_phi):
        phi, psi = psi, phi
        supp_phi, supp_psi = supp_psi, supp_phi
    Kt = K[target]
    total = 0
    pv = phi.values
    sv = psi.values
    for c1 in supp_phi:
        row = Kt[c1].tolist()
        total += pv[c1] * sum(row[c2] * sv[c2] for c2 in supp_psi)
    return total


def convolve(phi, psi, table):
    "Full convolution of two class functions through the kernel."
    if phi.table is not table or psi.table is not table:
        raise ValueError("class functions live on a different table")
    return ClassFunction(table, [convolve_at(phi, psi, table, t)
                                 for t in range(table.class_count())])


def _atom_function(table, atom):
    cache = table._conv_cache
    key = ("atom", atom)
    fn = cache.get(key)
    if fn is not None:
        return fn
    if atom == "N":
        fn = class_fn_N(table)
    elif atom == "F":
        fn = class_fn_F_closed(table)
    elif atom == "F+":
        fn = class_fn_F_signed(table)[0]
    elif atom == "F-":
        fn = class_fn_F_signed(table)[1]
    else:
        raise ValueError("unknown convolution atom %r" % (atom,))
    cache[key] = fn
    return fn


def _interleaved(atoms):
    "Order atoms F-types and N alternately so dense-dense steps are avoided."
    fs = [a for a in atoms if a != "N"]
    ns = [a for a in atoms if a == "N"]
    seq = []
    while fs or ns:
        if fs:
            seq.append(fs.pop())
        if ns:
            seq.append(ns.pop())
    return tuple(seq)


def _convolution_prefix(table, seq):
    "Full class function of the convolution of the atoms in seq, memoized."
    cache = table._conv_cache
    fn = cache.get(seq)
    if fn is not None:
        return fn
    if len(seq) == 1:
        fn = _atom_function(table, seq[0])
    else:
        fn = convolve(_convolution_prefix(table, seq[:-1]),
                      _atom_function(table, seq[-1]), table)
    cache[seq] = fn
    return fn


def _convolution_value(table, atoms, target):
    "(atom_1 * ... * atom_k)(representative of target) without the last sweep."
    seq = _interleaved(atoms)
    if len(seq) == 1:
        return _atom_function(table, seq[0]).values[target]
    head = _convolution_prefix(table, seq[:-1])
    return convolve_at(head, _atom_function(table, seq[-1]), table, target)


# -- counting the representation variety ---------------------------------

def primitive_roots_of_unity(field, order):
    "Elements of F_q* of multiplicative order exactly `order`, sorted."
    q = field.q
    if (q - 1) % order:
        return ()
    if order == 1:
        return (1,)
    out = []
    for x in range(2, q):
        if pow(x, order, q) == 1:
            if all(pow(x, order // p, q) != 1 for p in _prime_divisors(order)):
                out.append(x)
    return tuple(out)


def _prime_divisors(m):
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def count_representation_variety(n, field, surf, xi, w=None):
    """Exact count of the rank-n representation variety over F_q.

    Evaluates the convolution of r copies of F (or the signed pieces given a
    sign tuple w) and g - r + 1 copies of N at the scalar class of xi, which
    must be a primitive 2n-th root of unity.
    """
    q = field.q
    if (q - 1) % (2 * n) or pow(xi, 2 * n, q) != 1 or any(
            pow(xi, (2 * n) // p, q) == 1 for p in _prime_divisors(2 * n)):
        raise NoPrimitiveRoot("xi = %d is not a primitive %dth root mod %d"
                              % (xi, 2 * n, q))
    table = class_table(n, field)
    s = surf.s
    if w is not None:
        w = tuple(w)
        if len(w) != surf.r:
            raise ValueError("sign tuple length must be r")
        if any(x not in (1, -1) for x in w):
            raise ValueError("sign tuple entries must be +-1")
        prod = 1
        for x in w:
            prod *= x
        # xi^n = -1 for a primitive 2n-th root, so the product is fixed
        if prod != -1:
            raise ValueError("sign tuple must have product -1")
        atoms = tuple("F+" if x == 1 else "F-" for x in w) + ("N",) * s
    else:
        atoms = ("F",) * surf.r + ("N",) * s
    target = table.scalar_class_index(xi)
    return _convolution_value(table, atoms, target)


def formula_count(n, field, surf, k=None, convention=epoly.MATCHED):
    "|GL_n(F_q)| times the closed-form E-value at q, as an exact integer."
    q = field.q
    value = (epoly.e_poly_component_rational(n, surf, k, convention)
             if k is not None else epoly.e_poly_rational(n, surf, convention))
    v = value.evaluate(Fraction(q)) * group_order(n, q)
    assert v.denominator == 1
    return int(v)


def compare_with_formula(n, field, surf, k=None, convention=epoly.MATCHED,
                         xi=None):
    """Count points and compare against the closed formula.

    Returns a report dict; the equality flag is computed, never assumed.
    """
    if xi is None:
        roots = primitive_roots_of_unity(field, 2 * n)
        if not roots:
            raise NoPrimitiveRoot("no primitive %dth root mod %d"
                                  % (2 * n, field.q))
        xi = roots[0]
    if k is None:
        counted = count_representation_variety(n, field, surf, xi)
    else:
        if k % 2 == 0:
            raise epoly.EvenK("component index k must be odd")
        if not 1 <= k <= surf.r:
            raise epoly.KOutOfRange("k must be at most r")
        w = (-1,) * k + (1,) * (surf.r - k)
        counted = count_representation_variety(n, field, surf, xi, w)
    formula = formula_count(n, field, surf, k, convention)
    return {
        "n": n,
        "q": field.q,
        "g": surf.g,
        "r": surf.r,
        "k": k,
        "xi": xi,
        "counted": counted,
        "formula": formula,
        "convention": convention,
        "equal": counted == formula,
    }


def report_line(report):
    "One comparison report as a JSON line (exact integers, fixed key order)."
    return json.dumps(report)
