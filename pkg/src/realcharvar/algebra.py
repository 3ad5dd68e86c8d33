"""Exact arithmetic in the half-power variable u, where u**2 = q.

Everything downstream works over three layers built here:

* HalfPowerPolynomial -- Laurent polynomials in u with Fraction coefficients,
  keyed by integer u-exponent (exponent e stands for q**(e/2)).
* RationalFunction -- normalized quotients of HalfPowerPolynomials.  The
  denominator is an ordinary polynomial with constant coefficient 1 and no
  common factor with the numerator, so equality is structural.
* TruncatedSeries -- power series in T up to a fixed order with
  RationalFunction coefficients, carrying the plethystic operations
  (adams substitution, Exp, Log, rational exponents).

All values are immutable after construction and all operations are pure.
"""

from fractions import Fraction


class OddExponent(ValueError):
    "Evaluation at a numeric q requires every u-exponent to be even."


class NonzeroConstantTerm(ValueError):
    "Plethystic Exp needs a series with zero constant coefficient."


class ConstantTermNotOne(ValueError):
    "Plethystic Log and rational powers need constant coefficient one."


class ZeroDenominator(ZeroDivisionError):
    "Rational function with zero denominator."


def _frac(x):
    "Coerce an int or Fraction to Fraction."
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError("expected int or Fraction, got %r" % (x,))


def moebius(d):
    "Classical number-theoretic Moebius function."
    if d < 1:
        raise ValueError("moebius needs a positive integer")
    result = 1
    p = 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            result = -result
        p += 1
    if d > 1:
        result = -result
    return result


class HalfPowerPolynomial:
    """Laurent polynomial in u (u**2 = q) with exact rational coefficients.

    Stored as a dict {u-exponent: Fraction} holding no zero coefficients.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = _frac(c)
                if c:
                    clean[int(e)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("HalfPowerPolynomial is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def from_int(cls, n):
        return cls({0: Fraction(n)})

    @classmethod
    def u_power(cls, e, coeff=1):
        "Monomial coeff * u**e."
        return cls({e: _frac(coeff)})

    @classmethod
    def q_power(cls, k, coeff=1):
        "Monomial coeff * q**k."
        return cls({2 * k: _frac(coeff)})

    @classmethod
    def from_triples(cls, triples):
        "Exchange format: iterable of [half-exponent, numerator, denominator]."
        return cls({int(e): Fraction(int(num), int(den)) for e, num, den in triples})

    # -- predicates and views ----------------------------------------

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {0: Fraction(1)}

    def is_q_polynomial(self):
        "True when every stored exponent is even, i.e. the value lives in q."
        return all(e % 2 == 0 for e in self.terms)

    def min_exp(self):
        if not self.terms:
            raise ValueError("zero polynomial has no exponents")
        return min(self.terms)

    def max_exp(self):
        if not self.terms:
            raise ValueError("zero polynomial has no exponents")
        return max(self.terms)

    def constant_coeff(self):
        return self.terms.get(0, Fraction(0))

    def to_triples(self):
        "Exchange format, sorted by ascending exponent."
        return [[e, self.terms[e].numerator, self.terms[e].denominator]
                for e in sorted(self.terms)]

    # -- ring operations ---------------------------------------------

    def __add__(self, other):
        other = _coerce_poly(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s:
                terms[e] = s
            elif e in terms:
                del terms[e]
        return HalfPowerPolynomial(terms)

    __radd__ = __add__

    def __neg__(self):
        return HalfPowerPolynomial({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce_poly(other))

    def __rsub__(self, other):
        return _coerce_poly(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _frac(other)
            if not c:
                return HalfPowerPolynomial()
            return HalfPowerPolynomial({e: c * v for e, v in self.terms.items()})
        other = _coerce_poly(other)
        if not self.terms or not other.terms:
            return HalfPowerPolynomial()
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = terms.get(e, Fraction(0)) + c1 * c2
                if s:
                    terms[e] = s
                elif e in terms:
                    del terms[e]
        return HalfPowerPolynomial(terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial power needs a non-negative integer")
        result = HalfPowerPolynomial.from_int(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _coerce_poly(other)
        if not isinstance(other, HalfPowerPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def evaluate(self, q0):
        """Evaluate at a rational value of q.

        Requires every exponent to be even (the value must live in q); raises
        OddExponent otherwise.
        """
        q0 = _frac(q0)
        if q0 == 0:
            raise ZeroDivisionError("evaluation requires q0 != 0")
        total = Fraction(0)
        for e, c in self.terms.items():
            if e % 2:
                raise OddExponent("exponent %d is not an even power of u" % e)
            total += c * q0 ** (e // 2)
        return total

    def substitute_exponents(self, d):
        "Map every exponent e to e*d (the adams substitution u -> u**d)."
        if d < 1:
            raise ValueError("adams substitution needs d >= 1")
        if d == 1:
            return self
        return HalfPowerPolynomial({e * d: c for e, c in self.terms.items()})

    def q_degree(self):
        "Degree in q of a polynomial with even exponents."
        if not self.is_q_polynomial():
            raise OddExponent("not a polynomial in q")
        return self.max_exp() // 2

    def __repr__(self):
        return "HalfPowerPolynomial(%s)" % format_poly(self)


def _coerce_poly(x):
    if isinstance(x, HalfPowerPolynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return HalfPowerPolynomial({0: _frac(x)})
    raise TypeError("cannot coerce %r to HalfPowerPolynomial" % (x,))


ZERO = HalfPowerPolynomial()
ONE = HalfPowerPolynomial.from_int(1)
Q = HalfPowerPolynomial.q_power(1)
U = HalfPowerPolynomial.u_power(1)
Q_MINUS_ONE = Q - ONE


# -- dense helpers for division and gcd (ordinary polynomials in u) ----

def _to_dense(p):
    "Return (min_exp, coefficient list from min_exp upward)."
    lo = p.min_exp()
    hi = p.max_exp()
    coeffs = [Fraction(0)] * (hi - lo + 1)
    for e, c in p.terms.items():
        coeffs[e - lo] = c
    return lo, coeffs


def _from_dense(lo, coeffs):
    return HalfPowerPolynomial({lo + i: c for i, c in enumerate(coeffs) if c})


def _dense_trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _dense_divmod(a, b):
    "Quotient and remainder of dense coefficient lists (b nonzero)."
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        f = a[i + len(b) - 1] * inv
        if f:
            q[i] = f
            for j, bc in enumerate(b):
                a[i + j] -= f * bc
    return q, _dense_trim(a)


def _dense_gcd(a, b):
    "Monic gcd of dense coefficient lists over Q."
    a = _dense_trim(list(a))
    b = _dense_trim(list(b))
    while b:
        _, r = _dense_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def poly_divmod(a, b):
    "Exact Laurent division with remainder; b must be nonzero."
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero():
        return ZERO, ZERO
    la, da = _to_dense(a)
    lb, db = _to_dense(b)
    # work with the ordinary parts; carry the exponent shift on the quotient
    qd, rd = _dense_divmod(da, db)
    quotient = _from_dense(la - lb, qd)
    remainder = _from_dense(la, rd)
    return quotient, remainder


def poly_gcd(a, b):
    "Monic gcd of the ordinary parts (unit monomials are factored out)."
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    _, da = _to_dense(a)
    _, db = _to_dense(b)
    g = _dense_gcd(da, db)
    return _from_dense(0, g)


class RationalFunction:
    """Normalized quotient of HalfPowerPolynomials.

    Canonical form: the denominator is an ordinary polynomial in u with
    minimal exponent 0 and constant coefficient 1, coprime to the ordinary
    part of the numerator.  Monomial units u**k stay in the numerator, so the
    numerator may be a genuine Laurent polynomial.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _coerce_poly(num)
        den = ONE if den is None else _coerce_poly(den)
        if den.is_zero():
            raise ZeroDenominator("zero denominator")
        if num.is_zero():
            object.__setattr__(self, "num", ZERO)
            object.__setattr__(self, "den", ONE)
            return
        if not den.is_one():
            shift = den.min_exp()
            if shift:
                # move the monomial unit of the denominator into the numerator
                den = HalfPowerPolynomial({e - shift: c for e, c in den.terms.items()})
                num = HalfPowerPolynomial({e - shift: c for e, c in num.terms.items()})
            g = poly_gcd(num, den)
            if not g.is_one() and g.max_exp() > 0:
                num, _ = poly_divmod(num, g)
                den, _ = poly_divmod(den, g)
            c = den.terms[den.min_exp()]
            if c != 1:
                num = num * (1 / c)
                den = den * (1 / c)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def _raw(cls, num, den):
        "Internal: wrap an already-canonical pair without renormalizing."
        self = object.__new__(cls)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        return self

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self):
        return self.den.is_one()

    def __add__(self, other):
        other = _coerce_rf(other)
        if self.den.is_one() and other.den.is_one():
            return RationalFunction._raw(self.num + other.num, ONE)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_coerce_rf(other))

    def __rsub__(self, other):
        return _coerce_rf(other) + (-self)

    def __mul__(self, other):
        other = _coerce_rf(other)
        if self.den.is_one() and other.den.is_one():
            return RationalFunction._raw(self.num * other.num, ONE)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rf(other)
        if other.is_zero():
            raise ZeroDenominator("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce_rf(other) / self

    def __pow__(self, k):
        if not isinstance(k, int):
            raise ValueError("rational function power needs an integer")
        if k < 0:
            if self.is_zero():
                raise ZeroDenominator("negative power of zero")
            return RationalFunction(self.den, self.num) ** (-k)
        if k == 0:
            return RF_ONE
        # coprimality and the denominator normalization survive powers
        return RationalFunction._raw(self.num ** k, self.den ** k)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, HalfPowerPolynomial)):
            other = _coerce_rf(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        # canonical form makes structural equality sound; keep the
        # cross-multiplication fallback as a belt-and-braces identity
        if self.num == other.num and self.den == other.den:
            return True
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def evaluate(self, q0):
        d = self.den.evaluate(q0)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at q0")
        return self.num.evaluate(q0) / d

    def as_polynomial(self):
        "Return the numerator if the denominator is trivial, else None."
        return self.num if self.den.is_one() else None

    def to_pair(self):
        "Exchange format: numerator and denominator triple sequences."
        return [self.num.to_triples(), self.den.to_triples()]

    @classmethod
    def from_pair(cls, pair):
        num, den = pair
        return cls(HalfPowerPolynomial.from_triples(num),
                   HalfPowerPolynomial.from_triples(den))

    def __repr__(self):
        if self.den.is_one():
            return "RationalFunction(%s)" % format_poly(self.num)
        return "RationalFunction((%s)/(%s))" % (format_poly(self.num), format_poly(self.den))


RF_ZERO = RationalFunction(ZERO)
RF_ONE = RationalFunction(ONE)


def _coerce_rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, Fraction, HalfPowerPolynomial)):
        return RationalFunction(_coerce_poly(x))
    raise TypeError("cannot coerce %r to RationalFunction" % (x,))


def half_poly_eval(p, q0):
    "Evaluate a HalfPowerPolynomial with even exponents at a rational q0."
    return p.evaluate(q0)


def adams(f, d):
    """Adams substitution q -> q**d (u -> u**d) on polynomials or quotients.

    A ring endomorphism; adams(f, 1) is f itself.
    """
    if d < 1:
        raise ValueError("adams substitution needs d >= 1")
    if isinstance(f, HalfPowerPolynomial):
        return f.substitute_exponents(d)
    f = _coerce_rf(f)
    if d == 1:
        return f
    # exponent scaling preserves coprimality and the denominator normalization
    return RationalFunction._raw(f.num.substitute_exponents(d),
                                 f.den.substitute_exponents(d))


class TruncatedSeries:
    """Power series in T up to a fixed order with RationalFunction coefficients."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs=None):
        if order < 1:
            raise ValueError("order must be positive")
        cs = [RF_ZERO] * (order + 1)
        if coeffs is not None:
            if isinstance(coeffs, dict):
                items = coeffs.items()
            else:
                items = enumerate(coeffs)
            for i, c in items:
                if i <= order:
                    cs[i] = _coerce_rf(c)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def one(cls, order):
        return cls(order, {0: RF_ONE})

    def coefficient(self, n):
        return self.coeffs[n]

    def __add__(self, other):
        other = self._coerce(other)
        return TruncatedSeries(self.order,
                               [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.order, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, HalfPowerPolynomial, RationalFunction)):
            c = _coerce_rf(other)
            return TruncatedSeries(self.order, [a * c for a in self.coeffs])
        other = self._coerce(other)
        n = self.order
        out = [RF_ZERO] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(0, n - i + 1):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(n, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            if other.order != self.order:
                raise ValueError("series orders differ")
            return other
        raise TypeError("cannot combine series with %r" % (other,))

    def inverse(self):
        "Multiplicative inverse; needs a unit constant coefficient."
        c0 = self.coeffs[0]
        if c0.is_zero():
            raise ZeroDenominator("series with zero constant term has no inverse")
        n = self.order
        inv0 = RF_ONE / c0
        out = [RF_ZERO] * (n + 1)
        out[0] = inv0
        for k in range(1, n + 1):
            acc = RF_ZERO
            for i in range(1, k + 1):
                a = self.coeffs[i]
                if not a.is_zero():
                    acc = acc + a * out[k - i]
            out[k] = -inv0 * acc
        return TruncatedSeries(n, out)

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                parts.append("(%r)*T^%d" % (c, i))
        return "TruncatedSeries(%s)" % (" + ".join(parts) or "0")


def _psi(v, d):
    "Coefficient-wise adams plus T-degree dilation: T-degree j goes to d*j."
    out = {}
    for j in range(1, v.order + 1):
        if d * j > v.order:
            break
        c = v.coeffs[j]
        if not c.is_zero():
            out[d * j] = adams(c, d)
    series = TruncatedSeries(v.order, out)
    # degree 0 untouched on purpose: callers only feed constant-free input
    return series


def formal_log(f):
    "Formal logarithm of a series with constant coefficient 1."
    if not f.coeffs[0].is_one():
        raise ConstantTermNotOne("log needs constant coefficient 1")
    n = f.order
    h = f - TruncatedSeries.one(n)
    out = TruncatedSeries(n)
    power = TruncatedSeries.one(n)
    for k in range(1, n + 1):
        power = power * h
        out = out + power * Fraction((-1) ** (k + 1), k)
    return out


def formal_exp(w):
    "Formal exponential of a series with zero constant coefficient."
    if not w.coeffs[0].is_zero():
        raise NonzeroConstantTerm("exp needs zero constant coefficient")
    n = w.order
    out = TruncatedSeries.one(n)
    power = TruncatedSeries.one(n)
    fact = 1
    for k in range(1, n + 1):
        power = power * w
        fact *= k
        out = out + power * Fraction(1, fact)
    return out


def pleth_exp(v):
    """Plethystic exponential: Exp(v) = exp(sum_d psi_d(v)/d).

    Satisfies Exp(a*x^m*T^n) = (1 - x^m T^n)^(-a) and turns sums into
    products.  The input must have zero constant coefficient.
    """
    if not v.coeffs[0].is_zero():
        raise NonzeroConstantTerm("plethystic Exp needs zero constant coefficient")
    n = v.order
    w = TruncatedSeries(n)
    for d in range(1, n + 1):
        w = w + _psi(v, d) * Fraction(1, d)
    return formal_exp(w)


def pleth_log(f):
    """Plethystic logarithm, the inverse of pleth_exp.

    Computed as sum_d (mu(d)/d) * psi_d(log f); the input must have constant
    coefficient one.
    """
    if not f.coeffs[0].is_one():
        raise ConstantTermNotOne("plethystic Log needs constant coefficient 1")
    n = f.order
    l = formal_log(f)
    out = TruncatedSeries(n)
    for d in range(1, n + 1):
        m = moebius(d)
        if m:
            out = out + _psi(l, d) * Fraction(m, d)
    return out


def rational_exponent_pow(f, c):
    "Formal power f**c = exp(c * log f) for rational c; f must start with 1."
    if not f.coeffs[0].is_one():
        raise ConstantTermNotOne("rational power needs constant coefficient 1")
    c = _frac(c)
    return formal_exp(formal_log(f) * c)


# -- rendering ---------------------------------------------------------

def _format_coeff(c, leading):
    sign = "-" if c < 0 else ("" if leading else "+")
    mag = abs(c)
    body = str(mag.numerator) if mag.denominator == 1 else "%d/%d" % (mag.numerator, mag.denominator)
    return sign, body


def _format_monomial(e):
    if e == 0:
        return ""
    if e == 2:
        return "q"
    if e % 2 == 0:
        return "q^%d" % (e // 2)
    return "q^(%d/2)" % e


def format_poly(p, descending=True):
    "Human-readable rendering, q-descending by default."
    if p.is_zero():
        return "0"
    exps = sorted(p.terms, reverse=descending)
    pieces = []
    for i, e in enumerate(exps):
        sign, body = _format_coeff(p.terms[e], i == 0)
        mono = _format_monomial(e)
        if mono and body == "1":
            body = ""
        sep = "*" if (body and mono) else ""
        piece = body + sep + mono
        if i == 0:
            pieces.append(sign + piece)
        else:
            pieces.append("%s %s" % (sign, piece))
    return " ".join(pieces)


def format_poly_latex(p, xy=False):
    "LaTeX rendering, q-descending; optionally substitute q = xy."
    if p.is_zero():
        return "0"
    var = "xy" if xy else "q"
    pieces = []
    for i, e in enumerate(sorted(p.terms, reverse=True)):
        sign, body = _format_coeff(p.terms[e], i == 0)
        if e == 0:
            mono = ""
        elif e == 2:
            mono = var
        elif e % 2 == 0:
            mono = "%s^{%d}" % (var, e // 2)
        else:
            mono = "%s^{%d/2}" % (var, e)
        if mono and body == "1":
            body = ""
        pieces.append(sign + body + mono)
    return " ".join(pieces)
