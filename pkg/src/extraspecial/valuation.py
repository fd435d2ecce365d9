"""Exact arithmetic substrate: extended rationals, small finite fields, and
truncated Laurent series with valuation tracking.

All values are immutable after construction and all operations are pure, so
everything here is safe for unrestricted parallel use.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

#: Default number of determined coefficients produced by series inversion
#: when the input is exact.
DEFAULT_WINDOW = 512

_SUPPORTED_P = (3, 5, 7)
_TABLE_LIMIT = 81  # build full q x q multiplication tables up to this q


class PrecisionError(ArithmeticError):
    """Insufficient precision: a result cannot certify its own valuation."""


# ---------------------------------------------------------------------------
# Extended rationals
# ---------------------------------------------------------------------------


class ExtRational:
    """A rational number or +infinity; the carrier for all valuations.

    +infinity absorbs addition and dominates comparison.  Subtracting
    infinity or multiplying it by a nonpositive number is an error rather
    than a guess.
    """

    __slots__ = ("_v",)

    def __init__(self, value: "int | Fraction | ExtRational | None" = 0):
        if isinstance(value, ExtRational):
            self._v = value._v
        elif value is None:
            self._v = None
        elif isinstance(value, (int, Fraction)):
            self._v = Fraction(value)
        elif isinstance(value, float) and math.isinf(value) and value > 0:
            self._v = None
        else:
            raise TypeError(f"cannot build ExtRational from {value!r}")

    @classmethod
    def infinity(cls) -> "ExtRational":
        return cls(None)

    @classmethod
    def parse(cls, text: str) -> "ExtRational":
        """Parse 'inf', an integer literal, or 'a/b'."""
        text = text.strip()
        if text in ("inf", "+inf", "infinity"):
            return cls(None)
        return cls(Fraction(text))

    @property
    def is_infinite(self) -> bool:
        return self._v is None

    @property
    def fraction(self) -> Fraction:
        if self._v is None:
            raise ValueError("infinite valuation has no fraction value")
        return self._v

    @property
    def is_integral(self) -> bool:
        return self._v is not None and self._v.denominator == 1

    def as_int(self) -> int:
        if not self.is_integral:
            raise ValueError(f"{self} is not an integer")
        return int(self._v)

    def _coerce(self, other) -> "ExtRational":
        if isinstance(other, ExtRational):
            return other
        if isinstance(other, (int, Fraction)):
            return ExtRational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self._v is None or o._v is None:
            return ExtRational(None)
        return ExtRational(self._v + o._v)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o._v is None:
            raise ValueError("cannot subtract +infinity")
        if self._v is None:
            return ExtRational(None)
        return ExtRational(self._v - o._v)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o.__sub__(self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self._v is None or o._v is None:
            finite = o._v if self._v is None else self._v
            if finite is not None and finite <= 0:
                raise ValueError("cannot multiply +infinity by a nonpositive number")
            return ExtRational(None)
        return ExtRational(self._v * o._v)

    __rmul__ = __mul__

    def __neg__(self):
        if self._v is None:
            raise ValueError("cannot negate +infinity")
        return ExtRational(-self._v)

    def _cmp_key(self):
        return self._v if self._v is not None else math.inf

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._v == o._v

    def _cmp(self, other) -> "ExtRational":
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare ExtRational with {type(other).__name__}")
        return o

    def __lt__(self, other):
        return self._cmp_key() < self._cmp(other)._cmp_key()

    def __le__(self, other):
        return self._cmp_key() <= self._cmp(other)._cmp_key()

    def __gt__(self, other):
        return self._cmp_key() > self._cmp(other)._cmp_key()

    def __ge__(self, other):
        return self._cmp_key() >= self._cmp(other)._cmp_key()

    def __hash__(self):
        return hash(self._v)

    def __str__(self):
        return "inf" if self._v is None else str(self._v)

    def __repr__(self):
        return f"ExtRational({self})"

    def to_json(self):
        """int when integral, 'a/b' for true fractions, 'inf' for infinity."""
        if self._v is None:
            return "inf"
        if self._v.denominator == 1:
            return int(self._v)
        return str(self._v)

    @classmethod
    def from_json(cls, value) -> "ExtRational":
        if isinstance(value, str):
            return cls.parse(value)
        return cls(value)


INF = ExtRational.infinity()


# ---------------------------------------------------------------------------
# Finite fields F_q, q = p^d with p in {3, 5, 7} and d <= 4
# ---------------------------------------------------------------------------


def _poly_trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, m, p):
    # m is monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1] % p
        shift = len(a) - 1 - dm
        if lead:
            for j, mj in enumerate(m):
                a[shift + j] = (a[shift + j] - lead * mj) % p
        a.pop()
    return _poly_trim(a)


def _poly_is_irreducible(m, p) -> bool:
    """Brute-force trial division; fine for the supported degrees (<= 4)."""
    d = len(m) - 1
    if d < 1:
        return False
    for deg in range(1, d // 2 + 1):
        for idx in range(p**deg):
            divisor = _idx_to_poly(idx, deg, p) + (1,)
            if _poly_divides(divisor, m, p):
                return False
    return True


def _poly_divides(divisor, m, p) -> bool:
    return _poly_mod(m, divisor, p) == ()


def _idx_to_poly(idx: int, length: int, p: int) -> tuple[int, ...]:
    out = []
    for _ in range(length):
        idx, r = divmod(idx, p)
        out.append(r)
    return tuple(out)


def _find_irreducible(p: int, d: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree d over F_p."""
    if d == 1:
        return (0, 1)
    for idx in range(p**d):
        m = _idx_to_poly(idx, d, p) + (1,)
        if _poly_is_irreducible(m, p):
            return m
    raise RuntimeError(f"no irreducible polynomial of degree {d} over F_{p}")


def _factor(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class FFElem:
    """An element of a :class:`ResidueField`, stored as a basis index."""

    __slots__ = ("field", "idx")

    def __init__(self, field: "ResidueField", idx: int):
        self.field = field
        self.idx = idx

    def _check(self, other) -> "FFElem":
        if isinstance(other, int):
            return self.field(other)
        if isinstance(other, FFElem):
            if other.field is not self.field:
                raise ValueError("elements of different residue fields")
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field._add_idx(self.idx, o.idx))

    __radd__ = __add__

    def __neg__(self):
        return FFElem(self.field, self.field._neg_idx(self.idx))

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field._mul_idx(self.idx, o.idx))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FFElem(self.field, self.field._pow_idx(self.idx, e))

    def __truediv__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def inverse(self) -> "FFElem":
        if self.idx == 0:
            raise ZeroDivisionError("inverse of zero in residue field")
        return FFElem(self.field, self.field._pow_idx(self.idx, self.field.q - 2))

    def frobenius(self) -> "FFElem":
        return self ** self.field.p

    def pth_root(self) -> "FFElem":
        # Frobenius is an automorphism of order d, so x^(p^(d-1)) inverts it.
        return self ** (self.field.p ** (self.field.d - 1))

    def __bool__(self):
        return self.idx != 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, FFElem):
            return NotImplemented
        return self.field.key == other.field.key and self.idx == other.idx

    def __hash__(self):
        return hash((self.field.key, self.idx))

    @property
    def in_prime_field(self) -> bool:
        return self.idx < self.field.p

    def coords(self) -> tuple[int, ...]:
        """Coordinates with respect to the power basis 1, g0, ..., g0^(d-1)."""
        return _idx_to_poly(self.idx, self.field.d, self.field.p)

    def __repr__(self):
        return self.field.format_element(self)


class ResidueField:
    """F_q with q = p^d, p an odd prime in {3, 5, 7} and d <= 4.

    Elements are indices 0..q-1 encoding coordinate vectors base p with
    respect to the power basis of a monic irreducible modulus.  The modulus
    is verified irreducible at construction by brute-force factor search.
    """

    def __init__(self, p: int, d: int = 1, modulus: tuple[int, ...] | None = None):
        if p not in _SUPPORTED_P:
            raise ValueError(f"unsupported characteristic {p}; supported: {_SUPPORTED_P}")
        if not 1 <= d <= 4:
            raise ValueError(f"unsupported extension degree {d}; need 1 <= d <= 4")
        self.p = p
        self.d = d
        self.q = p**d
        if modulus is None:
            modulus = _find_irreducible(p, d)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree d")
        if not _poly_is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is not irreducible over F_{p}")
        self.modulus = modulus
        self.key = (p, d, modulus)
        self._mul_table: list[int] | None = None
        self._mul_memo: dict[tuple[int, int], int] = {}
        self._dlog: dict[int, int] | None = None
        if self.q <= _TABLE_LIMIT:
            self._build_mul_table()
        self._gen_idx = self._find_generator()

    # -- index arithmetic ---------------------------------------------------

    def _add_idx(self, a: int, b: int) -> int:
        p = self.p
        out = 0
        mul = 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * mul
            mul *= p
        return out

    def _neg_idx(self, a: int) -> int:
        p = self.p
        out = 0
        mul = 1
        while a:
            a, ra = divmod(a, p)
            out += ((-ra) % p) * mul
            mul *= p
        return out

    def _mul_idx_generic(self, a: int, b: int) -> int:
        pa = _idx_to_poly(a, self.d, self.p)
        pb = _idx_to_poly(b, self.d, self.p)
        prod = _poly_mod(_poly_mul(pa, pb, self.p), self.modulus, self.p)
        out = 0
        for j, c in enumerate(prod):
            out += c * self.p**j
        return out

    def _build_mul_table(self):
        q = self.q
        table = [0] * (q * q)
        for a in range(q):
            for b in range(a, q):
                v = self._mul_idx_generic(a, b)
                table[a * q + b] = v
                table[b * q + a] = v
        self._mul_table = table

    def _mul_idx(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[a * self.q + b]
        key = (a, b) if a <= b else (b, a)
        v = self._mul_memo.get(key)
        if v is None:
            v = self._mul_idx_generic(a, b)
            self._mul_memo[key] = v
        return v

    def _pow_idx(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        e %= self.q - 1
        if e == 0:
            return 1
        out = 1
        base = a
        while e:
            if e & 1:
                out = self._mul_idx(out, base)
            base = self._mul_idx(base, base)
            e >>= 1
        return out

    def _find_generator(self) -> int:
        order = self.q - 1
        primes = _factor(order)
        for idx in range(1, self.q):
            if all(self._pow_idx(idx, order // f) != 1 for f in primes):
                return idx
        raise RuntimeError("no multiplicative generator found")

    # -- public API -----------------------------------------------------------

    def __call__(self, value) -> FFElem:
        if isinstance(value, FFElem):
            if value.field is not self:
                raise ValueError("element of a different residue field")
            return value
        if isinstance(value, int):
            return FFElem(self, value % self.p)
        if isinstance(value, (tuple, list)):
            if len(value) > self.d:
                raise ValueError("too many coordinates")
            idx = 0
            for j, c in enumerate(value):
                idx += (c % self.p) * self.p**j
            return FFElem(self, idx)
        raise TypeError(f"cannot coerce {value!r} into {self!r}")

    def zero(self) -> FFElem:
        return FFElem(self, 0)

    def one(self) -> FFElem:
        return FFElem(self, 1)

    def gen(self) -> FFElem:
        """A fixed multiplicative generator of F_q^x."""
        return FFElem(self, self._gen_idx)

    def elements(self):
        return (FFElem(self, i) for i in range(self.q))

    def discrete_log(self, x: FFElem) -> int:
        """Exponent j with x = g^j; brute force over the q-1 powers."""
        if x.idx == 0:
            raise ValueError("discrete log of zero")
        if self._dlog is None:
            table = {}
            acc = 1
            for j in range(self.q - 1):
                table[acc] = j
                acc = self._mul_idx(acc, self._gen_idx)
            self._dlog = table
        return self._dlog[x.idx]

    def format_element(self, x: FFElem) -> str:
        if x.idx == 0:
            return "0"
        if x.in_prime_field:
            return str(x.idx)
        j = self.discrete_log(x)
        return "g" if j == 1 else f"g^{j}"

    def parse_element(self, text: str) -> FFElem:
        text = text.strip()
        if text.lstrip("-").isdigit():
            return self(int(text))
        if text == "g":
            return self.gen()
        if text.startswith("g^"):
            return self.gen() ** int(text[2:])
        raise ValueError(f"cannot parse residue field element {text!r}")

    def __eq__(self, other):
        return isinstance(other, ResidueField) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"F_{self.q}" if self.d > 1 else f"F_{self.p}"


@lru_cache(maxsize=None)
def residue_field(p: int, d: int = 1, modulus: tuple[int, ...] | None = None) -> ResidueField:
    """Cached field factory; reuses multiplication tables across calls."""
    return ResidueField(p, d, modulus)


# ---------------------------------------------------------------------------
# Truncated Laurent series over F_q
# ---------------------------------------------------------------------------


class LaurentSeries:
    """A Laurent series over F_q with an absolute precision window.

    ``coeffs`` maps exponents to nonzero coefficients; every exponent below
    ``prec`` is determined, exponents >= ``prec`` are unknown.  ``prec`` is
    ``math.inf`` for exact series.  An empty series with finite ``prec`` is
    an *imprecise zero*: asking for its valuation raises
    :class:`PrecisionError` rather than guessing.
    """

    __slots__ = ("field", "coeffs", "prec")

    def __init__(self, field: ResidueField, coeffs: dict[int, FFElem] | None = None,
                 prec: float = math.inf):
        self.field = field
        clean: dict[int, FFElem] = {}
        if coeffs:
            for e, c in coeffs.items():
                if not isinstance(c, FFElem):
                    c = field(c)
                if c.idx != 0 and e < prec:
                    clean[e] = c
        self.coeffs = clean
        self.prec = prec

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, field: ResidueField) -> "LaurentSeries":
        return cls(field, {}, math.inf)

    @classmethod
    def one(cls, field: ResidueField) -> "LaurentSeries":
        return cls(field, {0: field.one()})

    @classmethod
    def monomial(cls, field: ResidueField, coeff, exp: int = 0,
                 prec: float = math.inf) -> "LaurentSeries":
        return cls(field, {exp: field(coeff)}, prec)

    # -- basic queries ----------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.prec == math.inf

    def is_zero(self) -> bool:
        """Exactly zero.  Raises for an imprecise zero."""
        if self.coeffs:
            return False
        if self.is_exact:
            return True
        raise PrecisionError("insufficient precision: series is zero to O(pi^%s)" % self.prec)

    def is_structurally_zero(self) -> bool:
        """No stored coefficients, regardless of precision."""
        return not self.coeffs

    def valuation(self):
        """Least exponent with a nonzero coefficient; inf for exact zero."""
        if self.coeffs:
            return min(self.coeffs)
        if self.is_exact:
            return math.inf
        raise PrecisionError("insufficient precision: valuation of imprecise zero")

    def leading(self) -> FFElem:
        return self.coeffs[self.valuation()]

    def coefficient(self, e: int) -> FFElem:
        if e >= self.prec:
            raise PrecisionError(f"coefficient of pi^{e} beyond precision O(pi^{self.prec})")
        return self.coeffs.get(e, self.field.zero())

    # -- arithmetic -------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentSeries):
            if other.field is not self.field:
                raise ValueError("series over different residue fields")
            return other
        if isinstance(other, (int, FFElem)):
            return LaurentSeries(self.field, {0: self.field(other)})
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        prec = min(self.prec, o.prec)
        out = dict(self.coeffs)
        zero = self.field.zero()
        for e, c in o.coeffs.items():
            s = out.get(e, zero) + c
            if s.idx == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return LaurentSeries(self.field, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.field, {e: -c for e, c in self.coeffs.items()}, self.prec)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FFElem)):
            c = self.field(other)
            if c.idx == 0:
                return LaurentSeries(self.field, {}, math.inf)
            return LaurentSeries(self.field, {e: x * c for e, x in self.coeffs.items()}, self.prec)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        # prec = min(val(a) + prec(b), val(b) + prec(a)); exact zero absorbs.
        if not self.coeffs or not o.coeffs:
            va = self.valuation()
            vb = o.valuation()
            prec = min(va + o.prec, vb + self.prec)
            return LaurentSeries(self.field, {}, prec)
        va = self.valuation()
        vb = o.valuation()
        prec = min(va + o.prec, vb + self.prec)
        out: dict[int, FFElem] = {}
        for ea, ca in self.coeffs.items():
            for eb, cb in o.coeffs.items():
                e = ea + eb
                if e >= prec:
                    continue
                prod = ca * cb
                cur = out.get(e)
                s = prod if cur is None else cur + prod
                if s.idx == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return LaurentSeries(self.field, out, prec)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = LaurentSeries.one(self.field)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by pi^k."""
        return LaurentSeries(self.field, {e + k: c for e, c in self.coeffs.items()},
                             self.prec + k)

    def inverse(self, window: int | None = None) -> "LaurentSeries":
        """Multiplicative inverse on a window of ``window`` coefficients.

        For an exact input the window defaults to ``DEFAULT_WINDOW``; for a
        truncated input the relative precision is preserved.
        """
        if self.is_structurally_zero():
            self.is_zero()  # raises PrecisionError when imprecise
            raise ZeroDivisionError("inverse of the zero series")
        v = self.valuation()
        if self.is_exact:
            w = window if window is not None else DEFAULT_WINDOW
        else:
            w = int(self.prec - v) if window is None else min(window, int(self.prec - v))
        lead = self.coeffs[v]
        lead_inv = lead.inverse()
        # normalized unit u = self * lead^-1 * pi^-v has constant term 1
        unit = {e - v: c * lead_inv for e, c in self.coeffs.items()}
        inv = [self.field.one()]
        zero = self.field.zero()
        for k in range(1, w):
            acc = zero
            for e, c in unit.items():
                if 0 < e <= k:
                    acc = acc + c * inv[k - e]
            inv.append(-acc)
        out = {}
        for k, c in enumerate(inv):
            if c.idx:
                out[k - v] = c * lead_inv
        return LaurentSeries(self.field, out, -v + w)

    def frobenius(self) -> "LaurentSeries":
        """Coefficientwise p-th power with exponents multiplied by p.

        A ring homomorphism in characteristic p, so the unknown tail maps
        into exponents >= p*prec and the precision window scales by p.
        """
        p = self.field.p
        return LaurentSeries(self.field,
                             {p * e: c**p for e, c in self.coeffs.items()},
                             p * self.prec)

    def truncate(self, prec: float) -> "LaurentSeries":
        return LaurentSeries(self.field, self.coeffs, min(self.prec, prec))

    # -- comparisons and formatting -----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, FFElem)):
            other = self._coerce(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.field.key == other.field.key and self.coeffs == other.coeffs
                and self.prec == other.prec)

    def agrees_with(self, other: "LaurentSeries") -> bool:
        """Equality of all coefficients on the common precision window."""
        o = self._coerce(other)
        prec = min(self.prec, o.prec)
        exps = {e for e in self.coeffs if e < prec} | {e for e in o.coeffs if e < prec}
        zero = self.field.zero()
        return all(self.coeffs.get(e, zero) == o.coeffs.get(e, zero) for e in exps)

    def key(self):
        """Hashable canonical form (used for map-table comparisons)."""
        return (tuple(sorted((e, c.idx) for e, c in self.coeffs.items())), self.prec)

    def __str__(self):
        if not self.coeffs:
            body = "0"
        else:
            terms = []
            for e in sorted(self.coeffs):
                c = self.coeffs[e]
                cs = self.field.format_element(c)
                if e == 0:
                    terms.append(cs)
                elif cs == "1":
                    terms.append(f"pi^{e}")
                else:
                    terms.append(f"{cs}*pi^{e}")
            body = " + ".join(terms)
        if self.is_exact:
            return body
        return f"{body} + O(pi^{int(self.prec)})"

    def __repr__(self):
        return f"<{self}>"

    @classmethod
    def parse(cls, field: ResidueField, text: str) -> "LaurentSeries":
        """Inverse of ``str``: 'c*pi^k + ... [+ O(pi^N)]'."""
        text = text.strip()
        prec: float = math.inf
        coeffs: dict[int, FFElem] = {}
        for raw in text.split("+"):
            term = raw.strip()
            if not term or term == "0":
                continue
            if term.startswith("O(") and term.endswith(")"):
                inner = term[2:-1].strip()
                if not inner.startswith("pi^"):
                    raise ValueError(f"bad precision term {term!r}")
                prec = int(inner[3:])
                continue
            if "*" in term:
                cs, ps = term.split("*", 1)
                coeff = field.parse_element(cs.strip())
                ps = ps.strip()
            elif term.startswith("pi^"):
                coeff = field.one()
                ps = term
            else:
                coeff = field.parse_element(term)
                ps = "pi^0"
            if not ps.startswith("pi^"):
                raise ValueError(f"cannot parse series term {term!r}")
            e = int(ps[3:])
            if e in coeffs:
                coeffs[e] = coeffs[e] + coeff
            else:
                coeffs[e] = coeff
        return cls(field, coeffs, prec)
