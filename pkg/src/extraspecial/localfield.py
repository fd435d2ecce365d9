"""Concrete characteristic-p tower algebras.

K_0 = F_q((pi)) is extended by generators alpha_1..alpha_(2n+1) subject to
alpha_i^p = alpha_i + a_i for i <= 2n and
alpha_top^p = alpha_top + E + a_top, where E is the variant-specific cross
term.  Elements are kept reduced (no exponent reaches p); the relations are
triangular, so reduction only ever introduces lower generators and
terminates.  Valuations are computed through iterated norms: determinants
of multiplication matrices on each p-dimensional level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .artin_schreier import witt_carry
from .detval import ring_det
from .planner import PlanReport, TowerParams, plan
from .ramification import upper_to_lower
from .valuation import INF, ExtRational, FFElem, LaurentSeries, ResidueField


class PlanRejection(ValueError):
    """A tower build was requested for parameters the planner rejects."""


class ConstructionError(RuntimeError):
    """No candidate automorphism image satisfies the defining relation."""


class TowerAlgebra:
    """K_0[x_0..x_(k-1)] modulo x_i^p = x_i + rel_i with triangular rel_i."""

    def __init__(self, field: ResidueField, nvars: int):
        self.field = field
        self.p = field.p
        self.nvars = nvars
        self.relations: list[TowerElement | None] = [None] * nvars
        self._zero_exps = (0,) * nvars

    def set_relation(self, i: int, rhs: "TowerElement"):
        if rhs.algebra is not self:
            raise ValueError("relation from a different algebra")
        if rhs.support_level() > i:
            raise ValueError(f"relation for generator {i} may only involve lower generators")
        self.relations[i] = rhs

    def zero(self) -> "TowerElement":
        return TowerElement(self, {})

    def one(self) -> "TowerElement":
        return self.from_series(LaurentSeries.one(self.field))

    def from_series(self, s: LaurentSeries) -> "TowerElement":
        if s.is_structurally_zero():
            return TowerElement(self, {})
        return TowerElement(self, {self._zero_exps: s})

    def from_scalar(self, c) -> "TowerElement":
        return self.from_series(LaurentSeries.monomial(self.field, self.field(c)))

    def gen(self, i: int) -> "TowerElement":
        exps = list(self._zero_exps)
        exps[i] = 1
        return TowerElement(self, {tuple(exps): LaurentSeries.one(self.field)})

    def _reduce(self, pending: dict) -> dict:
        """Rewrite exponents >= p using the relations until none remain."""
        p = self.p
        acc: dict[tuple[int, ...], LaurentSeries] = {}
        work = list(pending.items())
        while work:
            exps, coeff = work.pop()
            if coeff.is_structurally_zero():
                continue
            over = None
            for i in range(self.nvars - 1, -1, -1):
                if exps[i] >= p:
                    over = i
                    break
            if over is None:
                cur = acc.get(exps)
                s = coeff if cur is None else cur + coeff
                if s.is_structurally_zero():
                    acc.pop(exps, None)
                else:
                    acc[exps] = s
                continue
            rel = self.relations[over]
            if rel is None:
                raise RuntimeError(f"relation for generator {over} not installed")
            base = list(exps)
            base[over] -= p
            # x^base * x_over^p = x^base * (x_over + rel)
            lin = list(base)
            lin[over] += 1
            work.append((tuple(lin), coeff))
            for rexps, rcoeff in rel.coeffs.items():
                combined = tuple(b + r for b, r in zip(base, rexps))
                work.append((combined, coeff * rcoeff))
        return acc


class TowerElement:
    """An element of a :class:`TowerAlgebra`, reduced, as a map from
    exponent vectors (all entries < p) to Laurent series coefficients."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: TowerAlgebra, coeffs: dict):
        self.algebra = algebra
        self.coeffs = {e: c for e, c in coeffs.items() if not c.is_structurally_zero()}

    # -- queries ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def support_level(self) -> int:
        """Highest generator index present, plus one; 0 for scalars."""
        level = 0
        for exps in self.coeffs:
            for i in range(self.algebra.nvars - 1, -1, -1):
                if exps[i]:
                    level = max(level, i + 1)
                    break
        return level

    def constant_series(self) -> LaurentSeries:
        for exps in self.coeffs:
            if any(exps):
                raise ValueError("element is not a scalar series")
        return self.coeffs.get(self.algebra._zero_exps, LaurentSeries.zero(self.algebra.field))

    def split_by_var(self, i: int) -> dict:
        """Coordinates with respect to powers of generator i."""
        out: dict[int, dict] = {}
        for exps, c in self.coeffs.items():
            stripped = list(exps)
            e = stripped[i]
            stripped[i] = 0
            out.setdefault(e, {})[tuple(stripped)] = c
        return {e: TowerElement(self.algebra, d) for e, d in out.items()}

    # -- arithmetic -------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, TowerElement):
            if other.algebra is not self.algebra:
                raise ValueError("elements of different tower algebras")
            return other
        if isinstance(other, LaurentSeries):
            return self.algebra.from_series(other)
        if isinstance(other, (int, FFElem)):
            return self.algebra.from_scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = dict(self.coeffs)
        for e, c in o.coeffs.items():
            cur = out.get(e)
            s = c if cur is None else cur + c
            if s.is_structurally_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return TowerElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return TowerElement(self.algebra, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FFElem)):
            c = self.algebra.field(other)
            return TowerElement(self.algebra, {e: x * c for e, x in self.coeffs.items()})
        if isinstance(other, LaurentSeries):
            return TowerElement(self.algebra, {e: x * other for e, x in self.coeffs.items()})
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        pending: dict[tuple[int, ...], LaurentSeries] = {}
        for ea, ca in self.coeffs.items():
            for eb, cb in o.coeffs.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                c = ca * cb
                cur = pending.get(e)
                pending[e] = c if cur is None else cur + c
        return TowerElement(self.algebra, self.algebra._reduce(pending))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers of tower elements are not supported")
        out = self.algebra.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.coeffs == o.coeffs

    def key(self):
        """Hashable canonical form."""
        return tuple(sorted((e, c.key()) for e, c in self.coeffs.items()))

    def __str__(self):
        if not self.coeffs:
            return "0"
        names = [f"A{i + 1}" for i in range(self.algebra.nvars)]
        parts = []
        for exps in sorted(self.coeffs):
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}"
                for i, e in enumerate(exps) if e
            )
            c = self.coeffs[exps]
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"<tower elt {self}>"


class GaloisMap:
    """An automorphism of the tower algebra, given by generator images.

    Construction verifies that every defining relation is respected
    exactly: (sigma(alpha_i))^p - sigma(alpha_i) = sigma(rhs_i).
    """

    __slots__ = ("algebra", "images", "_pow_cache", "_key")

    def __init__(self, algebra: TowerAlgebra, images, validate: bool = True):
        self.algebra = algebra
        self.images = tuple(images)
        if len(self.images) != algebra.nvars:
            raise ValueError("one image per generator required")
        self._pow_cache: dict[tuple[int, int], TowerElement] = {}
        self._key = None
        if validate:
            p = algebra.p
            for i, img in enumerate(self.images):
                lhs = img**p - img
                rhs = self.apply(algebra.relations[i])
                if lhs != rhs:
                    raise ConstructionError(
                        f"candidate image for generator {i + 1} violates its relation")

    @classmethod
    def identity(cls, algebra: TowerAlgebra) -> "GaloisMap":
        return cls(algebra, [algebra.gen(i) for i in range(algebra.nvars)], validate=False)

    def _image_power(self, i: int, e: int) -> TowerElement:
        if e == 0:
            return self.algebra.one()
        if e == 1:
            return self.images[i]
        cached = self._pow_cache.get((i, e))
        if cached is None:
            cached = self._image_power(i, e - 1) * self.images[i]
            self._pow_cache[(i, e)] = cached
        return cached

    def apply(self, x: TowerElement) -> TowerElement:
        if x.algebra is not self.algebra:
            raise ValueError("element of a different algebra")
        total = self.algebra.zero()
        for exps, c in x.coeffs.items():
            term = None
            for i, e in enumerate(exps):
                if e:
                    pw = self._image_power(i, e)
                    term = pw if term is None else term * pw
            if term is None:
                term = self.algebra.from_series(c)
            else:
                term = term * c
            total = total + term
        return total

    def compose(self, other: "GaloisMap") -> "GaloisMap":
        """self after other."""
        return GaloisMap(self.algebra, [self.apply(img) for img in other.images],
                         validate=False)

    def key(self):
        if self._key is None:
            self._key = tuple(img.key() for img in self.images)
        return self._key

    def is_identity(self) -> bool:
        return all(self.images[i] == self.algebra.gen(i) for i in range(self.algebra.nvars))

    def order(self) -> int:
        acc = self
        k = 1
        while not acc.is_identity():
            acc = self.compose(acc)
            k += 1
            if k > self.algebra.p ** self.algebra.nvars:
                raise RuntimeError("runaway order computation")
        return k

    def inverse(self) -> "GaloisMap":
        return self.power(self.order() - 1)

    def power(self, e: int) -> "GaloisMap":
        out = GaloisMap.identity(self.algebra)
        for _ in range(e):
            out = out.compose(self)
        return out

    def __eq__(self, other):
        return isinstance(other, GaloisMap) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def compose(a: GaloisMap, b: GaloisMap, tower: "Tower | None" = None) -> GaloisMap:
    """(a o b), images reduced."""
    return a.compose(b)


@dataclass
class Tower:
    """A built tower: the algebra, the concrete constants, and the report
    that certified them."""

    params: TowerParams
    algebra: TowerAlgebra
    c: LaurentSeries
    omegas: tuple[LaurentSeries, ...]
    a: tuple[LaurentSeries, ...]
    cross_term: TowerElement          # a_1 alpha_(n+1) + ... + a_n alpha_(2n)
    carry_term: TowerElement | None   # D(alpha_1, a_1) for the M variant
    prec: int
    plan_report: PlanReport

    @property
    def p(self) -> int:
        return self.params.p

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def nvars(self) -> int:
        return 2 * self.params.n + 1

    @property
    def field(self) -> ResidueField:
        return self.algebra.field

    def alpha(self, i: int) -> TowerElement:
        """Generator alpha_i, 1-based."""
        return self.algebra.gen(i - 1)

    @property
    def degree(self) -> int:
        return self.p ** self.nvars


def default_tower_precision(params: TowerParams) -> int:
    """Series window for inversions inside a tower: proportional to the
    largest ramification number in play."""
    u = params.u
    b_top = int(upper_to_lower(params.p, u)[-1])
    return max(64, 4 * max(u[-1], b_top))


def build_tower(params: TowerParams, prec: int | None = None) -> Tower:
    """Construct the tower algebra for certified characteristic-p parameters.

    The constants are the monomials c = pi^(-r) and
    omega_i = lead_i * pi^(-m_i), so a_i = lead_i^(p^(2n)) pi^(-u_i).
    """
    if not params.e0.is_infinite:
        raise PlanRejection("concrete towers require e0 = inf (characteristic p)")
    report = plan(params, mode="full")
    if not report.certified:
        failed = [c.id for c in report.checks if not c.holds]
        raise PlanRejection(
            f"planner rejects parameters (verdict {report.verdict}; "
            f"failed checks: {failed or 'reduced-constant conditions'})")

    field = params.field
    p, n = params.p, params.n
    k = 2 * n + 1
    pw = p ** (2 * n)
    c = LaurentSeries.monomial(field, 1, -params.r)
    omegas = tuple(
        LaurentSeries.monomial(field, lead, -mi)
        for lead, mi in zip(params.leads, params.m)
    )
    a = tuple(c * (w**pw) for w in omegas)

    algebra = TowerAlgebra(field, k)
    for i in range(2 * n):
        algebra.set_relation(i, algebra.from_series(a[i]))
    cross = algebra.zero()
    for i in range(n):
        cross = cross + algebra.gen(n + i) * a[i]
    carry = None
    top_rhs = cross + a[k - 1]
    if params.variant == "M":
        carry = witt_carry(algebra.gen(0), algebra.from_series(a[0]), p)
        top_rhs = top_rhs + carry
    algebra.set_relation(k - 1, top_rhs)

    tower = Tower(
        params=params,
        algebra=algebra,
        c=c,
        omegas=omegas,
        a=a,
        cross_term=cross,
        carry_term=carry,
        prec=prec if prec is not None else default_tower_precision(params),
        plan_report=report,
    )
    # definitional sanity: the top relation holds in the algebra
    top = algebra.gen(k - 1)
    if (top**p - top) != top_rhs:
        raise ConstructionError("top generator does not satisfy its own relation")
    return tower


# ---------------------------------------------------------------------------
# Valuations via iterated norms
# ---------------------------------------------------------------------------


def _level_norm(x: TowerElement, i: int) -> TowerElement:
    """Determinant of multiplication-by-x on the basis 1..alpha_i^(p-1) over
    the subalgebra on generators below i.  Requires support(x) <= i."""
    algebra = x.algebra
    p = algebra.p
    gen = algebra.gen(i)
    cols = [x]
    for _ in range(p - 1):
        cols.append(cols[-1] * gen)
    zero = algebra.zero()
    rows = []
    split_cols = [c.split_by_var(i) for c in cols]
    for r in range(p):
        rows.append([sc.get(r, zero) for sc in split_cols])
    return ring_det(rows)


def elt_valuation(x: TowerElement, tower: Tower) -> ExtRational:
    """v_0(x) in (1/p^(2n+1)) * Z, through iterated norm determinants.

    Exact zero maps to +infinity; an imprecise zero or a norm whose leading
    coefficient escapes the tracked window raises PrecisionError.
    """
    if x.is_zero():
        return INF
    level = x.support_level()
    cur = x
    for i in range(level - 1, -1, -1):
        cur = _level_norm(cur, i)
        if cur.support_level() > i:
            raise RuntimeError("norm escaped its subalgebra")
    series = cur.constant_series()
    v = series.valuation()
    if v == math.inf:
        raise RuntimeError("nonzero element has exactly zero norm; algebra is not a domain")
    return ExtRational(Fraction(v, tower.p**level))


def elt_valuation_top(x: TowerElement, tower: Tower) -> int:
    """v_(2n+1)(x) = p^(2n+1) v_0(x) as an integer."""
    v = elt_valuation(x, tower)
    if v.is_infinite:
        raise ValueError("valuation of zero requested in top normalization")
    scaled = v.fraction * tower.p**tower.nvars
    if scaled.denominator != 1:
        raise RuntimeError(f"top valuation {scaled} is not an integer")
    return int(scaled)


# ---------------------------------------------------------------------------
# Galois generators and group enumeration
# ---------------------------------------------------------------------------


def galois_generators(tower: Tower) -> list[GaloisMap]:
    """The canonical generators sigma_1..sigma_(2n+1).

    sigma_i adds 1 to alpha_i and fixes the other alpha_j for j <= 2n; its
    effect on the top generator is the unique exact root translate dictated
    by the variant, with the free F_p summand pinned to 0.  Every image is
    verified against the relations at construction; a failure raises
    ConstructionError.
    """
    algebra = tower.algebra
    n = tower.n
    k = tower.nvars
    one = algebra.one()
    maps = []
    for i in range(k - 1):
        images = [algebra.gen(j) for j in range(k)]
        images[i] = images[i] + one
        top = algebra.gen(k - 1)
        if n <= i < 2 * n:
            # sigma_(n+i) shifts the top generator by alpha_(i-n)
            images[k - 1] = top + algebra.gen(i - n)
        elif i == 0 and tower.params.variant == "M":
            images[k - 1] = top + witt_carry(one, algebra.gen(0), tower.p)
        maps.append(GaloisMap(algebra, images))
    images = [algebra.gen(j) for j in range(k)]
    images[k - 1] = images[k - 1] + one
    maps.append(GaloisMap(algebra, images))
    return maps


@dataclass
class GroupTable:
    """All p^(2n+1) automorphisms indexed by normal-form exponent words."""

    p: int
    nvars: int
    elements: dict[tuple[int, ...], GaloisMap]
    word_by_key: dict

    @property
    def order(self) -> int:
        return len(self.elements)

    def word_of(self, m: GaloisMap) -> tuple[int, ...]:
        return self.word_by_key[m.key()]

    def map_of(self, word: tuple[int, ...]) -> GaloisMap:
        return self.elements[word]


def enumerate_group(tower: Tower, gens: list[GaloisMap]) -> GroupTable:
    """Build every product sigma_1^e1 ... sigma_k^ek, check that they are
    pairwise distinct and closed under composition by the generators."""
    algebra = tower.algebra
    p = tower.p
    k = tower.nvars
    gen_powers = []
    for g in gens:
        pows = [GaloisMap.identity(algebra)]
        for _ in range(p - 1):
            pows.append(pows[-1].compose(g))
        gen_powers.append(pows)

    elements: dict[tuple[int, ...], GaloisMap] = {(): GaloisMap.identity(algebra)}
    for i in range(k):
        new = {}
        for word, m in elements.items():
            for e in range(p):
                new[word + (e,)] = m.compose(gen_powers[i][e])
        elements = new

    word_by_key = {}
    for word, m in elements.items():
        key = m.key()
        if key in word_by_key:
            raise ConstructionError(
                f"normal-form words {word_by_key[key]} and {word} give the same map")
        word_by_key[key] = word
    for g in gens:
        for m in elements.values():
            if g.compose(m).key() not in word_by_key:
                raise ConstructionError("group is not closed under composition")
    return GroupTable(p, k, elements, word_by_key)


@dataclass
class GroupReport:
    variant: str
    order: int
    gen_orders: tuple[int, ...]
    commutator_words: dict
    sigma1_p_word: tuple[int, ...]
    metacyclic_w: int | None
    matches_expected: bool

    def to_dict(self) -> dict:
        return {
            "variant": self.variant,
            "order": self.order,
            "gen_orders": list(self.gen_orders),
            "commutators": {"-".join(map(str, k)): ",".join(map(str, v))
                            for k, v in sorted(self.commutator_words.items())},
            "sigma1_p": ",".join(map(str, self.sigma1_p_word)),
            "metacyclic_w": self.metacyclic_w,
            "matches_expected": self.matches_expected,
        }


def group_structure(tower: Tower, gens: list[GaloisMap], table: GroupTable) -> GroupReport:
    """Measure generator orders, pairwise commutators, and sigma_1^p, then
    compare with the presentation of H(n) (exponent p, center generated by
    the top map) or M(n) (sigma_1 of order p^2 with sigma_1^p central)."""
    p = tower.p
    n = tower.n
    k = tower.nvars
    variant = tower.params.variant
    gen_orders = tuple(g.order() for g in gens)

    commutators = {}
    for i in range(k):
        for j in range(i + 1, k):
            gi, gj = gens[i], gens[j]
            comm = gi.compose(gj).compose(gi.inverse()).compose(gj.inverse())
            commutators[(i + 1, j + 1)] = table.word_of(comm)

    sigma1_p = gens[0].power(p)
    sigma1_p_word = table.word_of(sigma1_p)

    def central_word(w):
        return all(e == 0 for e in w[:-1])

    ok = True
    for (i, j), word in commutators.items():
        if j == i + n and i <= n:
            # [sigma_i, sigma_(n+i)] must be the canonical central generator
            ok = ok and central_word(word) and word[-1] == 1
        else:
            ok = ok and all(e == 0 for e in word)

    metacyclic_w = None
    if variant == "H":
        ok = ok and all(o == p for o in gen_orders)
        ok = ok and all(e == 0 for e in sigma1_p_word)
    else:
        ok = ok and gen_orders[0] == p * p
        ok = ok and all(o == p for o in gen_orders[1:])
        ok = ok and central_word(sigma1_p_word) and sigma1_p_word[-1] != 0
        if central_word(sigma1_p_word):
            metacyclic_w = sigma1_p_word[-1]
    ok = ok and table.order == p**k
    return GroupReport(variant, table.order, gen_orders, commutators,
                       sigma1_p_word, metacyclic_w, ok)
