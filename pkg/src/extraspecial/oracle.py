"""End-to-end verification of built towers: the generator determinant and
its valuation, the measured ramification filtration, scaffold row bounds,
and the elementary-layer breaks, all compared against planner predictions.

Everything is computed by brute force in exact arithmetic over F_q((pi)):
the filtration from first definitions (valuations of sigma(pi_L) - pi_L
over every group element), the valuations through iterated norm
determinants.
"""

from __future__ import annotations

from dataclasses import dataclass

from .detval import ring_det, ti_valuations
from .localfield import (GaloisMap, GroupReport, GroupTable, Tower, TowerAlgebra,
                         TowerElement, TowerParams, _level_norm, build_tower,
                         default_tower_precision, elt_valuation_top, enumerate_group,
                         galois_generators, group_structure)
from .planner import PlanReport
from .ramification import lower_to_upper, upper_to_lower
from .valuation import INF, ExtRational, LaurentSeries, PrecisionError, residue_field


class OracleMismatch(RuntimeError):
    """A measured quantity disagrees with its predicted value."""


def _plog(ratio: int, p: int) -> int:
    """Exact base-p logarithm; raises when ratio is not a p-power."""
    out = 0
    while ratio % p == 0:
        ratio //= p
        out += 1
    if ratio != 1:
        raise OracleMismatch(f"{ratio * p**out} is not a power of p = {p}")
    return out


# ---------------------------------------------------------------------------
# The generator determinant
# ---------------------------------------------------------------------------


@dataclass
class GeneratorData:
    """The tower generator sum(t_i alpha_i) built from the twist determinant
    of the alpha column against Frobenius powers of the omega column."""

    element: TowerElement
    cofactors: tuple[LaurentSeries, ...]
    v0_cofactors: tuple[int, ...]
    vtop: int
    vtop_predicted: int

    def to_dict(self) -> dict:
        return {
            "v0_cofactors": list(self.v0_cofactors),
            "vtop": self.vtop,
            "vtop_predicted": self.vtop_predicted,
        }


def construct_generator(tower: Tower) -> GeneratorData:
    """Cofactor-expand the twist determinant and certify its valuation.

    Asserts the cofactor valuations against the closed formula, and the
    total valuation against -b_1 + v_top(t_1); failure of either raises
    OracleMismatch.  p never divides the resulting valuation, which is what
    makes the element a field generator.
    """
    k = tower.nvars
    p = tower.p
    cols = [list(tower.omegas)]
    for _ in range(k - 2):
        cols.append([s.frobenius() for s in cols[-1]])
    # cofactor t_i = (-1)^(i+1) * det(omega twist matrix with row i removed)
    cofactors = []
    for i in range(k):
        minor = [[cols[j][r] for j in range(k - 1)] for r in range(k) if r != i]
        det = ring_det(minor)
        cofactors.append(det if i % 2 == 0 else -det)
    formula = ti_valuations(p, tower.n, tower.params.m)
    v0 = []
    for i, t in enumerate(cofactors):
        v = t.valuation()
        if v != formula.v0[i]:
            raise OracleMismatch(
                f"cofactor {i + 1} has valuation {v}, formula gives {formula.v0[i]}")
        v0.append(v)

    y = tower.algebra.zero()
    for i in range(k):
        y = y + tower.alpha(i + 1) * cofactors[i]
    vtop = elt_valuation_top(y, tower)
    b1 = tower.plan_report.b[0]
    predicted = -b1 + p**k * v0[0]
    if vtop != predicted:
        raise OracleMismatch(f"generator valuation {vtop} != predicted {predicted}")
    if vtop % p == 0:
        raise OracleMismatch(f"generator valuation {vtop} is divisible by p")
    return GeneratorData(y, tuple(cofactors), tuple(v0), vtop, predicted)


# ---------------------------------------------------------------------------
# Ramification filtration by brute force
# ---------------------------------------------------------------------------


def _uniformizer_exponents(vtop: int, pk: int) -> tuple[int, int]:
    """Minimal-|x| solution of x*vtop + y*pk = 1."""
    inv = pow(vtop, -1, pk)
    x = inv if inv <= pk // 2 else inv - pk
    y = (1 - x * vtop) // pk
    return x, y


def _shift_valuation(sigma: GaloisMap, y_elem, x: int, y: int,
                     vtop: int, tower: Tower) -> int:
    """v_top((sigma - 1) pi_L) for pi_L = Y^x pi^y.

    sigma(Y)^x - Y^x factors as delta * sum(sigma(Y)^j Y^(x-1-j)) with
    delta = sigma(Y) - Y.  When v(delta) > v(Y) the sum's x Y^(x-1) term
    dominates strictly (p never divides x, which is invertible mod p^(2n+1)),
    so v((sigma-1) pi_L) = y p^(2n+1) + v(delta) + (x-1) v(Y) for either
    sign of x.  The dominance precondition is checked; if it ever failed the
    slow explicit-power route would be used instead.
    """
    pk = tower.p**tower.nvars
    sy = sigma.apply(y_elem)
    delta = sy - y_elem
    if delta.is_zero():
        raise OracleMismatch("a nontrivial automorphism fixes the generator")
    v_delta = elt_valuation_top(delta, tower)
    if v_delta > vtop:
        return y * pk + v_delta + (x - 1) * vtop
    m = abs(x)
    sy_pow = sy**m
    y_pow = y_elem**m
    if x > 0:
        return y * pk + elt_valuation_top(sy_pow - y_pow, tower)
    return y * pk + elt_valuation_top(y_pow - sy_pow, tower) - 2 * m * vtop


@dataclass
class FiltrationReport:
    ivals: dict
    lower_multiset: tuple[int, ...]
    different_val: int
    hilbert_sum: int
    uniformizer: tuple[int, int]

    @property
    def consistent(self) -> bool:
        return self.different_val == self.hilbert_sum

    def to_dict(self) -> dict:
        return {
            "ivals": {",".join(map(str, w)): v for w, v in sorted(self.ivals.items())},
            "lower_multiset": list(self.lower_multiset),
            "different_val": self.different_val,
            "hilbert_sum": self.hilbert_sum,
            "uniformizer": {"x": self.uniformizer[0], "y": self.uniformizer[1]},
            "consistent": self.consistent,
        }


def ramification_filtration(tower: Tower, gen_data: GeneratorData,
                            table: GroupTable) -> FiltrationReport:
    """Measure i(sigma) = v_L(sigma(pi_L) - pi_L) for every nontrivial group
    element and derive the lower ramification multiset from the jumps.

    pi_L = Y^x pi^y with x vtop(Y) + y p^(2n+1) = 1 and |x| minimal; the
    filtration does not depend on this choice.  The Hilbert sum recomputed
    from the multiset must match the direct sum of the i(sigma).
    """
    p = tower.p
    k = tower.nvars
    pk = p**k
    x, y = _uniformizer_exponents(gen_data.vtop, pk)
    y_elem = gen_data.element

    ivals: dict[tuple[int, ...], int] = {}
    for word, sigma in table.elements.items():
        if all(e == 0 for e in word):
            continue
        i_sigma = _shift_valuation(sigma, y_elem, x, y, gen_data.vtop, tower)
        if i_sigma < 2:
            raise OracleMismatch(
                f"i(sigma) = {i_sigma} < 2 for {word}; extension is not totally wild")
        ivals[word] = i_sigma

    breaks = sorted({v - 1 for v in ivals.values()})
    multiset: list[int] = []
    for idx, b in enumerate(breaks):
        size_at = 1 + sum(1 for v in ivals.values() if v - 1 >= b)
        after = breaks[idx + 1] if idx + 1 < len(breaks) else None
        size_after = 1 if after is None else 1 + sum(1 for v in ivals.values() if v - 1 >= after)
        if size_at % size_after:
            raise OracleMismatch(f"filtration sizes {size_at}/{size_after} not nested")
        multiset.extend([b] * _plog(size_at // size_after, p))
    if len(multiset) != k:
        raise OracleMismatch(f"derived {len(multiset)} breaks, expected {k}")

    different_val = sum(ivals.values())
    hilbert = 0
    for i in range(0, max(multiset) + 1):
        hilbert += p ** sum(1 for b in multiset if b >= i) - 1
    return FiltrationReport(ivals, tuple(multiset), different_val, hilbert, (x, y))


# ---------------------------------------------------------------------------
# Scaffold rows
# ---------------------------------------------------------------------------


@dataclass
class ScaffoldRow:
    index: int                # generator number, 1-based
    mu_vtop: int              # = b_i - b_top
    eps_gap: ExtRational      # v(eps) - v(mu); inf when eps = 0 exactly
    bound: ExtRational        # proof row bound (e0 terms are inf here)
    contribution: ExtRational  # gap - p^(2n) u_i + b_i
    holds: bool

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "mu_vtop": self.mu_vtop,
            "eps_gap": self.eps_gap.to_json(),
            "bound": self.bound.to_json(),
            "contribution": self.contribution.to_json(),
            "holds": self.holds,
        }


@dataclass
class ScaffoldReport:
    x_vtop: int
    rows: tuple[ScaffoldRow, ...]
    min_contribution: ExtRational
    cfrak: ExtRational
    ok: bool

    def to_dict(self) -> dict:
        return {
            "x_vtop": self.x_vtop,
            "rows": [r.to_dict() for r in self.rows],
            "min_contribution": self.min_contribution.to_json(),
            "cfrak": self.cfrak.to_json(),
            "ok": self.ok,
        }


def scaffold_row_check(tower: Tower, gen_data: GeneratorData,
                       gens: list[GaloisMap]) -> ScaffoldReport:
    """Check the top-row scaffold bounds on X = t_top^(-1) Y.

    For each generator, (sigma_i - 1)X = mu_i + eps_i with
    mu_i = t_top^(-1) t_i; the gap v(eps) - v(mu) equals
    v_top(sigma_i(Y) - Y - t_i) - v_top(t_i), which is exact.  Rows whose
    only bound involves e0 are vacuous in characteristic p and must have
    eps = 0 exactly.  The minimum row contribution must dominate the
    planner precision.
    """
    p = tower.p
    n = tower.n
    k = tower.nvars
    plan_report = tower.plan_report
    u = plan_report.u
    b = plan_report.b
    btop = b[-1]
    pn2 = p ** (2 * n)

    t = gen_data.cofactors
    t_top = t[-1]
    v_t_top = p**k * t_top.valuation()

    # X itself, through the tracked-precision inverse
    x_elem = gen_data.element * t_top.inverse(window=tower.prec)
    x_vtop = elt_valuation_top(x_elem, tower)
    if x_vtop != -btop:
        raise OracleMismatch(f"v_top(X) = {x_vtop}, expected {-btop}")

    rows = []
    contributions = []
    for i in range(1, k + 1):
        sigma = gens[i - 1]
        mu_vtop = p**k * t[i - 1].valuation() - v_t_top
        if mu_vtop != b[i - 1] - btop:
            raise OracleMismatch(
                f"v_top(mu_{i}) = {mu_vtop} != b_{i} - b_top = {b[i - 1] - btop}")
        w = sigma.apply(gen_data.element) - gen_data.element - t[i - 1]
        if w.is_zero():
            gap = INF
        else:
            gap = ExtRational(elt_valuation_top(w, tower) - p**k * t[i - 1].valuation())

        if n < i <= 2 * n:
            bound = ExtRational(btop - b[i - 1] - pn2 * u[i - n - 1])
        elif i == 1 and tower.params.variant == "M":
            bound = ExtRational(btop - b[0] - (p - 1) * pn2 * u[0])
        else:
            bound = INF  # the only bound on this row carries an e0 term
        contribution = gap - pn2 * u[i - 1] + b[i - 1] if not gap.is_infinite else INF
        holds = gap >= bound
        rows.append(ScaffoldRow(i, mu_vtop, gap, bound, contribution, holds))
        contributions.append(contribution)

    min_contribution = min(contributions)
    cfrak = plan_report.cfrak
    ok = all(r.holds for r in rows) and min_contribution >= cfrak
    return ScaffoldReport(x_vtop, tuple(rows), min_contribution, cfrak, ok)


# ---------------------------------------------------------------------------
# Elementary layers
# ---------------------------------------------------------------------------


@dataclass
class LayerCheck:
    index: int
    expected_break: int
    measured_break: int

    @property
    def ok(self) -> bool:
        return self.expected_break == self.measured_break

    def to_dict(self) -> dict:
        return {"index": self.index, "expected": self.expected_break,
                "measured": self.measured_break, "ok": self.ok}


@dataclass
class LayersReport:
    layers: tuple[LayerCheck, ...]
    sub_upper_expected: tuple[int, ...]
    sub_upper_measured: tuple[int, ...]
    sub_lower_measured: tuple[int, ...]
    ok: bool

    def to_dict(self) -> dict:
        return {
            "degree_p_layers": [c.to_dict() for c in self.layers],
            "sub_upper_expected": list(self.sub_upper_expected),
            "sub_upper_measured": list(self.sub_upper_measured),
            "sub_lower_measured": list(self.sub_lower_measured),
            "ok": self.ok,
        }


def _cp_break(tower: Tower, i: int) -> int:
    """Measured ramification break of the degree-p algebra on alpha_i alone,
    from first definitions in a one-generator quotient algebra."""
    p = tower.p
    u_i = tower.plan_report.u[i - 1]
    mini = TowerAlgebra(tower.field, 1)
    mini.set_relation(0, mini.from_series(tower.a[i - 1]))
    alpha = mini.gen(0)
    sigma = GaloisMap(mini, [alpha + mini.one()])
    x, y = _uniformizer_exponents(-u_i, p)
    alpha_pow = alpha ** abs(x)

    def v_top_mini(elem: TowerElement) -> int:
        level = elem.support_level()
        cur = _level_norm(elem, 0) if level else elem
        v = cur.constant_series().valuation()
        # the norm already carries the degree-p scaling
        return v * (p if level == 0 else 1)

    breaks = set()
    acc = sigma
    for _ in range(p - 1):
        s_alpha = acc.apply(alpha)
        s_pow = s_alpha ** abs(x)
        if x > 0:
            diff = s_pow - alpha_pow
            i_sigma = y * p + v_top_mini(diff)
        else:
            diff = alpha_pow - s_pow
            i_sigma = y * p + v_top_mini(diff) - 2 * abs(x) * (-u_i)
        breaks.add(i_sigma - 1)
        acc = acc.compose(sigma)
    if len(breaks) != 1:
        raise OracleMismatch(f"degree-p layer {i} has inconsistent breaks {breaks}")
    return breaks.pop()


def verify_elementary_layers(tower: Tower, table: GroupTable,
                             filtration: FiltrationReport) -> LayersReport:
    """Confirm the break of each degree-p layer K_0(alpha_i)/K_0 and the
    upper-number multiset of the elementary abelian floor K_(2n)/K_0.

    The floor multiset is read off the measured filtration through the
    quotient rule for upper numbering: the subgroup fixing the floor is
    factored out and the surviving jumps counted."""
    p = tower.p
    n = tower.n
    k = tower.nvars
    u = tower.plan_report.u
    layers = tuple(LayerCheck(i, u[i - 1], _cp_break(tower, i)) for i in range(1, 2 * n + 1))

    # subgroup fixing alpha_1..alpha_2n
    fixing = []
    for word, m in table.elements.items():
        if all(m.images[j] == m.algebra.gen(j) for j in range(k - 1)):
            fixing.append(m)
    if len(fixing) != p:
        raise OracleMismatch(f"floor-fixing subgroup has order {len(fixing)}, expected {p}")

    upper_l = lower_to_upper(p, filtration.lower_multiset)
    distinct_upper = sorted(set(upper_l))
    ivals = filtration.ivals

    def coset_count(upper_value) -> int:
        idx = distinct_upper.index(upper_value)
        lower_value = sorted(set(filtration.lower_multiset))[idx]
        group = [table.map_of(w) for w, v in ivals.items() if v - 1 >= lower_value]
        group.append(GaloisMap.identity(tower.algebra))
        cosets = {frozenset((m.compose(h)).key() for h in fixing) for m in group}
        return len(cosets)

    measured = []
    for idx, uv in enumerate(distinct_upper):
        size_at = coset_count(uv)
        size_after = coset_count(distinct_upper[idx + 1]) if idx + 1 < len(distinct_upper) else 1
        if size_at % size_after:
            raise OracleMismatch("quotient filtration sizes not nested")
        measured.extend([uv] * _plog(size_at // size_after, p))

    expected = tuple(sorted(u[:2 * n]))
    measured_t = tuple(int(x) for x in measured)
    lower_meas = tuple(int(x) for x in upper_to_lower(p, measured)) if measured else ()
    ok = all(c.ok for c in layers) and measured_t == expected
    return LayersReport(layers, expected, measured_t, lower_meas, ok)


# ---------------------------------------------------------------------------
# Orchestration
# ---------------------------------------------------------------------------


@dataclass
class OracleReport:
    params: TowerParams
    prec: int
    plan: PlanReport
    group: GroupReport
    generator: GeneratorData
    filtration: FiltrationReport
    scaffold: ScaffoldReport
    layers: LayersReport
    b_match: bool
    passed: bool

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "params": self.params.to_dict(),
            "prec": self.prec,
            "plan": self.plan.to_dict(),
            "group": self.group.to_dict(),
            "generator": self.generator.to_dict(),
            "filtration": self.filtration.to_dict(),
            "scaffold": self.scaffold.to_dict(),
            "layers": self.layers.to_dict(),
            "predicted_b": list(self.plan.b),
            "measured_b": list(self.filtration.lower_multiset),
            "b_match": self.b_match,
            "passed": self.passed,
        }


def verify_tower(params: TowerParams, prec: int | None = None) -> OracleReport:
    """Build the tower and run the whole verification battery.

    On a precision failure the tower precision is doubled and the run
    retried, up to three attempts.
    """
    cur = prec if prec is not None else default_tower_precision(params)
    last: PrecisionError | None = None
    for _ in range(3):
        try:
            return _verify_once(params, cur)
        except PrecisionError as exc:
            last = exc
            cur *= 2
    raise last  # type: ignore[misc]


def _verify_once(params: TowerParams, prec: int | None) -> OracleReport:
    tower = build_tower(params, prec)
    gens = galois_generators(tower)
    table = enumerate_group(tower, gens)
    group = group_structure(tower, gens, table)
    gen_data = construct_generator(tower)
    filtration = ramification_filtration(tower, gen_data, table)
    scaffold = scaffold_row_check(tower, gen_data, gens)
    layers = verify_elementary_layers(tower, table, filtration)
    b_match = tuple(filtration.lower_multiset) == tuple(tower.plan_report.b)
    passed = (group.matches_expected and b_match and filtration.consistent
              and scaffold.ok and layers.ok)
    return OracleReport(params, tower.prec, tower.plan_report, group, gen_data,
                        filtration, scaffold, layers, b_match, passed)


def verify_family(variant: str, p: int, n: int, u: int, t: int,
                  q: int | None = None, prec: int | None = None) -> OracleReport:
    """Verify the standard family r = u, m = (0,...,0,t) over F_q((pi))."""
    from .planner import default_leads
    from .valuation import ExtRational as ER

    d = 2 * n
    if q is not None:
        dd = 1
        while p**dd < q:
            dd += 1
        if p**dd != q:
            raise ValueError(f"q = {q} is not a power of p = {p}")
        d = dd
    field = residue_field(p, d)
    params = TowerParams(
        p=p, n=n, variant=variant, e0=ER(None), r=u,
        m=(0,) * (2 * n) + (t,), leads=default_leads(field, n), field=field,
    )
    return verify_tower(params, prec)
