"""Classical W-algebra W(g, F): generators and bracket tables.

The reduction works in the chain-adapted coordinates: the algebra is
rebased onto the dual-chain basis, in which the quotient map rho (kill
g_{>=1} up to pairing constants) and the canonical-form projection pi
(kill the [E, g_{<=-1/2}] variables) act variable by variable.

Generators are produced two ways and cross-checked: by the closed
chain-sum formula (linear part) and by an exact linear solve of the
membership constraints (full generator, including higher-degree parts).
Brackets likewise: closed chain-sum formula vs direct reduction.
"""

from __future__ import annotations

from fractions import Fraction

from .liealg import admissible_chains, dual_bases_F
from .pva import BracketTable, LambdaPoly, affine_table, master_bracket
from .scalars import GRat, LinearSolveError, Scalar
from .superpoly import Alphabet, FLAVOR_DEL, SuperPoly, enumerate_monomials

HALF = Fraction(1, 2)


class GeneratorError(RuntimeError):
    pass


class WGenerator:
    """Free generator: leading g^F basis index, value, conformal weight."""

    def __init__(self, index, value, weight):
        self.index = index
        self.value = value
        self.weight = weight


class ReductionContext:
    def __init__(self, g, triple=None, k=None):
        self.g = g
        self.triple = g.sl2 if triple is None else triple
        self.k = Scalar.k() if k is None else k
        self.db = dual_bases_F(g, self.triple)
        db = self.db
        members = sorted(db.members(),
                         key=lambda jn: (db.grade_of(*jn), jn[0], jn[1]))
        self.members = members
        self.star_index = {jn: t for t, jn in enumerate(members)}
        vectors = [db.chain_lower[j][n] for (j, n) in members]
        names = [self._member_name(j, n) for (j, n) in members]
        self.gstar = g.rebase(vectors, names)
        weights = [1 - self.gstar.gradings[t] for t in range(len(members))]
        self.alph = Alphabet(FLAVOR_DEL, names, self.gstar.parities, weights)
        self.table = affine_table(self.gstar, self.alph, self.k)
        grads = self.gstar.gradings
        self.n_indices = [t for t, gr in enumerate(grads) if gr > 0]
        self.p_indices = [t for t, gr in enumerate(grads) if gr < 1]
        self.gF_indices = [self.star_index[(j, 0)] for j in range(db.count())]
        self.highE_indices = [t for t, (j, n) in enumerate(members)
                              if n >= 1 and grads[t] < 1]
        # rho: x -> pi_{<=1/2}(x) + (F|x), variable-diagonal in this basis
        self._rho_images = {}
        for t, (j, n) in enumerate(members):
            if grads[t] >= 1:
                c = g.form_value(self.triple.F, db.chain_lower[j][n])
                self._rho_images[t] = SuperPoly.const(self.alph, c)
            else:
                self._rho_images[t] = SuperPoly.variable(self.alph, t)
        self._pi_images = {}
        for t in range(len(members)):
            if t in self.highE_indices:
                self._pi_images[t] = SuperPoly.zero(self.alph)
            else:
                self._pi_images[t] = SuperPoly.variable(self.alph, t)
        labels = []
        for j in range(db.count()):
            vec = db.lower[j]
            hits = [(i, c) for i, c in enumerate(vec) if c]
            if len(hits) == 1 and hits[0][1] == Scalar.one():
                labels.append(g.names[hits[0][0]])
            else:
                labels.append("q%d" % j)
        self.gen_labels = labels
        self.gen_alph = Alphabet(
            FLAVOR_DEL, ["w_" + lb for lb in labels],
            [g.parity_of_vec(db.lower[j]) for j in range(db.count())],
            [1 + db.spins[j] for j in range(db.count())])
        self.alph_in = Alphabet(FLAVOR_DEL, g.names, g.parities,
                                [1 - gr for gr in g.gradings])

    def _member_name(self, j, n):
        return "q%d" % j if n == 0 else "q%d^%d" % (j, n)

    # -- maps ------------------------------------------------------------
    def rho(self, poly: SuperPoly) -> SuperPoly:
        return poly.substitute(self._rho_images, self.alph)

    def rho_lambda(self, lp: LambdaPoly) -> LambdaPoly:
        return LambdaPoly(self.alph, {n: self.rho(p)
                                      for n, p in lp.coeffs.items()})

    def pi(self, poly: SuperPoly) -> SuperPoly:
        return poly.substitute(self._pi_images, self.alph)

    def to_input(self, poly: SuperPoly) -> SuperPoly:
        """Express a chain-coordinate polynomial over the input basis."""
        images = {}
        for t, (j, n) in enumerate(self.members):
            vec = self.db.chain_lower[j][n]
            img = SuperPoly.zero(self.alph_in)
            for i, c in enumerate(vec):
                if c:
                    img = img + SuperPoly.variable(self.alph_in, i, 0, c)
            images[t] = img
        return poly.substitute(images, self.alph_in)

    def sharp_poly(self, vec) -> SuperPoly:
        """g^F projection of an algebra vector, as a degree-1 polynomial."""
        out = SuperPoly.zero(self.alph)
        for j in range(self.db.count()):
            c = self.g.form_value(self.db.upper[j], vec)
            if c:
                out = out + SuperPoly.variable(self.alph,
                                               self.star_index[(j, 0)], 0, c)
        return out

    def sharp_symbols(self, vec) -> SuperPoly:
        """g^F projection expanded in generator symbols."""
        out = SuperPoly.zero(self.gen_alph)
        for j in range(self.db.count()):
            c = self.g.form_value(self.db.upper[j], vec)
            if c:
                out = out + SuperPoly.variable(self.gen_alph, j, 0, c)
        return out

    def n_var(self, t) -> SuperPoly:
        return SuperPoly.variable(self.alph, t)


def gamma_linear(ctx: ReductionContext, j) -> SuperPoly:
    """Closed chain-sum formula for the part of the generator that is
    linear in the [E, g_{<=-1/2}] variables."""
    g, db = ctx.g, ctx.db
    alpha = db.spins[j]
    q = db.lower[j]
    out = SuperPoly.zero(ctx.alph)
    for chain in admissible_chains(db, -alpha, -HALF):
        if not chain:
            continue
        jp, np_ = chain[-1]
        val = SuperPoly.variable(ctx.alph, ctx.star_index[(jp, np_ + 1)])
        sgn = 1
        for t in range(len(chain) - 1, 0, -1):
            x = db.chain_lower[chain[t - 1][0]][chain[t - 1][1] + 1]
            y = db.chain_upper[chain[t][0]][chain[t][1]]
            sgn *= -1 if g.parity_of_vec(db.lower[chain[t][0]]) else 1
            val = _chain_factor(ctx, x, y, val)
        x = q
        y = db.chain_upper[chain[0][0]][chain[0][1]]
        sgn *= -1 if g.parity_of_vec(db.lower[chain[0][0]]) else 1
        val = _chain_factor(ctx, x, y, val)
        if sgn < 0:
            val = -val
        out = out + val
    return out


def _chain_factor(ctx, x, y, tail: SuperPoly) -> SuperPoly:
    """([x, y]^sharp - (x|y) k del) applied to the tail."""
    sharp = ctx.sharp_poly(ctx.g.bracket(x, y))
    c = ctx.g.form_value(x, y)
    out = sharp * tail
    if c:
        out = out - tail.deriv().scalar_mul(c * ctx.k)
    return out


def membership_defects(ctx: ReductionContext, w: SuperPoly):
    """rho{n_lambda w} for every basis element n of g_{>0}; all must vanish."""
    out = []
    for t in ctx.n_indices:
        lp = ctx.rho_lambda(master_bracket(ctx.n_var(t), w, ctx.table))
        if lp:
            out.append((ctx.alph.names[t], lp))
    return out


def _k_degree_bound(ctx, weight) -> int:
    # corrections are polynomial in a symbolic k; constant k needs no expansion
    return 0 if ctx.k.is_constant() else int(2 * weight) + 3


def solve_generator(ctx: ReductionContext, j) -> WGenerator:
    """Exact linear solve for the canonical generator with leading term q_j."""
    db = ctx.db
    weight = 1 + db.spins[j]
    lead = ctx.star_index[(j, 0)]
    parity = ctx.gstar.parities[lead]
    allowed = []
    for t in ctx.p_indices:
        base_w = ctx.alph.weights[t]
        m = 0
        while base_w + m <= weight:
            allowed.append((t, m))
            m += 1
    monos = enumerate_monomials(ctx.alph, allowed, weight, parity,
                                require_one_of={(t, m) for (t, m) in allowed
                                                if t in ctx.highE_indices})
    lead_poly = SuperPoly.variable(ctx.alph, lead)
    kmax = _k_degree_bound(ctx, weight)
    solution = _solve_membership(ctx, lead_poly, monos, kmax)
    value = lead_poly + solution
    gamma = gamma_linear(ctx, j)
    if _highE_degree_part(ctx, value - lead_poly, 1) != gamma:
        raise GeneratorError("solver linear part disagrees with the chain formula "
                             "for generator %d" % j)
    return WGenerator(j, value, weight)


def _solve_membership(ctx, lead_poly, monos, kmax):
    """Solve rho{n_l lead + sum x_M M} = 0 for Scalar coefficients x_M."""
    alph = ctx.alph
    columns = []
    for M in monos:
        for d in range(kmax + 1):
            columns.append((M, d))
    rows = {}

    def add(eqkey, col, coeff: GRat):
        rows.setdefault(eqkey, ({}, [GRat(0)]))
        cur = rows[eqkey][0].get(col, GRat(0)) + coeff
        if cur:
            rows[eqkey][0][col] = cur
        else:
            rows[eqkey][0].pop(col, None)

    def add_rhs(eqkey, coeff: GRat):
        rows.setdefault(eqkey, ({}, [GRat(0)]))
        rows[eqkey][1][0] = rows[eqkey][1][0] + coeff

    for t in ctx.n_indices:
        nv = ctx.n_var(t)
        base = ctx.rho_lambda(master_bracket(nv, lead_poly, ctx.table))
        for lam, poly in base.coeffs.items():
            for mono, s in poly.terms.items():
                for (kp, cp), gr in s.terms.items():
                    add_rhs((t, lam, mono, kp, cp), -gr)
        for idx, M in enumerate(monos):
            mp = SuperPoly(alph, {M: Scalar.one()})
            bm = ctx.rho_lambda(master_bracket(nv, mp, ctx.table))
            for lam, poly in bm.coeffs.items():
                for mono, s in poly.terms.items():
                    for (kp, cp), gr in s.terms.items():
                        for d in range(kmax + 1):
                            add((t, lam, mono, kp + d, cp), (M, d), gr)

    eqs = [(coeffs, rhs[0]) for (coeffs, rhs) in rows.values()]
    try:
        sol = _lin(eqs, columns)
    except LinearSolveError as e:
        if "underdetermined" in str(e):
            raise GeneratorError("non-unique generator solution: %s" % e)
        raise GeneratorError("no generator solution: %s" % e)
    out = SuperPoly.zero(alph)
    for (M, d), gr in sol.items():
        if gr:
            out = out + SuperPoly(alph, {M: Scalar.term(d, 0, gr)})
    return out


def _lin(eqs, columns):
    from .scalars import solve_linear
    return solve_linear(eqs, columns)


def _highE_degree_part(ctx, poly: SuperPoly, degree) -> SuperPoly:
    out = {}
    for mono, c in poly.terms.items():
        d = sum(e for (t, m), e in mono if t in ctx.highE_indices)
        if d == degree:
            out[mono] = c
    return SuperPoly(ctx.alph, out)


def solve_all_generators(ctx: ReductionContext):
    return [solve_generator(ctx, j) for j in range(ctx.db.count())]


def rewrite_in_generators(ctx: ReductionContext, gens, A: SuperPoly) -> SuperPoly:
    """pi(A) with g^F variables renamed to generator symbols; verifies that
    evaluating the result on the generators reproduces A exactly."""
    projected = ctx.pi(A)
    images = {}
    for t, (j, n) in enumerate(ctx.members):
        if n == 0:
            images[t] = SuperPoly.variable(ctx.gen_alph, j)
        else:
            images[t] = SuperPoly.zero(ctx.gen_alph)
    sym = projected.substitute(images, ctx.gen_alph)
    back = evaluate_symbols(ctx, gens, sym)
    if back != A:
        raise GeneratorError("input not in W or generators not canonical")
    return sym


def evaluate_symbols(ctx: ReductionContext, gens, sym: SuperPoly) -> SuperPoly:
    images = {j: gens[j].value for j in range(ctx.db.count())}
    return sym.substitute(images, ctx.alph)


def w_bracket_direct(ctx: ReductionContext, gens, i, j) -> LambdaPoly:
    """Master bracket in P(g), reduced mod I_F, rewritten in generators."""
    raw = master_bracket(gens[i].value, gens[j].value, ctx.table)
    red = ctx.rho_lambda(raw)
    return LambdaPoly(ctx.gen_alph,
                      {n: rewrite_in_generators(ctx, gens, p)
                       for n, p in red.coeffs.items()})


def w_bracket_closed(ctx: ReductionContext, gens, a, b) -> LambdaPoly:
    """Closed chain-sum bracket formula evaluated in generator symbols."""
    g, db = ctx.g, ctx.db
    t1, t2 = db.spins[a], db.spins[b]
    qa, qb = db.lower[a], db.lower[b]
    out = LambdaPoly.zero(ctx.gen_alph)
    br = ctx.sharp_symbols(g.bracket(qa, qb))
    if br:
        out = out + LambdaPoly.of(br)
    fv = g.form_value(qa, qb)
    if fv:
        out = out + LambdaPoly(ctx.gen_alph,
                               {1: SuperPoly.const(ctx.gen_alph, fv * ctx.k)})
    pa = g.parity_of_vec(qa)
    pb = g.parity_of_vec(qb)
    s_ab = -1 if (pa * pb) % 2 else 1
    total = LambdaPoly.zero(ctx.gen_alph)
    for chain in admissible_chains(db, -t2, t1 - 1):
        if not chain:
            continue
        sgn = 1
        for (jj, _n) in chain:
            sgn *= -1 if g.parity_of_vec(db.lower[jj]) else 1
        jp, np_ = chain[-1]
        x_last = db.chain_lower[jp][np_ + 1] if np_ + 1 < len(db.chain_lower[jp]) \
            else g.zero_vec()
        val = _closed_factor(ctx, g.bracket(x_last, qa),
                             g.form_value(x_last, qa),
                             LambdaPoly.of(SuperPoly.one(ctx.gen_alph)),
                             last=True)
        for t in range(len(chain) - 1, 0, -1):
            x = db.chain_lower[chain[t - 1][0]][chain[t - 1][1] + 1]
            y = db.chain_upper[chain[t][0]][chain[t][1]]
            val = _closed_factor(ctx, g.bracket(x, y), g.form_value(x, y), val)
        y0 = db.chain_upper[chain[0][0]][chain[0][1]]
        val = _closed_factor(ctx, g.bracket(qb, y0), g.form_value(qb, y0), val)
        if sgn < 0:
            val = -val
        total = total + val
    if s_ab > 0:
        out = out - total
    else:
        out = out + total
    return out


def _closed_factor(ctx, bracket_vec, form_val: Scalar, tail: LambdaPoly,
                   last=False) -> LambdaPoly:
    """(omega([x,y]^sharp) - (x|y) k (lambda+del)) applied to the tail;
    on the trailing 1 the (lambda+del) reduces to a bare lambda."""
    sym = ctx.sharp_symbols(bracket_vec)
    out = tail.mul_left(sym) if sym else LambdaPoly.zero(ctx.gen_alph)
    if form_val:
        out = out - tail.apply_lambda_del().scalar_mul(form_val * ctx.k)
    return out


def w_bracket_table(ctx: ReductionContext, gens, route="direct") -> BracketTable:
    table = BracketTable(ctx.gen_alph)
    n = ctx.db.count()
    for i in range(n):
        for j in range(n):
            if route == "direct":
                table.set(i, j, w_bracket_direct(ctx, gens, i, j))
            else:
                table.set(i, j, w_bracket_closed(ctx, gens, i, j))
    return table


def compare_closed_direct(ctx: ReductionContext, gens):
    """Per-pair report of closed-formula vs direct-reduction brackets."""
    mismatches = []
    n = ctx.db.count()
    for i in range(n):
        for j in range(n):
            d = w_bracket_direct(ctx, gens, i, j)
            c = w_bracket_closed(ctx, gens, i, j)
            if d != c:
                mismatches.append((ctx.gen_labels[i], ctx.gen_labels[j], d, c))
    return mismatches
