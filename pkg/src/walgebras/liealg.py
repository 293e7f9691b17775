"""Lie superalgebra data: validation, gradings, dual bases, projections.

An algebra is described by a basis with parities, exact structure constants,
an even supersymmetric invariant bilinear form, and distinguished sl2 /
osp(1|2) elements.  The basis must be an eigenbasis of ad H/2; the engine
validates this and never diagonalizes.  Triples are inputs, not searched for.

Elements are coefficient vectors (tuples of Scalar) over the basis.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import comb, factorial

from .scalars import GR_ZERO, GR_ONE, Scalar, parse_coeff

HALF = Fraction(1, 2)


class AlgebraError(ValueError):
    pass


# ---------------------------------------------------------------------------
# exact dense linear algebra over Gaussian rationals
# ---------------------------------------------------------------------------

def _rref(rows):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][col]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def matrix_rank(rows) -> int:
    return len(_rref(rows)[0])


def nullspace(rows, ncols):
    """Deterministic basis of the right nullspace of a GRat matrix."""
    red, pivots = _rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [GR_ZERO] * ncols
        vec[fc] = GR_ONE
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(vec)
    return basis


def matrix_inverse(rows):
    n = len(rows)
    aug = [list(r) + [GR_ONE if i == j else GR_ZERO for j in range(n)]
           for i, r in enumerate(rows)]
    red, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise AlgebraError("matrix not invertible")
    return [r[n:] for r in red]


def vec_grat(vec):
    """Scalar vector -> GRat vector; entries must be constant."""
    out = []
    for s in vec:
        if not s.is_constant():
            raise AlgebraError("expected k-free scalar, got %s" % s)
        out.append(s.constant_part())
    return out


def grat_vec_scalar(vec):
    return tuple(Scalar.term(0, 0, g) for g in vec)


# ---------------------------------------------------------------------------
# the algebra
# ---------------------------------------------------------------------------

class SL2Triple:
    """Vectors E, H, F with [H,E]=2E, [H,F]=-2F, [E,F]=H, (E|F)=(H|H)/2=1."""

    def __init__(self, E, H, F):
        self.E, self.H, self.F = tuple(E), tuple(H), tuple(F)


class OSPTriple:
    """Quintuple (E, e, H, f, F) spanning a copy of osp(1|2); e, f odd."""

    def __init__(self, E, e, H, f, F):
        self.E, self.e, self.H, self.f, self.F = map(tuple, (E, e, H, f, F))

    def sl2(self) -> SL2Triple:
        return SL2Triple(self.E, self.H, self.F)


class LieSuperalgebra:
    def __init__(self, name, names, parities, struct, form, sl2=None, osp=None):
        """struct: {(i, j): vector} for the nonzero brackets [x_i, x_j].

        Missing (j, i) entries are completed by super-anticommutativity.
        Gradings are computed from ad H/2 when an sl2 triple is present.
        """
        self.name = name
        self.names = tuple(names)
        self.parities = tuple(int(p) % 2 for p in parities)
        self.dim = len(self.names)
        full = {}
        for (i, j), vec in struct.items():
            vec = tuple(vec)
            if any(vec):
                full[(i, j)] = vec
        for (i, j), vec in list(full.items()):
            if (j, i) not in full:
                # [x_j, x_i] = -(-1)^{p_i p_j} [x_i, x_j]
                s = Scalar.rational(-1) if (self.parities[i] * self.parities[j]) % 2 == 0 \
                    else Scalar.one()
                full[(j, i)] = tuple(x * s for x in vec)
        self.struct = full
        self.form = tuple(tuple(row) for row in form)
        self.sl2 = sl2
        self.osp = osp
        self.gradings = self._compute_gradings() if sl2 is not None else None

    # -- element helpers -----------------------------------------------
    def zero_vec(self):
        return tuple(Scalar.zero() for _ in range(self.dim))

    def basis_vec(self, i):
        return tuple(Scalar.one() if j == i else Scalar.zero()
                     for j in range(self.dim))

    def bracket(self, x, y):
        out = [Scalar.zero()] * self.dim
        for (i, j), vec in self.struct.items():
            c = x[i] * y[j]
            if not c:
                continue
            for l, s in enumerate(vec):
                if s:
                    out[l] = out[l] + c * s
        return tuple(out)

    def form_value(self, x, y) -> Scalar:
        out = Scalar.zero()
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj and self.form[i][j]:
                    out = out + xi * yj * self.form[i][j]
        return out

    def parity_of_vec(self, vec):
        p = None
        for i, c in enumerate(vec):
            if c:
                if p is None:
                    p = self.parities[i]
                elif p != self.parities[i]:
                    return None
        return p

    def grading_of_vec(self, vec):
        g = None
        for i, c in enumerate(vec):
            if c:
                if g is None:
                    g = self.gradings[i]
                elif g != self.gradings[i]:
                    return None
        return g

    def _compute_gradings(self):
        """Eigenvalue of ad H/2 on every basis vector; raises if not diagonal."""
        H = self.sl2.H
        grads = []
        for i in range(self.dim):
            img = self.bracket(H, self.basis_vec(i))
            ev = None
            for l, s in enumerate(img):
                if s:
                    if l != i:
                        raise AlgebraError("basis not ad-H/2 homogeneous (index %d)" % i)
                    if not s.is_constant():
                        raise AlgebraError("non-constant ad-H eigenvalue")
                    g = s.constant_part()
                    if g.im:
                        raise AlgebraError("non-rational ad-H eigenvalue")
                    ev = g.re
            grads.append(Fraction(0) if ev is None else ev / 2)
        return tuple(grads)

    # -- validation ------------------------------------------------------
    def validate(self):
        """Report every violated axiom; an empty list means valid."""
        report = []
        basis = [self.basis_vec(i) for i in range(self.dim)]

        for i in range(self.dim):
            for j in range(self.dim):
                bij = self.bracket(basis[i], basis[j])
                bji = self.bracket(basis[j], basis[i])
                sgn = (-1) ** (self.parities[i] * self.parities[j])
                bad = [a + (b.scale(sgn)) for a, b in zip(bij, bji)]
                if any(bad):
                    report.append("super-anticommutativity fails at (%s,%s)"
                                  % (self.names[i], self.names[j]))
                pb = self.parity_of_vec(bij)
                if pb is not None and bij != self.zero_vec() and \
                        pb != (self.parities[i] + self.parities[j]) % 2:
                    report.append("bracket parity fails at (%s,%s)"
                                  % (self.names[i], self.names[j]))

        for i in range(self.dim):
            for j in range(self.dim):
                for l in range(self.dim):
                    lhs = self.bracket(basis[i], self.bracket(basis[j], basis[l]))
                    r1 = self.bracket(self.bracket(basis[i], basis[j]), basis[l])
                    sgn = (-1) ** (self.parities[i] * self.parities[j])
                    r2 = self.bracket(basis[j], self.bracket(basis[i], basis[l]))
                    bad = [a - b - c.scale(sgn) for a, b, c in zip(lhs, r1, r2)]
                    if any(bad):
                        report.append("Jacobi fails at (%s,%s,%s)"
                                      % (self.names[i], self.names[j], self.names[l]))

        for i in range(self.dim):
            for j in range(self.dim):
                fij = self.form[i][j]
                if self.parities[i] != self.parities[j] and fij:
                    report.append("form not even at (%s,%s)" % (self.names[i], self.names[j]))
                sgn = (-1) ** (self.parities[i] * self.parities[j])
                if fij != self.form[j][i].scale(sgn):
                    report.append("form not supersymmetric at (%s,%s)"
                                  % (self.names[i], self.names[j]))

        for i in range(self.dim):
            for j in range(self.dim):
                for l in range(self.dim):
                    lhs = self.form_value(self.bracket(basis[i], basis[j]), basis[l])
                    rhs = self.form_value(basis[i], self.bracket(basis[j], basis[l]))
                    if lhs != rhs:
                        report.append("form not invariant at (%s,%s,%s)"
                                      % (self.names[i], self.names[j], self.names[l]))

        try:
            rows = [vec_grat(row) for row in self.form]
            if matrix_rank(rows) != self.dim:
                report.append("form degenerate (rank %d of %d)"
                              % (matrix_rank(rows), self.dim))
        except AlgebraError as e:
            report.append("form entries not constant: %s" % e)

        if self.sl2 is not None:
            report.extend(self._validate_sl2(self.sl2))
            try:
                self._compute_gradings()
            except AlgebraError as e:
                report.append(str(e))
        if self.osp is not None:
            report.extend(self._validate_osp(self.osp))
        return report

    def _validate_sl2(self, t, tag="sl2"):
        report = []
        checks = [
            ("[H,E]=2E", self.bracket(t.H, t.E), tuple(x.scale(2) for x in t.E)),
            ("[H,F]=-2F", self.bracket(t.H, t.F), tuple(x.scale(-2) for x in t.F)),
            ("[E,F]=H", self.bracket(t.E, t.F), t.H),
        ]
        for label, got, want in checks:
            if got != want:
                report.append("%s: %s fails" % (tag, label))
        if self.form_value(t.E, t.F) != Scalar.one():
            report.append("%s: (E|F)=1 fails" % tag)
        if self.form_value(t.H, t.H) != Scalar.rational(2):
            report.append("%s: (H|H)=2 fails" % tag)
        for v, nm in ((t.E, "E"), (t.H, "H"), (t.F, "F")):
            if self.parity_of_vec(v) not in (0, None):
                report.append("%s: %s not even" % (tag, nm))
        return report

    def _validate_osp(self, t):
        report = self._validate_sl2(t.sl2(), tag="osp")
        checks = [
            ("[H,e]=e", self.bracket(t.H, t.e), t.e),
            ("[H,f]=-f", self.bracket(t.H, t.f), tuple(x.scale(-1) for x in t.f)),
            ("[e,e]=2E", self.bracket(t.e, t.e), tuple(x.scale(2) for x in t.E)),
            ("[f,f]=-2F", self.bracket(t.f, t.f), tuple(x.scale(-2) for x in t.F)),
            ("[e,f]=-H", self.bracket(t.e, t.f), tuple(x.scale(-1) for x in t.H)),
            ("[F,e]=f", self.bracket(t.F, t.e), t.f),
            ("[E,f]=e", self.bracket(t.E, t.f), t.e),
        ]
        for label, got, want in checks:
            if got != want:
                report.append("osp: %s fails" % label)
        if self.form_value(t.e, t.f) != Scalar.rational(-2):
            report.append("osp: (e|f)=-2 fails")
        for v, nm in ((t.e, "e"), (t.f, "f")):
            if self.parity_of_vec(v) not in (1, None):
                report.append("osp: %s not odd" % nm)
        return report

    # -- graded subspaces -------------------------------------------------
    def indices_where(self, pred):
        if self.gradings is None:
            raise AlgebraError("algebra carries no grading (no sl2 triple)")
        return [i for i in range(self.dim) if pred(self.gradings[i])]

    def subspaces(self):
        """Index selectors for n = g_{>0}, m = g_{>=1}, p = g_{<1}."""
        return {
            "n": self.indices_where(lambda g: g > 0),
            "m": self.indices_where(lambda g: g >= 1),
            "p": self.indices_where(lambda g: g < 1),
        }

    def ge(self, j):
        return self.indices_where(lambda g: g >= Fraction(j))

    def le(self, j):
        return self.indices_where(lambda g: g <= Fraction(j))

    # -- change of basis ---------------------------------------------------
    def rebase(self, vectors, names, new_name=None):
        """Express the algebra in a new basis (each vector homogeneous)."""
        cols = [vec_grat(v) for v in vectors]
        if len(cols) != self.dim:
            raise AlgebraError("rebase needs %d vectors" % self.dim)
        V = [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]
        Vinv = matrix_inverse(V)  # coords(x) = Vinv @ x

        def coords(vec):
            g = vec_grat(vec)
            return [sum((Vinv[r][c] * g[c] for c in range(self.dim)), GR_ZERO)
                    for r in range(self.dim)]

        parities, struct, form = [], {}, []
        for v in vectors:
            p = self.parity_of_vec(v)
            if p is None:
                raise AlgebraError("rebase vector not parity homogeneous")
            parities.append(p)
        for i, vi in enumerate(vectors):
            for j, vj in enumerate(vectors):
                b = self.bracket(vi, vj)
                if any(b):
                    struct[(i, j)] = grat_vec_scalar(coords(b))
        for vi in vectors:
            form.append(tuple(self.form_value(vi, vj) for vj in vectors))

        def map_triple(t):
            return SL2Triple(grat_vec_scalar(coords(t.E)),
                             grat_vec_scalar(coords(t.H)),
                             grat_vec_scalar(coords(t.F)))

        sl2 = map_triple(self.sl2) if self.sl2 is not None else None
        osp = None
        if self.osp is not None:
            osp = OSPTriple(grat_vec_scalar(coords(self.osp.E)),
                            grat_vec_scalar(coords(self.osp.e)),
                            grat_vec_scalar(coords(self.osp.H)),
                            grat_vec_scalar(coords(self.osp.f)),
                            grat_vec_scalar(coords(self.osp.F)))
        return LieSuperalgebra(new_name or self.name + "*", names, parities,
                               struct, form, sl2=sl2, osp=osp)


def validate_algebra(g: LieSuperalgebra):
    """Spec operation: full invariant report (empty list = valid)."""
    return g.validate()


# ---------------------------------------------------------------------------
# dual bases from sl2 / osp(1|2) representation theory
# ---------------------------------------------------------------------------

class DualBases:
    """Chain bases attached to an sl2 triple (kind 'F') or osp one (kind 'f').

    lower[j]  : q_j (resp. r_j), basis of ker ad F (resp. ker ad f)
    upper[j]  : q^j (resp. r^j), dual basis of ker ad E (resp. ker ad e)
    chain_upper[j][m] : (ad F)^m q^j          (resp. (ad f)^m r^j)
    chain_lower[j][n] : normalized (ad E)^n q_j  (resp. C_{j,n} (ad e)^n r_j)
    spins[j]  : alpha_j with q_j in g(-alpha_j)
    """

    def __init__(self, g, kind, lower, upper, chain_lower, chain_upper, spins):
        self.g = g
        self.kind = kind
        self.lower = lower
        self.upper = upper
        self.chain_lower = chain_lower
        self.chain_upper = chain_upper
        self.spins = spins
        self.step = Fraction(1) if kind == "F" else HALF
        # index sets: grade -> [(j, n)]
        self.index_sets = {}
        for j, alpha in enumerate(spins):
            for n in range(len(chain_lower[j])):
                grade = -alpha + n * self.step
                self.index_sets.setdefault(grade, []).append((j, n))
        for v in self.index_sets.values():
            v.sort()

    def count(self):
        return len(self.lower)

    def grade_of(self, j, n):
        return -self.spins[j] + n * self.step

    def chain_lower_or_zero(self, j, n):
        if n < len(self.chain_lower[j]):
            return self.chain_lower[j][n]
        return self.g.zero_vec()

    def chain_upper_or_zero(self, j, n):
        if n < len(self.chain_upper[j]):
            return self.chain_upper[j][n]
        return self.g.zero_vec()

    def members(self):
        out = []
        for j in range(len(self.lower)):
            for n in range(len(self.chain_lower[j])):
                out.append((j, n))
        return out

    def sharp(self, vec):
        """Projection onto ker ad F (resp. ker ad f) along [E,g] (resp. [e,g])."""
        out = self.g.zero_vec()
        for j, up in enumerate(self.upper):
            c = self.g.form_value(up, vec)
            if c:
                out = tuple(a + b * c for a, b in zip(out, self.lower[j]))
        return out

    def full_coords(self, vec):
        """Coordinates of vec in the complete chain basis {chain_lower[j][n]}."""
        coords = {}
        for j in range(len(self.lower)):
            for n in range(len(self.chain_lower[j])):
                c = self.g.form_value(self.chain_upper[j][n], vec)
                if c:
                    coords[(j, n)] = c
        return coords


def _graded_kernel_basis(g, ad_vec):
    """Kernel of ad(ad_vec), split into homogeneous pieces, sorted by grading."""
    dim = g.dim
    cols = []
    for i in range(dim):
        img = g.bracket(ad_vec, g.basis_vec(i))
        cols.append(vec_grat(img))
    groups = {}
    for i in range(dim):
        groups.setdefault((g.gradings[i], g.parities[i]), []).append(i)
    members = []
    for (grade, par) in sorted(groups):
        idxs = groups[(grade, par)]
        rows = [[cols[i][r] for i in idxs] for r in range(dim)]
        for nv in nullspace(rows, len(idxs)):
            vec = [Scalar.zero()] * dim
            for pos, i in enumerate(idxs):
                if nv[pos]:
                    vec[i] = Scalar.term(0, 0, nv[pos])
            members.append((grade, par, tuple(vec)))
    members.sort(key=lambda t: (t[0], t[1]))
    return members


def _pair_dual(g, lows, ups):
    """Correct the upper kernel basis so that (q^i | q_j) = delta_{ij}."""
    by_grade_low = {}
    for grade, par, vec in lows:
        by_grade_low.setdefault((grade, par), []).append(vec)
    by_grade_up = {}
    for grade, par, vec in ups:
        by_grade_up.setdefault((-grade, par), []).append(vec)
    lower, upper = [], []
    for key in sorted(by_grade_low, key=lambda t: (t[0], t[1])):
        lvs = by_grade_low[key]
        uvs = by_grade_up.get(key)
        if uvs is None or len(uvs) != len(lvs):
            raise AlgebraError("bases not dual (mismatched kernels at grade %s)" % (key,))
        gram = [[g.form_value(u, l) for l in lvs] for u in uvs]
        try:
            inv = matrix_inverse([vec_grat(r) for r in gram])
        except AlgebraError:
            raise AlgebraError("bases not dual (singular pairing at grade %s)" % (key,))
        for r in range(len(lvs)):
            vec = [Scalar.zero()] * g.dim
            for a in range(len(uvs)):
                c = inv[r][a]
                if c:
                    for t in range(g.dim):
                        vec[t] = vec[t] + uvs[a][t] * Scalar.term(0, 0, c)
            lower.append(lvs[r])
            upper.append(tuple(vec))
    return lower, upper


def dual_bases_F(g: LieSuperalgebra, triple: SL2Triple) -> DualBases:
    """Chain bases for the even reduction (Lemma on dual bases, sl2 case)."""
    lows = _graded_kernel_basis(g, triple.F)
    ups = _graded_kernel_basis(g, triple.E)
    lower, upper = _pair_dual(g, lows, ups)
    spins = []
    chain_lower, chain_upper = [], []
    for j, q in enumerate(lower):
        grade = g.grading_of_vec(q)
        if grade is None:
            raise AlgebraError("kernel basis not graded")
        alpha = -grade
        spins.append(alpha)
        two_alpha = int(2 * alpha)
        up_chain = [upper[j]]
        for n in range(1, two_alpha + 2):
            up_chain.append(g.bracket(triple.F, up_chain[-1]))
        if not any(up_chain[two_alpha]) or any(up_chain[two_alpha + 1]):
            raise AlgebraError("chain length does not match spin %s" % alpha)
        chain_upper.append([tuple(v) for v in up_chain[:two_alpha + 1]])
        lo_chain = [q]
        cur = q
        for n in range(1, two_alpha + 1):
            cur = g.bracket(triple.E, cur)
            coeff = Fraction((-1) ** n, factorial(n) ** 2 * comb(two_alpha, n))
            lo_chain.append(tuple(x.scale(coeff) for x in cur))
        chain_lower.append(lo_chain)
    db = DualBases(g, "F", lower, upper, chain_lower, chain_upper,
                   [Fraction(a) for a in spins])
    _verify_chain_pairings(db)
    return db


def dual_bases_f(g: LieSuperalgebra, osp: OSPTriple) -> DualBases:
    """Chain bases for the SUSY reduction (C_{j,n} normalization)."""
    lows = _graded_kernel_basis(g, osp.f)
    ups = _graded_kernel_basis(g, osp.e)
    lower, upper = _pair_dual(g, lows, ups)
    spins = []
    chain_lower, chain_upper = [], []
    for j, r in enumerate(lower):
        grade = g.grading_of_vec(r)
        alpha = -grade
        spins.append(alpha)
        length = int(4 * alpha) + 1
        up_chain = [upper[j]]
        for n in range(1, length + 1):
            up_chain.append(g.bracket(osp.f, up_chain[-1]))
        if not any(up_chain[length - 1]) or any(up_chain[length]):
            raise AlgebraError("SUSY chain length does not match spin %s" % alpha)
        chain_upper.append([tuple(v) for v in up_chain[:length]])
        lo_chain = [r]
        cur = r
        sj = -1 if g.parity_of_vec(r) else 1
        two_alpha = int(2 * alpha)
        for n in range(1, length):
            cur = g.bracket(osp.e, cur)
            if n % 2 == 0:
                m = n // 2
                coeff = Fraction(1, factorial(m) ** 2 * comb(two_alpha, m))
            else:
                m = (n - 1) // 2
                coeff = Fraction(-sj, factorial(m + 1) * factorial(m)
                                 * comb(two_alpha, m + 1))
            lo_chain.append(tuple(x.scale(coeff) for x in cur))
        chain_lower.append(lo_chain)
    db = DualBases(g, "f", lower, upper, chain_lower, chain_upper,
                   [Fraction(a) for a in spins])
    _verify_chain_pairings(db)
    return db


def _verify_chain_pairings(db: DualBases):
    g = db.g
    for i in range(db.count()):
        for m in range(len(db.chain_upper[i])):
            for j in range(db.count()):
                for n in range(len(db.chain_lower[j])):
                    val = g.form_value(db.chain_upper[i][m], db.chain_lower[j][n])
                    want = Scalar.one() if (i == j and m == n) else Scalar.zero()
                    if val != want:
                        raise AlgebraError(
                            "bases not dual: (chain_up[%d][%d]|chain_lo[%d][%d]) = %s"
                            % (i, m, j, n, val))


def sharp_project(db: DualBases, vec):
    """Spec operation: exact projection onto g^F (resp. g^f)."""
    return db.sharp(vec)


# ---------------------------------------------------------------------------
# partial orders and admissible chains
# ---------------------------------------------------------------------------

def admissible_chains(db: DualBases, min_grade, max_grade):
    """All chains (j_0,n_0) < ... < (j_p,n_p) with consecutive grade gaps
    >= 1 (kind F) or >= 1/2 (kind f), entries graded within
    [min_grade, max_grade].  Includes the empty chain.
    """
    gap = Fraction(1) if db.kind == "F" else HALF
    lo, hi = Fraction(min_grade), Fraction(max_grade)
    items = [(db.grade_of(j, n), (j, n)) for (j, n) in db.members()
             if lo <= db.grade_of(j, n) <= hi]
    items.sort()
    chains = [[]]

    def extend(prefix, min_next):
        for grade, jn in items:
            if grade >= min_next:
                chain = prefix + [jn]
                chains.append(chain)
                extend(chain, grade + gap)

    extend([], lo)
    return chains


# ---------------------------------------------------------------------------
# tensor identities (exact checks on the dual bases)
# ---------------------------------------------------------------------------

def _tensor_sum(g, pairs):
    """Sum of outer products sum c * x (x) y as a dim x dim Scalar matrix."""
    out = [[Scalar.zero()] * g.dim for _ in range(g.dim)]
    for sign, x, y in pairs:
        for a in range(g.dim):
            if not x[a]:
                continue
            for b in range(g.dim):
                if y[b]:
                    v = x[a] * y[b]
                    if sign < 0:
                        v = -v
                    out[a][b] = out[a][b] + v
    return out


def check_tensor_identity_F(db: DualBases):
    """For every t: sum_{J^F_{-t}} s(j) q^j_n (x) q_j^{n+1}
    = - sum_{J^F_{t-1}} q_i^{m+1} (x) q^i_m.  Returns list of failing t."""
    g = db.g
    grades = sorted(db.index_sets)
    ts = sorted({-gr for gr in grades} | {gr + 1 for gr in grades})
    bad = []
    for t in ts:
        left_pairs = []
        for (j, n) in db.index_sets.get(-t, []):
            sj = -1 if g.parity_of_vec(db.lower[j]) else 1
            left_pairs.append((sj, db.chain_upper_or_zero(j, n),
                               db.chain_lower_or_zero(j, n + 1)))
        right_pairs = []
        for (i, m) in db.index_sets.get(t - 1, []):
            right_pairs.append((-1, db.chain_lower_or_zero(i, m + 1),
                                db.chain_upper_or_zero(i, m)))
        if _tensor_sum(g, left_pairs) != _tensor_sum(g, right_pairs):
            bad.append(t)
    return bad


def check_tensor_identity_f(db: DualBases):
    """For every t: sum_{J^f_{-t}} r^i_m (x) r_i^{m+1}
    = - sum_{J^f_{t-1/2}} r_j^{n+1} (x) r^j_n."""
    g = db.g
    grades = sorted(db.index_sets)
    ts = sorted({-gr for gr in grades} | {gr + HALF for gr in grades})
    bad = []
    for t in ts:
        left_pairs = [(1, db.chain_upper_or_zero(i, m), db.chain_lower_or_zero(i, m + 1))
                      for (i, m) in db.index_sets.get(-t, [])]
        right_pairs = [(-1, db.chain_lower_or_zero(j, n + 1), db.chain_upper_or_zero(j, n))
                       for (j, n) in db.index_sets.get(t - HALF, [])]
        if _tensor_sum(g, left_pairs) != _tensor_sum(g, right_pairs):
            bad.append(t)
    return bad


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------

def algebra_to_obj(g: LieSuperalgebra):
    def coeff_str(s: Scalar):
        if not s:
            return "0"
        gr = s.constant_part()
        if not s.is_constant():
            raise AlgebraError("algebra files carry constant coefficients only")
        if gr.im and gr.re:
            raise AlgebraError("mixed Gaussian coefficient in file")
        if gr.im:
            return ("%si" % gr.im) if gr.im not in (1, -1) else ("i" if gr.im == 1 else "-i")
        return str(gr.re)

    def vec_obj(vec):
        return [coeff_str(s) for s in vec]

    obj = {
        "name": g.name,
        "basis": [{"label": n, "parity": "odd" if p else "even"}
                  for n, p in zip(g.names, g.parities)],
        "brackets": [],
        "form": [[coeff_str(s) for s in row] for row in g.form],
    }
    for (i, j) in sorted(g.struct):
        if i <= j:
            coeffs = [[l, coeff_str(s)] for l, s in enumerate(g.struct[(i, j)]) if s]
            obj["brackets"].append({"i": i, "j": j, "coeffs": coeffs})
        elif (j, i) not in g.struct:
            coeffs = [[l, coeff_str(s)] for l, s in enumerate(g.struct[(i, j)]) if s]
            obj["brackets"].append({"i": i, "j": j, "coeffs": coeffs})
    if g.sl2 is not None:
        obj["sl2"] = {"E": vec_obj(g.sl2.E), "H": vec_obj(g.sl2.H), "F": vec_obj(g.sl2.F)}
    if g.osp is not None:
        obj["osp"] = {"E": vec_obj(g.osp.E), "e": vec_obj(g.osp.e),
                      "H": vec_obj(g.osp.H), "f": vec_obj(g.osp.f),
                      "F": vec_obj(g.osp.F)}
    return obj


def algebra_from_obj(obj) -> LieSuperalgebra:
    try:
        names = [b["label"] for b in obj["basis"]]
        parities = [1 if b["parity"] == "odd" else 0 for b in obj["basis"]]
        dim = len(names)
        struct = {}
        for ent in obj["brackets"]:
            vec = [Scalar.zero()] * dim
            for l, cs in ent["coeffs"]:
                vec[l] = Scalar.term(0, 0, parse_coeff(cs))
            struct[(ent["i"], ent["j"])] = tuple(vec)
        form = [[Scalar.term(0, 0, parse_coeff(cs)) for cs in row]
                for row in obj["form"]]

        def vec_of(field):
            return tuple(Scalar.term(0, 0, parse_coeff(cs)) for cs in field)

        sl2 = osp = None
        if "osp" in obj and obj["osp"]:
            o = obj["osp"]
            osp = OSPTriple(vec_of(o["E"]), vec_of(o["e"]), vec_of(o["H"]),
                            vec_of(o["f"]), vec_of(o["F"]))
            sl2 = osp.sl2()
        if "sl2" in obj and obj["sl2"]:
            s = obj["sl2"]
            sl2 = SL2Triple(vec_of(s["E"]), vec_of(s["H"]), vec_of(s["F"]))
        return LieSuperalgebra(obj.get("name", "?"), names, parities, struct,
                               form, sl2=sl2, osp=osp)
    except (KeyError, IndexError, TypeError) as e:
        raise AlgebraError("malformed algebra file: missing/bad field %s" % e)


def save_algebra(g: LieSuperalgebra, path):
    with open(path, "w") as fh:
        json.dump(algebra_to_obj(g), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_algebra(path) -> LieSuperalgebra:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as e:
            raise AlgebraError("parse error in %s at line %d: %s"
                               % (path, e.lineno, e.msg))
    return algebra_from_obj(obj)
