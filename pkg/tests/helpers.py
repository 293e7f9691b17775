"""Shared, lazily cached setups so expensive solves run once per session."""

from fractions import Fraction

from walgebras.catalog import get_algebra
from walgebras.scalars import Scalar
from walgebras.superpoly import Alphabet, FLAVOR_D, FLAVOR_DEL
from walgebras.pva import affine_table
from walgebras.spva import susy_affine_table
from walgebras.wclassical import ReductionContext, solve_all_generators
from walgebras.swclassical import SUSYReductionContext, solve_all_susy_generators
from walgebras.brst import BRSTComplex, build_d, cohomology_generators

_algebras = {}
_classical = {}
_susy = {}
_brst = {}


def algebra(name):
    if name not in _algebras:
        _algebras[name] = get_algebra(name)
    return _algebras[name]


def affine_alphabet(g):
    return Alphabet(FLAVOR_DEL, g.names, g.parities,
                    [1 - gr for gr in g.gradings])


def susy_alphabet(g):
    return Alphabet(FLAVOR_D, [n + "~" for n in g.names],
                    [(p + 1) % 2 for p in g.parities],
                    [Fraction(1, 2) - gr for gr in g.gradings])


def affine(name):
    g = algebra(name)
    alph = affine_alphabet(g)
    return g, alph, affine_table(g, alph, Scalar.k())


def susy_affine(name):
    g = algebra(name)
    alph = susy_alphabet(g)
    return g, alph, susy_affine_table(g, alph, Scalar.k())


def classical(name):
    if name not in _classical:
        ctx = ReductionContext(algebra(name))
        gens = {w.index: w for w in solve_all_generators(ctx)}
        _classical[name] = (ctx, gens)
    return _classical[name]


def susy(name):
    if name not in _susy:
        ctx = SUSYReductionContext(algebra(name))
        gens = {w.index: w for w in solve_all_susy_generators(ctx)}
        _susy[name] = (ctx, gens)
    return _susy[name]


def brst(name, c=None):
    key = (name, "i" if c is None else str(c))
    if key not in _brst:
        ctx = SUSYReductionContext(algebra(name))
        cplx = BRSTComplex(ctx)
        diff = build_d(cplx, Scalar.imag() if c is None else c)
        gens = {e.index: e for e in cohomology_generators(cplx, diff)}
        _brst[key] = (cplx, diff, gens)
    return _brst[key]
