"""Bundled examples: group algebras, Sweedler's H4, duals, small module algebras and actions."""

from __future__ import annotations

import itertools

import numpy as np

from .action import Action
from .algebra import Algebra
from .errors import UsageError
from .exactla import Field
from .hopf import HopfAlgebra, dual_hopf, hit_action

# groups: (elements, product, labels, standard generators)


def _cyclic(n):
    elems = list(range(n))
    labels = ["1", "g"] + [f"g^{i}" for i in range(2, n)]
    return elems, lambda a, b: (a + b) % n, labels, [1]


def _klein():
    elems = [(0, 0), (1, 0), (0, 1), (1, 1)]
    return elems, lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2), ["1", "a", "b", "ab"], [(1, 0), (0, 1)]


def _s3():
    # permutations of {0,1,2} as tuples; (p*q)(i) = p(q(i))
    elems = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]
    labels = ["()", "(12)", "(23)", "(13)", "(123)", "(132)"]
    return elems, lambda p, q: tuple(p[q[i]] for i in range(3)), labels, [(1, 0, 2), (1, 2, 0)]


GROUPS = {"C2": lambda: _cyclic(2), "C3": lambda: _cyclic(3), "C2xC2": _klein, "S3": _s3}


def _field(field):
    return field if isinstance(field, Field) else Field.parse(field)


def _field_tag(F):
    return "q" if F.p is None else f"gf{F.p}"


def group_algebra(group, field) -> HopfAlgebra:
    """``k[G]`` with ``Δg = g⊗g``, ``ε(g) = 1``, ``S(g) = g^{-1}``."""
    F = _field(field)
    if group not in GROUPS:
        raise UsageError(f"unknown group {group!r}; known: {sorted(GROUPS)}")
    elems, prod, labels, gens = GROUPS[group]()
    n = len(elems)
    index = {g: i for i, g in enumerate(elems)}
    mult = F.zeros((n, n, n))
    antipode = F.zeros((n, n))
    comult = F.zeros((n, n * n))
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            k = index[prod(a, b)]
            mult[i, j, k] = F(1)
            if k == 0:
                antipode[i, j] = F(1)
        comult[i, i * n + i] = F(1)
    counit = F.array([1] * n)
    name = f"{_field_tag(F)}[{group}]"
    alg = Algebra(F, mult, F.unit_vector(n, 0), labels=labels, name=name)
    gen_vecs = [F.unit_vector(n, index[g]) for g in gens]
    return HopfAlgebra(alg, comult, counit, antipode, name=name, generators=gen_vecs)


def sweedler_h4(field="GF(3)") -> HopfAlgebra:
    """Sweedler's 4-dimensional Hopf algebra on the basis ``1, g, x, gx``.

    ``g² = 1``, ``x² = 0``, ``xg = -gx``, ``Δx = x⊗1 + g⊗x``, ``S(x) = -gx``.
    """
    F = _field(field)
    if F.p == 2:
        raise UsageError("Sweedler's algebra needs characteristic different from 2")
    basis = [(0, 0), (1, 0), (0, 1), (1, 1)]  # g^a x^b
    index = {b: i for i, b in enumerate(basis)}
    mult = F.zeros((4, 4, 4))
    for i, (a, b) in enumerate(basis):
        for j, (c, d) in enumerate(basis):
            if b + d >= 2:
                continue
            sign = -1 if b * c % 2 else 1  # x g^c = (-1)^c g^c x
            mult[i, j, index[((a + c) % 2, b + d)]] = F(sign)
    alg = Algebra(F, mult, F.unit_vector(4, 0), labels=["1", "g", "x", "gx"], name=f"{_field_tag(F)}H4")

    def t(*terms):
        v = F.zeros(16)
        for c, p, q in terms:
            v[p * 4 + q] = F.reduce(v[p * 4 + q] + F(c))
        return v

    comult = np.stack([
        t((1, 0, 0)),
        t((1, 1, 1)),
        t((1, 2, 0), (1, 1, 2)),
        t((1, 3, 1), (1, 0, 3)),
    ])
    counit = F.array([1, 1, 0, 0])
    antipode = F.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    gens = [F.unit_vector(4, 1), F.unit_vector(4, 2)]
    return HopfAlgebra(alg, F.reduce(comult), counit, antipode, name=alg.name, generators=gens)


def trivial_hopf(field) -> HopfAlgebra:
    """The one-dimensional Hopf algebra ``k``."""
    F = _field(field)
    alg = Algebra(F, F.array([[[1]]]), F.array([1]), labels=["1"], name=f"{_field_tag(F)}")
    return HopfAlgebra(alg, F.array([[1]]), F.array([1]), F.array([[1]]), name=alg.name, generators=[])


def dual_of(H: HopfAlgebra) -> HopfAlgebra:
    D = dual_hopf(H)
    gens = []
    n = D.dim
    for i in range(n):
        gens.append(D.field.unit_vector(n, i))
    D.generators = [g for g in gens if not np.array_equal(g, D.algebra.unit)] or None
    return D


# algebras


def product_of_fields(field, n=2) -> Algebra:
    """``k^n`` on its primitive idempotents."""
    F = _field(field)
    mult = F.zeros((n, n, n))
    for i in range(n):
        mult[i, i, i] = F(1)
    return Algebra(F, mult, F.array([1] * n), labels=[f"e{i + 1}" for i in range(n)], name=f"{_field_tag(F)}^{n}")


def matrix_algebra(field, n=2) -> Algebra:
    """``M_n(k)`` on matrix units ``E_ij`` (index ``i*n + j``)."""
    F = _field(field)
    N = n * n
    mult = F.zeros((N, N, N))
    for i, j, l in itertools.product(range(n), repeat=3):
        mult[i * n + j, j * n + l, i * n + l] = F(1)
    unit = F.zeros(N)
    for i in range(n):
        unit[i * n + i] = F(1)
    labels = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return Algebra(F, mult, unit, labels=labels, name=f"M{n}({_field_tag(F)})")


def quadratic_algebra(field, c) -> Algebra:
    """``k[u]/(u² - c)`` on ``1, u``."""
    F = _field(field)
    mult = F.zeros((2, 2, 2))
    mult[0, 0, 0] = mult[0, 1, 1] = mult[1, 0, 1] = F(1)
    mult[1, 1, 0] = F(c)
    return Algebra(F, mult, F.array([1, 0]), labels=["1", "u"], name=f"{_field_tag(F)}[u]/(u^2-{c})")


def gf4() -> Algebra:
    """GF(4) = GF(2)[w]/(w² + w + 1) as a GF(2)-algebra on ``1, w``."""
    F = Field(2)
    mult = F.zeros((2, 2, 2))
    mult[0, 0, 0] = mult[0, 1, 1] = mult[1, 0, 1] = 1
    mult[1, 1] = [1, 1]
    return Algebra(F, mult, F.array([1, 0]), labels=["1", "w"], name="GF(4)")


def field_algebra(field) -> Algebra:
    F = _field(field)
    return Algebra(F, F.array([[[1]]]), F.array([1]), labels=["1"], name=_field_tag(F))


# actions


def group_action(H: HopfAlgebra, A: Algebra, automorphisms, name=None) -> Action:
    """``k[G]`` acting through algebra automorphisms.

    ``automorphisms[i]`` is the row-convention matrix of the ``i``-th group
    basis element (``automorphisms[i][a]`` is the image of ``e_a``).
    """
    F = A.field
    return Action(H, A, F.array(np.stack([F.array(m) for m in automorphisms])), name=name)


def trivial_action(H: HopfAlgebra, A: Algebra, name=None) -> Action:
    """``h·a = ε(h) a``."""
    F = A.field
    act = np.stack([F.reduce(F.eye(A.dim) * H.counit[h]) for h in range(H.dim)])
    return Action(H, A, act, name=name)


def _perm_matrix(F, perm):
    n = len(perm)
    m = F.zeros((n, n))
    for i, j in enumerate(perm):
        m[i, j] = F(1)
    return m


def permutation_action(group, field, perms_of_group, n, name=None) -> Action:
    """``k[G]`` permuting the idempotents of ``k^n``; ``perms_of_group(g)`` gives the permutation."""
    H = group_algebra(group, field)
    A = product_of_fields(field, n)
    elems = GROUPS[group]()[0]
    return group_action(H, A, [_perm_matrix(A.field, perms_of_group(g)) for g in elems], name=name)


def c2_swap(field) -> Action:
    F = _field(field)
    return permutation_action("C2", F, lambda g: (1, 0) if g else (0, 1), 2, name=f"c2_swap_{_field_tag(F)}")


def c3_shift(field) -> Action:
    F = _field(field)
    return permutation_action("C3", F, lambda g: tuple((i + g) % 3 for i in range(3)), 3,
                              name=f"c3_shift_{_field_tag(F)}")


def s3_permutation(field) -> Action:
    F = _field(field)
    return permutation_action("S3", F, lambda p: p, 3, name=f"s3_perm_{_field_tag(F)}")


def klein_regular(field) -> Action:
    F = _field(field)
    elems, prod, _, _ = _klein()
    index = {g: i for i, g in enumerate(elems)}
    return permutation_action("C2xC2", F, lambda a: tuple(index[prod(a, x)] for x in elems), 4,
                              name=f"klein_regular_{_field_tag(F)}")


def s3_sign(field) -> Action:
    """``S3`` acting on ``k×k``: odd permutations swap the factors."""
    F = _field(field)

    def perm(p):
        inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
        return (1, 0) if inversions % 2 else (0, 1)

    return permutation_action("S3", F, perm, 2, name=f"s3_sign_{_field_tag(F)}")


def m2_conjugation(field) -> Action:
    """``C2`` acting on ``M2(k)`` by conjugation with ``diag(1, -1)``."""
    F = _field(field)
    H = group_algebra("C2", F)
    A = matrix_algebra(F, 2)
    g = F.zeros((4, 4))
    for i, j in itertools.product(range(2), repeat=2):
        g[i * 2 + j, i * 2 + j] = F(-1 if (i + j) % 2 else 1)
    return group_action(H, A, [F.eye(4), g], name=f"m2_conj_{_field_tag(F)}")


def gf4_frobenius() -> Action:
    """``GF(2)[C2]`` acting on GF(4) by the Frobenius ``w -> w² = w + 1``."""
    F = Field(2)
    H = group_algebra("C2", F)
    A = gf4()
    return group_action(H, A, [F.eye(2), F.array([[1, 0], [1, 1]])], name="gf4_frobenius")


def h4_on_quadratic(field="GF(3)", c=1) -> Action:
    """H4 on ``k[u]/(u² - c)``: ``g·u = -u``, ``x·1 = 0``, ``x·u = 1``."""
    F = _field(field)
    H = sweedler_h4(F)
    A = quadratic_algebra(F, c)
    g = F.array([[1, 0], [0, -1]])
    x = F.array([[0, 0], [1, 0]])
    gx = F.matmul(x, g)  # row convention: (gx)·a = g·(x·a)
    act = np.stack([F.eye(2), g, x, gx])
    return Action(H, A, act, name=f"h4_on_u2_{c}_{_field_tag(F)}")


def hit(H: HopfAlgebra) -> Action:
    act = hit_action(H)
    act.name = f"hit_{H.name}"
    return act


# registry

HOPF_EXAMPLES = {}
ALGEBRA_EXAMPLES = {}
ACTION_EXAMPLES = {}

for _g in GROUPS:
    for _f in ("GF(2)", "GF(3)", "QQ"):
        _F = Field.parse(_f)
        HOPF_EXAMPLES[f"{_field_tag(_F)}_{_g.lower()}"] = (lambda g=_g, f=_F: group_algebra(g, f))
HOPF_EXAMPLES["gf3_h4"] = lambda: sweedler_h4("GF(3)")
HOPF_EXAMPLES["gf5_h4"] = lambda: sweedler_h4("GF(5)")
for _name in ("gf2_c2", "gf3_c2", "gf3_c3", "gf3_h4"):
    HOPF_EXAMPLES[f"{_name}_dual"] = (lambda n=_name: dual_of(HOPF_EXAMPLES[n]()))
for _f in ("GF(2)", "GF(3)", "QQ"):
    _F = Field.parse(_f)
    HOPF_EXAMPLES[f"{_field_tag(_F)}_trivial"] = (lambda f=_F: trivial_hopf(f))

for _f in ("GF(2)", "GF(3)", "QQ"):
    _F = Field.parse(_f)
    _t = _field_tag(_F)
    ALGEBRA_EXAMPLES[f"{_t}_field"] = (lambda f=_F: field_algebra(f))
    ALGEBRA_EXAMPLES[f"{_t}_kxk"] = (lambda f=_F: product_of_fields(f, 2))
    ALGEBRA_EXAMPLES[f"{_t}_m2"] = (lambda f=_F: matrix_algebra(f, 2))
    ALGEBRA_EXAMPLES[f"{_t}_dual_numbers"] = (lambda f=_F: quadratic_algebra(f, 0))
ALGEBRA_EXAMPLES["gf2_gf4"] = gf4
ALGEBRA_EXAMPLES["gf3_u2_minus_2"] = lambda: quadratic_algebra("GF(3)", 2)  # a field: 2 is a non-square mod 3


ACTION_EXAMPLES.update({
    "c2_swap_gf2": lambda: c2_swap("GF(2)"),
    "c2_swap_gf3": lambda: c2_swap("GF(3)"),
    "c2_swap_q": lambda: c2_swap("QQ"),
    "c2_trivial_gf2": lambda: trivial_action(group_algebra("C2", "GF(2)"), group_algebra("C2", "GF(2)").algebra,
                                             name="c2_trivial_gf2"),
    "c2_trivial_gf3": lambda: trivial_action(group_algebra("C2", "GF(3)"), group_algebra("C2", "GF(3)").algebra,
                                             name="c2_trivial_gf3"),
    "k_on_gf2c2": lambda: trivial_action(trivial_hopf("GF(2)"), group_algebra("C2", "GF(2)").algebra,
                                         name="k_on_gf2c2"),
    "k_on_gf2kxk": lambda: trivial_action(trivial_hopf("GF(2)"), product_of_fields("GF(2)"), name="k_on_gf2kxk"),
    "c2_trivial_gf2kxk": lambda: trivial_action(group_algebra("C2", "GF(2)"), product_of_fields("GF(2)"),
                                                name="c2_trivial_gf2kxk"),
    "c2_on_gf3_field": lambda: trivial_action(group_algebra("C2", "GF(3)"), field_algebra("GF(3)"),
                                              name="c2_on_gf3_field"),
    "c2_on_gf3_u2_minus_2": lambda: group_action(group_algebra("C2", "GF(3)"), quadratic_algebra("GF(3)", 2),
                                                 [np.eye(2, dtype=np.int64), [[1, 0], [0, 2]]],
                                                 name="c2_on_gf3_u2_minus_2"),
    "c2_sign_dual_numbers_gf3": lambda: group_action(group_algebra("C2", "GF(3)"), quadratic_algebra("GF(3)", 0),
                                                     [np.eye(2, dtype=np.int64), [[1, 0], [0, 2]]],
                                                     name="c2_sign_dual_numbers_gf3"),
    "k_on_gf3_dual_numbers": lambda: trivial_action(trivial_hopf("GF(3)"), quadratic_algebra("GF(3)", 0),
                                                    name="k_on_gf3_dual_numbers"),
    "c3_shift_gf2": lambda: c3_shift("GF(2)"),
    "c3_shift_gf3": lambda: c3_shift("GF(3)"),
    "s3_perm_gf2": lambda: s3_permutation("GF(2)"),
    "s3_perm_gf3": lambda: s3_permutation("GF(3)"),
    "s3_sign_gf3": lambda: s3_sign("GF(3)"),
    "klein_regular_gf3": lambda: klein_regular("GF(3)"),
    "m2_conj_gf3": lambda: m2_conjugation("GF(3)"),
    "gf4_frobenius": gf4_frobenius,
    "h4_on_kxk_gf3": lambda: h4_on_quadratic("GF(3)", 1),
    "h4_on_dual_numbers_gf3": lambda: h4_on_quadratic("GF(3)", 0),
    "h4_trivial_k_gf3": lambda: trivial_action(sweedler_h4("GF(3)"), field_algebra("GF(3)"),
                                               name="h4_trivial_k_gf3"),
    "hit_gf2_c2": lambda: hit(group_algebra("C2", "GF(2)")),
    "hit_gf3_c2": lambda: hit(group_algebra("C2", "GF(3)")),
    "hit_gf3_c3": lambda: hit(group_algebra("C3", "GF(3)")),
    "hit_gf3_h4": lambda: hit(sweedler_h4("GF(3)")),
    "m2_conj_q": lambda: m2_conjugation("QQ"),
})


def get_action(name) -> Action:
    if name not in ACTION_EXAMPLES:
        raise UsageError(f"unknown example {name!r}")
    act = ACTION_EXAMPLES[name]()
    act.name = name
    return act


def get_hopf(name) -> HopfAlgebra:
    if name not in HOPF_EXAMPLES:
        raise UsageError(f"unknown Hopf algebra {name!r}")
    return HOPF_EXAMPLES[name]()


def get_algebra(name) -> Algebra:
    if name not in ALGEBRA_EXAMPLES:
        raise UsageError(f"unknown algebra {name!r}")
    return ALGEBRA_EXAMPLES[name]()


def prime_field_actions():
    """Names of bundled actions over GF(p)."""
    return sorted(n for n in ACTION_EXAMPLES if not n.endswith("_q"))
