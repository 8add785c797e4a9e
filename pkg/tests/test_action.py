import itertools

import numpy as np
import pytest

from hopfreg import library
from hopfreg.action import (
    Action,
    cyclic_stable_ideal,
    enveloping_hopf_algebroid,
    hom_from_invariant,
    hom_space,
    invariants,
    is_linear,
    left_regular_module,
    module_invariants,
    regular_module,
    smash_product,
    stable_ideals_enumerate,
    submodule,
    zero_module,
)
from hopfreg.algebra import center, jacobson_radical
from hopfreg.errors import ResourceError, ValidationError
from hopfreg.exactla import Field, Subspace

GF2, GF3 = Field(2), Field(3)
PRIME_ACTIONS = library.prime_field_actions()


def all_subspaces(F, n):
    """Every subspace of GF(p)^n, grown one vector at a time from {0}."""
    vecs = list(F.all_vectors(n))
    seen = {Subspace.zero(F, n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for U in frontier:
            for v in vecs:
                if not U.contains(v):
                    W = U + Subspace(F, n, [v])
                    if W not in seen:
                        seen.add(W)
                        nxt.append(W)
        frontier = nxt
    return seen


def naive_smash_mult(act):
    """(a#h)(b#g) = Σ a(h1·b) # h2 g by explicit loops."""
    F = act.field
    A, H = act.algebra, act.hopf
    nA, nH = A.dim, H.dim
    N = nA * nH
    out = np.zeros((N, N, N), dtype=object)
    for a, h, b, g in itertools.product(range(nA), range(nH), range(nA), range(nH)):
        for p, q in itertools.product(range(nH), range(nH)):
            c = H.delta[h, p, q]
            if c == 0:
                continue
            hb = act.act[p, b]
            ahb = sum(hb[u] * A.mult[a, u] for u in range(nA))
            qg = H.algebra.mult[q, g]
            for x in range(nA):
                for y in range(nH):
                    out[a * nH + h, b * nH + g, x * nH + y] += c * ahb[x] * qg[y]
    return F.array(F.reduce(out.astype(np.int64)) if F.p else out)


@pytest.mark.parametrize("name", sorted(library.ACTION_EXAMPLES))
def test_examples_satisfy_action_axioms(name):
    act = library.get_action(name)
    act.check_axioms()
    B = act.smash().B
    B.check_axioms()


@pytest.mark.parametrize("name", ["c2_swap_gf3", "h4_on_kxk_gf3", "c3_shift_gf2", "hit_gf3_c2", "m2_conj_gf3"])
def test_smash_matches_naive_formula(name):
    act = library.get_action(name)
    assert np.array_equal(smash_product(act).B.mult, naive_smash_mult(act))


def test_smash_swap_examples():
    act = library.c2_swap("GF(3)")
    ext = smash_product(act)
    B = ext.B
    nH = 2

    def el(a, h):
        return B.basis_element(a * nH + h)

    assert B.one() * el(0, 1) == el(0, 1)
    # (1#g)((1,0)#1) = (0,1)#g
    one_g = B.element(np.kron(act.algebra.unit, [0, 1]))
    assert one_g * el(0, 0) == el(1, 1)
    # A#H ≅ M2(GF(3)): semisimple with 1-dimensional center
    assert B.dim == 4
    assert jacobson_radical(B).is_zero()
    assert center(B).dim == 1


def test_bad_action_rejected():
    H = library.group_algebra("C2", "GF(3)")
    A = library.product_of_fields("GF(3)")
    act = np.zeros((2, 2, 2), dtype=np.int64)
    act[0] = np.eye(2)
    act[1] = [[1, 1], [0, 1]]  # g·e1 = e1 + e2 is not multiplicative
    with pytest.raises(ValidationError):
        Action(H, A, act)


def test_algebroid_examples():
    act = library.c2_swap("GF(3)")
    ext = enveloping_hopf_algebroid(act)
    A = act.algebra
    nA, nH = A.dim, 2
    assert ext.B.dim == nA * nA * nH
    for x in A.basis():
        assert np.array_equal(ext.act(ext.B.unit, x.coords), x.coords)

    def el(i, j, h):
        return ext.B.basis_element((i * nA + j) * nH + h)

    one_one_g = ext.B.element(np.kron(np.kron(A.unit, A.unit), [0, 1]))
    # [(1⊗1)⋈g][(e_a⊗e_b)⋈1] = (g·e_a)⊗(g·e_b)⋈g, and swap sends e1 <-> e2
    for a, b in itertools.product(range(2), range(2)):
        assert one_one_g * el(a, b, 0) == el(1 - a, 1 - b, 1)


@pytest.mark.parametrize("name", ["c2_swap_gf3", "c3_shift_gf2", "s3_perm_gf3", "klein_regular_gf3", "m2_conj_gf3"])
def test_algebroid_leg_convention_irrelevant_for_groups(name):
    act = library.get_action(name)
    a = enveloping_hopf_algebroid(act).B.mult
    b = enveloping_hopf_algebroid(act, swap_legs=True).B.mult
    assert np.array_equal(a, b)


def test_invariants_examples():
    triv = library.get_action("c2_trivial_gf3")
    assert invariants(triv.smash()).is_full()
    swap = library.c2_swap("GF(3)")
    diag = Subspace(GF3, 2, [[1, 1]])
    assert invariants(swap.smash()) == diag
    assert invariants(swap.algebroid()) == diag


@pytest.mark.parametrize("name", PRIME_ACTIONS + ["c2_swap_q", "m2_conj_q"])
def test_invariants_are_h_fixed_and_algebroid_adds_centrality(name):
    act = library.get_action(name)
    F = act.field
    A, H = act.algebra, act.hopf
    fixed = Subspace.full(F, A.dim)
    for h in range(H.dim):
        M = F.reduce(act.ops[h] - F.eye(A.dim) * H.counit[h])
        fixed = fixed & Subspace(F, A.dim, _kernel_rows(F, M))
    assert invariants(act.smash()) == fixed
    assert invariants(act.algebroid()) == fixed & center(A)


def _kernel_rows(F, M):
    from hopfreg.exactla import nullspace

    return nullspace(F, M, ncols=M.shape[1]).basis


@pytest.mark.parametrize("name", PRIME_ACTIONS)
def test_hom_dimension_equals_invariants(name):
    ext = library.get_action(name).smash()
    M = regular_module(ext)
    assert len(hom_space(M, M)) == invariants(ext).dim
    assert module_invariants(ext, M) == invariants(ext)


@pytest.mark.parametrize("name", ["c2_swap_gf3", "h4_on_kxk_gf3", "c2_trivial_gf2", "gf4_frobenius"])
def test_module_invariants_of_b_match_homs(name):
    ext = library.get_action(name).smash()
    A = regular_module(ext)
    Bm = left_regular_module(ext)
    inv = module_invariants(ext, Bm)
    homs = hom_space(A, Bm)
    assert inv.dim == len(homs)
    for m in inv.basis:
        f = hom_from_invariant(ext, Bm, m)
        assert is_linear(A, Bm, f)
        assert np.array_equal(ext.field.matmul(f, ext.A.unit.reshape(-1, 1)).reshape(-1), m)
    assert module_invariants(ext, zero_module(ext)).dim == 0


def test_cyclic_stable_ideal_examples():
    swap = library.c2_swap("GF(3)").smash()
    A = swap.A
    assert cyclic_stable_ideal(swap, A.unit).is_full()
    assert cyclic_stable_ideal(swap, [1, 0]).is_full()
    triv = library.get_action("k_on_gf2kxk").smash()
    assert cyclic_stable_ideal(triv, [1, 0]) == Subspace(GF2, 2, [[1, 0]])


def test_stable_ideals_examples():
    triv = library.get_action("k_on_gf2kxk").smash()
    got = stable_ideals_enumerate(triv)
    assert set(got) == {Subspace.zero(GF2, 2), Subspace(GF2, 2, [[1, 0]]), Subspace(GF2, 2, [[0, 1]]),
                        Subspace.full(GF2, 2)}
    swap = library.c2_swap("GF(2)").smash()
    assert stable_ideals_enumerate(swap) == [Subspace.zero(GF2, 2), Subspace.full(GF2, 2)]


@pytest.mark.parametrize("name", [n for n in PRIME_ACTIONS
                                  if library.get_action(n).field.p ** library.get_action(n).algebra.dim <= 81])
@pytest.mark.parametrize("kind", ["smash", "algebroid"])
def test_stable_ideals_match_brute_force(name, kind):
    act = library.get_action(name)
    ext = act.smash() if kind == "smash" else act.algebroid()
    F = ext.field
    M = regular_module(ext)
    brute = sorted((U for U in all_subspaces(F, ext.A.dim) if _stable(M, U)), key=Subspace.sort_key)
    assert stable_ideals_enumerate(ext) == brute


def _stable(M, U):
    from hopfreg.action import is_stable

    return is_stable(M, U)


def test_stable_ideals_cap():
    with pytest.raises(ResourceError) as err:
        stable_ideals_enumerate(library.c2_swap("GF(3)").smash(), cap=8)
    assert err.value.required == 9


@pytest.mark.parametrize("name", ["c2_swap_gf3", "m2_conj_gf3", "h4_on_dual_numbers_gf3"])
def test_submodule_of_stable_ideal_is_module(name):
    ext = library.get_action(name).smash()
    M = regular_module(ext)
    for U in stable_ideals_enumerate(ext):
        submodule(M, U).check()


@pytest.mark.parametrize("name", ["c2_swap_gf3", "h4_on_kxk_gf3", "c3_shift_gf2", "hit_gf3_c2"])
def test_tensor_square_dimension(name):
    # A#H is free over A on H, so B ⊗_A B ≅ B ⊗ H as vector spaces
    act = library.get_action(name)
    ext = act.smash()
    assert ext.tensor_square.dim == ext.B.dim * act.hopf.dim


def test_tensor_square_balanced_relation():
    act = library.c2_swap("GF(3)")
    ext = act.smash()
    T = ext.tensor_square
    F = ext.field
    B = ext.B
    for b, c in itertools.product(range(B.dim), range(B.dim)):
        for a in range(ext.A.dim):
            ea = ext.embed[a]
            left = np.kron(B.mul(F.unit_vector(B.dim, b), ea), F.unit_vector(B.dim, c))
            right = np.kron(F.unit_vector(B.dim, b), B.mul(ea, F.unit_vector(B.dim, c)))
            assert np.array_equal(T.project(F.reduce(left)), T.project(F.reduce(right)))
