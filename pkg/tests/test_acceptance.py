"""One test per acceptance criterion; conftest prints a PASS/FAIL line for each."""

import io
import time

import numpy as np

from hopfreg import library
from hopfreg.action import hom_space, quotient_module, regular_module, stable_ideals_enumerate, submodule
from hopfreg.algebra import is_regular, jacobson_radical, regularity_witness
from hopfreg.cli import bundled_documents, default_examples_dir, main
from hopfreg.document import dumps, loads
from hopfreg.exactla import Field, Subspace, rank
from hopfreg.hopf import (
    augmentation_ideal,
    check_hopf_axioms,
    counit_kernel,
    counit_kernel_decomposition,
    find_integrals,
    generating_set,
)
from hopfreg.regularity import check_biregularity_theorem, check_fixring_proposition, check_regularity_proposition
from hopfreg.separability import (
    acts_unitarily,
    casimir_from_integral,
    duality_check,
    find_trace_one_central,
    is_casimir,
    is_separable_extension,
    split_operator,
)

CAP = 2 ** 16


def _all_algebras():
    algs = {f"algebra:{n}": library.get_algebra(n) for n in library.ALGEBRA_EXAMPLES}
    for n in library.HOPF_EXAMPLES:
        algs[f"hopf:{n}"] = library.get_hopf(n).algebra
    for n in library.ACTION_EXAMPLES:
        algs[f"action:{n}"] = library.get_action(n).algebra
    return algs


def test_criterion_1_constructor_soundness():
    start = time.perf_counter()
    for name in library.ALGEBRA_EXAMPLES:
        library.get_algebra(name).check_axioms()
    for name in library.HOPF_EXAMPLES:
        H = library.get_hopf(name)
        H.algebra.check_axioms()
        assert check_hopf_axioms(H).failures == [], name
    for name in library.ACTION_EXAMPLES:
        act = library.get_action(name)
        act.check_axioms()
        act.smash().check_axioms()
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"took {elapsed:.2f}s"


def test_criterion_2_maschke():
    for group in library.GROUPS:
        for field in ("GF(2)", "GF(3)", "QQ"):
            A = library.group_algebra(group, field).algebra
            order = A.dim
            p = Field.parse(field).p
            assert is_regular(A) == (p is None or order % p != 0), (group, field)
    A = library.group_algebra("C2", "GF(2)").algebra
    assert jacobson_radical(A) == Subspace(Field(2), 2, [[1, 1]])


def test_criterion_3_theorem_agreement():
    start = time.perf_counter()
    for name in library.prime_field_actions():
        act = library.get_action(name)
        for check in (check_biregularity_theorem, check_regularity_proposition, check_fixring_proposition):
            rep = check(act, cap=CAP)
            assert rep.consistent, (name, check.__name__, rep.verdicts)
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0, f"took {elapsed:.2f}s"


def test_criterion_4_casimir_certification():
    certified = 0
    for name in library.prime_field_actions():
        act = library.get_action(name)
        pair = None
        for t in find_integrals(act.hopf, "right").basis:
            z = find_trace_one_central(act, t)
            if z is not None:
                pair = (t, z)
                break
        if pair is None:
            continue
        ext = act.smash()
        F = ext.field
        c = casimir_from_integral(act, *pair, ext)
        assert is_casimir(c), name
        A = regular_module(ext)
        subs, quots = [], []
        for I in stable_ideals_enumerate(ext, CAP):
            if 0 < I.dim < A.dim:
                subs.append(submodule(A, I))
                quots.append(quotient_module(A, I))
        for M in [A] + subs + quots:
            assert acts_unitarily(c, M), name
        for M, N in [(M, M) for M in [A] + subs + quots] + [(S, A) for S in subs] + [(A, Q) for Q in quots]:
            P, _ = split_operator(c, M, N)
            assert np.array_equal(F.matmul(P, P), P), name
            assert rank(F, P) == len(hom_space(M, N, over="B")), name
        certified += 1
    assert certified >= 15


def test_criterion_5_separability_transfer():
    witnessed = 0
    for name in library.ACTION_EXAMPLES:
        act = library.get_action(name)
        ext = act.smash()
        c = is_separable_extension(ext)
        if c is not None and jacobson_radical(act.algebra).is_zero():
            assert jacobson_radical(ext.B).is_zero(), name
            witnessed += 1
    assert witnessed > 0
    assert is_separable_extension(library.get_action("c2_trivial_gf2").smash()) is None


def test_criterion_6_duality():
    for name in ("gf3_c2", "gf3_c3", "gf3_h4"):
        H = library.get_hopf(name)
        d = duality_check(H)
        assert d["dim"] == H.dim ** 2, name
        assert d["radical_dim"] == 0, name
        assert d["center_dim"] == 1, name


def test_criterion_7_counit_kernel():
    rng = np.random.default_rng(2024)
    for name in library.HOPF_EXAMPLES:
        H = library.get_hopf(name)
        F = H.field
        A = H.algebra
        gens = generating_set(H)
        K = counit_kernel(H)
        assert augmentation_ideal(H, gens) == K, name
        for _ in range(100):
            coeffs = rng.integers(-5, 6, size=K.dim) if F.p is None else rng.integers(0, F.p, size=K.dim)
            h = F.matmul(F.array(coeffs.reshape(1, -1)), K.basis).reshape(-1) if K.dim else F.zeros(H.dim)
            total = A.zero()
            for c, i in counit_kernel_decomposition(H, gens, h):
                b = A.element(gens[i])
                total = total + c * (b - H.eps(b.coords) * A.one())
            assert np.array_equal(total.coords, h), name


def test_criterion_8_oracle_equivalence():
    checked = 0
    for name, A in _all_algebras().items():
        F = A.field
        if F.p is None or F.p ** A.dim > 10 ** 6:
            continue
        witnesses = [regularity_witness(A, v) for v in F.all_vectors(A.dim)]
        elementwise = all(w is not None for w in witnesses)
        assert is_regular(A) == elementwise, name
        checked += 1
    assert checked > 0


def test_criterion_9_round_trip_and_determinism():
    data = default_examples_dir()
    for name in bundled_documents():
        with open(f"{data}/{name}.json", encoding="utf-8") as fh:
            text = fh.read()
        assert dumps(loads(text)) == text, name
    outs = []
    for _ in range(2):
        buf = io.StringIO()
        assert main(["check", "--no-timings"], buf) == 0
        outs.append(buf.getvalue().encode())
    assert outs[0] == outs[1]
