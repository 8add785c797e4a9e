"""Casimir elements in ``B ⊗_A B``, trace-one elements, separability and relative semisimplicity."""

from __future__ import annotations

import numpy as np

from .action import (
    Action,
    Module,
    RepresentedExtension,
    hom_space,
    is_linear,
    quotient_module,
    regular_module,
    stable_ideals_enumerate,
    submodule,
)
from .algebra import DEFAULT_ENUMERATION_CAP, Element, center, jacobson_radical
from .errors import PreconditionError, TheoremViolation
from .exactla import Subspace, rank, solve
from .hopf import HopfAlgebra, antipode_inverse, find_integrals
from .regularity import RegularityReport, _invariants, invariant_algebra, is_H_regular, summand_idempotent


class TensorOverA:
    """An element of ``B ⊗_A B`` in the quotient model of :class:`~hopfreg.action.TensorSquare`."""

    def __init__(self, ext: RepresentedExtension, coords):
        self.ext = ext
        self.space = ext.tensor_square
        self.coords = ext.field.array(coords)
        if self.coords.shape != (self.space.dim,):
            raise PreconditionError("coordinates do not match the quotient model")

    @classmethod
    def from_full(cls, ext, full):
        """The class of a vector of ``B ⊗_k B`` (index ``i * dim B + j``)."""
        return cls(ext, ext.tensor_square.project(ext.field.array(full)))

    @classmethod
    def simple(cls, ext, b, b2):
        return cls(ext, ext.tensor_square.simple(b, b2))

    def legs(self):
        """``[(coefficient, i, j)]`` with the element equal to ``Σ coefficient e_i ⊗ e_j``."""
        return self.space.legs(self.coords)

    def full(self):
        return self.space.lift(self.coords)

    def mu(self):
        """``Σ c_i c^i`` in ``B``."""
        return self.space.mu(self.coords)

    def left(self, b):
        F = self.ext.field
        return TensorOverA(self.ext, F.matmul(F.dot(F.array(b), self.space.left_mats), self.coords.reshape(-1, 1)).reshape(-1))

    def right(self, b):
        F = self.ext.field
        return TensorOverA(self.ext, F.matmul(F.dot(F.array(b), self.space.right_mats), self.coords.reshape(-1, 1)).reshape(-1))

    def __eq__(self, other):
        return isinstance(other, TensorOverA) and other.ext is self.ext and np.array_equal(self.coords, other.coords)

    __hash__ = object.__hash__

    def format(self):
        B = self.ext.B
        F = self.ext.field
        terms = []
        for c, i, j in self.legs():
            s = F.format(c)
            terms.append(f"{'' if s == '1' else s + '*'}({B.labels[i]} ⊗ {B.labels[j]})")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"TensorOverA({self.format()})"


def is_casimir(c: TensorOverA) -> bool:
    """``b c = c b`` for every basis element ``b`` of ``B``."""
    T = c.space
    F = c.ext.field
    v = c.coords.reshape(-1, 1)
    return bool(np.array_equal(F.matmul(T.left_mats, v), F.matmul(T.right_mats, v)))


def _gamma(c: TensorOverA, M: Module):
    """The matrix of ``Σ c_i c^i`` acting on ``M``."""
    F = c.ext.field
    n = c.ext.B.dim
    C = c.full().reshape(n, n)
    if M.dim == 0:
        return F.zeros((0, 0))
    left = F.dot(C, M.mats)  # Σ_j C[i, j] M_j, indexed by i
    return F.reduce(sum(F.matmul(M.mats[i], left[i]) for i in range(n)))


def acts_unitarily(c: TensorOverA, M: Module) -> bool:
    """``(Σ c_i c^i)·m = m`` for every basis vector ``m`` of ``M``."""
    return bool(np.array_equal(_gamma(c, M), M.field.eye(M.dim)))


def split_hom(c: TensorOverA, f, M: Module, N: Module):
    """``f̃ = [m -> Σ c_i·f(c^i·m)]`` for an ``A``-linear ``f: M → N`` (a ``dim N × dim M`` matrix)."""
    F = c.ext.field
    f = F.array(f)
    if not is_linear(M, N, f, over="A"):
        raise PreconditionError("f is not A-linear")
    if not is_casimir(c):
        raise PreconditionError("c is not a Casimir element")
    n = c.ext.B.dim
    C = c.full().reshape(n, n)
    inner = F.dot(C, M.mats)  # Σ_j C[i, j] M_j
    out = F.zeros((N.dim, M.dim))
    for i in range(n):
        out = F.reduce(out + F.matmul(N.mats[i], F.matmul(f, inner[i])))
    assert is_linear(M, N, out, over="B"), "split map is not B-linear"
    return out


def split_operator(c: TensorOverA, M: Module, N: Module):
    """``f -> f̃`` as a matrix on the coordinates of a basis of ``Hom_A(M, N)``.

    Returns ``(P, basis)``; column ``k`` of ``P`` holds the coordinates of the
    split map of ``basis[k]``.
    """
    F = c.ext.field
    basis = hom_space(M, N, over="A")
    P = F.zeros((len(basis), len(basis)))
    if not basis:
        return P, basis
    E = np.stack([f.reshape(-1) for f in basis], axis=1)
    for k, f in enumerate(basis):
        sol = solve(F, E, split_hom(c, f, M, N).reshape(-1))
        assert sol is not None, "split map is not A-linear"
        P[:, k] = sol[0]
    return P, basis


def is_separable_extension(ext: RepresentedExtension):
    """A Casimir element with ``μ(c) = 1``, or ``None`` if none exists."""
    F = ext.field
    T = ext.tensor_square
    B = ext.B
    if T.dim == 0:
        return None
    rows = [F.reduce(T.left_mats[b] - T.right_mats[b]) for b in range(B.dim)]
    mu = T.mu_matrix[T.section].T  # (dim B, dim T)
    M = np.concatenate(rows + [mu], axis=0)
    rhs = np.concatenate([F.zeros(B.dim * T.dim), B.unit])
    sol = solve(F, M, rhs)
    if sol is None:
        return None
    c = TensorOverA(ext, sol[0])
    assert is_casimir(c) and np.array_equal(c.mu(), B.unit)
    return c


# integrals and trace-one elements


def _right_integral(H: HopfAlgebra, t):
    F = H.field
    t = t.coords if isinstance(t, Element) else F.array(t)
    return t, find_integrals(H, "right").contains(t)


def find_trace_one_central(act: Action, t, side="right"):
    """A central ``z`` with ``S(t)·z = 1`` (right integral ``t``) or ``t·z = 1`` (left integral).

    For a left integral the antipode must be bijective; ``S^{-1}(t)`` is then
    a right integral satisfying the right-hand condition with the same ``z``.
    """
    H = act.hopf
    A = act.algebra
    F = act.field
    t = t.coords if isinstance(t, Element) else F.array(t)
    if not find_integrals(H, side).contains(t) or not np.any(t != 0):
        raise PreconditionError(f"t is not a nonzero {side} integral")
    if side == "right":
        s = H.S(t)
    else:
        s = t
    Z = center(A)
    if Z.dim == 0:
        return None
    M = F.matmul(act.op(s), Z.basis.T)
    sol = solve(F, M, A.unit)
    if sol is None:
        return None
    z = F.matmul(sol[0].reshape(1, -1), Z.basis).reshape(-1)
    if side == "left":
        Sinv = antipode_inverse(H)
        if Sinv is None:
            raise PreconditionError("antipode is not bijective; cannot convert a left integral")
        t2 = F.matmul(t.reshape(1, -1), Sinv).reshape(-1)
        assert find_integrals(H, "right").contains(t2), "S^{-1}(t) is not a right integral"
        assert np.array_equal(act.apply(H.S(t2), z), A.unit)
    return Element(A, z)


def trace_one_pair(act: Action):
    """``(t, z)`` with ``t`` a right integral and ``S(t)·z = 1``, or ``None``."""
    ints = find_integrals(act.hopf, "right")
    for t in ints.basis:
        z = find_trace_one_central(act, t, "right")
        if z is not None:
            return Element(act.hopf.algebra, t), z
    return None


def casimir_from_integral(act: Action, t, z, ext=None) -> TensorOverA:
    """``c = Σ (1 # S(t_1)) ⊗ (z # t_2)`` in ``(A#H) ⊗_A (A#H)``."""
    H = act.hopf
    A = act.algebra
    F = act.field
    ext = ext or act.smash()
    t, ok = _right_integral(H, t)
    if not ok:
        raise PreconditionError("t h = ε(h) t fails: t is not a right integral")
    z = z.coords if isinstance(z, Element) else F.array(z)
    if not center(A).contains(z):
        raise PreconditionError("z a = a z fails: z is not central")
    if not np.array_equal(act.apply(H.S(t), z), A.unit):
        raise PreconditionError("S(t)·z = 1 fails")
    n = H.dim
    D = F.dot(t, H.delta)  # Δ(t)[p, q]
    full = F.zeros(ext.B.dim ** 2)
    for p in range(n):
        left = np.kron(A.unit, H.S(F.unit_vector(n, p)))
        for q in range(n):
            if D[p, q] == 0:
                continue
            right = np.kron(z, F.unit_vector(n, q))
            full = F.reduce(full + np.kron(left, right) * D[p, q])
    c = TensorOverA.from_full(ext, full)
    if not is_casimir(c):
        raise AssertionError("integral-built element is not a Casimir element")
    if not acts_unitarily(c, regular_module(ext)):
        raise AssertionError("integral-built Casimir element does not act unitarily on A")
    return c


def casimir_mu_formula(act: Action, t, z):
    """``μ(c) = Σ S(t_2)·z # S(t_1) t_3`` computed from ``Δ² t`` in ``A#H`` coordinates."""
    H = act.hopf
    F = act.field
    t = t.coords if isinstance(t, Element) else F.array(t)
    z = z.coords if isinstance(z, Element) else F.array(z)
    n = H.dim
    T = F.dot(t, H.delta3)  # [p, q, r]
    out = F.zeros(act.algebra.dim * n)
    for p, q, r in zip(*np.nonzero(T)):
        a = act.apply(H.S(F.unit_vector(n, q)), z)
        h = H.algebra.mul(H.S(F.unit_vector(n, p)), F.unit_vector(n, r))
        out = F.reduce(out + np.kron(a, h) * T[p, q, r])
    return out


def casimir_mu_branches(act: Action, t, z):
    """``μ(c)`` three ways: the quotient model, the ``Δ² t`` formula, and the closed form.

    The closed form ``(S(t)·z) # 1`` is valid when ``z ∈ A^H`` or ``H`` is
    cocommutative; ``None`` otherwise.
    """
    F = act.field
    ext = act.smash()
    c = casimir_from_integral(act, t, z, ext)
    direct = c.mu()
    formula = casimir_mu_formula(act, t, z)
    if not np.array_equal(direct, formula):
        raise TheoremViolation("μ(c) in the quotient model differs from Σ S(t_2)·z # S(t_1)t_3")
    zc = z.coords if isinstance(z, Element) else F.array(z)
    closed = None
    if _invariants(ext).contains(zc) or act.hopf.is_cocommutative():
        tv = t.coords if isinstance(t, Element) else F.array(t)
        closed = np.kron(act.apply(act.hopf.S(tv), zc), act.hopf.algebra.unit)
        if not np.array_equal(closed, formula):
            raise TheoremViolation("μ(c) differs from (S(t)·z) # 1 although the separability hypothesis holds")
    return direct, formula, closed


# relative semisimplicity and regularity transfer


def _projection_onto(ext, e):
    """Column matrix of ``a -> a e``."""
    return ext.A.right_matrix(e.coords if isinstance(e, Element) else e)


def check_relative_semisimple(ext: RepresentedExtension, casimir=None, cap=DEFAULT_ENUMERATION_CAP) -> bool:
    """Every stable ideal that is an ``A``-summand of ``A`` is a ``B``-summand.

    Decided by :func:`summand_idempotent`; when a unitary Casimir element is
    supplied, the averaged projection ``π̃`` is also built and must split the
    inclusion.  Disagreement raises :class:`TheoremViolation`.
    """
    F = ext.field
    A = ext.A
    M = regular_module(ext)
    if casimir is not None and not (is_casimir(casimir) and acts_unitarily(casimir, M)):
        raise PreconditionError("supplied element is not a unitary Casimir element")
    verdict = True
    for I in stable_ideals_enumerate(ext, cap):
        e = summand_idempotent(ext, I, over="A")
        if e is None:
            continue
        split_b = summand_idempotent(ext, I, over="B") is not None
        if casimir is not None:
            pi = split_hom(casimir, _projection_onto(ext, e), M, M)
            img = Subspace(F, A.dim, pi.T)
            fixes = all(np.array_equal(F.matmul(pi, v.reshape(-1, 1)).reshape(-1), v) for v in I.basis)
            if not (img <= I and fixes):
                raise TheoremViolation("averaged projection does not split the inclusion")
            if not split_b:
                raise TheoremViolation("Casimir splitting exists but no invariant idempotent generates the ideal")
        verdict &= split_b
    return verdict


def check_trace_one_regularity(act: Action, cap=DEFAULT_ENUMERATION_CAP) -> RegularityReport:
    """Consequences of a central trace-one element for a semisimple module algebra.

    With ``radical(A) = 0`` and ``S(t)·z = 1``: ``A`` is ``H``-regular and
    ``A^H`` is regular; if also ``z ∈ A^H`` or ``H`` is cocommutative,
    ``A#H`` is semisimple.  Inapplicable when the hypotheses fail.
    """
    A = act.algebra
    report = RegularityReport(act.name or "?", "trace-one-regularity")
    if jacobson_radical(A).dim:
        report.applicable = False
        report.notes.append("A is not semisimple")
        return report
    pair = trace_one_pair(act)
    if pair is None:
        report.applicable = False
        report.notes.append("no central z with S(t)·z = 1 for a right integral t")
        return report
    t, z = pair
    ext = act.smash()
    report.record("hypotheses", True, f"t = {act.hopf.algebra.format(t.coords)}, z = {A.format(z.coords)}")
    reg = is_H_regular(act, cap)
    report.record("H-regular", reg.verdicts["H-regular"], reg.witnesses["H-regular"])
    alg, _ = invariant_algebra(ext)
    rad = jacobson_radical(alg)
    report.record("A^H regular", rad.dim == 0, f"radical of A^H has dimension {rad.dim}")
    if _invariants(ext).contains(z.coords) or act.hopf.is_cocommutative():
        rb = jacobson_radical(ext.B)
        report.record("A#H regular", rb.dim == 0, f"radical of A#H has dimension {rb.dim}")
    else:
        report.notes.append("z is not invariant and H is not cocommutative; A#H regularity not implied")
    report.agree.append(list(report.verdicts))
    if not report.consistent:
        raise TheoremViolation(f"trace-one consequences fail on {report.example_id}", report)
    return report


def separability_transfer(act: Action):
    """``(witness, radical(A) = 0, radical(A#H) = 0)`` for the smash product."""
    ext = act.smash()
    c = is_separable_extension(ext)
    return c, jacobson_radical(act.algebra).dim == 0, jacobson_radical(ext.B).dim == 0


def duality_check(H: HopfAlgebra):
    """Simplicity signature of ``H # H*`` under the hit action.

    Returns a dict with the dimension, radical dimension, center dimension
    and the rank of ``Ψ: H#H* → End(H)``.
    """
    from .library import hit

    act = hit(H)
    ext = act.smash()
    B = ext.B
    n = H.dim
    psi_rank = rank(H.field, ext.psi.reshape(B.dim, n * n))
    return {
        "dim": B.dim,
        "expected_dim": n * n,
        "radical_dim": jacobson_radical(B).dim,
        "center_dim": center(B).dim,
        "psi_rank": psi_rank,
    }


def certify_casimir(act: Action, cap=DEFAULT_ENUMERATION_CAP) -> RegularityReport:
    """Build the integral Casimir element and certify it on ``A``, its stable ideals and their quotients.

    For each module pair ``(M, N)`` checked, the splitting operator on
    ``Hom_A(M, N)`` must be idempotent with rank ``dim Hom_B(M, N)``.
    Inapplicable when no trace-one pair exists.
    """
    F = act.field
    report = RegularityReport(act.name or "?", "casimir")
    pair = trace_one_pair(act)
    if pair is None:
        report.applicable = False
        report.notes.append("no central z with S(t)·z = 1 for a right integral t")
        return report
    t, z = pair
    ext = act.smash()
    c = casimir_from_integral(act, t, z, ext)
    report.record("casimir", is_casimir(c), c.format())
    A = regular_module(ext)
    subs, quots = [], []
    for I in stable_ideals_enumerate(ext, cap):
        if 0 < I.dim < A.dim:
            subs.append(submodule(A, I))
            quots.append(quotient_module(A, I))
    modules = [A] + subs + quots
    report.record("unitary", all(acts_unitarily(c, M) for M in modules), f"{len(modules)} modules")
    pairs = [(M, M) for M in modules] + [(S, A) for S in subs] + [(A, Q) for Q in quots]
    ok = True
    for M, N in pairs:
        P, basis = split_operator(c, M, N)
        ok &= bool(np.array_equal(F.matmul(P, P), P)) and rank(F, P) == len(hom_space(M, N, over="B"))
    report.record("split idempotent of rank dim Hom_B", ok, f"{len(pairs)} module pairs")
    report.agree.append(list(report.verdicts))
    if not all(report.verdicts.values()):
        raise TheoremViolation(f"Casimir certification fails on {report.example_id}", report)
    return report
