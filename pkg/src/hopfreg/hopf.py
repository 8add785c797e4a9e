"""Hopf algebras on top of :class:`~hopfreg.algebra.Algebra`."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import Algebra, Element, ideal_generated
from .errors import PreconditionError, UsageError, ValidationError
from .exactla import Subspace, inverse, nullspace, solve


class HopfAlgebra:
    """Comultiplication, counit and antipode on a finite-dimensional algebra.

    Maps are stored row-wise: ``comult[i, j*n + k]`` is the coefficient of
    ``e_j ⊗ e_k`` in ``Δ(e_i)``, ``antipode[i]`` holds ``S(e_i)`` and
    ``counit[i] = ε(e_i)``.  ``generators`` optionally lists coordinate
    vectors generating the algebra (used by the counit-kernel lemma).
    """

    def __init__(self, algebra: Algebra, comult, counit, antipode, name=None, generators=None, check=True):
        F = algebra.field
        n = algebra.dim
        self.algebra = algebra
        self.field = F
        self.dim = n
        self.comult = F.array(comult)
        self.counit = F.array(counit)
        self.antipode = F.array(antipode)
        if self.comult.shape != (n, n * n) or self.counit.shape != (n,) or self.antipode.shape != (n, n):
            raise UsageError("Hopf structure maps have inconsistent dimensions")
        self.name = name
        self.generators = None if generators is None else [F.array(g) for g in generators]
        self._delta3 = None
        if check:
            report = check_hopf_axioms(self)
            if not report.ok:
                axiom, idx = report.failures[0]
                raise ValidationError(axiom, idx)

    def __repr__(self):
        return f"HopfAlgebra({self.name or '?'}, dim={self.dim}, {self.field})"

    def __eq__(self, other):
        return (
            isinstance(other, HopfAlgebra)
            and self.algebra == other.algebra
            and np.array_equal(self.comult, other.comult)
            and np.array_equal(self.counit, other.counit)
            and np.array_equal(self.antipode, other.antipode)
        )

    __hash__ = object.__hash__

    @property
    def delta(self):
        """``Δ`` as a tensor ``(n, n, n)``: ``delta[h, p, q]``."""
        n = self.dim
        return self.comult.reshape(n, n, n)

    @property
    def delta3(self):
        """``(Δ⊗id)Δ`` as ``delta3[h, p, q, r]`` (coefficient of ``h_p ⊗ h_q ⊗ h_r``)."""
        if self._delta3 is None:
            D = self.delta
            self._delta3 = self.field.einsum("hir,ipq->hpqr", D, D)
        return self._delta3

    def S(self, v):
        F = self.field
        v = v.coords if isinstance(v, Element) else F.array(v)
        return F.matmul(v.reshape(1, -1), self.antipode).reshape(-1)

    def eps(self, v):
        F = self.field
        v = v.coords if isinstance(v, Element) else F.array(v)
        return F.reduce(np.dot(v, self.counit))

    def is_cocommutative(self):
        D = self.delta
        return np.array_equal(D, D.transpose(0, 2, 1))

    def element(self, coords):
        return self.algebra.element(coords)


@dataclass
class HopfAxiomReport:
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def first(self):
        return self.failures[0] if self.failures else None


def _first_bad(lhs, rhs):
    bad = np.argwhere(lhs != rhs)
    return tuple(int(i) for i in bad[0]) if bad.size else None


def check_hopf_axioms(H: HopfAlgebra) -> HopfAxiomReport:
    """Check every bialgebra and antipode identity on basis elements.

    Each failure is ``(axiom, indices)`` with the basis indices of the first
    violation of that axiom.
    """
    F = H.field
    A = H.algebra
    n = H.dim
    D = H.delta
    m = A.mult
    eps = H.counit
    report = HopfAxiomReport()

    def record(name, bad):
        if bad is not None:
            report.failures.append((name, bad))

    # Δ is an algebra map
    unit_delta = F.dot(A.unit, D)
    bad = _first_bad(unit_delta, F.reduce(np.outer(A.unit, A.unit)))
    record("comultiplication-unit", None if bad is None else ())
    lhs = F.einsum("ijk,kpq->ijpq", m, D)  # Δ(e_i e_j)
    rhs = F.einsum("iab,jcd,acx,bdy->ijxy", D, D, m, m)
    bad = _first_bad(lhs, rhs)
    record("comultiplication-multiplicative", None if bad is None else bad[:2])
    # coassociativity
    left = F.einsum("hir,ipq->hpqr", D, D)
    right = F.einsum("hpi,iqr->hpqr", D, D)
    bad = _first_bad(left, right)
    record("coassociativity", None if bad is None else bad[:1])
    # counit laws
    I = F.eye(n)
    bad = _first_bad(F.reduce(np.tensordot(eps, D, axes=([0], [1]))), I)
    record("counit-left", None if bad is None else bad[:1])
    bad = _first_bad(F.reduce(np.tensordot(D, eps, axes=([2], [0]))), I)
    record("counit-right", None if bad is None else bad[:1])
    # ε is an algebra map
    bad = _first_bad(F.dot(m, eps), F.reduce(np.outer(eps, eps)))
    record("counit-multiplicative", bad)
    if F.reduce(np.dot(A.unit, eps)) != 1:
        record("counit-unit", ())
    # antipode
    target = F.reduce(np.outer(eps, A.unit))
    S = H.antipode
    lhs = F.einsum("iab,ax,xby->iy", D, S, m)  # Σ S(h1) h2
    bad = _first_bad(lhs, target)
    record("antipode-left", None if bad is None else bad[:1])
    rhs = F.einsum("iab,bx,axy->iy", D, S, m)  # Σ h1 S(h2)
    bad = _first_bad(rhs, target)
    record("antipode-right", None if bad is None else bad[:1])
    return report


def find_integrals(H: HopfAlgebra, side="right") -> Subspace:
    """Right integrals ``t h = ε(h) t`` or left integrals ``h t = ε(h) t``."""
    F = H.field
    A = H.algebra
    n = H.dim
    if side == "right":
        ops = A.R
    elif side == "left":
        ops = A.L
    else:
        raise UsageError(f"unknown side {side!r}")
    blocks = [F.reduce(ops[j] - F.eye(n) * H.counit[j]) for j in range(n)]
    return nullspace(F, np.concatenate(blocks, axis=0), ncols=n)


def counit_kernel(H: HopfAlgebra) -> Subspace:
    return nullspace(H.field, H.counit.reshape(1, -1), ncols=H.dim)


def augmentation_ideal(H: HopfAlgebra, gens) -> Subspace:
    """``Σ_b H (b - ε(b))`` over the generators ``b``."""
    F = H.field
    vecs = [F.reduce(_coords(H, b) - H.algebra.unit * H.eps(b)) for b in gens]
    return ideal_generated(H.algebra, vecs, side="left")


def _coords(H, b):
    return b.coords if isinstance(b, Element) else H.field.array(b)


def word_basis(H: HopfAlgebra, gens):
    """Words in ``gens`` whose values form a basis of ``H``.

    Breadth-first over word length; a word is kept when it enlarges the
    span.  Raises :class:`PreconditionError` if the generators do not
    generate ``H`` as an algebra.
    """
    F = H.field
    A = H.algebra
    gens = [_coords(H, b) for b in gens]
    words = [((), A.unit)]
    span = Subspace(F, A.dim, [A.unit])
    frontier = list(words)
    for _ in range(A.dim):
        nxt = []
        for w, v in frontier:
            for gi, g in enumerate(gens):
                u = A.mul(v, g)
                if not span.contains(u):
                    span = span + Subspace(F, A.dim, [u])
                    item = (w + (gi,), u)
                    words.append(item)
                    nxt.append(item)
        if not nxt:
            break
        frontier = nxt
    if span.dim != A.dim:
        raise PreconditionError(f"generators span a subalgebra of dimension {span.dim} < {A.dim}")
    return words


def counit_kernel_decomposition(H: HopfAlgebra, gens, h):
    """Write ``h ∈ Ker ε`` as ``Σ c_i (b_i - ε(b_i))`` by telescoping over words.

    Each word ``ω = b_1⋯b_m`` contributes
    ``ω - ε(ω) = Σ_i b_1⋯b_{i-1} ε(b_{i+1}⋯b_m) (b_i - ε(b_i))``.
    Returns ``[(c_i, i), ...]`` for the generators with nonzero coefficient.
    """
    F = H.field
    A = H.algebra
    hv = _coords(H, h)
    if H.eps(hv) != 0:
        raise PreconditionError("h is not in the kernel of the counit")
    gen_vecs = [_coords(H, b) for b in gens]
    words = word_basis(H, gen_vecs)
    if augmentation_ideal(H, gen_vecs) != counit_kernel(H):
        raise AssertionError("Ker ε differs from Σ H(b - ε(b))")
    M = np.stack([v for _, v in words], axis=1)
    lam = solve(F, M, hv)[0]
    geps = [H.eps(g) for g in gen_vecs]
    coeffs = [F.zeros(A.dim) for _ in gen_vecs]
    for (w, _), lw in zip(words, lam):
        if lw == 0:
            continue
        for i, gi in enumerate(w):
            prefix = A.unit
            for gj in w[:i]:
                prefix = A.mul(prefix, gen_vecs[gj])
            tail = F(1)
            for gj in w[i + 1:]:
                tail = F.reduce(tail * geps[gj])
            coeffs[gi] = F.reduce(coeffs[gi] + prefix * F.reduce(lw * tail))
    total = F.zeros(A.dim)
    for c, g, e in zip(coeffs, gen_vecs, geps):
        total = F.reduce(total + A.mul(c, F.reduce(g - A.unit * e)))
    if not np.array_equal(total, hv):
        raise AssertionError("telescoping decomposition does not reconstruct h")
    return [(Element(A, c), i) for i, c in enumerate(coeffs) if np.any(c != 0)]


def generating_set(H: HopfAlgebra):
    """``H.generators`` if set, else a greedy subset of the basis that generates."""
    if H.generators is not None:
        return H.generators
    F = H.field
    gens = []
    for i in range(H.dim):
        v = F.unit_vector(H.dim, i)
        if np.array_equal(v, H.algebra.unit):
            continue
        gens.append(v)
        try:
            word_basis(H, gens)
            return gens
        except PreconditionError:
            continue
    return gens


def dual_hopf(H: HopfAlgebra, name=None) -> HopfAlgebra:
    """The dual Hopf algebra on the dual basis ``δ_i``.

    Multiplication is convolution (dual to Δ), comultiplication is dual to
    the product, the unit is ε, the counit is evaluation at 1 and the
    antipode is the transpose of S.
    """
    F = H.field
    n = H.dim
    D = H.delta
    mult = D.transpose(1, 2, 0)  # δ_i δ_j = Σ_k Δ[k, i, j] δ_k
    alg = Algebra(F, mult, H.counit, labels=[f"δ[{lab}]" for lab in H.algebra.labels],
                  name=name or (f"{H.name}*" if H.name else None))
    comult = H.algebra.mult.transpose(2, 0, 1).reshape(n, n * n)
    return HopfAlgebra(alg, comult, H.algebra.unit, H.antipode.T, name=alg.name)


def antipode_inverse(H: HopfAlgebra):
    """Inverse antipode as a row-convention matrix, or ``None`` if S is singular."""
    inv = inverse(H.field, H.antipode.T)
    return None if inv is None else inv.T


def hit_action(H: HopfAlgebra):
    """``H*`` acting on ``H`` by ``f ⇀ h = Σ h_1 <f, h_2>``."""
    from .action import Action

    dual = dual_hopf(H)
    act = H.delta.transpose(2, 0, 1)  # act[f, a, p] = Δ[a, p, f]
    return Action(dual, H.algebra, act, name=f"{H.name}*-hit" if H.name else None)
