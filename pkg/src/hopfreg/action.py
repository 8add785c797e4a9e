"""Module-algebra actions, smash products, enveloping Hopf algebroids and stable ideals.

Every extension ``A ⊆ B`` built here carries the map ``Ψ: B → End(A)``
as a stack of matrices ``psi[b]`` acting on column vectors, so that
``psi[b] @ x`` is ``b · x``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import DEFAULT_ENUMERATION_CAP, Algebra, Element, enumerate_space, subalgebra
from .errors import PreconditionError, UsageError, ValidationError
from .exactla import Subspace, nullspace, rank
from .hopf import HopfAlgebra


class Action:
    """A left ``H``-module algebra structure on ``A``.

    ``act[h, a, :]`` holds the coordinates of ``e_h · e_a``.  The module and
    module-algebra axioms are verified at construction.
    """

    def __init__(self, hopf: HopfAlgebra, algebra: Algebra, act, name=None, check=True):
        if hopf.field != algebra.field:
            raise UsageError("Hopf algebra and module algebra live over different fields")
        F = algebra.field
        self.hopf = hopf
        self.algebra = algebra
        self.field = F
        self.act = F.array(act)
        if self.act.shape != (hopf.dim, algebra.dim, algebra.dim):
            raise UsageError(f"action tensor must have shape {(hopf.dim, algebra.dim, algebra.dim)}")
        self.name = name
        self.ops = np.ascontiguousarray(self.act.transpose(0, 2, 1))  # column convention
        self._extensions = {}
        if check:
            self.check_axioms()

    def __repr__(self):
        return f"Action({self.name or '?'}: {self.hopf.name} on {self.algebra.name})"

    def __eq__(self, other):
        return (
            isinstance(other, Action)
            and self.hopf == other.hopf
            and self.algebra == other.algebra
            and np.array_equal(self.act, other.act)
        )

    __hash__ = object.__hash__

    def smash(self) -> RepresentedExtension:
        """``A # H``, built once and cached."""
        if "smash" not in self._extensions:
            self._extensions["smash"] = smash_product(self)
        return self._extensions["smash"]

    def algebroid(self) -> RepresentedExtension:
        """``A^e ⋈ H``, built once and cached."""
        if "algebroid" not in self._extensions:
            self._extensions["algebroid"] = enveloping_hopf_algebroid(self)
        return self._extensions["algebroid"]

    def op(self, h):
        """Matrix of ``x -> h · x``."""
        F = self.field
        h = h.coords if isinstance(h, Element) else F.array(h)
        return F.dot(h, self.ops)

    def apply(self, h, a):
        F = self.field
        a = a.coords if isinstance(a, Element) else F.array(a)
        return F.matmul(self.op(h), a.reshape(-1, 1)).reshape(-1)

    def check_axioms(self):
        F = self.field
        H, A = self.hopf, self.algebra
        ops = self.ops
        lhs = F.dot(H.algebra.mult, ops)  # op(e_i e_j)
        rhs = F.matmul(ops[:, None], ops[None, :])
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            i, j, _, a = bad[0]
            raise ValidationError("module associativity (hk)·a = h·(k·a)", (i, j, a))
        bad = np.argwhere(self.op(H.algebra.unit) != F.eye(A.dim))
        if bad.size:
            raise ValidationError("module unit 1·a = a", (bad[0][1],))
        m = A.mult
        lhs = F.einsum("abk,hkx->habx", m, self.act)  # h·(e_a e_b)
        rhs = F.einsum("hpq,pau,qbv,uvx->habx", H.delta, self.act, self.act, m)
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            h, a, b, _ = bad[0]
            raise ValidationError("module algebra h·(ab) = Σ(h1·a)(h2·b)", (h, a, b))
        lhs = F.reduce(np.tensordot(self.act, A.unit, axes=([1], [0])))  # h·1
        rhs = F.reduce(np.outer(H.counit, A.unit))
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            raise ValidationError("module algebra h·1 = ε(h)1", (bad[0][0],))


class RepresentedExtension:
    """An extension ``A ⊆ B`` with ``Ψ: B → End(A)`` restricting to ``L_a`` on ``A``.

    ``embed[i]`` is the image of ``e_i ∈ A`` in ``B``; ``psi[b]`` is the
    column-convention matrix of ``Ψ(b)``.
    """

    def __init__(self, B: Algebra, base: Algebra, embed, psi, kind="", action=None, name=None, check=True):
        F = B.field
        self.B = B
        self.A = base
        self.field = F
        self.embed = F.array(embed)
        self.psi = F.array(psi)
        self.kind = kind
        self.action = action
        self.name = name
        self._tensor_square = None
        if self.embed.shape != (base.dim, B.dim) or self.psi.shape != (B.dim, base.dim, base.dim):
            raise UsageError("extension data has inconsistent dimensions")
        if check:
            self.check_axioms()

    def __repr__(self):
        return f"RepresentedExtension({self.kind}, dim B={self.B.dim}, dim A={self.A.dim})"

    def check_axioms(self):
        F = self.field
        B, A = self.B, self.A
        lhs = F.dot(B.mult, self.psi)
        rhs = F.matmul(self.psi[:, None], self.psi[None, :])
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            raise ValidationError("Ψ multiplicative", tuple(bad[0][:2]))
        if np.any(self.Psi(B.unit) != F.eye(A.dim)):
            raise ValidationError("Ψ(1) = id", ())
        for i in range(A.dim):
            for j in range(A.dim):
                if not np.array_equal(B.mul(self.embed[i], self.embed[j]), F.matmul(A.mult[i, j], self.embed)):
                    raise ValidationError("embedding multiplicative", (i, j))
        if not np.array_equal(F.matmul(A.unit, self.embed), B.unit):
            raise ValidationError("embedding unital", ())
        for i in range(A.dim):
            if not np.array_equal(self.Psi(self.embed[i]), A.L[i]):
                raise ValidationError("Ψ(a) = L_a", (i,))
        if rank(F, self.alpha_matrix()) != A.dim:
            raise ValidationError("α: b -> b·1 surjective", ())

    def Psi(self, b):
        F = self.field
        b = b.coords if isinstance(b, Element) else F.array(b)
        return F.dot(b, self.psi)

    def act(self, b, x):
        F = self.field
        x = x.coords if isinstance(x, Element) else F.array(x)
        return F.matmul(self.Psi(b), x.reshape(-1, 1)).reshape(-1)

    def alpha_matrix(self):
        """Rows ``α(e_b) = e_b · 1``."""
        return self.field.reduce(np.tensordot(self.psi, self.A.unit, axes=([2], [0])))

    def alpha(self, b):
        return self.act(b, self.A.unit)

    def embed_vector(self, a):
        F = self.field
        a = a.coords if isinstance(a, Element) else F.array(a)
        return F.matmul(a.reshape(1, -1), self.embed).reshape(-1)

    def image_basis(self):
        """A basis of ``Ψ(B)`` inside ``End(A)`` (column-convention matrices)."""
        F = self.field
        n = self.A.dim
        S = Subspace(F, n * n, self.psi.reshape(self.B.dim, n * n))
        return S.basis.reshape(-1, n, n)

    @property
    def tensor_square(self):
        if self._tensor_square is None:
            self._tensor_square = TensorSquare(self)
        return self._tensor_square


def trivial_extension(A: Algebra) -> RepresentedExtension:
    """``A ⊆ A`` with ``Ψ(a) = L_a``."""
    F = A.field
    return RepresentedExtension(A, A, F.eye(A.dim), A.L, kind="trivial")


def smash_product(act: Action) -> RepresentedExtension:
    """``A # H`` on ``A ⊗ H``: ``(a#h)(b#g) = Σ a(h_1·b) # h_2 g``.

    Basis ``e_a # h_j`` sits at index ``a * dim H + j``.
    """
    F = act.field
    A, H = act.algebra, act.hopf
    nA, nH = A.dim, H.dim
    X = F.einsum("pbu,aux->apbx", act.act, A.mult)  # e_a (h_p · e_b)
    mult = F.einsum("hpq,apbx,qgy->ahbgxy", H.delta, X, H.algebra.mult)
    N = nA * nH
    labels = [f"{a}#{h}" for a in A.labels for h in H.algebra.labels]
    B = Algebra(F, mult.reshape(N, N, N), F.reduce(np.kron(A.unit, H.algebra.unit)), labels=labels,
                name=f"{A.name}#{H.name}" if A.name and H.name else None)
    embed = np.stack([np.kron(F.unit_vector(nA, a), H.algebra.unit) for a in range(nA)])
    psi = F.matmul(A.L[:, None], act.ops[None, :]).reshape(N, nA, nA)
    return RepresentedExtension(B, A, F.reduce(embed), psi, kind="smash", action=act)


def enveloping_hopf_algebroid(act: Action, swap_legs=False) -> RepresentedExtension:
    """``A^e ⋈ H`` on ``A ⊗ A ⊗ H``.

    ``[(a⊗b)⋈h][(a'⊗b')⋈h'] = Σ a(h_1·a') ⊗ (h_3·b')b ⋈ h_2 h'`` and
    ``(a⊗b⋈h)·x = a(h·x)b``.  Basis ``e_i ⊗ e_j ⋈ h_k`` sits at index
    ``(i * dim A + j) * dim H + k``.  ``swap_legs`` exchanges the roles of
    ``h_2`` and ``h_3``; for cocommutative ``H`` the result is unchanged.
    """
    F = act.field
    A, H = act.algebra, act.hopf
    nA, nH = A.dim, H.dim
    T = H.delta3
    if swap_legs:
        T = T.transpose(0, 1, 3, 2)
    X = F.einsum("pku,iua->ipka", act.act, A.mult)  # e_i (h_p · e_k)
    Y = F.einsum("rlv,vjb->rljb", act.act, A.mult)  # (h_r · e_l) e_j
    XT = F.einsum("hpqr,ipka->hqrika", T, X)
    XY = F.einsum("hqrika,rljb->hqikaljb", XT, Y)
    mult = F.einsum("hqikaljb,qmc->ijhklmabc", XY, H.algebra.mult)
    N = nA * nA * nH
    labels = [f"{a}⊗{b}⋈{h}" for a in A.labels for b in A.labels for h in H.algebra.labels]
    unit = np.kron(np.kron(A.unit, A.unit), H.algebra.unit)
    B = Algebra(F, mult.reshape(N, N, N), F.reduce(unit), labels=labels,
                name=f"{A.name}^e⋈{H.name}" if A.name and H.name else None)
    embed = np.stack([np.kron(np.kron(F.unit_vector(nA, a), A.unit), H.algebra.unit) for a in range(nA)])
    LR = F.matmul(A.L[:, None], A.R[None, :])  # x -> e_i x e_j
    psi = F.matmul(LR[:, :, None], act.ops[None, None, :]).reshape(N, nA, nA)
    return RepresentedExtension(B, A, F.reduce(embed), psi, kind="algebroid", action=act)


def restrict_action(act: Action, e) -> Action:
    """The induced action on the corner algebra ``Ae`` for a central ``H``-invariant idempotent ``e``."""
    F = act.field
    A = act.algebra
    e = e.coords if isinstance(e, Element) else F.array(e)
    U = Subspace(F, A.dim, [A.mul(F.unit_vector(A.dim, i), e) for i in range(A.dim)])
    corner, incl = subalgebra(A, U, unit=e, name=f"{A.name}·e" if A.name else None)
    H = act.hopf
    tensor = F.zeros((H.dim, corner.dim, corner.dim))
    for h in range(H.dim):
        for j, u in enumerate(incl):
            c = U.coordinates(act.apply(F.unit_vector(H.dim, h), u))
            if c is None:
                raise PreconditionError("Ae is not H-stable; e must be H-invariant")
            tensor[h, j] = c
    return Action(H, corner, tensor, name=f"{act.name}|e" if act.name else None)


# invariants and modules


def invariants(ext: RepresentedExtension) -> Subspace:
    """``A^B = {a : b·a = (b·1) a for all b}``; a unital subalgebra of ``A``."""
    F = ext.field
    A = ext.A
    alpha = ext.alpha_matrix()
    blocks = [F.reduce(ext.psi[b] - A.left_matrix(alpha[b])) for b in range(ext.B.dim)]
    U = nullspace(F, np.concatenate(blocks, axis=0), ncols=A.dim)
    assert U.contains(A.unit), "invariants do not contain 1"
    for u in U.basis:
        for v in U.basis:
            assert U.contains(A.mul(u, v)), "invariants not closed under multiplication"
    return U


@dataclass
class Module:
    """A finite-dimensional left ``B``-module; ``A`` acts through the embedding."""

    ext: RepresentedExtension
    mats: np.ndarray  # (dim B, d, d), column convention

    @property
    def dim(self):
        return self.mats.shape[1]

    @property
    def field(self):
        return self.ext.field

    def rep(self, b):
        F = self.field
        b = b.coords if isinstance(b, Element) else F.array(b)
        return F.dot(b, self.mats)

    def a_rep(self, a):
        return self.rep(self.ext.embed_vector(a))

    def a_mats(self):
        F = self.field
        return F.dot(self.ext.embed, self.mats)

    def check(self):
        F = self.field
        lhs = F.dot(self.ext.B.mult, self.mats)
        rhs = F.matmul(self.mats[:, None], self.mats[None, :])
        if np.any(lhs != rhs) or np.any(self.rep(self.ext.B.unit) != F.eye(self.dim)):
            raise PreconditionError("matrices do not define a B-module")
        return self


def regular_module(ext: RepresentedExtension) -> Module:
    """``A`` as a ``B``-module through ``Ψ``."""
    return Module(ext, ext.psi)


def left_regular_module(ext: RepresentedExtension) -> Module:
    """``B`` acting on itself by left multiplication."""
    return Module(ext, ext.B.L)


def zero_module(ext: RepresentedExtension) -> Module:
    return Module(ext, ext.field.zeros((ext.B.dim, 0, 0)))


def is_stable(M: Module, U: Subspace) -> bool:
    F = M.field
    for mat in M.mats:
        for v in U.basis:
            if not U.contains(F.matmul(mat, v.reshape(-1, 1)).reshape(-1)):
                return False
    return True


def submodule(M: Module, U: Subspace) -> Module:
    """The restriction of ``M`` to a stable subspace ``U`` (coordinates in ``U.basis``)."""
    F = M.field
    mats = F.zeros((M.mats.shape[0], U.dim, U.dim))
    for b, mat in enumerate(M.mats):
        img = F.matmul(U.basis, mat.T) if U.dim else U.basis
        for j, v in enumerate(img):
            c = U.coordinates(v)
            if c is None:
                raise PreconditionError("subspace is not B-stable")
            mats[b][:, j] = c
    return Module(M.ext, mats)


def quotient_module(M: Module, U: Subspace) -> Module:
    """``M / U`` on the canonical complement of a stable ``U``."""
    F = M.field
    if not is_stable(M, U):
        raise PreconditionError("subspace is not B-stable")
    comp = U.complement_indices()
    reps = F.eye(M.dim)[comp]
    mats = F.zeros((M.mats.shape[0], len(comp), len(comp)))
    for b, mat in enumerate(M.mats):
        for j, v in enumerate(reps):
            mats[b][:, j] = U.project_complement(F.matmul(mat, v.reshape(-1, 1)).reshape(-1))
    return Module(M.ext, mats)


def _linear_map_system(F, blocks_pairs, d_out, d_in):
    """Rows of ``Y f - f X = 0`` for pairs ``(X, Y)`` acting on ``f`` flattened row-major."""
    rows = []
    for X, Y in blocks_pairs:
        rows.append(F.reduce(np.kron(Y, F.eye(d_in)) - np.kron(F.eye(d_out), X.T)))
    return np.concatenate(rows, axis=0) if rows else F.zeros((0, d_out * d_in))


def hom_space(M: Module, N: Module, over="B"):
    """Basis of ``Hom_B(M, N)`` (or ``Hom_A``) as a list of ``dim N × dim M`` matrices."""
    F = M.field
    if over == "B":
        pairs = list(zip(M.mats, N.mats))
    elif over == "A":
        pairs = list(zip(M.a_mats(), N.a_mats()))
    else:
        raise UsageError(f"unknown ring {over!r}")
    if M.dim == 0 or N.dim == 0:
        return []
    sol = nullspace(F, _linear_map_system(F, pairs, N.dim, M.dim), ncols=N.dim * M.dim)
    return [v.reshape(N.dim, M.dim) for v in sol.basis]


def is_linear(M: Module, N: Module, f, over="B") -> bool:
    F = M.field
    mats = zip(M.mats, N.mats) if over == "B" else zip(M.a_mats(), N.a_mats())
    return all(np.array_equal(F.matmul(Y, f), F.matmul(f, X)) for X, Y in mats)


def module_invariants(ext: RepresentedExtension, M: Module) -> Subspace:
    """``M^B = {m : b·(am) = (b·a)m for all b, a}``."""
    F = ext.field
    A = ext.A
    if M.ext is not ext:
        raise PreconditionError("module belongs to a different extension")
    if M.dim == 0:
        return Subspace.zero(F, 0)
    a_mats = M.a_mats()
    blocks = []
    for b in range(ext.B.dim):
        for a in range(A.dim):
            ba = ext.psi[b][:, a]  # b · e_a in A
            blocks.append(F.reduce(F.matmul(M.mats[b], a_mats[a]) - M.a_rep(ba)))
    return nullspace(F, np.concatenate(blocks, axis=0), ncols=M.dim)


def hom_from_invariant(ext: RepresentedExtension, M: Module, m):
    """The ``B``-linear ``f: A → M`` with ``f(1) = m``, namely ``f(x) = x·m``."""
    F = ext.field
    m = F.array(m)
    cols = [F.matmul(M.a_rep(F.unit_vector(ext.A.dim, i)), m.reshape(-1, 1)).reshape(-1) for i in range(ext.A.dim)]
    return np.stack(cols, axis=1) if cols else F.zeros((M.dim, 0))


# stable ideals


def cyclic_stable_ideal(ext: RepresentedExtension, a) -> Subspace:
    """``B·a``, the smallest ``B``-submodule of ``A`` containing ``a``."""
    F = ext.field
    a = a.coords if isinstance(a, Element) else F.array(a)
    return Subspace(F, ext.A.dim, F.matmul(ext.psi, a.reshape(-1, 1)).reshape(ext.B.dim, -1))


def cyclic_stable_ideals(ext: RepresentedExtension, cap=DEFAULT_ENUMERATION_CAP):
    """Map each distinct ``B·a`` (over all ``a ∈ A``) to the first ``a`` generating it."""
    F = ext.field
    elems = enumerate_space(F, ext.A.dim, cap)
    gens = ext.image_basis()
    out = {}
    for a in elems:
        S = Subspace(F, ext.A.dim, F.matmul(gens, a.reshape(-1, 1)).reshape(len(gens), -1))
        out.setdefault(S, a)
    return out


def stable_ideals_enumerate(ext: RepresentedExtension, cap=DEFAULT_ENUMERATION_CAP):
    """Every ``B``-stable subspace of ``A``, sorted by ``(dimension, echelon basis)``.

    Built as all finite sums of cyclic ideals ``B·a``.
    """
    cyclic = list(cyclic_stable_ideals(ext, cap))
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for I in frontier:
            for J in cyclic:
                S = I + J
                if S not in found:
                    found.add(S)
                    nxt.append(S)
        frontier = nxt
    F = ext.field
    found.add(Subspace.zero(F, ext.A.dim))
    return sorted(found, key=Subspace.sort_key)


# B ⊗_A B


class TensorSquare:
    """Quotient model of ``B ⊗_A B``.

    ``B ⊗_k B`` has basis ``e_i ⊗ e_j`` at index ``i * dim B + j``.  The
    relations ``b·a ⊗ b' - b ⊗ a·b'`` are put in echelon form; the
    non-pivot basis tensors form the canonical section, and coordinates of
    a class are its coefficients on that section.
    """

    def __init__(self, ext: RepresentedExtension):
        F = ext.field
        B = ext.B
        n = B.dim
        self.ext = ext
        self.field = F
        rels = []
        I = F.eye(n)
        for a in range(ext.A.dim):
            ia = ext.embed[a]
            Ra = B.right_matrix(ia).T  # row b: e_b · a
            La = B.left_matrix(ia).T  # row b': a · e_b'
            rels.append(F.reduce(np.kron(Ra, I) - np.kron(I, La)))
        self.relations = Subspace(F, n * n, np.concatenate(rels, axis=0))
        self.section = self.relations.complement_indices()
        self.dim = len(self.section)
        self.mu_matrix = B.mult.reshape(n * n, n)
        self._left = None
        self._right = None

    def project(self, full):
        """Coordinates of the class of a vector of ``B ⊗_k B``."""
        return self.relations.project_complement(full)

    def lift(self, coords):
        F = self.field
        n = self.ext.B.dim
        full = F.zeros(n * n)
        full[self.section] = coords
        return full

    def simple(self, b, b2):
        """Class of ``b ⊗ b2``."""
        F = self.field
        return self.project(F.reduce(np.kron(F.array(b), F.array(b2))))

    def legs(self, coords):
        """``[(coefficient, i, j), ...]`` with ``c = Σ coefficient · e_i ⊗ e_j``."""
        n = self.ext.B.dim
        return [(c, s // n, s % n) for c, s in zip(coords, self.section) if c != 0]

    def mu(self, coords):
        F = self.field
        return F.matmul(self.lift(coords).reshape(1, -1), self.mu_matrix).reshape(-1)

    def _action_mats(self):
        F = self.field
        B = self.ext.B
        n = B.dim
        I = F.eye(n)
        sec = self.section
        left, right = [], []
        for b in range(n):
            Lb = np.kron(B.L[b], I)[:, sec]  # (n², dim) : b·(x⊗y)
            Rb = np.kron(I, B.R[b])[:, sec]  # (x⊗y)·b
            left.append(self.project(Lb.T).T)
            right.append(self.project(Rb.T).T)
        self._left = np.stack(left) if left else F.zeros((0, self.dim, self.dim))
        self._right = np.stack(right) if right else F.zeros((0, self.dim, self.dim))

    @property
    def left_mats(self):
        """Column-convention matrices of ``c -> e_b c`` on the quotient."""
        if self._left is None:
            self._action_mats()
        return self._left

    @property
    def right_mats(self):
        if self._right is None:
            self._action_mats()
        return self._right
