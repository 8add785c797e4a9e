"""Finite-dimensional associative unital algebras given by structure constants."""

from __future__ import annotations

import numpy as np
import sympy

from .errors import NotSplitError, PreconditionError, ResourceError, UsageError, ValidationError
from .exactla import Field, Subspace, nullspace, rank, solve

DEFAULT_ENUMERATION_CAP = 2**16


class Algebra:
    """An algebra with basis ``e_0..e_{n-1}`` and ``e_i e_j = sum_k mult[i, j, k] e_k``.

    Construction verifies associativity on all basis triples and the unit
    laws; a failure raises :class:`ValidationError` naming the triple.
    """

    def __init__(self, field: Field, mult, unit, labels=None, name=None, check=True):
        self.field = field
        self.mult = field.array(mult)
        n = self.mult.shape[0]
        if self.mult.shape != (n, n, n):
            raise UsageError(f"structure constants must have shape (n, n, n), got {self.mult.shape}")
        self.unit = field.array(unit)
        if self.unit.shape != (n,):
            raise UsageError("unit vector has the wrong length")
        self.dim = n
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(n)]
        if len(self.labels) != n:
            raise UsageError("one label per basis element is required")
        self.name = name
        self._L = None
        self._R = None
        if check:
            self.check_axioms()

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim}, {self.field})"

    def __eq__(self, other):
        return (
            isinstance(other, Algebra)
            and self.field == other.field
            and self.dim == other.dim
            and self.labels == other.labels
            and np.array_equal(self.mult, other.mult)
            and np.array_equal(self.unit, other.unit)
        )

    __hash__ = object.__hash__

    # multiplication operators, column convention: L[i] @ x == e_i * x

    @property
    def L(self):
        if self._L is None:
            self._L = np.ascontiguousarray(self.mult.transpose(0, 2, 1))
        return self._L

    @property
    def R(self):
        if self._R is None:
            self._R = np.ascontiguousarray(self.mult.transpose(1, 2, 0))
        return self._R

    def left_matrix(self, a):
        F = self.field
        return F.dot(F.array(a), self.L)

    def right_matrix(self, a):
        F = self.field
        return F.dot(F.array(a), self.R)

    def mul(self, a, b):
        F = self.field
        n = self.dim
        t = F.matmul(np.asarray(a, dtype=F.dtype).reshape(1, n), self.mult.reshape(n, n * n)).reshape(n, n)
        return F.matmul(np.asarray(b, dtype=F.dtype).reshape(1, n), t).reshape(n)

    def check_axioms(self):
        F = self.field
        n = self.dim
        if F.p is None:
            # compare d^2 (e_i e_j) e_k with d^2 e_i (e_j e_k) in integers
            L, _ = F.integer_form(self.L)
            m = L.transpose(0, 2, 1)
            mm = np.matmul
        else:
            L, m, mm = self.L, self.mult, F.matmul
        for i in range(n):
            lhs = mm(m[i], L.reshape(n, n * n)).reshape(n, n, n)  # L_{e_i e_j}
            rhs = mm(L[i][None, :, :], L)  # L_{e_i} L_{e_j}
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                j, _, k = bad[0]
                raise ValidationError("associativity", (i, j, k))
        I = F.eye(n)
        for side, op in (("left unit", self.left_matrix), ("right unit", self.right_matrix)):
            bad = np.argwhere(op(self.unit) != I)
            if bad.size:
                raise ValidationError(side, (bad[0][1],))

    # elements

    def element(self, coords):
        return Element(self, coords)

    __call__ = element

    def basis_element(self, i):
        return Element(self, self.field.unit_vector(self.dim, i))

    def basis(self):
        return [self.basis_element(i) for i in range(self.dim)]

    def one(self):
        return Element(self, self.unit)

    def zero(self):
        return Element(self, self.field.zeros(self.dim))

    def is_commutative(self):
        return np.array_equal(self.mult, self.mult.transpose(1, 0, 2))

    def elements(self, cap=DEFAULT_ENUMERATION_CAP):
        """All coordinate vectors of the algebra over GF(p), respecting ``cap``."""
        return enumerate_space(self.field, self.dim, cap)

    def format(self, v):
        F = self.field
        out = ""
        for c, lab in zip(np.ravel(v), self.labels):
            if c == 0:
                continue
            s = F.format(c)
            sign = "-" if s.startswith("-") else "+"
            s = s.lstrip("-")
            term = lab if s == "1" else f"{s}*{lab}"
            out = (f"{out} {sign} {term}" if out else (term if sign == "+" else f"-{term}"))
        return out or "0"


def enumerate_space(F, dim, cap=DEFAULT_ENUMERATION_CAP):
    if not F.is_prime_field:
        raise PreconditionError("element enumeration needs a prime field")
    required = F.p**dim
    if required > cap:
        raise ResourceError(required, cap)
    return F.all_vectors(dim)


class Element:
    """An element of an :class:`Algebra`, stored by coordinates."""

    __slots__ = ("parent", "coords")

    def __init__(self, parent, coords):
        self.parent = parent
        c = parent.field.array(coords)
        if c.shape != (parent.dim,):
            raise UsageError(f"element needs {parent.dim} coordinates")
        self.coords = c

    def _coerce(self, other):
        if isinstance(other, Element):
            if other.parent is not self.parent and other.parent != self.parent:
                raise UsageError("elements belong to different algebras")
            return other.coords
        return self.parent.field.reduce(self.parent.unit * self.parent.field(other))

    def __add__(self, other):
        return Element(self.parent, self.parent.field.reduce(self.coords + self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Element(self.parent, self.parent.field.reduce(self.coords - self._coerce(other)))

    def __rsub__(self, other):
        return Element(self.parent, self.parent.field.reduce(self._coerce(other) - self.coords))

    def __neg__(self):
        return Element(self.parent, self.parent.field.reduce(-self.coords))

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        F = self.parent.field
        return Element(self.parent, F.reduce(self.coords * F(other)))

    def __rmul__(self, other):
        F = self.parent.field
        return Element(self.parent, F.reduce(self.coords * F(other)))

    def __pow__(self, k):
        out = self.parent.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Element):
            same = self.parent is other.parent or self.parent == other.parent
            return same and np.array_equal(self.coords, other.coords)
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self):
        return hash(self.parent.field.key(self.coords))

    def is_zero(self):
        return not np.any(self.coords != 0)

    def __repr__(self):
        return self.parent.format(self.coords)


def multiply(a: Element, b: Element) -> Element:
    if a.parent is not b.parent and a.parent != b.parent:
        raise UsageError("elements belong to different algebras")
    return Element(a.parent, a.parent.mul(a.coords, b.coords))


def _same_field(A, B):
    if A.field != B.field:
        raise UsageError(f"field mismatch: {A.field} vs {B.field}")


def opposite(A: Algebra) -> Algebra:
    return Algebra(A.field, A.mult.transpose(1, 0, 2), A.unit, labels=A.labels,
                   name=f"{A.name}^op" if A.name else None, check=False)


def tensor(A: Algebra, B: Algebra) -> Algebra:
    """``A ⊗ B`` with basis ``e_i ⊗ f_j`` at index ``i * dim B + j``."""
    _same_field(A, B)
    F = A.field
    m = F.einsum("ijk,abc->iajbkc", A.mult, B.mult)
    n = A.dim * B.dim
    labels = [f"{a}⊗{b}" for a in A.labels for b in B.labels]
    return Algebra(F, m.reshape(n, n, n), F.reduce(np.kron(A.unit, B.unit)), labels=labels,
                   name=f"{A.name}⊗{B.name}" if A.name and B.name else None)


def enveloping(A: Algebra) -> Algebra:
    """``A^e = A ⊗ A^op`` with ``(a⊗b)(a'⊗b') = aa' ⊗ b'b``."""
    env = tensor(A, opposite(A))
    env.name = f"{A.name}^e" if A.name else None
    return env


def center(A: Algebra) -> Subspace:
    F = A.field
    blocks = [F.reduce(A.L[i] - A.R[i]) for i in range(A.dim)]
    Z = nullspace(F, np.concatenate(blocks, axis=0), ncols=A.dim)
    for u in Z.basis:
        for v in Z.basis:
            assert Z.contains(A.mul(u, v)), "center not closed under multiplication"
    return Z


def product_space(A: Algebra, U: Subspace, V: Subspace) -> Subspace:
    """``span{uv : u in U, v in V}``."""
    vecs = [A.mul(u, v) for u in U.basis for v in V.basis]
    return Subspace(A.field, A.dim, vecs)


def ideal_generated(A: Algebra, S, side="two-sided") -> Subspace:
    """Smallest subspace containing ``S`` closed under the requested multiplications."""
    if side not in ("left", "right", "two-sided"):
        raise UsageError(f"unknown side {side!r}")
    F = A.field
    vecs = [s.coords if isinstance(s, Element) else F.array(s) for s in S]
    V = Subspace(F, A.dim, vecs)
    ops = []
    if side in ("left", "two-sided"):
        ops.extend(A.L)
    if side in ("right", "two-sided"):
        ops.extend(A.R)
    for _ in range(A.dim + 1):
        new = [F.matmul(V.basis, M.T) for M in ops] if V.dim else []
        W = Subspace(F, A.dim, np.concatenate([V.basis] + new)) if new else V
        if W == V:
            return V
        V = W
    return V


def is_ideal(A: Algebra, U: Subspace, side="two-sided") -> bool:
    return ideal_generated(A, list(U.basis), side) == U


# Jacobson radical


def jacobson_radical(A: Algebra) -> Subspace:
    """Jacobson radical via iterated trace forms.

    In characteristic 0 or ``p > dim A`` this is the kernel of the trace
    form ``(a, b) -> Tr(L_{ab})``.  In small characteristic the
    Cohen-Ivanyos-Wales refinement is used: starting from ``I = A``, keep
    the ``a`` in ``I`` with ``g_i(ab) = 0`` for every basis ``b``, where
    ``g_i(x) = (Tr(X^(p^i)) mod p^(i+1)) / p^i`` for an integer lift ``X`` of
    ``L_x``, for ``i = 0 .. floor(log_p dim A)``.
    """
    F = A.field
    n = A.dim
    if n == 0:
        return Subspace.zero(F, 0)
    if F.p is None or F.p > n:
        tr = np.array([sum(A.L[k][i, i] for i in range(n)) for k in range(n)], dtype=F.dtype)
        gram = F.dot(A.mult, tr)
        return nullspace(F, gram, ncols=n)
    p = F.p
    levels = 0
    while p ** (levels + 1) <= n:
        levels += 1
    current = Subspace.full(F, n)
    for i in range(levels + 1):
        if current.dim == 0:
            break
        mod = p ** (i + 1)
        G = np.zeros((n, current.dim), dtype=np.int64)
        for j, u in enumerate(current.basis):
            Xs = F.matmul(A.left_matrix(u)[None], A.L)  # L_{u e_k} = L_u L_k
            P = _matrix_power_mod(Xs, p**i, mod)
            t = np.trace(P, axis1=1, axis2=2) % mod
            if np.any(t % p**i):
                raise AssertionError("trace of p^i-th power not divisible by p^i on the radical filtration")
            G[:, j] = (t // p**i) % p
        kernel = nullspace(F, G, ncols=current.dim)
        current = Subspace(F, n, F.matmul(kernel.basis, current.basis) if kernel.dim else None)
    return current


def _matrix_power_mod(X, e, mod):
    """``X^e mod mod`` for a stack of integer matrices."""
    n = X.shape[-1]
    # float64 products are exact while n * (mod - 1)^2 < 2^53
    exact = n * (mod - 1) ** 2 < 2**52
    dtype = np.float64 if exact else np.int64

    def mm(a, b):
        c = np.matmul(a, b)
        return (np.rint(c) if exact else c) % mod

    result = np.broadcast_to(np.eye(n, dtype=dtype), X.shape).copy()
    base = (X % mod).astype(dtype)
    while e:
        if e & 1:
            result = mm(result, base)
        base = mm(base, base)
        e >>= 1
    return result.astype(np.int64)


def radical_by_enumeration(A: Algebra, cap=DEFAULT_ENUMERATION_CAP) -> Subspace:
    """``J(A) = {x : 1 - a x is invertible for every a}``, decided by enumeration.

    Independent of :func:`jacobson_radical`; costs ``p^(2 dim A)`` rank checks.
    """
    F = A.field
    elems = enumerate_space(F, A.dim, cap)
    if len(elems) ** 2 > cap:
        raise ResourceError(len(elems) ** 2, cap)
    one = A.left_matrix(A.unit)
    members = []
    for x in elems:
        ok = True
        for a in elems:
            # L_{1 - a x} = I - L_a L_x ; left invertible iff full rank in finite dimension
            M = F.reduce(one - A.left_matrix(A.mul(a, x)))
            if rank(F, M) < A.dim:
                ok = False
                break
        if ok:
            members.append(x)
    return Subspace(F, A.dim, members)


def is_regular(A: Algebra) -> bool:
    """von Neumann regularity; in finite dimension this is ``J(A) = 0``."""
    return jacobson_radical(A).dim == 0


def regularity_witness(A: Algebra, a):
    """Some ``x`` with ``a x a = a``, or ``None``."""
    F = A.field
    a = a.coords if isinstance(a, Element) else F.array(a)
    La, Ra = A.left_matrix(a), A.right_matrix(a)
    M = F.matmul(La, Ra)  # x -> a x a
    sol = solve(F, M, a)
    if sol is None:
        return None
    return Element(A, sol[0])


# sub- and quotient algebras


def subalgebra(A: Algebra, U: Subspace, unit=None, name=None):
    """The algebra structure on a multiplicatively closed subspace.

    Returns ``(S, inclusion)`` where row ``i`` of ``inclusion`` is the image in
    ``A`` of the ``i``-th basis element of ``S``.  ``unit`` defaults to the
    unit of ``A``; pass an idempotent for corner algebras ``eAe``.
    """
    F = A.field
    unit = A.unit if unit is None else (unit.coords if isinstance(unit, Element) else F.array(unit))
    m = U.dim
    mult = F.zeros((m, m, m))
    for i, u in enumerate(U.basis):
        for j, v in enumerate(U.basis):
            c = U.coordinates(A.mul(u, v))
            if c is None:
                raise PreconditionError("subspace is not closed under multiplication")
            mult[i, j] = c
    cu = U.coordinates(unit)
    if cu is None:
        raise PreconditionError("subspace does not contain the requested unit")
    labels = [A.format(u) for u in U.basis]
    return Algebra(F, mult, cu, labels=labels, name=name), U.basis.copy()


def quotient_algebra(A: Algebra, I: Subspace, name=None):
    """``A / I`` for a two-sided ideal ``I``.

    Returns ``(Q, projection)`` where ``projection`` maps coordinate vectors of
    ``A`` (rows) to coordinates of ``Q``.  The basis of ``Q`` is the image of
    the standard basis vectors that are not pivots of ``I``.
    """
    F = A.field
    if not is_ideal(A, I):
        raise PreconditionError("not a two-sided ideal")
    comp = I.complement_indices()
    proj = I.project_complement(F.eye(A.dim))  # (dim A, dim Q)
    reps = F.eye(A.dim)[comp]
    m = len(comp)
    mult = F.zeros((m, m, m))
    for i, u in enumerate(reps):
        for j, v in enumerate(reps):
            mult[i, j] = I.project_complement(A.mul(u, v))
    unit = I.project_complement(A.unit)
    labels = [A.labels[c] for c in comp]
    return Algebra(F, mult, unit, labels=labels, name=name), proj


# idempotents


def is_idempotent(e: Element) -> bool:
    return e * e == e


def idempotent_join(e: Element, f: Element) -> Element:
    """``e ⊎ f = e + f - ef`` for commuting idempotents; ``Ae + Af = A(e ⊎ f)``."""
    if not (is_idempotent(e) and is_idempotent(f)):
        raise PreconditionError("idempotent_join needs idempotents")
    if e * f != f * e:
        raise PreconditionError("idempotent_join needs commuting idempotents")
    return e + f - e * f


def minimal_polynomial(A: Algebra, a, unit=None):
    """Monic minimal polynomial of ``a`` (coefficients low to high degree).

    ``unit`` is the identity of the (corner) algebra the powers live in.
    """
    F = A.field
    a = a.coords if isinstance(a, Element) else F.array(a)
    u = A.unit if unit is None else F.array(unit)
    powers = [u]
    while True:
        nxt = A.mul(powers[-1], a)
        M = np.stack(powers, axis=1)
        sol = solve(F, M, nxt)
        if sol is not None:
            c = sol[0]
            return [F.reduce(-x) for x in c] + [F(1)]
        powers.append(nxt)
        if len(powers) > A.dim + 1:
            raise AssertionError("minimal polynomial degree exceeds dimension")


def _rational_roots(coeffs):
    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], x, domain="QQ")
    roots = poly.ground_roots()
    if sum(roots.values()) != poly.degree() or any(m > 1 for m in roots.values()):
        raise NotSplitError("algebra does not split over QQ")
    return sorted(roots)


def central_idempotents(A: Algebra):
    """Primitive orthogonal idempotents of a commutative semisimple algebra.

    Over GF(p) the splitting runs inside the fixed points of ``x -> x^p``,
    which is a split subalgebra ``k^r`` sharing the primitive idempotents of
    ``A``.  Over QQ every basis element must have a minimal polynomial with
    distinct rational roots; otherwise :class:`NotSplitError` is raised.
    """
    F = A.field
    if not A.is_commutative():
        raise PreconditionError("central_idempotents needs a commutative algebra")
    if not is_regular(A):
        raise PreconditionError("central_idempotents needs a semisimple algebra")
    n = A.dim
    if F.p is not None:
        frob = np.stack([_power(A, F.unit_vector(n, i), F.p) for i in range(n)], axis=1)
        split = nullspace(F, F.reduce(frob - F.eye(n)), ncols=n).basis
    else:
        split = F.eye(n)
    idems = [A.unit]
    for s in split:
        refined = []
        for e in idems:
            y = A.mul(s, e)
            mp = minimal_polynomial(A, y, unit=e)
            if F.p is not None:
                roots = [lam for lam in range(F.p) if _poly_eval_scalar(F, mp, lam) == 0]
            else:
                roots = _rational_roots(mp)
            for lam in roots:
                part = e
                for mu in roots:
                    if mu == lam:
                        continue
                    factor = F.reduce((y - e * F(mu)) * F.inv(F(lam) - F(mu)))
                    part = A.mul(part, factor)
                refined.append(F.reduce(part))
        idems = refined
    if F.p is None:
        for e in idems:
            if rank(F, np.stack([A.mul(e, F.unit_vector(n, i)) for i in range(n)])) != 1:
                raise NotSplitError("algebra does not split over QQ")
    idems.sort(key=F.key)
    return [Element(A, e) for e in idems]


def _poly_eval_scalar(F, coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + int(c)) % F.p
    return acc


def _power(A, a, k):
    F = A.field
    result = A.unit
    base = F.array(a)
    while k:
        if k & 1:
            result = A.mul(result, base)
        base = A.mul(base, base)
        k >>= 1
    return result


def idempotents_by_enumeration(A: Algebra, cap=DEFAULT_ENUMERATION_CAP):
    """Every idempotent of ``A`` (oracle for small algebras)."""
    return [Element(A, v) for v in A.elements(cap) if np.array_equal(A.mul(v, v), v)]
