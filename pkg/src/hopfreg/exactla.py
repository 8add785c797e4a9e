"""Exact linear algebra over prime fields GF(p) and the rationals.

Vectors and matrices are numpy arrays.  Over GF(p) entries are ``int64``
canonical representatives ``0..p-1``; over QQ they are ``object`` arrays of
:class:`fractions.Fraction`.  Every routine is generic in the field and never
touches floating point except as an exactness-checked fast path for
GF(p) matrix products.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from .errors import UsageError

# float64 products are exact while every partial sum stays below 2**52
_FLOAT_EXACT = 2**52


def _is_prime(n):
    if n < 2:
        return False
    for d in range(2, int(n**0.5) + 1):
        if n % d == 0:
            return False
    return True


class Field:
    """GF(p) for a prime ``p`` or QQ when ``p is None``."""

    __slots__ = ("p",)

    def __init__(self, p=None):
        if p is not None:
            p = int(p)
            if not _is_prime(p):
                raise UsageError(f"{p} is not prime")
            if p >= 2**13:
                raise UsageError("prime fields are limited to p < 8192")
        self.p = p

    @classmethod
    def parse(cls, spec):
        s = str(spec).strip().upper().replace(" ", "")
        if s in ("QQ", "Q", "RATIONAL"):
            return cls(None)
        if s.startswith("GF(") and s.endswith(")"):
            return cls(int(s[3:-1]))
        if s.isdigit():
            return cls(int(s))
        raise UsageError(f"unknown field {spec!r}")

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    @property
    def is_prime_field(self):
        return self.p is not None

    @property
    def characteristic(self):
        return 0 if self.p is None else self.p

    @property
    def dtype(self):
        return object if self.p is None else np.int64

    # scalars

    def __call__(self, x):
        if self.p is None:
            return Fraction(x)
        return int(x) % self.p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def format(self, x):
        if self.p is None:
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(int(x) % self.p)

    def parse_scalar(self, s):
        if self.p is None:
            return Fraction(str(s))
        v = int(str(s))
        if not 0 <= v < self.p:
            raise UsageError(f"{s!r} is not a canonical representative mod {self.p}")
        return v

    def elements(self):
        if self.p is None:
            raise UsageError("QQ cannot be enumerated")
        return list(range(self.p))

    # arrays

    def array(self, data):
        if self.p is None:
            arr = np.array(data, dtype=object)
            if arr.ndim == 0:
                return np.array(Fraction(arr.item()), dtype=object)
            return np.frompyfunc(Fraction, 1, 1)(arr).astype(object)
        return np.asarray(data, dtype=np.int64) % self.p

    def reduce(self, arr):
        if self.p is None:
            return arr
        return arr % self.p

    def zeros(self, shape):
        if self.p is None:
            z = np.empty(shape, dtype=object)
            z.fill(Fraction(0))
            return z
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n):
        m = self.zeros((n, n))
        for i in range(n):
            m[i, i] = self(1)
        return m

    def unit_vector(self, n, i):
        v = self.zeros(n)
        v[i] = self(1)
        return v

    def matmul(self, a, b):
        """Exact ``a @ b`` (broadcasting like :func:`numpy.matmul`)."""
        if self.p is None:
            return _qq_contract(np.matmul, [a, b], a.shape[-1])
        inner = a.shape[-1]
        if (self.p - 1) ** 2 * max(inner, 1) < _FLOAT_EXACT:
            prod = np.matmul(a.astype(np.float64), b.astype(np.float64))
            return np.rint(prod).astype(np.int64) % self.p
        return np.matmul(a, b) % self.p

    def integer_form(self, arr):
        """``(ints, d)`` with ``arr == ints / d``; ``ints`` is int64 when entries are small."""
        if self.p is not None:
            return arr, 1
        ints, d = _qq_scale(arr)
        if max(map(abs, ints.ravel().tolist()), default=0) < 2**20:
            ints = ints.astype(np.int64)
        return ints, d

    def dot(self, a, b):
        """Exact contraction of the last axis of ``a`` with the first axis of ``b``."""
        a = np.asarray(a)
        b = np.asarray(b)
        k = b.shape[0]
        out = self.matmul(a.reshape(-1, k), b.reshape(k, -1))
        return out.reshape(a.shape[:-1] + b.shape[1:])

    def einsum(self, spec, *ops):
        if self.p is None:
            inputs, out = spec.split("->")
            sizes = {}
            for idx, op in zip(inputs.split(","), ops):
                sizes.update(zip(idx, np.shape(op)))
            summed = math.prod(n for c, n in sizes.items() if c not in out)
            return _qq_contract(lambda *xs: np.einsum(spec, *xs, optimize=True), list(ops), summed)
        # contract pairwise so no intermediate sum overflows int64
        return np.einsum(spec, *ops, optimize=True) % self.p if len(ops) <= 2 else _pairwise_einsum(self, spec, ops)

    def all_vectors(self, dim):
        """Every vector of GF(p)^dim, in lexicographic coordinate order."""
        if self.p is None:
            raise UsageError("QQ cannot be enumerated")
        if dim == 0:
            return np.zeros((1, 0), dtype=np.int64)
        return np.array(list(itertools.product(range(self.p), repeat=dim)), dtype=np.int64)

    def key(self, v):
        """Hashable exact key of an array."""
        if self.p is None:
            return tuple(Fraction(x) for x in np.ravel(v))
        return tuple(int(x) for x in np.ravel(v))


_numer = np.frompyfunc(lambda x: x.numerator, 1, 1)
_denom = np.frompyfunc(lambda x: x.denominator, 1, 1)


def _qq_scale(arr):
    """``(ints, d)`` with ``arr == ints / d`` and ``ints`` an object array of ``int``."""
    arr = np.asarray(arr, dtype=object)
    if arr.size == 0:
        return arr.copy(), 1
    dens = _denom(arr)
    d = math.lcm(*set(dens.ravel().tolist()))
    ints = _numer(arr) * (d // dens) if d != 1 else _numer(arr)
    return np.asarray(ints, dtype=object), d


def _qq_contract(fn, ops, summed):
    """Evaluate a multilinear contraction of rational arrays through integers.

    ``summed`` bounds the number of terms in each output entry; when all
    partial sums fit in int64 the contraction runs in machine integers.
    """
    scaled = [_qq_scale(op) for op in ops]
    bound = max(summed, 1)
    for ints, _ in scaled:
        bound *= max(map(abs, ints.ravel().tolist()), default=0)
    if bound < 2**62:
        ints = [i.astype(np.int64) for i, _ in scaled]
    else:
        ints = [i for i, _ in scaled]
    res = fn(*ints)
    d = math.prod(dd for _, dd in scaled)
    out = np.array([Fraction(x, d) for x in np.ravel(res).tolist()], dtype=object).reshape(np.shape(res))
    return out if out.ndim else out[()]


def _pairwise_einsum(F, spec, ops):
    inputs, out = spec.split("->")
    terms = inputs.split(",")
    acc, acc_idx = ops[0], terms[0]
    for pos in range(1, len(ops)):
        op, idx = ops[pos], terms[pos]
        keep = set(out) | set("".join(terms[pos + 1:]))
        res_idx = "".join(dict.fromkeys(c for c in acc_idx + idx if c in keep))
        acc = np.einsum(f"{acc_idx},{idx}->{res_idx}", acc, op, optimize=True) % F.p
        acc_idx = res_idx
    return np.einsum(f"{acc_idx}->{out}", acc) % F.p


def rref(F, M):
    """Reduced row-echelon form.  Returns ``(R, pivots)`` with zero rows dropped."""
    R = F.reduce(np.array(M, dtype=F.dtype, copy=True))
    if R.ndim != 2:
        raise UsageError("rref expects a matrix")
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c] != 0)
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = F.reduce(R[r] * F.inv(R[r, c]))
        f = R[:, c].copy()
        f[r] = 0
        nzr = np.flatnonzero(f != 0)
        if nzr.size:
            R[nzr] = F.reduce(R[nzr] - np.outer(f[nzr], R[r]))
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rank(F, M):
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def nullspace(F, M, ncols=None):
    """Right kernel ``{x : M x = 0}`` as a :class:`Subspace`."""
    M = np.asarray(M, dtype=F.dtype)
    n = M.shape[1] if M.ndim == 2 and M.size else (ncols if ncols is not None else M.shape[-1])
    if M.size == 0:
        return Subspace.full(F, n)
    R, pivots = rref(F, M)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = F.zeros((len(free), n))
    for k, f in enumerate(free):
        basis[k, f] = F(1)
        for i, pc in enumerate(pivots):
            basis[k, pc] = F.reduce(-R[i, f])
    return Subspace(F, n, basis)


def solve(F, M, b):
    """Solve ``M x = b``.

    Returns ``(particular, nullspace)`` or ``None`` when inconsistent.  The
    particular solution sets every free variable to zero.
    """
    M = np.asarray(M, dtype=F.dtype)
    b = np.asarray(b, dtype=F.dtype)
    if M.ndim != 2 or b.shape != (M.shape[0],):
        raise UsageError(f"solve: matrix {M.shape} incompatible with right-hand side {b.shape}")
    n = M.shape[1]
    aug = np.concatenate([M, b.reshape(-1, 1)], axis=1)
    R, pivots = rref(F, aug) if aug.shape[0] else (F.zeros((0, n + 1)), [])
    if pivots and pivots[-1] == n:
        return None
    x = F.zeros(n)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, n]
    return x, nullspace(F, M, ncols=n)


def inverse(F, M):
    M = np.asarray(M, dtype=F.dtype)
    n = M.shape[0]
    if M.shape != (n, n):
        raise UsageError("inverse of a non-square matrix")
    if n == 0:
        return F.zeros((0, 0))
    R, pivots = rref(F, np.concatenate([M, F.eye(n)], axis=1))
    if pivots[:n] != list(range(n)):
        return None
    return R[:, n:]


class Subspace:
    """A subspace of ``F^n`` held in canonical reduced row-echelon form.

    Equal subspaces have identical ``basis`` arrays, so equality and hashing
    are exact.
    """

    __slots__ = ("field", "ambient_dim", "basis", "pivots", "_key")

    def __init__(self, F, ambient_dim, vectors=None):
        self.field = F
        self.ambient_dim = int(ambient_dim)
        if vectors is None or len(vectors) == 0:
            self.basis = F.zeros((0, self.ambient_dim))
            self.pivots = ()
        else:
            V = np.asarray(vectors, dtype=F.dtype).reshape(-1, self.ambient_dim)
            R, piv = rref(F, V)
            self.basis = R
            self.pivots = tuple(piv)
        self._key = None

    @classmethod
    def span(cls, F, vectors, ambient_dim):
        return cls(F, ambient_dim, vectors)

    @classmethod
    def zero(cls, F, n):
        return cls(F, n)

    @classmethod
    def full(cls, F, n):
        return cls(F, n, F.eye(n))

    @property
    def dim(self):
        return self.basis.shape[0]

    def __len__(self):
        return self.dim

    def __iter__(self):
        return iter(self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, {self.field})"

    def key(self):
        if self._key is None:
            self._key = (self.ambient_dim, self.field.key(self.basis))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.field == other.field and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def sort_key(self):
        return (self.dim, self.key())

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim or self.field != other.field:
            raise UsageError("subspaces live in different ambient spaces")

    def coordinates(self, v):
        """Coordinates of ``v`` in ``basis``, or ``None`` if ``v`` is not in the span."""
        v = np.asarray(v, dtype=self.field.dtype)
        if v.shape != (self.ambient_dim,):
            raise UsageError("vector has the wrong length")
        c = v[list(self.pivots)] if self.pivots else self.field.zeros(0)
        rest = v - (self.field.matmul(c, self.basis) if self.dim else 0)
        if np.any(self.field.reduce(rest) != 0):
            return None
        return c

    def contains(self, v):
        return self.coordinates(v) is not None

    __contains__ = contains

    def __add__(self, other):
        self._check(other)
        if other.dim == 0:
            return self
        if self.dim == 0:
            return other
        return Subspace(self.field, self.ambient_dim, np.concatenate([self.basis, other.basis]))

    def perp(self):
        """Annihilator under the standard bilinear form."""
        if self.dim == 0:
            return Subspace.full(self.field, self.ambient_dim)
        return nullspace(self.field, self.basis)

    def __and__(self, other):
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient_dim)
        return (self.perp() + other.perp()).perp()

    intersection = __and__

    def __le__(self, other):
        self._check(other)
        return all(other.contains(v) for v in self.basis)

    def is_zero(self):
        return self.dim == 0

    def is_full(self):
        return self.dim == self.ambient_dim

    def image(self, M):
        """Image of the subspace under the matrix ``M`` acting on column vectors."""
        F = self.field
        if self.dim == 0:
            return Subspace.zero(F, M.shape[0])
        return Subspace(F, M.shape[0], F.matmul(self.basis, np.asarray(M).T))

    def complement_indices(self):
        """Coordinate indices not used as pivots; they index a canonical complement."""
        piv = set(self.pivots)
        return [i for i in range(self.ambient_dim) if i not in piv]

    def project_complement(self, v):
        """Coordinates of ``v`` modulo the subspace, on the canonical complement."""
        F = self.field
        v = np.asarray(v, dtype=F.dtype)
        comp = self.complement_indices()
        if self.dim == 0:
            return v[..., comp]
        c = v[..., list(self.pivots)]
        r = F.reduce(v - F.matmul(c, self.basis))
        return r[..., comp]
