"""Decision procedures for relative regularity, biregularity and their characterisations.

Every universally quantified statement is decided over GF(p) by enumerating
the elements of ``A`` (bounded by ``cap``); over QQ only the structural
criteria (radicals) are exact.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .action import (
    Action,
    RepresentedExtension,
    cyclic_stable_ideal,
    cyclic_stable_ideals,
    invariants,
    is_stable,
    regular_module,
    restrict_action,
    stable_ideals_enumerate,
)
from .algebra import (
    DEFAULT_ENUMERATION_CAP,
    Element,
    central_idempotents,
    enumerate_space,
    idempotent_join,
    jacobson_radical,
    product_space,
    subalgebra,
)
from .errors import PreconditionError, TheoremViolation
from .exactla import Subspace, solve


@dataclass
class RegularityReport:
    """Verdicts of one check, with evidence for each verdict.

    ``agree`` lists groups of verdict labels that a theorem forces to be
    equal; ``consistent`` is true when every group is constant.
    """

    example_id: str
    check: str
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    agree: list = field(default_factory=list)
    applicable: bool = True
    notes: list = field(default_factory=list)

    def record(self, label, verdict, witness):
        self.verdicts[label] = bool(verdict)
        self.witnesses[label] = witness

    @property
    def consistent(self):
        return all(len({self.verdicts[k] for k in group}) <= 1 for group in self.agree)

    def disagreements(self):
        return [group for group in self.agree if len({self.verdicts[k] for k in group}) > 1]

    def to_dict(self):
        return {
            "example": self.example_id,
            "check": self.check,
            "applicable": self.applicable,
            "consistent": self.consistent,
            "verdicts": dict(sorted(self.verdicts.items())),
            "witnesses": dict(sorted(self.witnesses.items())),
            "notes": list(self.notes),
        }


def _name(obj):
    return getattr(obj, "name", None) or "?"


def fmt_subspace(A, U: Subspace):
    if U.dim == 0:
        return "0"
    if U.dim == A.dim:
        return "A"
    return "span{" + ", ".join(A.format(v) for v in U.basis) + "}"


def left_multiples(A, W: Subspace) -> Subspace:
    """``A·W`` as a subspace of ``A``."""
    F = A.field
    vecs = [A.mul(F.unit_vector(A.dim, i), w) for i in range(A.dim) for w in W.basis]
    return Subspace(F, A.dim, vecs)


def _invariants(ext):
    cached = getattr(ext, "_invariants_cache", None)
    if cached is None:
        cached = invariants(ext)
        ext._invariants_cache = cached
    return cached


def invariant_algebra(ext):
    """``A^B`` as an algebra together with its inclusion into ``A``."""
    return subalgebra(ext.A, _invariants(ext), name=f"{_name(ext.A)}^B")


def _assert_theorem(report):
    if not report.consistent:
        raise TheoremViolation(
            f"{report.check} on {report.example_id}: procedures disagree on {report.disagreements()}", report
        )
    return report


# summands


def summand_idempotent(ext: RepresentedExtension, I: Subspace, over="B"):
    """An idempotent ``e`` with ``I = Ae`` and ``A = Ae ⊕ A(1-e)`` as ``B``-modules.

    Solves ``v e = v`` for all basis vectors ``v`` of ``I`` with ``e`` in
    ``I ∩ A^B`` (``over="B"``) or in ``I`` (``over="A"``, an ``A``-module
    summand).  Returns ``None`` when no such ``e`` exists.
    """
    F = ext.field
    A = ext.A
    if not is_stable(regular_module(ext), I):
        raise PreconditionError("ideal is not B-stable")
    if I.dim == 0:
        return A.zero()
    W = I & _invariants(ext) if over == "B" else I
    if W.dim == 0:
        return None
    cols = [np.concatenate([A.mul(v, w) for v in I.basis]) for w in W.basis]
    sol = solve(F, np.stack(cols, axis=1), np.concatenate(list(I.basis)))
    if sol is None:
        return None
    e = F.matmul(sol[0].reshape(1, -1), W.basis).reshape(-1)
    assert np.array_equal(A.mul(e, e), e), "summand generator is not idempotent"
    Ae = left_multiples(A, Subspace(F, A.dim, [e]))
    assert Ae == I, "Ae differs from I"
    co = left_multiples(A, Subspace(F, A.dim, [F.reduce(A.unit - e)]))
    assert Ae.dim + co.dim == A.dim and (Ae & co).dim == 0, "A is not Ae ⊕ A(1-e)"
    if over == "B":
        Re = A.right_matrix(e)
        for b in range(ext.B.dim):
            assert np.array_equal(F.matmul(ext.psi[b], Re), F.matmul(Re, ext.psi[b])), "a -> ae is not B-linear"
    return Element(A, e)


def _summand_report(ext, check, label, cap, example_id, central):
    A = ext.A
    F = ext.field
    report = RegularityReport(example_id, check)
    cyclic = cyclic_stable_ideals(ext, cap)
    idems = {}
    counter = None
    for I, a in cyclic.items():
        e = summand_idempotent(ext, I)
        idems[I] = e
        if e is None and counter is None:
            counter = (a, I)
    if counter is not None:
        a, I = counter
        report.record(label, False, f"B·({A.format(a)}) = {fmt_subspace(A, I)} is not a direct summand")
        return report
    # every finitely generated stable ideal is then a summand as well
    found = [e for e in idems.values() if not e.is_zero()]
    for i, e in enumerate(found):
        for f in found[i + 1:]:
            if e * f != f * e:
                continue
            g = idempotent_join(e, f)
            lhs = left_multiples(A, Subspace(F, A.dim, [e.coords, f.coords]))
            if left_multiples(A, Subspace(F, A.dim, [g.coords])) != lhs:
                raise TheoremViolation(f"A(e ⊎ f) differs from Ae + Af on {example_id}")
    for I in stable_ideals_enumerate(ext, cap):
        if I not in idems and summand_idempotent(ext, I) is None:
            raise TheoremViolation(f"sum of summands {fmt_subspace(A, I)} is not a summand on {example_id}")
    if central:
        for e in found:
            assert all(e * x == x * e for x in A.basis()), "summand idempotent is not central"
    gens = sorted({A.format(e.coords) for e in idems.values()})
    report.record(label, True, f"{len(cyclic)} cyclic stable ideals, generated by idempotents {gens}")
    return report


def is_H_regular(act: Action, cap=DEFAULT_ENUMERATION_CAP) -> RegularityReport:
    """Every cyclic ``A#H``-stable left ideal ``B·a`` is ``Ae`` with ``e = e² ∈ A^H``."""
    return _summand_report(act.smash(), "regular", "H-regular", cap, _name(act), central=False)


def is_H_biregular(act: Action, cap=DEFAULT_ENUMERATION_CAP) -> RegularityReport:
    """Every cyclic ``A^e⋈H``-stable ideal is ``Ae`` with ``e = e² ∈ Z(A)^H``."""
    return _summand_report(act.algebroid(), "biregular", "H-biregular", cap, _name(act), central=True)


def is_H_simple(act: Action, restricted_to=None, kind="algebroid", cap=DEFAULT_ENUMERATION_CAP) -> bool:
    """Whether ``0`` and ``A`` (or ``0`` and ``Ae``) are the only stable ideals.

    ``kind="algebroid"`` uses two-sided stable ideals (``A^e⋈H``),
    ``kind="smash"`` left stable ideals (``A#H``).
    """
    if restricted_to is not None:
        act = restrict_action(act, restricted_to)
    ext = act.algebroid() if kind == "algebroid" else act.smash()
    F = ext.field
    trivial = {Subspace.zero(F, ext.A.dim), Subspace.full(F, ext.A.dim)}
    return set(cyclic_stable_ideals(ext, cap)) <= trivial and ext.A.dim > 0


# lattice helpers


def maximal_ideals(lattice, n):
    proper = [I for I in lattice if I.dim < n]
    return [I for I in proper if not any(I != J and I <= J for J in proper)]


def _radical_witness(alg, incl, rad):
    v = rad.basis[0]
    return alg.field.matmul(v.reshape(1, -1), incl).reshape(-1)


def check_biregularity_theorem(act: Action, cap=DEFAULT_ENUMERATION_CAP) -> RegularityReport:
    """Evaluate the three characterisations of biregularity independently.

    (a) every cyclic two-sided stable ideal is generated by a central
    invariant idempotent; (b) ``Z(A)^H`` is regular and every maximal stable
    ideal ``M`` equals ``A·M^B``; (c) ``Z(A)^H`` is regular and each block
    ``Ae_i`` over its primitive idempotents is ``H``-simple.
    """
    ext = act.algebroid()
    A = ext.A
    F = ext.field
    a_rep = is_H_biregular(act, cap)
    report = RegularityReport(_name(act), "biregularity-theorem")
    report.record("(a) biregular", a_rep.verdicts["H-biregular"], a_rep.witnesses["H-biregular"])

    Z = _invariants(ext)
    zalg, incl = invariant_algebra(ext)
    zrad = jacobson_radical(zalg)
    zreg = zrad.dim == 0
    if zreg:
        lattice = stable_ideals_enumerate(ext, cap)
        bad = None
        maxi = maximal_ideals(lattice, A.dim)
        for M in maxi:
            if left_multiples(A, M & Z) != M:
                bad = M
                break
        if bad is None:
            report.record("(b) maximal ideals generated by invariants", True,
                          f"{len(maxi)} maximal stable ideals, each M = A·M^B")
        else:
            report.record("(b) maximal ideals generated by invariants", False,
                          f"maximal stable ideal {fmt_subspace(A, bad)} differs from A·M^B")
        idems = [F.matmul(e.coords.reshape(1, -1), incl).reshape(-1) for e in central_idempotents(zalg)]
        nonsimple = [e for e in idems if not is_H_simple(act, restricted_to=e, cap=cap)]
        if nonsimple:
            report.record("(c) blocks simple", False, f"A·({A.format(nonsimple[0])}) is not H-simple")
        else:
            report.record("(c) blocks simple", True,
                          f"blocks Ae for e in {[A.format(e) for e in idems]} are H-simple")
    else:
        w = f"Z(A)^H has nonzero radical element {A.format(_radical_witness(zalg, incl, zrad))}"
        report.record("(b) maximal ideals generated by invariants", False, w)
        report.record("(c) blocks simple", False, w)
    report.agree.append(list(report.verdicts))
    return _assert_theorem(report)


def check_regularity_proposition(act: Action, cap=DEFAULT_ENUMERATION_CAP) -> RegularityReport:
    """Enumerated ``H``-regularity versus ``A^H`` regular plus ``A`` a self-generator."""
    ext = act.smash()
    A = ext.A
    reg = is_H_regular(act, cap)
    report = RegularityReport(_name(act), "regularity-proposition")
    report.record("(i) H-regular", reg.verdicts["H-regular"], reg.witnesses["H-regular"])
    alg, incl = invariant_algebra(ext)
    rad = jacobson_radical(alg)
    label = "(ii) A^H regular and self-generator"
    if rad.dim:
        report.record(label, False,
                      f"A^H has nonzero radical element {A.format(_radical_witness(alg, incl, rad))}")
    else:
        Inv = _invariants(ext)
        bad = next((I for I in stable_ideals_enumerate(ext, cap) if left_multiples(A, I & Inv) != I), None)
        if bad is None:
            report.record(label, True, "radical(A^H) = 0 and every stable ideal I = A·I^H")
        else:
            report.record(label, False, f"stable ideal {fmt_subspace(A, bad)} is not generated by its invariants")
    report.agree.append(list(report.verdicts))
    return _assert_theorem(report)


# semi-projectivity and the fixed ring


def _invariant_elements(ext, cap):
    """Every element of ``A^B`` (GF(p)) or a basis of it (QQ)."""
    F = ext.field
    W = _invariants(ext)
    if F.p is None:
        return list(W.basis), True
    coeffs = enumerate_space(F, W.dim, cap)
    return list(F.matmul(coeffs, W.basis)) if W.dim else [F.zeros(ext.A.dim)], False


def semi_projectivity_counterexample(ext: RepresentedExtension, cap=DEFAULT_ENUMERATION_CAP):
    """``(x, heuristic)`` with ``x ∈ A^B`` violating ``(Ax)^B = A^B x``, or ``(None, heuristic)``."""
    A = ext.A
    F = ext.field
    W = _invariants(ext)
    elems, heuristic = _invariant_elements(ext, cap)
    for x in elems:
        Ax = left_multiples(A, Subspace(F, A.dim, [x]))
        WX = Subspace(F, A.dim, [A.mul(w, x) for w in W.basis])
        if Ax & W != WX:
            return x, heuristic
    return None, heuristic


def is_semi_projective(ext: RepresentedExtension, cap=DEFAULT_ENUMERATION_CAP) -> bool:
    """``(Ax)^B = A^B x`` for every ``x ∈ A^B``.

    Exact over GF(p).  Over QQ only a basis of ``A^B`` is tested and a
    warning flags the answer as heuristic.
    """
    x, heuristic = semi_projectivity_counterexample(ext, cap)
    if heuristic:
        warnings.warn("semi-projectivity over QQ tested on a basis of A^B only (heuristic)", stacklevel=2)
    return x is None


def _fixring_block(report, ext, prefix, cap):
    A = ext.A
    alg, incl = invariant_algebra(ext)
    rad = jacobson_radical(alg)
    left = f"{prefix}: A^B regular"
    if rad.dim:
        report.record(left, False, f"radical element {A.format(_radical_witness(alg, incl, rad))}")
    else:
        report.record(left, True, f"radical of A^B (dim {alg.dim}) is zero")
    right = f"{prefix}: semi-projective and invariant cyclic ideals are summands"
    x, _ = semi_projectivity_counterexample(ext, cap)
    if x is not None:
        report.record(right, False, f"(Ax)^B differs from A^B x at x = {A.format(x)}")
    else:
        elems, _ = _invariant_elements(ext, cap)
        bad = next((x for x in elems if summand_idempotent(ext, cyclic_stable_ideal(ext, x)) is None), None)
        if bad is None:
            report.record(right, True, f"semi-projective; B·x is a summand for all {len(elems)} invariants x")
        else:
            report.record(right, False, f"B·({A.format(bad)}) is not a direct summand")
    report.agree.append([left, right])


def check_fixring_proposition(target, cap=DEFAULT_ENUMERATION_CAP) -> RegularityReport:
    """``A^B`` regular versus semi-projectivity plus summand cyclic ideals ``B·x``, ``x ∈ A^B``.

    ``target`` is an extension, or an action, in which case both ``A#H``
    and ``A^e⋈H`` (``A^B = Z(A)^H``) are checked.
    """
    report = RegularityReport(_name(target), "fixring-proposition")
    if isinstance(target, Action):
        _fixring_block(report, target.smash(), "A#H", cap)
        _fixring_block(report, target.algebroid(), "A^e⋈H", cap)
    else:
        _fixring_block(report, target, target.kind or "B", cap)
    return _assert_theorem(report)


def is_invariants_large(ext: RepresentedExtension, cap=DEFAULT_ENUMERATION_CAP) -> bool:
    """Every nonzero stable ideal meets ``A^B`` nontrivially."""
    W = _invariants(ext)
    return all(I.dim == 0 or (I & W).dim > 0 for I in cyclic_stable_ideals(ext, cap))


# properties of biregular algebras


def _ideals_of_invariants(ext, cap):
    """All ideals of the commutative algebra ``A^B``, as subspaces of ``A``."""
    A = ext.A
    F = ext.field
    W = _invariants(ext)
    elems, _ = _invariant_elements(ext, cap)
    principal = {Subspace(F, A.dim, [A.mul(w, x) for w in W.basis]) for x in elems}
    found = set(principal)
    frontier = list(principal)
    while frontier:
        nxt = []
        for I in frontier:
            for J in principal:
                S = I + J
                if S not in found:
                    found.add(S)
                    nxt.append(S)
        frontier = nxt
    return sorted(found, key=Subspace.sort_key)


def stable_ideal_properties(act: Action, cap=DEFAULT_ENUMERATION_CAP) -> RegularityReport:
    """Structural consequences of biregularity, checked on the stable-ideal lattice.

    Marked inapplicable when ``A`` is not ``H``-biregular.
    """
    ext = act.algebroid()
    A = ext.A
    F = ext.field
    report = RegularityReport(_name(act), "stable-ideal-properties")
    bireg = is_H_biregular(act, cap)
    if not bireg.verdicts["H-biregular"]:
        report.applicable = False
        report.notes.append("not H-biregular: " + bireg.witnesses["H-biregular"])
        return report
    lattice = stable_ideals_enumerate(ext, cap)
    W = _invariants(ext)
    n = A.dim

    alg, incl = invariant_algebra(ext)
    rad = jacobson_radical(alg)
    nilpotent = []
    for I in lattice:
        P = I
        for _ in range(n + 1):
            P = product_space(A, P, I)
        if I.dim and P.dim == 0:
            nilpotent.append(I)
    report.record("(1) A^B regular and A semiprime", rad.dim == 0 and not nilpotent,
                  "radical(Z(A)^H) = 0, no nilpotent stable ideal" if rad.dim == 0 and not nilpotent
                  else f"radical dim {rad.dim}, nilpotent ideals {[fmt_subspace(A, I) for I in nilpotent]}")

    ideals = _ideals_of_invariants(ext, cap)
    images = [left_multiples(A, J) for J in ideals]
    bij = sorted(set(images), key=Subspace.sort_key) == lattice and len(set(images)) == len(ideals)
    inverse_ok = all((N & W) == J for J, N in zip(ideals, images))
    report.record("(2) I -> IA bijective", bij and inverse_ok,
                  f"{len(ideals)} ideals of A^B, {len(lattice)} stable ideals")

    gens = {}
    for I in lattice:
        gens[I] = summand_idempotent(ext, I)
    ok3 = all(e is not None for e in gens.values())
    if ok3:
        for I in lattice:
            for J in lattice:
                g = idempotent_join(gens[I], gens[J])
                ok3 &= left_multiples(A, Subspace(F, n, [g.coords])) == I + J
    report.record("(3) stable ideals generated by central idempotents", ok3,
                  f"{sum(e is not None for e in gens.values())}/{len(lattice)} ideals have a generator")

    maxi = maximal_ideals(lattice, n)
    full = Subspace.full(F, n)
    idem = all(product_space(A, I, I) == I for I in lattice)
    inter = True
    for I in lattice:
        acc = full
        for M in maxi:
            if I <= M:
                acc = acc & M
        inter &= acc == I
    report.record("(5) idempotent ideals, intersections of maximal ones", idem and inter,
                  f"{len(maxi)} maximal stable ideals")

    prime_not_max = []
    for I in lattice:
        if I.dim == n:
            continue
        prime = all(J <= I or K <= I for J in lattice for K in lattice if product_space(A, J, K) <= I)
        if prime and I not in maxi:
            prime_not_max.append(I)
    report.record("(6) prime stable ideals are maximal", not prime_not_max,
                  "every prime stable ideal is maximal" if not prime_not_max
                  else f"prime but not maximal: {fmt_subspace(A, prime_not_max[0])}")
    report.agree.append(list(report.verdicts) + ["biregular"])
    report.verdicts["biregular"] = True
    report.witnesses["biregular"] = bireg.witnesses["H-biregular"]
    return _assert_theorem(report)
