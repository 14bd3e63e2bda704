"""Classification of fat-point linear systems on a generic K3 surface.

A system L^n(d; m_1, ..., m_r) is the set of curves in |dH| on the blow-up
of a generic K3 surface (H^2 = n) passing through r general points with
multiplicities at least m_i.  Its virtual dimension is

    v = n*d^2/2 + 1 - sum m_i(m_i + 1)/2        (d >= 1)

and its expected dimension is e = max(v, -1).  The Segre-type speciality
conjecture for generic K3 surfaces (a Gimigliano-Harbourne-Hirschowitz
analogue) says the only special systems are the multiple-curve families

    L^4(d; 2d) = d * L^4(1; 2)   and   L^2(d; d,d) = d * L^2(1; 1,1),

d >= 2, each consisting of a single rigid divisor of dimension 0 with
h^1 = d - 1.  Every verdict that relies on the conjecture (dimension,
speciality, fixed/free structure, member kind) is marked conjectural;
v and e are unconditional.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .lattice import (
    DivisorClass,
    SurfaceParams,
    expected_dimension,
    virtual_dimension,
)


class NormalizationError(ValueError):
    """Invalid system data; `field` names the offending input field."""

    def __init__(self, message: str, field: str):
        super().__init__(message)
        self.field = field


class EmptySystemError(ValueError):
    """A general member was requested from a system with no members."""


class SpecialFamily(Enum):
    """The two conjecturally special multiple-curve families (d >= 2)."""

    QUARTIC_DOUBLE_POINT = "L4(d;2d)"
    QUADRIC_POINT_PAIR = "L2(d;d,d)"


class MemberKind(Enum):
    """Structure of the general member, conditional on the conjecture."""

    EMPTY = "empty"  # no members at all
    RIGID = "rigid"  # dimension 0: a single divisor, possibly non-reduced
    IRREDUCIBLE = "irreducible"  # general member irreducible and reduced
    COMPOSITE_WITH_PENCIL = "composite-with-pencil"  # members are unions of pencil members
    FIXED_PLUS_PENCIL = "fixed-plus-pencil"  # rigid fixed part plus a moving pencil


@dataclass(frozen=True)
class LinearSystemSpec:
    """Canonical description of L^n(d; m_1, ..., m_r).

    Multiplicities are stored sorted non-increasing with zeros removed;
    use `normalize` to build a spec from raw user data.  The
    `input_was_canonical` flag records whether normalization changed
    anything and is ignored by equality and hashing.
    """

    surface: SurfaceParams
    d: int
    mults: tuple[int, ...] = ()
    input_was_canonical: bool = field(default=True, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.d, int) or isinstance(self.d, bool):
            raise TypeError(f"degree d must be an int, got {self.d!r}")
        if self.d < 0:
            raise NormalizationError(f"degree d must be >= 0, got {self.d}", field="d")
        mults = tuple(self.mults)
        for m in mults:
            if not isinstance(m, int) or isinstance(m, bool):
                raise TypeError(f"multiplicities must be ints, got {m!r}")
            if m < 1:
                raise NormalizationError(
                    f"canonical multiplicities must be >= 1, got {m}", field="mults"
                )
        if any(mults[i] < mults[i + 1] for i in range(len(mults) - 1)):
            raise NormalizationError(
                f"canonical multiplicities must be sorted non-increasing, got {mults}",
                field="mults",
            )
        object.__setattr__(self, "mults", mults)

    @property
    def n(self) -> int:
        return self.surface.n

    @property
    def r(self) -> int:
        """Number of assigned base points."""
        return len(self.mults)

    def divisor_class(self) -> DivisorClass:
        return DivisorClass(self.surface, self.d, self.mults)

    def literal(self) -> str:
        """Canonical ASCII form, runs compressed: L2(3;2^4,1)."""
        if not self.mults:
            return f"L{self.n}({self.d})"
        return f"L{self.n}({self.d};{format_multiplicities(self.mults)})"

    def __str__(self) -> str:
        return self.literal()


def format_multiplicities(mults: tuple[int, ...]) -> str:
    """Run-compressed multiplicity list: (2,2,2,2,1) -> '2^4,1'."""
    parts = []
    i = 0
    while i < len(mults):
        j = i
        while j < len(mults) and mults[j] == mults[i]:
            j += 1
        count = j - i
        parts.append(f"{mults[i]}^{count}" if count >= 2 else str(mults[i]))
        i = j
    return ",".join(parts)


def normalize(n: int, d: int, mults=()) -> LinearSystemSpec:
    """Build a canonical spec from raw data, validating each field.

    Zero multiplicities are dropped (an unconstrained point imposes
    nothing) and the rest are sorted non-increasing; general points are
    interchangeable, so order never matters.  Negative data raises
    NormalizationError naming the offending field.
    """
    try:
        surface = SurfaceParams(n)
    except ValueError as exc:
        raise NormalizationError(str(exc), field="n") from None
    if d < 0:
        raise NormalizationError(f"degree d must be >= 0, got {d}", field="d")
    raw = tuple(mults)
    for m in raw:
        if m < 0:
            raise NormalizationError(f"multiplicities must be >= 0, got {m}", field="mults")
    canonical = tuple(sorted((m for m in raw if m > 0), reverse=True))
    return LinearSystemSpec(surface, d, canonical, input_was_canonical=(canonical == raw))


def virtual_dim(spec: LinearSystemSpec) -> int:
    """v = chi - h^2 - 1 of the associated divisor class."""
    return virtual_dimension(spec.divisor_class())


def expected_dim(spec: LinearSystemSpec) -> int:
    """e = max(v, -1)."""
    return expected_dimension(spec.divisor_class())


def special_family(spec: LinearSystemSpec) -> SpecialFamily | None:
    """The special family containing the system, if any (requires d >= 2).

    The d = 1 members L^4(1;2) and L^2(1;1,1) are the rigid generating
    curves themselves; they have v = 0 = dim and are not special.
    """
    if spec.d >= 2:
        if spec.n == 4 and spec.mults == (2 * spec.d,):
            return SpecialFamily.QUARTIC_DOUBLE_POINT
        if spec.n == 2 and spec.mults == (spec.d, spec.d):
            return SpecialFamily.QUADRIC_POINT_PAIR
    return None


def is_special(spec: LinearSystemSpec) -> bool:
    return special_family(spec) is not None


# The three rigid irreducible curves with C^2 = 1 (v = 0, t = 1); their
# doubles 2C again have v = 0 and decompose as the fixed divisor 2C.
_UNIT_CURVES = (
    (4, 1, (1, 1, 1)),
    (6, 1, (2, 1)),
    (10, 1, (3,)),
)
_DOUBLE_CURVES = {(n, 2 * t, tuple(2 * m for m in mults)): (n, t, mults) for n, t, mults in _UNIT_CURVES}


def _matches_pencil_chain(spec):
    # L^2(m+1; m+1, m), m >= 1: fixed part m copies of L^2(1;1,1), free pencil L^2(1;1)
    return spec.n == 2 and spec.r == 2 and spec.mults == (spec.d, spec.d - 1) and spec.d >= 2


def pattern_matches(spec: LinearSystemSpec) -> tuple[int, ...]:
    """Identifiers of the explicit structure patterns matching the system.

    1/2: the two special families; 3: the fixed-plus-pencil chain
    L^2(m+1; m+1, m); 4: doubles 2C of the three C^2 = 1 rigid curves;
    6: the composite-with-pencil system L^2(2; 2).  The patterns are
    pairwise disjoint; `hunt_counterexamples` rescans that claim.
    """
    fam = special_family(spec)
    matched = []
    if fam is SpecialFamily.QUARTIC_DOUBLE_POINT:
        matched.append(1)
    if fam is SpecialFamily.QUADRIC_POINT_PAIR:
        matched.append(2)
    if _matches_pencil_chain(spec):
        matched.append(3)
    if (spec.n, spec.d, spec.mults) in _DOUBLE_CURVES:
        matched.append(4)
    if (spec.n, spec.d, spec.mults) == (2, 2, (2,)):
        matched.append(6)
    return tuple(matched)


@dataclass(frozen=True)
class Decomposition:
    """Conjectural structure of a system: dimension, speciality, fixed/free parts.

    fixed_part is a tuple of (multiplicity, component) pairs; free_part is
    the moving system (None when everything is fixed or the system is
    empty).  The divisor classes of `multiplicity x component` summed with
    the free part always reconstruct the input class.  For a system
    composite with a pencil, `pencil` and `pencil_count` record the pencil
    whose member-unions fill the free part.  h1 is None when only the
    lower bound h1 >= h1_lower_bound is known (conjecturally empty systems
    with v < -1); otherwise h1 = dim - v.
    """

    spec: LinearSystemSpec
    special: SpecialFamily | None
    dimension: int
    h1: int | None
    h1_lower_bound: int
    member_kind: MemberKind
    fixed_part: tuple[tuple[int, LinearSystemSpec], ...] = ()
    free_part: LinearSystemSpec | None = None
    pencil: LinearSystemSpec | None = None
    pencil_count: int = 0
    conjectural: bool = True

    @property
    def is_special(self) -> bool:
        return self.special is not None

    def reconstructs(self) -> bool:
        """Check fixed + free parts sum to the input divisor class."""
        if not self.fixed_part and self.free_part is None:
            return True  # empty system: nothing to reconstruct
        total = DivisorClass(self.spec.surface, 0, ())
        for mult, comp in self.fixed_part:
            total = total + mult * comp.divisor_class()
        if self.free_part is not None:
            total = total + self.free_part.divisor_class()
        return total == self.spec.divisor_class()


def decompose(spec: LinearSystemSpec) -> Decomposition:
    """Classify a system under the speciality conjecture.

    Branch order: the two special families, the fixed-plus-pencil chain,
    the doubled C^2 = 1 curves, generic v = 0 (rigid), the composite
    pencil square L^2(2;2), empty (v < 0), irreducible (v > 0).  The
    explicit patterns are mutually exclusive, so only priority between a
    pattern and the generic v-sign branches matters.
    """
    v = virtual_dim(spec)
    matched = pattern_matches(spec)
    branch = matched[0] if matched else None
    n = spec.n

    if spec.d == 0 and spec.mults:
        # No degree-0 curve passes through a point, whatever v says; the
        # t = 0 classes with positive l sit outside the h^2 rule's domain.
        return Decomposition(
            spec=spec,
            special=None,
            dimension=-1,
            h1=0,
            h1_lower_bound=0,
            member_kind=MemberKind.EMPTY,
        )

    if branch in (1, 2):
        d = spec.d
        curve = (
            LinearSystemSpec(spec.surface, 1, (2,))
            if branch == 1
            else LinearSystemSpec(spec.surface, 1, (1, 1))
        )
        return Decomposition(
            spec=spec,
            special=special_family(spec),
            dimension=0,
            h1=0 - v,  # = d - 1
            h1_lower_bound=0 - v,
            member_kind=MemberKind.RIGID,
            fixed_part=((d, curve),),
        )
    if branch == 3:
        m = spec.d - 1
        fixed = LinearSystemSpec(spec.surface, 1, (1, 1))
        free = LinearSystemSpec(spec.surface, 1, (1,))
        return Decomposition(
            spec=spec,
            special=None,
            dimension=1,
            h1=1 - v,  # v = 1 here, so h1 = 0
            h1_lower_bound=1 - v,
            member_kind=MemberKind.FIXED_PLUS_PENCIL,
            fixed_part=((m, fixed),),
            free_part=free,
        )
    if branch == 4:
        cn, ct, cm = _DOUBLE_CURVES[(n, spec.d, spec.mults)]
        curve = LinearSystemSpec(SurfaceParams(cn), ct, cm)
        return Decomposition(
            spec=spec,
            special=None,
            dimension=0,
            h1=0,
            h1_lower_bound=0,
            member_kind=MemberKind.RIGID,
            fixed_part=((2, curve),),
        )
    if branch == 6:
        pencil = LinearSystemSpec(spec.surface, 1, (1,))
        return Decomposition(
            spec=spec,
            special=None,
            dimension=2,
            h1=0,
            h1_lower_bound=0,
            member_kind=MemberKind.COMPOSITE_WITH_PENCIL,
            free_part=spec,
            pencil=pencil,
            pencil_count=2,
        )
    if v == 0:
        return Decomposition(
            spec=spec,
            special=None,
            dimension=0,
            h1=0,
            h1_lower_bound=0,
            member_kind=MemberKind.RIGID,
            fixed_part=((1, spec),),
        )
    if v < 0:
        h1 = 0 if v == -1 else None
        return Decomposition(
            spec=spec,
            special=None,
            dimension=-1,
            h1=h1,
            h1_lower_bound=max(0, -1 - v),
            member_kind=MemberKind.EMPTY,
        )
    return Decomposition(
        spec=spec,
        special=None,
        dimension=v,
        h1=0,
        h1_lower_bound=0,
        member_kind=MemberKind.IRREDUCIBLE,
        free_part=spec,
    )


def dimension(spec: LinearSystemSpec) -> int:
    """Conjectural dimension of the system (-1 when empty)."""
    return decompose(spec).dimension


def h1(spec: LinearSystemSpec) -> int | None:
    """Conjectural h^1, or None when only a lower bound is known."""
    return decompose(spec).h1


def h1_lower_bound(spec: LinearSystemSpec) -> int:
    """Unconditional Riemann-Roch lower bound h^1 >= max(0, -1 - v)."""
    return decompose(spec).h1_lower_bound


def general_member_multiplicities(spec: LinearSystemSpec) -> tuple[int, ...]:
    """Point multiplicities of the general member (conjecturally exact).

    Raises EmptySystemError when the system has no members.
    """
    dec = decompose(spec)
    if dec.dimension < 0:
        raise EmptySystemError(
            f"{spec.literal()} is empty (v = {virtual_dim(spec)}); it has no general member"
        )
    return spec.mults
