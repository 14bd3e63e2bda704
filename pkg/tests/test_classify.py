"""Classifier: normalization, speciality, dimension/h1, decomposition branches.

Frozen dimensions come from the independent closed-form oracle
(v = n*d^2/2 + 1 - sum m(m+1)/2 over exact rationals); structure verdicts
follow the conjecture's explicit patterns.
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from k3linsys.classify import (
    Decomposition,
    EmptySystemError,
    LinearSystemSpec,
    MemberKind,
    NormalizationError,
    SpecialFamily,
    decompose,
    dimension,
    expected_dim,
    format_multiplicities,
    general_member_multiplicities,
    h1,
    h1_lower_bound,
    is_special,
    normalize,
    pattern_matches,
    special_family,
    virtual_dim,
)
from k3linsys.lattice import SurfaceParams, intersect


def spec(n, d, *mults):
    return normalize(n, d, mults)


class TestNormalize:
    def test_sort_and_drop_zeros(self):
        s = normalize(2, 3, [1, 2, 0, 2])
        assert (s.n, s.d, s.mults) == (2, 3, (2, 2, 1))
        assert not s.input_was_canonical

    def test_idempotent(self):
        s = normalize(2, 3, [2, 2, 1])
        assert s.mults == (2, 2, 1)
        assert s.input_was_canonical
        s2 = normalize(s.n, s.d, s.mults)
        assert s2 == s and s2.input_was_canonical

    def test_no_points(self):
        assert normalize(4, 1).mults == ()

    def test_odd_n_rejected(self):
        with pytest.raises(NormalizationError, match="n must be even") as exc:
            normalize(3, 1, [1])
        assert exc.value.field == "n"

    def test_small_n_rejected(self):
        with pytest.raises(NormalizationError) as exc:
            normalize(0, 1, [1])
        assert exc.value.field == "n"

    def test_negative_degree_rejected(self):
        with pytest.raises(NormalizationError) as exc:
            normalize(2, -1, [1])
        assert exc.value.field == "d"

    def test_negative_multiplicity_rejected(self):
        with pytest.raises(NormalizationError) as exc:
            normalize(2, 1, [1, -2])
        assert exc.value.field == "mults"

    def test_constructor_requires_canonical(self):
        with pytest.raises(NormalizationError):
            LinearSystemSpec(SurfaceParams(2), 1, (1, 2))
        with pytest.raises(NormalizationError):
            LinearSystemSpec(SurfaceParams(2), 1, (1, 0))

    def test_provenance_ignored_by_equality(self):
        a = normalize(2, 3, [2, 1])
        b = normalize(2, 3, [1, 2])
        assert a == b and a.input_was_canonical and not b.input_was_canonical

    def test_literal(self):
        assert spec(2, 3, 2, 2, 2, 2, 1).literal() == "L2(3;2^4,1)"
        assert spec(2, 3).literal() == "L2(3)"
        assert spec(4, 1, 2).literal() == "L4(1;2)"

    def test_format_multiplicities(self):
        assert format_multiplicities((2, 2, 2, 2, 1)) == "2^4,1"
        assert format_multiplicities((3, 1, 1)) == "3,1^2"
        assert format_multiplicities((5,)) == "5"


class TestSpeciality:
    def test_quartic_family(self):
        s = spec(4, 3, 6)
        assert special_family(s) is SpecialFamily.QUARTIC_DOUBLE_POINT
        assert is_special(s)

    def test_quadric_family(self):
        s = spec(2, 5, 5, 5)
        assert special_family(s) is SpecialFamily.QUADRIC_POINT_PAIR
        assert is_special(s)

    def test_generators_not_special(self):
        # d >= 2 required: the d = 1 curves are rigid but non-special
        assert not is_special(spec(2, 1, 1, 1))
        assert not is_special(spec(4, 1, 2))

    def test_doubles_of_unit_curves_not_special(self):
        assert not is_special(spec(10, 2, 6))

    def test_family_tags(self):
        assert SpecialFamily.QUARTIC_DOUBLE_POINT.value == "L4(d;2d)"
        assert SpecialFamily.QUADRIC_POINT_PAIR.value == "L2(d;d,d)"

    @pytest.mark.parametrize("d", range(2, 51))
    def test_both_families_across_degrees(self, d):
        a, b = spec(4, d, 2 * d), spec(2, d, d, d)
        for s in (a, b):
            assert is_special(s)
            assert virtual_dim(s) == 1 - d
            dec = decompose(s)
            assert dec.dimension == 0
            assert dec.h1 == d - 1


class TestDimension:
    def test_special_dim_zero_despite_negative_v(self):
        assert virtual_dim(spec(4, 3, 6)) == -2
        assert dimension(spec(4, 3, 6)) == 0

    @pytest.mark.parametrize("m", range(1, 8))
    def test_pencil_chain_dim_one(self, m):
        assert dimension(spec(2, m + 1, m + 1, m)) == 1

    def test_composite_square(self):
        assert dimension(spec(2, 2, 2)) == 2

    def test_empty(self):
        # frozen: v(L6(1;2,2)) = 3+1-3-3 = -2
        assert virtual_dim(spec(6, 1, 2, 2)) == -2
        assert dimension(spec(6, 1, 2, 2)) == -1

    def test_irreducible_dim_is_v(self):
        # frozen: closed form gives 49 for L4(5;1,1)
        assert dimension(spec(4, 5, 1, 1)) == 49
        assert dimension(spec(8, 3, 5, 4, 3, 2)) == 3

    def test_expected_dim(self):
        assert expected_dim(spec(4, 3, 6)) == -1
        assert expected_dim(spec(2, 1, 1, 1)) == 0


class TestH1:
    def test_special(self):
        assert h1(spec(4, 5, 10)) == 4
        assert h1(spec(2, 3, 3, 3)) == 2

    def test_non_special(self):
        assert h1(spec(2, 1, 1, 1)) == 0
        assert h1(spec(2, 2, 2)) == 0

    def test_empty_v_minus_one(self):
        s = spec(2, 1, 2)  # v = -1
        assert virtual_dim(s) == -1
        assert h1(s) == 0
        assert h1_lower_bound(s) == 0

    def test_empty_deep(self):
        s = spec(4, 1, 3)  # v = -3: only the bound is known
        assert virtual_dim(s) == -3
        assert h1(s) is None
        assert h1_lower_bound(s) == 2


class TestDecompose:
    def test_branch1_quartic_family(self):
        dec = decompose(spec(4, 3, 6))
        assert dec.special is SpecialFamily.QUARTIC_DOUBLE_POINT
        assert dec.member_kind is MemberKind.RIGID
        assert dec.fixed_part == ((3, spec(4, 1, 2)),)
        assert dec.free_part is None
        assert (dec.dimension, dec.h1) == (0, 2)
        assert dec.reconstructs()

    def test_branch2_quadric_family(self):
        dec = decompose(spec(2, 4, 4, 4))
        assert dec.special is SpecialFamily.QUADRIC_POINT_PAIR
        assert dec.fixed_part == ((4, spec(2, 1, 1, 1)),)
        assert dec.member_kind is MemberKind.RIGID
        assert dec.reconstructs()

    def test_branch3_fixed_plus_pencil(self):
        dec = decompose(spec(2, 4, 4, 3))
        assert dec.member_kind is MemberKind.FIXED_PLUS_PENCIL
        assert dec.fixed_part == ((3, spec(2, 1, 1, 1)),)
        assert dec.free_part == spec(2, 1, 1)
        assert dec.dimension == 1
        assert not dec.is_special
        assert dec.reconstructs()

    def test_branch3_free_part_alignment(self):
        # reconstruction forces the pencil onto the higher-multiplicity point
        dec = decompose(spec(2, 2, 2, 1))
        fixed_class = dec.fixed_part[0][1].divisor_class() * dec.fixed_part[0][0]
        total = fixed_class + dec.free_part.divisor_class()
        assert total == spec(2, 2, 2, 1).divisor_class()

    def test_branch3_pencil_meets_fixed_once(self):
        dec = decompose(spec(2, 4, 4, 3))
        assert intersect(dec.free_part.divisor_class(), dec.fixed_part[0][1].divisor_class()) == 1

    @pytest.mark.parametrize(
        "double,curve",
        [
            ((4, 2, (2, 2, 2)), (4, 1, (1, 1, 1))),
            ((6, 2, (4, 2)), (6, 1, (2, 1))),
            ((10, 2, (6,)), (10, 1, (3,))),
        ],
    )
    def test_branch4_doubled_unit_curves(self, double, curve):
        s = spec(double[0], double[1], *double[2])
        assert virtual_dim(s) == 0
        dec = decompose(s)
        assert dec.member_kind is MemberKind.RIGID
        assert dec.fixed_part == ((2, spec(curve[0], curve[1], *curve[2])),)
        assert dec.dimension == 0 and not dec.is_special
        assert dec.reconstructs()

    def test_branch5_generic_rigid(self):
        s = spec(2, 3, 2, 2, 2, 1)  # frozen: v = 0
        dec = decompose(s)
        assert dec.member_kind is MemberKind.RIGID
        assert dec.fixed_part == ((1, s),)
        assert dec.dimension == 0

    def test_branch5_lemma_table_classes(self):
        for args in [(2, 1, 1, 1), (4, 1, 2), (4, 1, 1, 1, 1), (6, 1, 2, 1), (10, 1, 3)]:
            dec = decompose(spec(*args))
            assert dec.member_kind is MemberKind.RIGID
            assert dec.dimension == 0

    def test_branch6_composite_with_pencil(self):
        dec = decompose(spec(2, 2, 2))
        assert dec.member_kind is MemberKind.COMPOSITE_WITH_PENCIL
        assert dec.dimension == 2
        assert dec.fixed_part == ()
        assert dec.pencil == spec(2, 1, 1)
        assert dec.pencil_count == 2
        assert dec.pencil_count * dec.pencil.divisor_class().t == dec.free_part.divisor_class().t
        assert dec.reconstructs()

    def test_branch7_empty(self):
        dec = decompose(spec(6, 1, 2, 2))
        assert dec.member_kind is MemberKind.EMPTY
        assert dec.dimension == -1
        assert dec.fixed_part == () and dec.free_part is None

    def test_branch8_irreducible(self):
        dec = decompose(spec(4, 5, 1, 1))
        assert dec.member_kind is MemberKind.IRREDUCIBLE
        assert dec.dimension == 49
        assert dec.fixed_part == () and dec.free_part == spec(4, 5, 1, 1)

    def test_degenerate_degrees(self):
        # d = 0, no points: the trivial class, a single (empty) divisor
        dec = decompose(spec(2, 0))
        assert dec.member_kind is MemberKind.RIGID and dec.dimension == 0
        # d = 0 with a point: no degree-0 curve passes through it
        dec = decompose(spec(2, 0, 1))
        assert dec.member_kind is MemberKind.EMPTY

    def test_conjectural_flag(self):
        assert decompose(spec(2, 2, 2)).conjectural is True


class TestGeneralMember:
    def test_returns_imposed_multiplicities(self):
        assert general_member_multiplicities(spec(2, 3, 2, 2, 1)) == (2, 2, 1)
        assert general_member_multiplicities(spec(4, 3, 6)) == (6,)
        assert general_member_multiplicities(spec(2, 1)) == ()

    def test_empty_rejected(self):
        with pytest.raises(EmptySystemError, match="empty"):
            general_member_multiplicities(spec(6, 1, 2, 2))


def iter_small_specs(max_n=10, max_d=4, max_mass=24, max_points=4):
    for n in range(2, max_n + 1, 2):
        for d in range(0, max_d + 1):
            stack = [()]
            while stack:
                mults = stack.pop()
                yield normalize(n, d, mults)
                last = mults[-1] if mults else 8
                for m in range(1, last + 1):
                    cand = mults + (m,)
                    if len(cand) <= max_points and sum(x * (x + 1) for x in cand) <= max_mass:
                        stack.append(cand)


class TestInvariantScans:
    def test_branches_pairwise_disjoint(self):
        for s in iter_small_specs():
            assert len(pattern_matches(s)) <= 1, s

    def test_empty_iff_dim_minus_one(self):
        for s in iter_small_specs():
            dec = decompose(s)
            assert (dec.member_kind is MemberKind.EMPTY) == (dec.dimension == -1), s

    def test_special_iff_definite_h1_positive(self):
        for s in iter_small_specs():
            dec = decompose(s)
            if dec.h1 is not None:
                assert dec.is_special == (dec.h1 > 0), s

    def test_special_iff_dim_exceeds_expected(self):
        for s in iter_small_specs():
            dec = decompose(s)
            if dec.dimension >= 0:
                assert dec.is_special == (dec.dimension > expected_dim(s)), s

    def test_special_fixed_parts_are_multiple(self):
        for s in iter_small_specs():
            dec = decompose(s)
            if dec.is_special:
                assert any(mult >= 2 for mult, _ in dec.fixed_part), s

    def test_reconstruction_everywhere(self):
        for s in iter_small_specs():
            assert decompose(s).reconstructs(), s

    def test_h1_consistent_with_dim(self):
        for s in iter_small_specs():
            dec = decompose(s)
            if dec.dimension >= 0:
                assert dec.h1 == dec.dimension - virtual_dim(s), s
            assert dec.h1_lower_bound == max(0, -1 - virtual_dim(s)) if dec.h1 is None else True


@given(
    st.integers(1, 8).map(lambda g: 2 * g),
    st.integers(0, 9),
    st.lists(st.integers(0, 7), max_size=6),
)
def test_sorting_invariance(n, d, mults):
    import itertools

    base = normalize(n, d, mults)
    perms = list(itertools.permutations(mults))[:12]
    for p in perms:
        s = normalize(n, d, p)
        assert s == base
        assert decompose(s) == decompose(base)


@given(st.integers(1, 10).map(lambda g: 2 * g), st.integers(0, 8), st.lists(st.integers(0, 6), max_size=5))
def test_normalize_idempotent(n, d, mults):
    s = normalize(n, d, mults)
    again = normalize(s.n, s.d, s.mults)
    assert again == s and again.input_was_canonical
