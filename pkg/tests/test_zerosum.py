from itertools import product

from hypothesis import given, settings, strategies as st

from conftest import CONSECUTIVE, theory_of
from monadica.divisor import davenport_lower_bound
from monadica.zerosum import davenport, is_minimal_zero_sum, minimal_zero_sum_sequences, normalize


def brute_minimal(entries, torsion, cap):
    """Every minimal zero-sum multiplicity vector of length at most ``cap``."""
    t = len(torsion)

    def is_zero(counts):
        for r in range(len(entries[0])):
            s = sum(c * g[r] for c, g in zip(counts, entries))
            if (s % torsion[r] if r < t else s) != 0:
                return False
        return True

    zero_sums = [
        c for c in product(range(cap + 1), repeat=len(entries)) if 0 < sum(c) <= cap and is_zero(c)
    ]
    return {
        c
        for c in zero_sums
        if not any(d != c and all(a <= b for a, b in zip(d, c)) for d in zero_sums)
    }


@st.composite
def groups(draw):
    torsion = draw(st.sampled_from([(), (2,), (3,), (2, 2), (4,), (2, 4)]))
    rank = draw(st.integers(0 if torsion else 1, 2))
    k = draw(st.integers(1, 4))
    width = len(torsion) + rank
    entries = [
        tuple(
            draw(st.integers(0, torsion[r] - 1)) if r < len(torsion) else draw(st.integers(-2, 2))
            for r in range(width)
        )
        for _ in range(k)
    ]
    return sorted(set(entries)), torsion


@settings(derandomize=True, max_examples=120, deadline=None)
@given(groups())
def test_completion_matches_brute_force(group):
    entries, torsion = group
    cap = 6
    search = minimal_zero_sum_sequences(entries, torsion, cap)
    assert set(search.sequences) == brute_minimal(entries, torsion, cap)
    for s in search.sequences:
        assert is_minimal_zero_sum(entries, s, torsion)


@settings(derandomize=True, max_examples=120, deadline=None)
@given(groups())
def test_exact_marker_is_sound(group):
    """When marked exact, a larger cap finds nothing longer."""
    entries, torsion = group
    small = minimal_zero_sum_sequences(entries, torsion, 4)
    large = minimal_zero_sum_sequences(entries, torsion, 10)
    if small.exact:
        assert set(small.sequences) == set(large.sequences)
    if large.length_bound is not None and large.length_bound <= 10:
        assert large.exact


def test_examples():
    assert davenport([(1,)], (2,)) == (2, True)
    assert davenport([()], ()) == (1, True)
    assert davenport([(1,), (-1,)], ()) == (2, True)
    # Z/3Z with the class 1 alone: 1+1+1
    assert davenport([(1,)], (3,)) == (3, True)
    # Z with 2 and -3: 2+2+2-3-3
    assert davenport([(2,), (-3,)], ()) == (5, True)
    assert normalize((5, -1, 7), (2, 3)) == (1, 2, 7)


def test_limits():
    search = minimal_zero_sum_sequences([(1,), (-1,), (2,)], (), 12, limits=[None, None, 1])
    assert set(search.sequences) == {(1, 1, 0), (0, 2, 1)}


def test_is_minimal_zero_sum():
    assert is_minimal_zero_sum([(1,)], [2], (2,))
    assert not is_minimal_zero_sum([(1,)], [4], (2,))
    assert not is_minimal_zero_sum([(1,), (-1,)], [1, 0], ())


def test_consecutive_davenport_bound():
    cg = theory_of(CONSECUTIVE).class_group
    capped = davenport_lower_bound(cg, 12)
    assert (capped.value, capped.exact) == (7, False)
    full = davenport_lower_bound(cg, 40)
    assert (full.value, full.exact) == (7, True)
