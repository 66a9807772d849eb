"""Integer lattice computations: HNF, Smith invariants, quotient orders.

quotient_order is cross-checked against a brute-force closure of the
subgroup of Q^n/Z^n generated by the coordinate vectors, which is the
independent oracle for the structure-group orders.
"""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from quasifold import Field, rational_field
from quasifold.lattices import (
    SpanIrrational,
    SpanLattice,
    flatten_vector,
    hermite_normal_form,
    hnf_coordinates,
    integer_det,
    quotient_order,
    rational_rank,
    smith_invariant_factors,
    span_certificate,
    xgcd,
)

RAT = rational_field()
SQRT2 = Field(("-2", "0", "1"), (1, 2))


# --------------------------------------------------------------------------
# Oracle: brute-force subgroup closure in Q^n / Z^n
# --------------------------------------------------------------------------

def brute_force_quotient_order(vectors):
    """Size of the subgroup of Q^n/Z^n generated by the given vectors."""
    def reduce_mod_1(v):
        return tuple(x - x.__floor__() for x in v)

    gens = [reduce_mod_1(tuple(Fraction(x) for x in v)) for v in vectors]
    seen = {tuple(Fraction(0) for _ in gens[0])}
    frontier = list(seen)
    while frontier:
        nxt = []
        for el in frontier:
            for g in gens:
                s = reduce_mod_1(tuple(a + b for a, b in zip(el, g)))
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return len(seen)


# --------------------------------------------------------------------------
# xgcd / HNF / SNF
# --------------------------------------------------------------------------

@settings(max_examples=120, deadline=None)
@given(a=st.integers(-200, 200), b=st.integers(-200, 200))
def test_xgcd(a, b):
    import math
    g, x, y = xgcd(a, b)
    assert g == math.gcd(a, b)
    assert a * x + b * y == g


class TestHermite:
    def test_pinned(self):
        rows, pivots = hermite_normal_form([(4, 6), (2, 2)])
        assert rows == ((2, 0), (0, 2))
        assert pivots == (0, 1)

    def test_row_reduction_above_pivot(self):
        rows, pivots = hermite_normal_form([(3, 7), (0, 2)])
        for i, p in enumerate(pivots):
            assert rows[i][p] > 0
            for k in range(i):
                assert 0 <= rows[k][p] < rows[i][p]

    @settings(max_examples=80, deadline=None)
    @given(rows=st.lists(
        st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=1, max_size=4))
    def test_span_preserved(self, rows):
        h, pivots = hermite_normal_form(rows)
        # every input row is an integer combination of the HNF rows
        for r in rows:
            assert hnf_coordinates(h, pivots, tuple(r)) is not None
        # and the HNF rows lie in the span of the input (same rank both ways)
        assert len(h) == oracle_int_rank(rows)

    def test_membership_rejects_outside(self):
        h, pivots = hermite_normal_form([(2, 0), (0, 2)])
        assert hnf_coordinates(h, pivots, (1, 0)) is None
        assert hnf_coordinates(h, pivots, (4, -2)) == [2, -1]


def oracle_int_rank(rows):
    from fractions import Fraction
    m = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


class TestSmith:
    def test_pinned(self):
        assert smith_invariant_factors([(2, 4), (6, 8)]) == (2, 4)
        assert smith_invariant_factors([(6, 0), (0, 4)]) == (2, 12)
        assert smith_invariant_factors([(1, 0), (0, 1)]) == (1, 1)

    @settings(max_examples=60, deadline=None)
    @given(rows=st.lists(
        st.lists(st.integers(-7, 7), min_size=3, max_size=3), min_size=3, max_size=3))
    def test_product_is_abs_det(self, rows):
        d = integer_det([tuple(r) for r in rows])
        factors = smith_invariant_factors(rows)
        if d == 0:
            assert len(factors) < 3
        else:
            prod = 1
            for f in factors:
                prod *= f
            assert prod == abs(d)

    @settings(max_examples=60, deadline=None)
    @given(rows=st.lists(
        st.lists(st.integers(-7, 7), min_size=2, max_size=2), min_size=2, max_size=3))
    def test_divisibility_chain(self, rows):
        factors = smith_invariant_factors(rows)
        for a, b in zip(factors, factors[1:]):
            assert b % a == 0


# --------------------------------------------------------------------------
# Quotient orders vs brute force
# --------------------------------------------------------------------------

class TestQuotientOrder:
    def test_teardrop_orders(self):
        for k in (2, 3, 5):
            c = (Fraction(-1, k),)
            assert quotient_order([c], 1) == k
            assert brute_force_quotient_order([c]) == k

    def test_trivial(self):
        assert quotient_order([(Fraction(1),), (Fraction(-2),)], 1) == 1

    def test_product_group(self):
        gens = [(Fraction(1, 2), Fraction(0)), (Fraction(0), Fraction(1, 3))]
        assert quotient_order(gens, 2) == 6
        assert brute_force_quotient_order(gens) == 6

    @settings(max_examples=60, deadline=None)
    @given(vecs=st.lists(
        st.lists(
            st.fractions(min_value=-2, max_value=2, max_denominator=6),
            min_size=2, max_size=2),
        min_size=1, max_size=3))
    def test_matches_brute_force(self, vecs):
        gens = [tuple(v) for v in vecs]
        assert quotient_order(gens, 2) == brute_force_quotient_order(gens)


# --------------------------------------------------------------------------
# Rational span certificates
# --------------------------------------------------------------------------

class TestSpanCertificate:
    def test_square_normals(self):
        vecs = [
            (RAT.scalar(1), RAT.zero), (RAT.zero, RAT.scalar(1)),
            (RAT.scalar(-1), RAT.zero), (RAT.zero, RAT.scalar(-1)),
        ]
        cert = span_certificate(RAT, vecs, 2)
        assert isinstance(cert, SpanLattice)
        assert [[s.as_fraction() for s in b] for b in cert.basis] == [[1, 0], [0, 1]]
        assert cert.coords == ((1, 0), (0, 1), (-1, 0), (0, -1))

    def test_interval_sqrt2_flatten(self):
        one, t = SQRT2.one, SQRT2.theta
        assert flatten_vector((one,)) == (1, 0)
        assert flatten_vector((-t,)) == (0, -1)
        rank, independent = rational_rank([flatten_vector((one,)), flatten_vector((-t,))])
        assert rank == 2
        assert independent == (0, 1)

    def test_interval_sqrt2_not_lattice(self):
        cert = span_certificate(SQRT2, [(SQRT2.one,), (-SQRT2.theta,)], 1)
        assert isinstance(cert, SpanIrrational)
        assert cert.rank == 2

    def test_reconstruction_is_exact(self):
        # scaled and redundant generators over Q: basis must regenerate each
        vecs = [
            (RAT.scalar(2), RAT.scalar(4)),
            (RAT.scalar(3), RAT.scalar(1)),
            (RAT.scalar(-1), RAT.scalar(3)),
        ]
        cert = span_certificate(RAT, vecs, 2)
        assert isinstance(cert, SpanLattice)
        for v, coords in zip(vecs, cert.coords):
            rebuilt = [
                sum((RAT.scalar(c) * b[i] for c, b in zip(coords, cert.basis)), RAT.zero)
                for i in range(2)
            ]
            assert tuple(rebuilt) == v

    def test_fractional_generators(self):
        # 1/2 and 1/3 generate the lattice (1/6)Z
        cert = span_certificate(RAT, [(RAT.scalar("1/2"),), (RAT.scalar("1/3"),)], 1)
        assert isinstance(cert, SpanLattice)
        assert cert.basis[0][0].as_fraction() == Fraction(1, 6)
        assert cert.coords == ((3,), (2,))
