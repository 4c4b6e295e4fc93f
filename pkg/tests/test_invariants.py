from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclic_census.groups import build, center, direct_product, subgroup_closure
from cyclic_census.invariants import (
    c_count,
    c_of_subset,
    c_within,
    cyclic_subgroups,
    is_cyclic,
    is_primitive,
    lambda_count,
    lambda_within,
    maximal_cyclic_order_counts,
    maximal_cyclic_subgroups,
    power_image,
    primitive_elements,
)
from cyclic_census.numtheory import (
    divisors,
    euler_phi,
    factorize,
    is_prime,
    num_divisors,
    p_part,
    prime_power,
    primes_excluding,
)
from cyclic_census.specs import Abelian, Cyclic, Dicyclic, Dihedral, Product, SemidirectCyclic

from oracles import NaiveGroup, phi


def naive_of(g):
    t = g.table.tolist()
    return NaiveGroup(range(g.order), lambda a, b: t[a][b])


@pytest.mark.parametrize("n,expected", [(1, 1), (7, 6), (12, 4), (36, 12), (97, 96)])
def test_euler_phi_examples(n, expected):
    assert euler_phi(n) == expected


@given(st.integers(1, 3000))
def test_property_phi_and_divisors(n):
    assert euler_phi(n) == phi(n)
    assert divisors(n) == [d for d in range(1, n + 1) if n % d == 0]
    assert num_divisors(n) == len(divisors(n))
    assert sum(euler_phi(d) for d in divisors(n)) == n


def test_numtheory_helpers():
    assert factorize(360) == ((2, 3), (3, 2), (5, 1))
    assert prime_power(243) == (3, 5) and prime_power(12) is None and prime_power(1) is None
    assert p_part(360, 2) == 8 and p_part(360, 7) == 1
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_excluding(3, 4) == [2, 5, 7, 11]


def test_c_of_subset_examples():
    g = build(Cyclic(1))
    assert c_of_subset(g, g.trivial()) == 1
    for p, n in [(2, 5), (3, 3), (7, 1)]:
        g = build(Cyclic(p**n))
        assert c_of_subset(g, g.full()) == n + 1
    g = build(Dihedral(6))
    assert c_of_subset(g, g.full()) == 10


def test_c_of_subset_is_exact_fraction():
    g = build(Cyclic(12))
    # elements of order 12: four of them, phi(12) = 4
    x = g.subset([1, 5, 7, 11])
    assert c_of_subset(g, x) == Fraction(1)
    assert c_of_subset(g, g.subset([1])) == Fraction(1, 4)


def test_cyclic_subgroup_examples():
    assert len(cyclic_subgroups(build(Cyclic(12)))) == 6
    assert len(cyclic_subgroups(build(Product(Cyclic(2), Cyclic(4))))) == 6
    assert len(cyclic_subgroups(build(SemidirectCyclic(3, 4, 2)))) == 7


def test_cyclic_subgroups_are_distinct_and_canonical():
    g = build(Dihedral(4))
    subs = cyclic_subgroups(g)
    assert len({s.elements.bits for s in subs}) == len(subs)
    for s in subs:
        assert s.order == len(s.elements)
        assert sorted(g.powers(s.canonical_generator).tolist()) == s.elements.indices().tolist()


def test_primitive_examples():
    g = build(Cyclic(4))
    assert not is_primitive(g, 0)
    assert is_primitive(g, 1) and is_primitive(g, 3)
    g = build(Product(Cyclic(2), Cyclic(4)))
    # (involution of C2, identity of C4) sits at index 1*4 + 0
    assert is_primitive(g, 4)


def test_primitive_elements_match_definition():
    # x primitive iff every y with x in <y> is a power of x
    for spec in (Dihedral(6), Dicyclic(2), Abelian((2, 4)), SemidirectCyclic(3, 4, 2)):
        g = build(spec)
        o = naive_of(g)
        expected = [x for x in o.elements if x != o.identity and all(o.powers(y) <= o.powers(x) for y in o.elements if x in o.powers(y))]
        assert primitive_elements(g).indices().tolist() == expected


def test_maximal_cyclic_examples():
    assert len(maximal_cyclic_subgroups(build(Dihedral(6)))) == 7
    assert len(maximal_cyclic_subgroups(build(Cyclic(30)))) == 1
    assert len(maximal_cyclic_subgroups(build(SemidirectCyclic(3, 4, 2)))) == 4
    assert maximal_cyclic_order_counts(build(Dihedral(6))) == {2: 6, 6: 1}


@pytest.mark.parametrize(
    "spec,lam,c",
    [
        (Dihedral(6), 7, 10),
        # Q8: 1, {1,-1}, and three cyclic subgroups of order 4
        (Dicyclic(2), 3, 5),
        (Product(Cyclic(9), Cyclic(3)), 6, 8),
    ],
)
def test_lambda_and_c_examples(spec, lam, c):
    g = build(spec)
    assert lambda_count(g) == lam
    assert c_count(g) == c
    o = naive_of(g)
    assert (o.lam(), o.c()) == (lam, c)


def test_is_cyclic():
    assert is_cyclic(build(Product(Cyclic(4), Cyclic(9))))
    assert not is_cyclic(build(Abelian((2, 2))))
    assert is_cyclic(build(Cyclic(1)))


def test_power_image_examples():
    assert len(power_image(build(Cyclic(4)), 2)) == 2
    q8 = build(Dicyclic(2))
    assert power_image(q8, 2) == center(q8) and len(center(q8)) == 2
    assert len(power_image(build(Abelian((2, 2))), 2)) == 1


def test_within_matches_induced_counts():
    g = build(Dihedral(6))
    rot = subgroup_closure(g, [1])
    assert c_within(g, rot) == 4 and lambda_within(g, rot) == 1
    sub = subgroup_closure(g, [2, 6])  # dihedral of order 6 inside
    assert c_within(g, sub) == 5 and lambda_within(g, sub) == 4


def test_pgroup_power_identity():
    # lambda(G) = c(G) - c(G^p) holds for p-groups
    for spec in (Dihedral(8), Dicyclic(4), Abelian((2, 4, 8)), Abelian((3, 9)), SemidirectCyclic(9, 3, 4)):
        g = build(spec)
        p = prime_power(g.order)[0]
        assert lambda_count(g) == c_count(g) - c_of_subset(g, power_image(g, p))


small_specs = st.one_of(
    st.integers(1, 60).map(Cyclic),
    st.integers(2, 30).map(Dihedral),
    st.integers(2, 15).map(Dicyclic),
    st.sampled_from([Abelian((2, 2)), Abelian((2, 4)), Abelian((3, 3)), Abelian((2, 2, 2)), SemidirectCyclic(7, 3, 2)]),
)


@settings(max_examples=60, deadline=None)
@given(small_specs)
def test_property_euler_sum_and_lambda_bounds(spec):
    g = build(spec)
    c, lam = c_count(g), lambda_count(g)
    assert c_of_subset(g, g.full()) == c
    assert 1 <= lam <= c
    assert (lam == 1) == is_cyclic(g)
    if not is_cyclic(g):
        assert lam >= 3 and c >= 3


@settings(max_examples=30, deadline=None)
@given(small_specs, small_specs)
def test_property_coprime_multiplicativity(a, b):
    from math import gcd

    if gcd(a.order(), b.order()) != 1 or a.order() * b.order() > 600:
        return
    ga, gb = build(a), build(b)
    g = direct_product(ga, gb)
    assert c_count(g) == c_count(ga) * c_count(gb)
    assert lambda_count(g) == lambda_count(ga) * lambda_count(gb)
