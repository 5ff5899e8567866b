import pytest

from ramstruct.constructors import (
    LiftContext,
    construct_any,
    elementary_abelian_structure,
    extend_rank,
    extend_size,
    exponent_p_structure,
    lift_structure_mod_omega,
    lift_tuple,
    omega_context,
    pad_from_beauville,
    product_combine,
    product_project,
    project_mod_omega,
    semi_abelian_2group_odd_odd,
)
from ramstruct.errors import (
    DegenerateRank,
    HypothesisViolated,
    InadmissibleSize,
    NoLiftExists,
    NotCoprime,
    PaddingImpossible,
    PreconditionViolated,
)
from ramstruct.groups import AbelianGroup
from ramstruct.invariants import omega
from ramstruct.structures import (
    GenTuple,
    RamStructure,
    check_ramification,
    is_spherical_system,
    sigma,
    validated,
)
from ramstruct.theory import predict_elementary_abelian


def test_lift_tuple_spherical(c2c4cubed):
    ctx = LiftContext.from_kernel(c2c4cubed, omega(c2c4cubed, 1))
    Q = ctx.view.group
    # a length-5 spherical generating tuple of the quotient (a rank-3 group)
    gens = [q for q in Q.elements() if q != 0][:3]
    basis = []
    h = 1
    for q in range(1, Q.order):
        if not (h >> q) & 1:
            basis.append(q)
            h = Q.closure_mask(basis)
    x, y, z = basis
    closing = Q.inv(Q.mul(Q.mul(x, y), z))
    u = (x, y, z, closing if closing != 0 else Q.mul(x, y), Q.inv(closing) if closing == 0 else closing)
    # build a clean length-5 tuple with trivial product instead
    u = (x, y, z, x, Q.inv(Q.mul(Q.mul(Q.mul(x, y), z), x)))
    if u[-1] == 0:
        u = (x, y, z, y, Q.inv(Q.mul(Q.mul(Q.mul(x, y), z), y)))
    U = GenTuple(Q, u)
    assert U.product() == 0
    T = lift_tuple(ctx, U, spherical=True)
    assert is_spherical_system(c2c4cubed, T)
    for lifted, orig in zip(T.entries, U.entries):
        assert ctx.view.project(lifted) == orig


def test_lift_tuple_trivial_kernel():
    from ramstruct.bitset import ElementSet

    G = AbelianGroup([2, 2])
    ctx = LiftContext.from_kernel(G, ElementSet.from_indices([0], G.order))
    Q = ctx.view.group
    u = (1, 2, Q.inv(Q.mul(1, 2)))
    T = lift_tuple(ctx, GenTuple(Q, u), spherical=False)
    assert T.entries == tuple(ctx.view.section(q) for q in u)
    T = lift_tuple(ctx, GenTuple(Q, u), spherical=True)
    assert T.entries == tuple(ctx.view.section(q) for q in u)


def test_lift_tuple_rejects_foreign_group(c2c4cubed):
    ctx = LiftContext.from_kernel(c2c4cubed, omega(c2c4cubed, 1))
    other = AbelianGroup([8])  # same order as the quotient, different group
    with pytest.raises(PreconditionViolated):
        lift_tuple(ctx, GenTuple(other, (1, 2, 5)), spherical=False)


def test_lift_tuple_accepts_equal_rebuilt_quotient(c2c4cubed):
    ctx1 = omega_context(c2c4cubed)
    ctx2 = omega_context(c2c4cubed)
    Q = ctx2.view.group
    u = (1, 2, Q.inv(Q.mul(1, 2)), 1, Q.inv(1))
    u = (1, 2, 4, 1, Q.inv(Q.mul(Q.mul(Q.mul(1, 2), 4), 1)))
    if u[-1] == 0:
        u = (1, 2, 4, 2, Q.inv(Q.mul(Q.mul(Q.mul(1, 2), 4), 2)))
    U = GenTuple(Q, u)
    T = lift_tuple(ctx1, U, spherical=True)  # built against a separate context
    assert is_spherical_system(c2c4cubed, T)


def test_lift_tuple_too_short(c2c4cubed):
    ctx = LiftContext.from_kernel(c2c4cubed, omega(c2c4cubed, 1))
    Q = ctx.view.group
    u = (1, 2, 4)  # three entries cannot generate a 4-generator group
    with pytest.raises(NoLiftExists):
        lift_tuple(ctx, GenTuple(Q, u), spherical=False)


def test_extend_size_odd():
    G = AbelianGroup([5, 5])
    x1, x2 = G.index_of((1, 0)), G.index_of((0, 1))
    T = GenTuple(G, (x1, x2, G.inv(G.mul(x1, x2))))
    T2 = extend_size(T, 5)
    assert T2.entries == (G.mul(x1, x1), x2, G.inv(G.mul(x1, x2)), G.inv(x1))
    assert is_spherical_system(G, T2)
    assert sigma(G, T2) == sigma(G, T)


def test_extend_size_two():
    G = AbelianGroup([2, 2, 2])
    v = G.index_of
    T = GenTuple(G, (v((1, 1, 0)), v((1, 0, 1)), v((0, 1, 1)), v((1, 1, 1)), v((1, 1, 1))))
    T2 = extend_size(T, 2)
    assert T2.entries == T.entries + (T.entries[0], T.entries[0])
    assert is_spherical_system(G, T2)
    assert sigma(G, T2) == sigma(G, T)


def test_extend_size_rejects_non_elementary():
    G = AbelianGroup([4, 4])
    T = GenTuple(G, (G.index_of((1, 0)), G.index_of((0, 1)), G.inv(G.index_of((1, 1)))))
    with pytest.raises(PreconditionViolated):
        extend_size(T, 2)


def test_extend_rank():
    S = elementary_abelian_structure(2, 3, 6, 6)
    bigger = extend_rank(S)
    assert bigger.size == (6, 6)
    assert bigger.group.order == 16

    S = elementary_abelian_structure(2, 4, 5, 5)
    with pytest.raises(PreconditionViolated):
        extend_rank(S)  # needs sizes >= d+2 = 6


def test_elementary_abelian_base_tuples_match_expected():
    S = elementary_abelian_structure(5, 2, 3, 3)
    G = S.group
    assert [G.vector(g) for g in S.t1.entries] == [(1, 0), (0, 1), (4, 4)]
    assert [G.vector(g) for g in S.t2.entries] == [(1, 2), (1, 4), (3, 4)]

    S = elementary_abelian_structure(2, 3, 5, 6)
    G = S.group
    assert [G.vector(g) for g in S.t1.entries] == [
        (1, 1, 0),
        (1, 0, 1),
        (0, 1, 1),
        (1, 1, 1),
        (1, 1, 1),
    ]
    assert [G.vector(g) for g in S.t2.entries] == [
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
    ] * 2


def test_elementary_abelian_proof_bases_validate():
    for args in ((5, 2, 3, 3), (3, 2, 4, 4), (2, 3, 5, 6), (2, 3, 6, 6), (2, 4, 5, 5)):
        S = elementary_abelian_structure(*args)
        assert S.size == args[2:]


def test_elementary_abelian_inadmissible():
    with pytest.raises(InadmissibleSize):
        elementary_abelian_structure(3, 2, 3, 3)
    with pytest.raises(InadmissibleSize):
        elementary_abelian_structure(2, 3, 5, 5)
    with pytest.raises(InadmissibleSize):
        elementary_abelian_structure(2, 3, 7, 9)  # both odd at rank 3
    with pytest.raises(InadmissibleSize):
        elementary_abelian_structure(2, 2, 5, 6)  # rank too small


def test_elementary_abelian_totality_small():
    for p, d in ((2, 3), (2, 4), (3, 2), (5, 2)):
        scs = predict_elementary_abelian(p, d)
        for r1 in range(3, 9):
            for r2 in range(r1, 9):
                if scs.membership(r1, r2):
                    S = elementary_abelian_structure(p, d, r1, r2)
                    assert S.size == (r1, r2)
                else:
                    with pytest.raises(InadmissibleSize):
                        elementary_abelian_structure(p, d, r1, r2)


def test_exponent_p_structure(heis3, heis5):
    S = exponent_p_structure(heis5, 3, 3)
    assert S.size == (3, 3) and S.group is heis5
    with pytest.raises(InadmissibleSize):
        exponent_p_structure(heis3, 3, 3)
    S = exponent_p_structure(heis3, 4, 4)
    assert S.size == (4, 4)
    from ramstruct.errors import NotExponentP

    with pytest.raises(NotExponentP):
        exponent_p_structure(AbelianGroup([4]), 3, 3)


def test_project_mod_omega(c2c4cubed, q8):
    S = semi_abelian_2group_odd_odd(c2c4cubed, 7, 7)
    proj = project_mod_omega(c2c4cubed, S)
    assert proj.group.order == 8
    r1, r2 = proj.size
    assert r1 <= 7 and r2 <= 7

    # an elementary abelian group projects to itself
    S = elementary_abelian_structure(2, 3, 5, 6)
    assert project_mod_omega(S.group, S) is S

    with pytest.raises(HypothesisViolated):
        project_mod_omega(q8, S)


def test_lift_structure_mod_omega(c2c4cubed):
    ctx = omega_context(c2c4cubed)
    Q = ctx.view.group
    canonical = elementary_abelian_structure(2, 3, 6, 6)
    # move the canonical structure onto the materialized quotient
    from ramstruct.constructors import _greedy_basis, _transport_elementary

    t1, t2 = _transport_elementary(canonical, Q, _greedy_basis(Q))
    U = validated(Q, t1, t2)
    S = lift_structure_mod_omega(c2c4cubed, U, ctx)
    assert S.size == (6, 6)
    assert S.group is c2c4cubed
    images = [ctx.view.project(g) for g in S.t1.entries]
    assert tuple(images) == U.t1.entries

    # identity operation at exponent level one
    E = AbelianGroup([2, 2, 2])
    base = elementary_abelian_structure(2, 3, 5, 6)
    moved = validated(E, base.t1.entries, base.t2.entries)
    assert lift_structure_mod_omega(E, moved) is moved


def test_lift_structure_size_guard():
    G = AbelianGroup([2, 2, 4, 4, 4])  # d = 5, top-power image of size 8
    ctx = omega_context(G)
    Q = ctx.view.group
    canonical = elementary_abelian_structure(2, 3, 5, 6)
    from ramstruct.constructors import _greedy_basis, _transport_elementary

    t1, t2 = _transport_elementary(canonical, Q, _greedy_basis(Q))
    U = validated(Q, t1, t2)
    with pytest.raises(PreconditionViolated):
        lift_structure_mod_omega(G, U, ctx)  # r1 = 5 < d+1 = 6


def test_pad_from_beauville():
    S = elementary_abelian_structure(5, 2, 3, 3)
    G = S.group

    padded = pad_from_beauville(S, 3, 4)
    x2, y2 = S.t2.entries[0], S.t2.entries[1]
    assert padded.t1.entries == S.t1.entries
    assert padded.t2.entries == (x2, y2, G.inv(y2), G.inv(x2))

    same = pad_from_beauville(S, 3, 3)
    assert same.t1.entries == S.t1.entries and same.t2.entries == S.t2.entries

    big = pad_from_beauville(S, 7, 8)
    assert big.size == (7, 8)
    assert sigma(G, big.t1) == sigma(G, S.t1)

    with pytest.raises(PreconditionViolated):
        pad_from_beauville(big, 9, 9)


def test_product_combine_and_project():
    S3 = elementary_abelian_structure(3, 2, 5, 7)
    S2 = elementary_abelian_structure(2, 3, 5, 6)
    comb = product_combine(S3, S2)
    assert comb.size == (5, 7)
    assert comb.group.order == 72

    back = product_project(comb, "left", target_size=(5, 7))
    assert back.size == (5, 7)
    assert back.group is comb.group.left

    small = product_project(comb, "right")
    r1, r2 = small.size
    assert r1 <= 5 and r2 <= 7
    assert small.group is comb.group.right

    with pytest.raises(PaddingImpossible):
        product_project(comb, "right", target_size=(5, 7))

    with pytest.raises(NotCoprime):
        product_combine(S2, S2)


def test_product_combine_equal_sizes_plain_zip():
    S5 = elementary_abelian_structure(5, 2, 4, 4)
    S2 = elementary_abelian_structure(2, 3, 5, 6)
    S5 = elementary_abelian_structure(5, 2, 5, 6)
    comb = product_combine(S5, S2)
    assert comb.size == (5, 6)
    P = comb.group
    for g, a, b in zip(comb.t1.entries, S5.t1.entries, S2.t1.entries):
        assert P.pair(g) == (a, b)


def test_product_project_round_trip_cyclic_subgroups():
    S3 = elementary_abelian_structure(3, 2, 5, 7)
    S2 = elementary_abelian_structure(2, 3, 5, 6)
    comb = product_combine(S3, S2)
    back = product_project(comb, "left", target_size=(5, 7))
    G = S3.group
    for got, orig in zip(back.t1.entries + back.t2.entries, S3.t1.entries + S3.t2.entries):
        assert G.generated_subgroup([got]) == G.generated_subgroup([orig])


def test_odd_odd_construction(c2c4cubed):
    S = semi_abelian_2group_odd_odd(c2c4cubed, 7, 7)
    assert S.size == (7, 7)
    S = semi_abelian_2group_odd_odd(c2c4cubed, 7, 5)
    assert S.size == (7, 5)
    with pytest.raises(InadmissibleSize):
        semi_abelian_2group_odd_odd(c2c4cubed, 5, 5)
    with pytest.raises(PreconditionViolated):
        semi_abelian_2group_odd_odd(c2c4cubed, 6, 7)
    with pytest.raises(DegenerateRank):
        semi_abelian_2group_odd_odd(AbelianGroup([4, 4, 4]), 7, 7)


def test_odd_odd_larger_group():
    G = AbelianGroup([2, 2, 4, 4, 4])  # d = 5, |X| = 8, exponent 4
    S = semi_abelian_2group_odd_odd(G, 7, 7)
    assert S.size == (7, 7)
    S = semi_abelian_2group_odd_odd(G, 9, 7)
    assert S.size == (9, 7)


def test_construct_any_dispatch(c6c6c2, q8, heis5):
    res = construct_any(c6c6c2, 5, 7)
    assert res.status == "ok" and res.structure.size == (5, 7)
    assert res.method.startswith("sylow-product")

    res = construct_any(AbelianGroup([7]), 3, 3)
    assert res.status == "inadmissible"

    res = construct_any(q8, 5, 5)
    assert res.status == "inadmissible" and res.method == "search"

    res = construct_any(heis5, 4, 5)
    assert res.status == "ok" and res.method == "exponent-p-lift"

    res = construct_any(AbelianGroup([4, 4, 4]), 7, 7)
    assert res.status == "ok" and res.method == "search"

    res = construct_any(c6c6c2, 5, 5)
    assert res.status == "inadmissible" and "excluded" in res.reason


def test_construct_any_methods(c2c4cubed):
    theorem = construct_any(c2c4cubed, 6, 6, method="theorem")
    assert theorem.status == "ok" and theorem.method == "omega-lift"
    searched = construct_any(c2c4cubed, 6, 6, method="search")
    assert searched.status == "ok" and searched.method == "search"

    import ramstruct.oracle as oracle

    res = construct_any(AbelianGroup([4, 4, 4]), 7, 7, method="theorem")
    assert res.status == "unknown"


def test_constructors_always_validate(c2c4cubed, c6c6c2, heis3):
    cases = [
        construct_any(c6c6c2, 5, 7).structure,
        construct_any(c2c4cubed, 7, 7).structure,
        construct_any(heis3, 4, 6).structure,
        elementary_abelian_structure(3, 3, 5, 7),
    ]
    for S in cases:
        assert isinstance(
            check_ramification(S.group, S.t1, S.t2), RamStructure
        )
