import itertools
import random

import pytest

from polyadic.core import as_derived
from polyadic.errors import PolyadicError
from polyadic.geometry import (
    AlgebraicSet,
    EquationSystem,
    TermFunctions,
    closure,
    coordinate_group,
    is_irreducible,
    minimal_subsystem,
    radical_member,
    solve,
    structural_check,
    theorem63_check,
)
from polyadic.terms import (
    Apply,
    Constant,
    Equation,
    Skew,
    Variable,
    parse_equation,
    parse_term,
)

Z3NAMES = ["0", "1", "2"]


def eqs(p, texts):
    names = list(p.names())
    return tuple(parse_equation(t, element_names=names) for t in texts)


def test_solve_golden(p2):
    s = EquationSystem(p2, 1, eqs(p2, ["f(x1,x1,x1) = 2"]))
    v = solve(p2, s)
    assert v.points == ((2,),)
    assert (2,) in v and (0,) not in v
    assert len(v) == 1


def test_solve_jobs_path_agrees(p2):
    s = EquationSystem(p2, 2, eqs(p2, ["f(x1,x2,x1) = f(x2,x1,x2)"]))
    assert solve(p2, s).points == solve(p2, s, jobs=2).points


def test_union_is_intersection(p2):
    s1 = EquationSystem(p2, 2, eqs(p2, ["f(x1,x2,c1) = x2"]))
    s2 = EquationSystem(p2, 2, eqs(p2, ["x1 = x2"]))
    u = s1.union(s2)
    assert set(solve(p2, u).points) == set(solve(p2, s1).points) & set(
        solve(p2, s2).points
    )


def test_union_rejects_mismatched(p2, p1):
    s1 = EquationSystem(p2, 2, ())
    with pytest.raises(PolyadicError):
        s1.union(EquationSystem(p2, 1, ()))
    with pytest.raises(PolyadicError):
        s1.union(EquationSystem(p1, 2, ()))


def test_radical_membership(p2):
    s = parse_term("f(x1,x1,x1)", element_names=Z3NAMES)
    t = parse_term("c2", element_names=Z3NAMES)
    # empty point set: the radical is everything
    assert radical_member(p2, (), s, parse_term("x1", element_names=Z3NAMES))
    v = solve(p2, EquationSystem(p2, 1, (Equation(s, t),)))
    assert radical_member(p2, v, s, t)
    assert not radical_member(
        p2,
        AlgebraicSet(1, ((0,), (1,))),
        parse_term("x1", element_names=Z3NAMES),
        parse_term("c0", element_names=Z3NAMES),
    )


def test_coordinate_group_singleton(p2):
    v = AlgebraicSet(1, ((2,),))
    cg = coordinate_group(p2, v)
    assert cg.order == 3
    assert cg.restrict(parse_term("x1", element_names=Z3NAMES)) == cg.projections[0]
    assert cg.as_polyadic().order == 3


def test_coordinate_group_empty_degenerates(p2):
    cg = coordinate_group(p2, AlgebraicSet(1, ()))
    assert cg.order == 1
    assert cg.as_polyadic().order == 1
    assert structural_check(cg) == 0


def test_coefficient_free_coordinate_groups(p1, p2):
    full = AlgebraicSet(1, ((0,), (1,), (2,)))
    assert coordinate_group(p2, full, with_constants=False).order == 1
    assert coordinate_group(p1, full, with_constants=False).order == 3


def test_structural_check_on_catalog_sets(catalog):
    # every computed coordinate group is a twisted subgroup stable under
    # the canonical automorphism, witnessed by some u in the carrier
    for key in ("p1", "p2", "p4"):
        p = catalog[key]
        pts = [tuple(pt) for pt in itertools.product(range(p.order), repeat=1)]
        for subset in ((pts[0],), tuple(pts[:2]), tuple(pts)):
            cg = coordinate_group(p, AlgebraicSet(1, subset))
            assert structural_check(cg) is not None, (key, subset)


def naive_algebra(p, m):
    """Direct f/skew saturation of projections and diagonals, used as the
    oracle for the twisted-route saturation in TermFunctions."""
    d = as_derived(p)
    pts = list(itertools.product(range(d.order), repeat=m))
    gens = [tuple(pt[j] for pt in pts) for j in range(m)]
    gens += [(g,) * len(pts) for g in range(d.order)]

    def fhat(args):
        acc = args[0]
        for k in range(1, d.n):
            acc = tuple(
                d.base.mul(a, d.theta_pows[k][b]) for a, b in zip(acc, args[k])
            )
        return tuple(d.base.mul(a, d.b) for a in acc)

    skew_map = tuple(d.skew(x) for x in range(d.order))
    closed = set(gens)
    while True:
        fresh = set()
        snap = sorted(closed)
        for args in itertools.product(snap, repeat=d.n):
            v = fhat(list(args))
            if v not in closed:
                fresh.add(v)
        for xx in snap:
            sk = tuple(skew_map[a] for a in xx)
            if sk not in closed:
                fresh.add(sk)
        if not fresh:
            return sorted(closed)
        closed |= fresh


def test_term_functions_match_naive(catalog):
    for key in ("p1", "p2", "p3", "p4"):
        p = catalog[key]
        assert TermFunctions(p, 1).functions == naive_algebra(p, 1), key
    assert TermFunctions(catalog["p5"], 1).functions == naive_algebra(
        catalog["p5"], 1
    )
    assert TermFunctions(catalog["p2"], 2).functions == naive_algebra(
        catalog["p2"], 2
    )


def test_affine_function_counts(p1, p2):
    assert len(TermFunctions(p1, 1).functions) == 9
    assert len(TermFunctions(p2, 1).functions) == 9


def test_closure_extremes(p2):
    assert closure(p2, [], 1).points == ()
    full = [(i,) for i in range(3)]
    assert closure(p2, full, 1).points == tuple(full)


def test_closure_laws_exhaustive_m1(p1, p2):
    for p in (p1, p2):
        tf = TermFunctions(p, 1)
        pts = [(i,) for i in range(3)]
        for r in range(4):
            for sub in itertools.combinations(pts, r):
                c = tf.closure(sub)
                assert set(sub) <= set(c.points)
                assert tf.closure(c.points).points == c.points
                for r2 in range(r):
                    for sub2 in itertools.combinations(sub, r2):
                        assert set(tf.closure(sub2).points) <= set(c.points)


def test_closure_of_solution_sets_is_fixed(p2):
    tf = TermFunctions(p2, 2)
    for texts in (["x1 = x2"], ["f(x1,x1,x1) = c2"], ["x1 = c0", "x2 = c1"]):
        v = solve(p2, EquationSystem(p2, 2, eqs(p2, texts)))
        assert tf.closure(v.points).points == v.points, texts


def naive_irreducible(tf, y):
    """Literal definition: reducible when two proper relatively closed
    subsets cover y."""
    ypts = sorted({tuple(pt) for pt in y})
    k = len(ypts)
    yset = set(ypts)
    closed = []
    for mask in range(2 ** k):
        sub = [ypts[i] for i in range(k) if mask >> i & 1]
        cl = set(tf.closure(sub).points)
        trace = cl & yset
        if trace != yset and trace not in closed:
            closed.append(trace)
    for z1 in closed:
        for z2 in closed:
            if z1 | z2 == yset:
                return False
    return True


def test_irreducibility_against_naive(p2, p4):
    for p in (p2, p4):
        tf = TermFunctions(p, 1)
        pts = [(i,) for i in range(p.order)]
        for r in range(1, p.order + 1):
            for sub in itertools.combinations(pts, r):
                flag, wit = tf.irreducible(sub)
                assert flag == naive_irreducible(tf, sub), (p, sub)
                if not flag:
                    z1, z2 = wit
                    assert set(z1) | set(z2) == set(sub)
                    assert set(z1) != set(sub) and set(z2) != set(sub)


def test_is_irreducible_wrapper(p2):
    assert is_irreducible(p2, AlgebraicSet(1, ((0,), (1,), (2,))))
    assert not is_irreducible(p2, AlgebraicSet(1, ((0,), (1,))))


def test_minimal_subsystem_drops_redundant(p2):
    base = eqs(p2, ["f(x1,x1,x1) = 2", "f(x1,x1,x1) = 2", "x1 = x1"])
    ms = minimal_subsystem(p2, EquationSystem(p2, 1, base))
    assert len(ms.equations) == 1
    assert solve(p2, ms).points == ((2,),)


def random_term(rng, m, order, depth, n):
    r = rng.random()
    if depth <= 0 or r < 0.35:
        if r < 0.15:
            return Constant(rng.randrange(order))
        return Variable(rng.randrange(m))
    if r < 0.55:
        return Skew(random_term(rng, m, order, depth - 1, n))
    return Apply(tuple(random_term(rng, m, order, depth - 1, n) for _ in range(n)))


def test_minimal_subsystem_preserves_v_random(p2, p4):
    rng = random.Random(31)
    for p in (p2, p4):
        for _ in range(30):
            m = rng.choice((1, 2))
            k = rng.randrange(1, 5)
            equations = tuple(
                Equation(
                    random_term(rng, m, p.order, 2, p.n),
                    random_term(rng, m, p.order, 2, p.n),
                )
                for _ in range(k)
            )
            s = EquationSystem(p, m, equations)
            ms = minimal_subsystem(p, s)
            assert solve(p, ms).points == solve(p, s).points
            # dropping any single remaining equation changes V
            target = solve(p, s).points
            for i in range(len(ms.equations)):
                rest = EquationSystem(
                    p, m, ms.equations[:i] + ms.equations[i + 1 :]
                )
                assert solve(p, rest).points != target or len(ms.equations) == 0


def test_theorem63_positive_systems(p2):
    for texts, m in (
        (["~x1 = x1"], 1),
        (["f(x1,x1,x1) = x1"], 1),
        (["~x1 = x1", "~x2 = x2", "x1 = x2"], 2),
    ):
        rep = theorem63_check(p2, EquationSystem(p2, m, eqs(p2, texts)))
        assert rep.ok, (texts, rep)
        assert rep.cover_order == 2
        assert rep.gamma_star_order == 2
        assert rep.epi_images is not None


def test_theorem63_negative_identity_system(p2):
    # the cover of the coefficient-free coordinate group is Z_2 here while
    # the word-function group over the cover's solutions is Z_6; no
    # epimorphism can exist and the check reports the failure honestly
    rep = theorem63_check(p2, EquationSystem(p2, 1, eqs(p2, ["x1 = x1"])))
    assert not rep.ok
    assert rep.gamma_g_order == 1
    assert rep.cover_order == 2
    assert rep.v_star_count == 6
    assert rep.gamma_star_order == 6
    assert rep.reason is not None


def test_theorem63_rejects_coefficients(p2):
    with pytest.raises(PolyadicError):
        theorem63_check(p2, EquationSystem(p2, 1, eqs(p2, ["x1 = c2"])))
