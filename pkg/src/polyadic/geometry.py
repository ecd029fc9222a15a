"""Equations over a finite polyadic group and their geometry.

A system of term equations in m variables cuts out an algebraic set
inside G^m. The radical of a point set Y is the congruence of term pairs
agreeing everywhere on Y; the coordinate group of Y is the quotient of
the terms by the radical, realized concretely as the set of term
functions on Y, a polyadic subgroup of the direct power G^|Y|. Zariski
closure, irreducibility, minimal subsystems, and the comparison between
coordinate groups over G and over its cover are all computed exactly by
enumeration at small scale.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Optional

from . import caps as _caps
from .core import TablePolyadicGroup, as_derived, derive
from .errors import PolyadicError, SizeCapExceeded
from .groups import (
    constant_tuple,
    direct_power,
    hom_from_generator_images,
    induced_automorphism,
    validate_group,
)
from .terms import (
    eval_term,
    is_coefficient_free,
    validate_term,
)


@dataclass(frozen=True)
class EquationSystem:
    """A finite list of equations over a fixed group, in m variables."""

    p: object
    m: int
    equations: tuple

    def __post_init__(self):
        for eq in self.equations:
            validate_term(eq.left, self.p.n, self.m)
            validate_term(eq.right, self.p.n, self.m)

    def union(self, other):
        if other.m != self.m or other.p is not self.p:
            raise PolyadicError("systems must share the group and variable count")
        return EquationSystem(self.p, self.m, self.equations + other.equations)


@dataclass(frozen=True)
class AlgebraicSet:
    """An explicit point set inside G^m, canonically ordered."""

    m: int
    points: tuple
    system: Optional[EquationSystem] = None

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, pt):
        return tuple(pt) in set(self.points)


def _holds(equations, pt, p):
    return all(
        eval_term(eq.left, pt, p) == eval_term(eq.right, pt, p)
        for eq in equations
    )


def _solve_chunk(args):
    p, equations, chunk = args
    return [pt for pt in chunk if _holds(equations, pt, p)]


def solve(p, system, jobs=None, caps=_caps.DEFAULT):
    """Exact solution set of the system: all points of G^m where every
    equation's two sides evaluate equal. With jobs > 1 the point grid is
    split across worker processes; output order is unchanged."""
    total = p.order ** system.m
    _caps.check(caps, "solution grid", total, caps.max_points)
    pts = list(product(range(p.order), repeat=system.m))
    if jobs is None or jobs <= 1 or len(pts) < 2 * (jobs or 1):
        sols = [pt for pt in pts if _holds(system.equations, pt, p)]
    else:
        size = (len(pts) + jobs - 1) // jobs
        chunks = [pts[i : i + size] for i in range(0, len(pts), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(
                pool.map(_solve_chunk, [(p, system.equations, c) for c in chunks])
            )
        sols = [pt for part in parts for pt in part]
    return AlgebraicSet(m=system.m, points=tuple(sols), system=system)


def radical_member(p, y, s, t):
    """Whether the pair (s, t) lies in the radical of the point set y:
    true exactly when s and t agree at every point (vacuously for empty y)."""
    pts = y.points if isinstance(y, AlgebraicSet) else tuple(y)
    return all(eval_term(s, pt, p) == eval_term(t, pt, p) for pt in pts)


# ---------------------------------------------------------------------------
# coordinate groups


@dataclass(frozen=True)
class CoordinateGroup:
    """Term functions on a point set Y, inside the direct power G^|Y|.

    Generated by the m coordinate projections (and, unless coefficient
    free, the diagonal constant tuples) under the power's operation and
    skew. For empty Y the group degenerates to a single element.
    """

    source: object
    points: tuple
    m: int
    power: object
    projections: tuple
    constants: tuple
    elements: tuple

    @property
    def order(self):
        return len(self.elements)

    def restrict(self, t):
        """Image of a term under the natural map onto functions on Y."""
        if self.power is None:
            return 0
        values = tuple(eval_term(t, pt, self.source) for pt in self.points)
        return self.power.base.encode(values)

    def as_polyadic(self, caps=_caps.DEFAULT):
        """The carrier as a standalone polyadic group in table form."""
        if self.power is None:
            return TablePolyadicGroup(("1",), self.source.n, (0,))
        n = self.power.n
        _caps.check(caps, "n-ary table", self.order ** n, caps.max_tabulate)
        pos = {x: i for i, x in enumerate(self.elements)}
        names = [self.power.base.name(x) for x in self.elements]
        flat = [
            pos[self.power.f(list(args))]
            for args in product(self.elements, repeat=n)
        ]
        return TablePolyadicGroup(names, n, flat)

    def local_index(self, power_index):
        return self.elements.index(power_index)


def coordinate_group(p, y, with_constants=True, caps=_caps.DEFAULT):
    """Closure of the projections (plus diagonal constants by default)
    under the power operation and skew; the concrete coordinate group of
    the point set y."""
    d = as_derived(p)
    pts = tuple(y.points if isinstance(y, AlgebraicSet) else y)
    m = y.m if isinstance(y, AlgebraicSet) else (len(pts[0]) if pts else 0)
    if not pts:
        return CoordinateGroup(
            source=d, points=(), m=m, power=None,
            projections=(0,) * m,
            constants=(0,) * (d.order if with_constants else 0),
            elements=(0,),
        )
    k = len(pts)
    _caps.check(caps, "direct power order", d.order ** k, caps.max_power_order)
    pg = direct_power(d.base, k, caps=caps)
    theta_hat = induced_automorphism(d.theta, pg)
    b_hat = constant_tuple(pg, d.b)
    power = derive(pg, theta_hat, b_hat, d.n, caps=caps)
    projections = tuple(
        pg.encode(tuple(pt[j] for pt in pts)) for j in range(m)
    )
    constants = (
        tuple(pg.encode((g,) * k) for g in range(d.order))
        if with_constants
        else ()
    )
    gens = list(dict.fromkeys(projections + constants))
    if not gens:
        raise PolyadicError("no generators: zero variables and no constants")
    elements = _f_skew_closure(power.f, power.skew, power.n, gens, caps)
    return CoordinateGroup(
        source=d, points=pts, m=m, power=power,
        projections=projections, constants=constants, elements=elements,
    )


def _f_skew_closure(f, skew, n, gens, caps=_caps.DEFAULT):
    """Smallest set containing gens closed under the n-ary operation and
    skew; worklist over tuples touching at least one new element."""
    closed = set(gens)
    frontier = set(gens)
    while frontier:
        _caps.check(caps, "closure", len(closed), caps.max_closure_algebra)
        snapshot = sorted(closed)
        fresh = set()
        for x in sorted(frontier):
            s = skew(x)
            if s not in closed:
                fresh.add(s)
        for args in product(snapshot, repeat=n):
            if not any(a in frontier for a in args):
                continue
            v = f(list(args))
            if v not in closed:
                fresh.add(v)
        closed |= fresh
        frontier = fresh
    return tuple(sorted(closed))


def structural_check(cg):
    """Search for an element u making the coordinate group an ordinary
    subgroup of the power twisted by u, invariant under the twist's
    canonical automorphism x -> u theta(x) theta(u^-1). Returns the first
    such u, or None."""
    if cg.power is None:
        return cg.elements[0]
    pg = cg.power.base
    theta = cg.power.theta
    H = set(cg.elements)
    for u in cg.elements:
        iu = pg.inv(u)
        tiu = theta(iu)
        if any(pg.mul(pg.mul(u, pg.inv(a)), u) not in H for a in H):
            continue
        if any(pg.mul(pg.mul(u, theta(a)), tiu) not in H for a in H):
            continue
        ok = True
        for a in H:
            aiu = pg.mul(a, iu)
            if any(pg.mul(aiu, b) not in H for b in H):
                ok = False
                break
        if ok:
            return u
    return None


# ---------------------------------------------------------------------------
# term functions, Zariski closure, irreducibility


class TermFunctions:
    """All functions G^m -> G definable by terms with coefficients,
    tabulated as value tuples over the lexicographically ordered points
    of G^m. Shared by the closure operator and the irreducibility test.

    The saturation runs inside the twist of the pointwise power by
    u = skew(first generator): the f/skew closure of a generating set
    equals the smallest u-twisted subgroup containing the generators and
    f(u,...,u) that is stable under x -> u theta(x) theta(u^-1). This is
    the same subgroup criterion used for polyadic subgroups and is
    cross-checked against direct f/skew saturation in the test suite.
    """

    def __init__(self, p, m, caps=_caps.DEFAULT):
        d = as_derived(p)
        self.p = d
        self.m = m
        self.points = list(product(range(d.order), repeat=m))
        self.index = {pt: i for i, pt in enumerate(self.points)}
        base = d.base
        coords = len(self.points)
        projections = [tuple(pt[j] for pt in self.points) for j in range(m)]
        diagonals = [(g,) * coords for g in range(d.order)]
        gens = list(dict.fromkeys(projections + diagonals))

        def mul(u, v):
            return tuple(base.mul(a, b) for a, b in zip(u, v))

        def inv(u):
            return tuple(base.inv(a) for a in u)

        def theta(u):
            return tuple(d.theta(a) for a in u)

        skew_map = tuple(d.skew(x) for x in base.elements())
        u0 = tuple(skew_map[a] for a in gens[0])
        fu = u0
        for k in range(1, d.n):
            fu = mul(fu, tuple(d.theta_pows[k][a] for a in u0))
        fu = mul(fu, (d.b,) * coords)

        iu0 = inv(u0)
        tiu0 = theta(iu0)

        def tmul(x, y):
            return mul(mul(x, iu0), y)

        def tinv(x):
            return mul(mul(u0, inv(x)), u0)

        def psi(x):
            return mul(mul(u0, theta(x)), tiu0)

        closed = {u0, fu}
        closed.update(gens)
        frontier = list(closed)
        while frontier:
            _caps.check(caps, "term algebra", len(closed), caps.max_closure_algebra)
            fresh = set()
            for x in frontier:
                for y in (tinv(x), psi(x)):
                    if y not in closed and y not in fresh:
                        fresh.add(y)
                for y in list(closed) + list(fresh):
                    for z in (tmul(x, y), tmul(y, x)):
                        if z not in closed and z not in fresh:
                            fresh.add(z)
            closed |= fresh
            frontier = sorted(fresh)
        self.functions = sorted(closed)

    def closure(self, z, caps=_caps.DEFAULT):
        """Smallest algebraic superset: the points where every pair of
        term functions that agree on z still agree."""
        zpts = []
        for pt in z:
            pt = tuple(pt)
            if pt not in self.index:
                raise PolyadicError(f"point {pt} outside the ambient grid")
            if pt not in zpts:
                zpts.append(pt)
        zidx = sorted(self.index[pt] for pt in zpts)
        buckets = {}
        for fn in self.functions:
            buckets.setdefault(tuple(fn[i] for i in zidx), []).append(fn)
        good = set(range(len(self.points)))
        for members in buckets.values():
            if len(members) < 2:
                continue
            first = members[0]
            good = {
                i
                for i in good
                if all(fn[i] == first[i] for fn in members[1:])
            }
            if not good:
                break
        return AlgebraicSet(
            m=self.m, points=tuple(sorted(self.points[i] for i in good))
        )

    def is_algebraic(self, z):
        zset = {tuple(pt) for pt in z}
        return set(self.closure(zset).points) == zset

    def irreducible(self, y, caps=_caps.DEFAULT):
        """Whether no two proper algebraic subsets of y cover it.

        Enumerates closures of all subsets of y, keeps the proper
        algebraic ones contained in y, reduces to maximal members, and
        looks for a covering pair. Returns (flag, witness pair or None).
        """
        ypts = sorted({tuple(pt) for pt in y})
        k = len(ypts)
        _caps.check(caps, "irreducibility points", k, caps.max_irreducible_points)
        yset = frozenset(ypts)
        if k <= 1:
            return True, None
        candidates = set()
        for mask in range(1, 2 ** k):
            sub = [ypts[i] for i in range(k) if mask >> i & 1]
            cl = frozenset(self.closure(sub).points)
            if cl != yset and cl <= yset:
                candidates.add(cl)
        maximal = [
            c
            for c in candidates
            if not any(c < other for other in candidates)
        ]
        maximal.sort(key=lambda c: sorted(c))
        for i, z1 in enumerate(maximal):
            for z2 in maximal[i:]:
                if z1 | z2 == yset:
                    return False, (tuple(sorted(z1)), tuple(sorted(z2)))
        return True, None


def closure(p, z, m, caps=_caps.DEFAULT):
    return TermFunctions(p, m, caps=caps).closure(z, caps=caps)


def is_irreducible(p, y, caps=_caps.DEFAULT):
    pts = y.points if isinstance(y, AlgebraicSet) else tuple(y)
    m = y.m if isinstance(y, AlgebraicSet) else len(pts[0])
    flag, _ = TermFunctions(p, m, caps=caps).irreducible(pts, caps=caps)
    return flag


# ---------------------------------------------------------------------------
# noetherian witness


def minimal_subsystem(p, system, caps=_caps.DEFAULT):
    """Greedy removal pass: drop equations whose removal keeps the
    solution set; no single equation of the result is removable. One
    pass suffices because removing equations can only grow the set."""
    target = solve(p, system, caps=caps).points
    keep = list(system.equations)
    i = 0
    while i < len(keep):
        trial = keep[:i] + keep[i + 1 :]
        rest = EquationSystem(p, system.m, tuple(trial))
        if solve(p, rest, caps=caps).points == target:
            keep = trial
        else:
            i += 1
    return EquationSystem(p, system.m, tuple(keep))


# ---------------------------------------------------------------------------
# comparison with the cover


def eval_term_in_group(t, assignment, grp, n):
    """Evaluate a coefficient-free term in an ordinary group, reading the
    n-ary operation as the n-fold product and skew as the (2-n)-th power."""
    from .terms import Apply, Skew, Variable

    if isinstance(t, Variable):
        return assignment[t.index]
    if isinstance(t, Skew):
        return grp.power(eval_term_in_group(t.child, assignment, grp, n), 2 - n)
    if isinstance(t, Apply):
        acc = None
        for c in t.children:
            v = eval_term_in_group(c, assignment, grp, n)
            acc = v if acc is None else grp.mul(acc, v)
        return acc
    raise PolyadicError("coefficient-free term required")


def _tuple_subgroup_closure(grp, gens, coords):
    identity = (grp.identity,) * coords
    closed = {identity}
    closed.update(gens)
    frontier = sorted(closed)
    while frontier:
        fresh = set()
        for x in frontier:
            ix = tuple(grp.inv(a) for a in x)
            if ix not in closed and ix not in fresh:
                fresh.add(ix)
            for y in list(closed) + list(fresh):
                for z in (
                    tuple(grp.mul(a, b) for a, b in zip(x, y)),
                    tuple(grp.mul(b, a) for a, b in zip(x, y)),
                ):
                    if z not in closed and z not in fresh:
                        fresh.add(z)
        closed |= fresh
        frontier = sorted(fresh)
    return sorted(closed)


@dataclass(frozen=True)
class Theorem63Report:
    """Outcome of the cover-comparison check for a coefficient-free
    system: does the cover of the coordinate group over G map onto the
    group of word functions on the cover's solution set?"""

    ok: bool
    v_g: AlgebraicSet
    gamma_g_order: int
    cover_order: int
    v_star_count: int
    gamma_star_order: int
    epi_images: Optional[tuple]
    reason: Optional[str]


def theorem63_check(p, system, caps=_caps.DEFAULT):
    from .cover import build_post_cover

    for eq in system.equations:
        if not (is_coefficient_free(eq.left) and is_coefficient_free(eq.right)):
            raise PolyadicError("the comparison requires a coefficient-free system")
    m = system.m
    if m < 1:
        raise PolyadicError("at least one variable is required")

    v_g = solve(p, system, caps=caps)
    gamma = coordinate_group(p, v_g, with_constants=False, caps=caps)
    gamma_tab = gamma.as_polyadic(caps=caps)
    cov = build_post_cover(gamma_tab, caps=caps)

    cover_p = build_post_cover(p, caps=caps)
    cg = cover_p.group
    n = p.n
    _caps.check(caps, "cover solution grid", cg.order ** m, caps.max_points)
    vstar = [
        pt
        for pt in product(range(cg.order), repeat=m)
        if all(
            eval_term_in_group(eq.left, pt, cg, n)
            == eval_term_in_group(eq.right, pt, cg, n)
            for eq in system.equations
        )
    ]
    coords = len(vstar)
    star_projections = [
        tuple(pt[j] for pt in vstar) for j in range(m)
    ]
    star_elements = (
        _tuple_subgroup_closure(cg, star_projections, coords)
        if coords
        else [()]
    )
    pos = {x: i for i, x in enumerate(star_elements)}
    names = [f"w{i}" for i in range(len(star_elements))]
    table = [
        [pos[tuple(cg.mul(a, b) for a, b in zip(x, y))] for y in star_elements]
        for x in star_elements
    ]
    relaxed = _caps.Caps(max_table_order=max(caps.max_table_order, len(table)))
    star_group = validate_group(names, table, name="word functions", caps=relaxed)

    gen_local = [gamma.local_index(x) for x in gamma.projections]
    gens = [cov.embed_index(i) for i in gen_local]
    images = [pos[proj] for proj in star_projections]
    hom, reason = hom_from_generator_images(cov.group, star_group, gens, images)
    ok = hom is not None and hom.is_surjective()
    why = None
    if hom is None:
        why = f"no homomorphism: {reason}"
    elif not hom.is_surjective():
        why = "homomorphism exists but is not onto"
    return Theorem63Report(
        ok=ok,
        v_g=v_g,
        gamma_g_order=gamma.order,
        cover_order=cov.order,
        v_star_count=coords,
        gamma_star_order=len(star_elements),
        epi_images=hom.images if ok else None,
        reason=why,
    )
