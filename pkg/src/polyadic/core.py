"""Polyadic (n-ary) groups, n >= 3.

An n-ary group is a set with one n-ary operation f that is associative in
every position and uniquely solvable in every position. Two representations
are supported: derived from a binary group through a twisting automorphism
theta and a constant b with

    f(x_1,...,x_n) = x_1 . theta(x_2) . theta^2(x_3) ... theta^(n-1)(x_n) . b,

subject to theta(b) = b and theta^(n-1)(x) = b . x . b^(-1); and a direct
n-dimensional table over named elements. Every operation here works on both.
"""

from dataclasses import dataclass
from itertools import product
from typing import Optional

from . import caps as _caps
from .errors import (
    ArityMismatch,
    ConditionOneFails,
    ConditionTwoFails,
    NoSolution,
    PolyadicError,
    ReconstructionMismatch,
)
from .groups import (
    GroupAutomorphism,
    enumerate_homs,
    identity_automorphism,
    psi_u,
    subgroups,
    twisted_group,
    validate_group,
)


class PolyadicGroup:
    n: int
    order: int

    def f(self, args):
        raise NotImplementedError

    def skew(self, x):
        """The unique y with f(x,...,x,y) = x."""
        raise NotImplementedError

    def name(self, i):
        raise NotImplementedError

    def index(self, name):
        raise NotImplementedError

    def elements(self):
        return range(self.order)

    def names(self):
        return [self.name(i) for i in self.elements()]

    def _check_arity(self, args):
        if len(args) != self.n:
            raise ArityMismatch(self.n, len(args))


class DerivedPolyadicGroup(PolyadicGroup):
    """Carrier and names are those of the base group."""

    def __init__(self, base, theta, b, n):
        self.base = base
        self.theta = theta
        self.b = b
        self.n = n
        self.order = base.order
        pows = [tuple(base.elements())]
        for _ in range(n - 1):
            prev = pows[-1]
            pows.append(tuple(theta(x) for x in prev))
        self.theta_pows = pows

    def f(self, args):
        self._check_arity(args)
        base = self.base
        acc = args[0]
        for k in range(1, self.n):
            acc = base.mul(acc, self.theta_pows[k][args[k]])
        return base.mul(acc, self.b)

    def skew(self, x):
        # b^-1 . (theta(x) . theta^2(x) ... theta^(n-2)(x))^-1
        base = self.base
        acc = base.identity
        for k in range(1, self.n - 1):
            acc = base.mul(acc, self.theta_pows[k][x])
        return base.mul(base.inv(self.b), base.inv(acc))

    def name(self, i):
        return self.base.name(i)

    def index(self, name):
        return self.base.index(name)

    def __repr__(self):
        return f"DerivedPolyadicGroup(order={self.order}, n={self.n})"


class TablePolyadicGroup(PolyadicGroup):
    """n-ary operation stored as a flat row-major table of size order**n."""

    def __init__(self, element_names, n, flat_table):
        self._names = tuple(element_names)
        self._index = {s: i for i, s in enumerate(self._names)}
        self.n = n
        self.order = len(self._names)
        if len(flat_table) != self.order ** n:
            raise PolyadicError("table size does not match order**n")
        self.flat = tuple(flat_table)
        self._skew_cache = None

    def f(self, args):
        self._check_arity(args)
        idx = 0
        for a in args:
            idx = idx * self.order + a
        return self.flat[idx]

    def skew(self, x):
        if self._skew_cache is None:
            self._skew_cache = {}
        if x not in self._skew_cache:
            self._skew_cache[x] = skew_search(self, x)
        return self._skew_cache[x]

    def name(self, i):
        return self._names[i]

    def index(self, name):
        return self._index[name]

    def __repr__(self):
        return f"TablePolyadicGroup(order={self.order}, n={self.n})"


def derive(base, theta, b, n, caps=_caps.DEFAULT):
    """Build the derived n-ary group, checking both derivation conditions."""
    if n < 3:
        raise PolyadicError("arity must be at least 3")
    _caps.check(caps, "arity", n, caps.max_arity)
    if theta(b) != b:
        raise ConditionOneFails(b, theta(b))
    pow_n1 = theta.iterate(n - 1)
    for x in base.elements():
        rhs = base.mul(base.mul(b, x), base.inv(b))
        if pow_n1(x) != rhs:
            raise ConditionTwoFails(x, pow_n1(x), rhs)
    return DerivedPolyadicGroup(base, theta, b, n)


def derive_from_constant(base, b, n, caps=_caps.DEFAULT):
    """f = plain n-fold product followed by b; needs b central."""
    return derive(base, identity_automorphism(base), b, n, caps=caps)


def eval_f(p, args):
    return p.f(args)


def polyadic_from_table(element_names, n, flat_table, caps=_caps.DEFAULT):
    if n < 3:
        raise PolyadicError("arity must be at least 3")
    _caps.check(caps, "arity", n, caps.max_arity)
    _caps.check(
        caps, "n-ary table", len(element_names) ** n, caps.max_tabulate
    )
    return TablePolyadicGroup(element_names, n, flat_table)


def tabulate(p, caps=_caps.DEFAULT):
    """Materialize any polyadic group into table form."""
    _caps.check(caps, "n-ary table", p.order ** p.n, caps.max_tabulate)
    flat = [p.f(args) for args in product(p.elements(), repeat=p.n)]
    return TablePolyadicGroup(p.names(), p.n, flat)


def skew_search(p, x):
    """Brute-force skew: scan for the unique y with f(x^(n-1), y) = x."""
    prefix = [x] * (p.n - 1)
    sols = [y for y in p.elements() if p.f(prefix + [y]) == x]
    if len(sols) != 1:
        raise NoSolution(
            f"skew of {x}: {len(sols)} solutions, operation is not a polyadic group"
        )
    return sols[0]


def skew_table(p):
    return tuple(p.skew(x) for x in p.elements())


# ---------------------------------------------------------------------------
# axioms


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    associative: bool
    associativity_witness: Optional[tuple]  # (i, j, tuple, value_i, value_j)
    solvable: bool
    solvability_witness: Optional[tuple]    # (position, args-with-None, target)
    unique: bool
    uniqueness_witness: Optional[tuple]


def verify_axioms(p, caps=_caps.DEFAULT):
    """Exhaustive check of associativity (all position pairs) and unique
    solvability (every position). Witnesses are the lexicographically least
    violations; the report never raises on mathematical failure.
    """
    n, g = p.n, p.order
    _caps.check(caps, "associativity tuples", g ** (2 * n - 1), caps.max_axiom_tuples)

    assoc_witness = None
    if isinstance(p, (TablePolyadicGroup, DerivedPolyadicGroup)):
        flat, strides = _flat_op(p)
        assoc_witness = _assoc_scan_flat(n, g, flat, strides)
    else:
        assoc_witness = _assoc_scan_generic(p)

    solv_witness = None
    uniq_witness = None
    for pos in range(n):
        if solv_witness or uniq_witness:
            break
        for rest in product(range(g), repeat=n - 1):
            seen = {}
            args = list(rest[:pos]) + [0] + list(rest[pos:])
            for x in range(g):
                args[pos] = x
                v = p.f(args)
                if v in seen:
                    uniq_witness = (pos, rest, v, seen[v], x)
                    break
                seen[v] = x
            if uniq_witness:
                break
            if len(seen) != g:
                missing = min(set(range(g)) - set(seen))
                solv_witness = (pos, rest, missing)
                break

    associative = assoc_witness is None
    solvable = solv_witness is None
    unique = uniq_witness is None
    return AxiomReport(
        ok=associative and solvable and unique,
        associative=associative,
        associativity_witness=assoc_witness,
        solvable=solvable,
        solvability_witness=solv_witness,
        unique=unique,
        uniqueness_witness=uniq_witness,
    )


def _flat_op(p):
    """Row-major flat table of f plus index strides, materializing if needed."""
    g, n = p.order, p.n
    strides = [g ** (n - 1 - k) for k in range(n)]
    if isinstance(p, TablePolyadicGroup):
        return p.flat, strides
    flat = [0] * (g ** n)
    for idx, args in enumerate(product(range(g), repeat=n)):
        flat[idx] = p.f(list(args))
    return tuple(flat), strides


def _assoc_scan_flat(n, g, flat, strides):
    """First tuple where the n insertion positions disagree, else None.

    Scans all (2n-1)-tuples in lexicographic order; for each, evaluates
    f(prefix, f(window), suffix) at every insertion position with incremental
    window and prefix indices.
    """
    top = strides[0] * g  # g**n
    for t in product(range(g), repeat=2 * n - 1):
        # window index for positions [i, i+n)
        w = 0
        for k in range(n):
            w = w * g + t[k]
        # suffix digit values for outer index: suffix of length n-1-i uses
        # t[i+n .. 2n-2]; precompute powers on the fly
        first = None
        prefix = 0  # index value of t[0..i-1] left-aligned in n digits
        for i in range(n):
            inner = flat[w]
            # outer args: t[0..i-1], inner, t[i+n..2n-2]
            o = prefix + inner * strides[i]
            for k, pos in enumerate(range(i + n, 2 * n - 1)):
                o += t[pos] * strides[i + 1 + k]
            v = flat[o]
            if first is None:
                first = (i, v)
            elif v != first[1]:
                return (first[0] + 1, i + 1, t, first[1], v)
            if i < n - 1:
                prefix += t[i] * strides[i]
                w = (w - t[i] * strides[0]) * g + t[i + n]
    return None


def _assoc_scan_generic(p):
    n, g = p.n, p.order
    for t in product(range(g), repeat=2 * n - 1):
        first = None
        for i in range(n):
            inner = p.f(list(t[i : i + n]))
            v = p.f(list(t[:i]) + [inner] + list(t[i + n :]))
            if first is None:
                first = (i, v)
            elif v != first[1]:
                return (first[0] + 1, i + 1, t, first[1], v)
    return None


def dornte_check(p):
    """Skew-element cancellation identities at every position.

    For 2 <= i <= n checks f(x^(i-2), skew x, x^(n-i), y) = y and the mirror
    f(y, x^(n-i), skew x, x^(i-2)) = y for all x, y. Returns (ok, witness).
    """
    n = p.n
    for x in p.elements():
        sx = p.skew(x)
        for i in range(2, n + 1):
            left_block = [x] * (i - 2) + [sx] + [x] * (n - i)
            for y in p.elements():
                if p.f(left_block + [y]) != y:
                    return False, ("left", i, x, y, p.f(left_block + [y]))
                if p.f([y] + [x] * (n - i) + [sx] + [x] * (i - 2)) != y:
                    return False, ("right", i, x, y)
    return True, None


# ---------------------------------------------------------------------------
# retracts and recovery


def retract(p, a):
    """Binary group on the same carrier: x*y = f(x, a^(n-2), y).

    The identity is skew(a); the inverse of x is f(skew a, x^(n-3), skew x,
    skew a), cross-checked against the computed table.
    """
    mid = [a] * (p.n - 2)
    names = p.names()
    table = [
        [p.f([x] + mid + [y]) for y in p.elements()] for x in p.elements()
    ]
    g = validate_group(names, table, name=f"ret_{p.name(a)}")
    sa = p.skew(a)
    if g.identity != sa:
        raise ReconstructionMismatch(("identity", a), sa, g.identity)
    for x in p.elements():
        formula = p.f([sa] + [x] * (p.n - 3) + [p.skew(x), sa])
        if formula != g.inv(x):
            raise ReconstructionMismatch(("inverse", x), g.inv(x), formula)
    return g


def nary_identity(p):
    """Lowest element a with f(a^(i-1), x, a^(n-i)) = x everywhere, or None."""
    n = p.n
    for a in p.elements():
        good = True
        for i in range(1, n + 1):
            pre = [a] * (i - 1)
            post = [a] * (n - i)
            if any(p.f(pre + [x] + post) != x for x in p.elements()):
                good = False
                break
        if good:
            return a
    return None


def hosszu_gloskin(p, a):
    """Recover (retract group, twisting automorphism, constant) at anchor a.

    theta_a(x) = f(skew a, x, a^(n-2)) and b_a = f(skew a, ..., skew a).
    The recovered data is checked to rebuild f exactly on every tuple and is
    returned as a derived polyadic group over the retract.
    """
    g = retract(p, a)
    sa = p.skew(a)
    tail = [a] * (p.n - 2)
    theta_images = tuple(p.f([sa, x] + tail) for x in p.elements())
    theta = GroupAutomorphism(g, theta_images)
    if not theta.is_valid():
        raise ReconstructionMismatch(("theta", a), "automorphism", theta_images)
    b = p.f([sa] * p.n)
    out = derive(g, theta, b, p.n)
    for args in product(p.elements(), repeat=p.n):
        args = list(args)
        if out.f(args) != p.f(args):
            raise ReconstructionMismatch(tuple(args), p.f(args), out.f(args))
    return out


def as_derived(p):
    """p itself if already derived, else the anchor-0 recovery."""
    if isinstance(p, DerivedPolyadicGroup):
        return p
    return hosszu_gloskin(p, 0)


# ---------------------------------------------------------------------------
# subobjects and morphisms


def polyadic_subgroups(p):
    """All carriers of polyadic subgroups, via the twisted-group criterion.

    In the twist of the base by u the operation satisfies
    f(x_1,...,x_n) = x_1 * psi_u(x_2) * ... * psi_u^(n-1)(x_n) * f(u,...,u),
    so a subset H is a polyadic subgroup exactly when, for some u, it is a
    psi_u-invariant subgroup of the twist containing f(u,...,u). Returns
    sorted tuples of element indices.
    """
    d = as_derived(p)
    base, theta = d.base, d.theta
    found = set()
    for u in base.elements():
        fu = d.f([u] * d.n)
        tw = twisted_group(base, u)
        psi = psi_u(base, theta, u)
        for sub in subgroups(tw):
            if fu in sub and all(psi(x) in sub for x in sub):
                found.add(tuple(sorted(sub)))
    return tuple(sorted(found, key=lambda s: (len(s), s)))


def closed_subsets_bruteforce(p, caps=_caps.DEFAULT):
    """Oracle: nonempty subsets closed under f and skew, by enumeration."""
    _caps.check(caps, "subset enumeration", 2 ** p.order, 2 ** 16)
    out = []
    els = list(p.elements())
    for mask in range(1, 2 ** p.order):
        sub = [x for x in els if mask >> x & 1]
        inside = set(sub)
        if any(p.skew(x) not in inside for x in sub):
            continue
        if all(
            p.f(list(args)) in inside
            for args in product(sub, repeat=p.n)
        ):
            out.append(tuple(sub))
    return tuple(sorted(out, key=lambda s: (len(s), s)))


@dataclass(frozen=True)
class PolyadicHom:
    """A map preserving the n-ary operation, realized as x -> phi(x) * a."""

    images: tuple
    a: int
    phi: tuple  # image array of the base-group homomorphism

    def __call__(self, x):
        return self.images[x]


def is_polyadic_hom(p, q, images):
    return all(
        images[p.f(list(args))] == q.f([images[x] for x in args])
        for args in product(p.elements(), repeat=p.n)
    )


def polyadic_homs(p, q, caps=_caps.DEFAULT):
    """All maps p -> q preserving f, enumerated through the (a, phi) form.

    Every polyadic homomorphism factors as x -> phi(x) * a where phi is a
    homomorphism of the underlying derived groups, a satisfies
    f_q(a,...,a) = phi(b_p) * a, and phi . theta_p = I_a . theta_q . phi
    (I_a = conjugation by a in q's base). Results are deduplicated by image
    array and sorted.
    """
    dp, dq = as_derived(p), as_derived(q)
    gb, hb = dp.base, dq.base
    homs = enumerate_homs(gb, hb, caps=caps)
    out = {}
    for a in hb.elements():
        ia_eta = tuple(
            hb.conjugate(a, dq.theta(x)) for x in hb.elements()
        )
        fa = dq.f([a] * dq.n)
        for phi in homs:
            if fa != hb.mul(phi(dp.b), a):
                continue
            if any(
                phi(dp.theta(x)) != ia_eta[phi(x)] for x in gb.elements()
            ):
                continue
            images = tuple(hb.mul(phi(x), a) for x in gb.elements())
            if images not in out:
                out[images] = PolyadicHom(images=images, a=a, phi=phi.images)
    return tuple(out[k] for k in sorted(out))


def polyadic_maps_bruteforce(p, q, caps=_caps.DEFAULT):
    """Oracle: all f-preserving maps by enumerating every function."""
    _caps.check(caps, "map enumeration", q.order ** p.order, caps.max_power_order)
    tuples = list(product(p.elements(), repeat=p.n))
    out = []
    for images in product(q.elements(), repeat=p.order):
        if all(
            images[p.f(list(args))] == q.f([images[x] for x in args])
            for args in tuples
        ):
            out.append(images)
    return tuple(sorted(out))
