"""The covering group of a finite n-ary group, and presented n-ary groups.

Every n-ary group G embeds into an ordinary group G* of order (n-1)|G|,
as a generating coset of a normal subgroup R with G*/R cyclic of order
n-1, such that the n-ary operation is the n-fold product of G*. The
construction here realizes G* on pairs (g, grade) and machine-checks the
five coset properties on every instance it builds. Presentations of
n-ary groups transform into ordinary presentations of the cover, which a
bounded coset enumeration can then try to realize as a finite table.
"""

from dataclasses import dataclass, replace

from . import caps as _caps
from .core import as_derived, retract
from .errors import (
    CapExceeded,
    EmptyGeneratorSet,
    Inconsistent,
    NotPolyadicHom,
    PolyadicError,
    PropertyFailure,
)
from .groups import (
    are_isomorphic,
    subgroup_closure,
    subgroup_table,
    validate_group,
)
from .terms import term_to_free_word
from .words import FreeWord

from itertools import product


class PostCover:
    """Cover group on pairs (g, grade), grade running over 0..n-2.

    Element index of (g, i) is i*|G| + g. The source n-ary group embeds
    at grade 1; R is the grade-0 normal subgroup.
    """

    def __init__(self, polyadic, group, retract_iso):
        self.polyadic = polyadic
        self.group = group
        self.n = polyadic.n
        self.base_order = polyadic.order
        self.retract_iso = retract_iso

    @property
    def order(self):
        return self.group.order

    def embed_index(self, g):
        return self.base_order + g

    def embed(self, g):
        return self.base_order + g

    def grade(self, c):
        return c // self.base_order

    def component(self, c):
        return c % self.base_order

    def embedded(self):
        return range(self.base_order, 2 * self.base_order)

    def r_subgroup(self):
        return tuple(range(self.base_order))

    def __repr__(self):
        return f"PostCover(order={self.order}, n={self.n})"


def build_post_cover(p, caps=_caps.DEFAULT):
    """Construct and fully verify the cover of a finite n-ary group.

    The multiplication (x,i)(y,j) = (x . theta^i(y) . b^((i+j) div (n-1)),
    (i+j) mod (n-1)) is validated as a group table, then checked against
    the five coset properties:
      1. g -> (g,1) is a bijection onto the coset R(e,1);
      2. R is isomorphic to the retract of p (witness kept);
      3. the grade map is a homomorphism onto Z_(n-1) with kernel R;
      4. f(x_1,...,x_n) = (x_1,1)(x_2,1)...(x_n,1) for all tuples;
      5. the embedded coset generates the whole cover.
    Any failure raises PropertyFailure with the property index.
    """
    d = as_derived(p)
    base = d.base
    n = d.n
    m = n - 1
    q = base.order
    _caps.check(caps, "cover order", m * q, caps.max_table_order)

    names = [f"{base.name(g)}_{i}" for i in range(m) for g in range(q)]
    table = []
    for i in range(m):
        for g in range(q):
            row = []
            for j in range(m):
                bump = d.b if i + j >= m else base.identity
                grade = (i + j) % m
                for h in range(q):
                    x = base.mul(base.mul(g, d.theta_pows[i][h]), bump)
                    row.append(grade * q + x)
            table.append(row)
    group = validate_group(names, table, name="cover", caps=caps)

    # property 1: embedding is the coset R(e,1)
    e1 = q + base.identity
    coset = {group.mul(r, e1) for r in range(q)}
    image = {q + g for g in range(q)}
    if coset != image or len(image) != q:
        raise PropertyFailure(1, f"embedded coset mismatch: {sorted(coset)}")

    # property 2: R is the retract
    r_group = subgroup_table(group, range(q), name="R")
    ok, iso = are_isomorphic(r_group, retract(d, 0))
    if not ok:
        raise PropertyFailure(2, "grade-0 subgroup is not the retract")

    # property 3: grade map is a homomorphism onto Z_(n-1) with kernel R
    for u in range(m * q):
        for v in range(m * q):
            if group.mul(u, v) // q != (u // q + v // q) % m:
                raise PropertyFailure(3, f"grade map not multiplicative at {u},{v}")
    if {c // q for c in range(m * q)} != set(range(m)):
        raise PropertyFailure(3, "grade map not onto")
    if [c for c in range(m * q) if c // q == 0] != list(range(q)):
        raise PropertyFailure(3, "grade kernel differs from R")

    # property 4: the n-ary operation is the n-fold product of embeddings
    for args in product(range(q), repeat=n):
        acc = q + args[0]
        for x in args[1:]:
            acc = group.mul(acc, q + x)
        if acc != q + d.f(list(args)):
            raise PropertyFailure(4, f"product mismatch at {args}")

    # property 5: the embedded coset generates
    if len(subgroup_closure(group, image)) != m * q:
        raise PropertyFailure(5, "embedded coset does not generate")

    return PostCover(d, group, iso)


def extend_hom_to_cover(cover, beta, target):
    """The unique group homomorphism on the cover restricting to beta.

    beta maps the n-ary group's carrier into target (a sequence of
    target indices) and must satisfy beta(f(x_1..x_n)) = product of the
    beta(x_i) in target; the extension is built by propagating along
    products with embedded generators. A propagation clash would mean
    beta was not a valid starting map, so Inconsistent is unreachable
    for inputs passing the precheck.
    """
    p = cover.polyadic
    n = cover.n
    for args in product(range(p.order), repeat=n):
        acc = beta[args[0]]
        for x in args[1:]:
            acc = target.mul(acc, beta[x])
        if acc != beta[p.f(list(args))]:
            raise NotPolyadicHom(args, beta[p.f(list(args))], acc)

    g = cover.group
    images = [None] * g.order
    frontier = []
    for x in range(p.order):
        c = cover.embed_index(x)
        images[c] = beta[x]
        frontier.append(c)
    while frontier:
        new = []
        for u in frontier:
            for x in range(p.order):
                w = g.mul(u, cover.embed_index(x))
                val = target.mul(images[u], beta[x])
                if images[w] is None:
                    images[w] = val
                    new.append(w)
                elif images[w] != val:
                    raise Inconsistent(w, images[w], val)
        frontier = new
    if any(v is None for v in images):
        raise PolyadicError("embedded coset failed to generate the cover")
    from .groups import Hom

    return Hom(g, target, tuple(images))


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class PolyadicPresentation:
    """Generators plus relations between coefficient-free n-ary terms;
    the terms' variable indices refer to the generator list."""

    generators: tuple
    relations: tuple  # pairs of terms


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple  # FreeWords


def positive_form(w):
    """The relator or its inverse, whichever has nonnegative height."""
    return w.inv() if w.height < 0 else w


def presentation_to_group(pres, n):
    """Ordinary presentation of the cover of a presented n-ary group.

    Each relation u = v flattens through the cover laws (operation to
    concatenation, skew to the (2-n)-th power) and contributes the
    reduced relator u v^-1. Relator heights are always divisible by n-1.
    """
    if not pres.generators:
        raise EmptyGeneratorSet()
    relators = []
    for u, v in pres.relations:
        wu = term_to_free_word(u, pres.generators, n)
        wv = term_to_free_word(v, pres.generators, n)
        r = wu * wv.inv()
        if r.height % (n - 1) != 0:
            raise PolyadicError(f"relator height {r.height} not divisible by {n - 1}")
        if not r.is_empty():
            relators.append(r)
    return GroupPresentation(tuple(pres.generators), tuple(relators))


# ---------------------------------------------------------------------------
# coset enumeration


def coset_enumerate(pres, cap=None, caps=_caps.DEFAULT):
    """Enumerate cosets of the trivial subgroup for a finite presentation.

    Deduction-driven strategy: after every new coset definition, relator
    scans run to a fixed point before the next definition, and cosets are
    defined in first-gap order, so the numbering is deterministic. If more
    than cap cosets would ever be defined the enumeration stops with
    CapExceeded; that outcome makes no claim about the group being
    infinite. On closure, returns the multiplication table of the group
    with elements named c0, c1, ... in word-search order from c0 = 1.
    """
    if not pres.generators:
        raise EmptyGeneratorSet()
    cap = caps.default_coset_cap if cap is None else cap
    if cap < 1:
        raise PolyadicError("cap must be at least 1")
    k = len(pres.generators)
    ncols = 2 * k
    gen_pos = {g: i for i, g in enumerate(pres.generators)}
    rels = []
    for w in pres.relators:
        cols = []
        for g, s in w.letters():
            if g not in gen_pos:
                raise PolyadicError(f"relator uses unknown generator {g!r}")
            cols.append(2 * gen_pos[g] + (0 if s > 0 else 1))
        if cols:
            rels.append(tuple(cols))

    table = [[None] * ncols]
    parent = [0]

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def get(a, c):
        v = table[a][c]
        return None if v is None else find(v)

    def define(a, c):
        if len(table) >= cap:
            raise CapExceeded(cap)
        b = len(table)
        table.append([None] * ncols)
        parent.append(b)
        table[a][c] = b
        table[b][c ^ 1] = a

    def coincide(a, b):
        queue = [(a, b)]
        while queue:
            a, b = queue.pop(0)
            a, b = find(a), find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            parent[b] = a
            for c in range(ncols):
                d = table[b][c]
                if d is None:
                    continue
                d = find(d)
                e = get(a, c)
                if e is None:
                    table[a][c] = d
                elif e != d:
                    queue.append((e, d))
                r = get(d, c ^ 1)
                if r is None:
                    table[d][c ^ 1] = a
                elif r != a:
                    queue.append((r, a))

    def scan(a, rel):
        """Trace one relator at one coset; returns True on any change."""
        f = a
        i = 0
        while i < len(rel):
            nxt = get(f, rel[i])
            if nxt is None:
                break
            f = nxt
            i += 1
        if i == len(rel):
            if f != a:
                coincide(f, a)
                return True
            return False
        b = a
        j = len(rel) - 1
        while j >= i:
            prv = get(b, rel[j] ^ 1)
            if prv is None:
                break
            b = prv
            j -= 1
        if j < i:
            if f != b:
                coincide(f, b)
                return True
            return False
        if j == i:
            table[f][rel[i]] = b
            table[b][rel[i] ^ 1] = f
            return True
        return False

    while True:
        progress = True
        while progress:
            progress = False
            for a in range(len(table)):
                if find(a) != a:
                    continue
                for rel in rels:
                    if scan(a, rel):
                        progress = True
        gap = None
        for a in range(len(table)):
            if find(a) != a:
                continue
            for c in range(ncols):
                if get(a, c) is None:
                    gap = (a, c)
                    break
            if gap:
                break
        if gap is None:
            break
        define(*gap)

    # read out the closed table as a group
    root = find(0)
    order_bfs = [root]
    seen = {root}
    head = 0
    paths = {root: ()}
    while head < len(order_bfs):
        x = order_bfs[head]
        head += 1
        for c in range(ncols):
            y = get(x, c)
            if y not in seen:
                seen.add(y)
                paths[y] = paths[x] + (c,)
                order_bfs.append(y)
    label = {x: i for i, x in enumerate(order_bfs)}

    def trace(a, path):
        for c in path:
            a = get(a, c)
        return a

    size = len(order_bfs)
    names = [f"c{i}" for i in range(size)]
    mul_table = [
        [label[trace(x, paths[y])] for y in order_bfs] for x in order_bfs
    ]
    relaxed = replace(caps, max_table_order=max(caps.max_table_order, size))
    return validate_group(names, mul_table, name="presented", caps=relaxed)
