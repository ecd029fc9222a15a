"""Size limits for exhaustive computations.

All exhaustive operations check their input against these limits and raise
SizeCapExceeded instead of silently grinding. Callers can pass a custom Caps
to any operation that enumerates.
"""

from dataclasses import dataclass

from .errors import SizeCapExceeded


@dataclass(frozen=True)
class Caps:
    max_table_order: int = 64        # full-table binary groups
    max_power_order: int = 10 ** 6   # direct powers (lazy, never tabulated)
    max_arity: int = 6               # n-ary operations
    max_tabulate: int = 2 * 10 ** 6  # materialized n-ary tables (|G|^n entries)
    max_axiom_tuples: int = 10 ** 7  # exhaustive associativity (|G|^(2n-1))
    max_points: int = 10 ** 6        # solution-set enumeration (|G|^m)
    max_closure_algebra: int = 50_000  # generated term-function algebras
    max_irreducible_points: int = 15   # subsets of Y enumerated, 2^|Y|
    default_coset_cap: int = 10_000    # coset enumeration budget


DEFAULT = Caps()


def check(caps, what, size, limit):
    if size > limit:
        raise SizeCapExceeded(what, size, limit)
