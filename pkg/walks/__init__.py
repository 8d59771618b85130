"""Lattice walk types, loop predicates and the enumeration oracle."""
from walks.lattice_walks import (
    Direction,
    LoopClass,
    Walk,
    check_enumeration_cap,
    classify,
    directions,
    displacement,
    enumerate_loop_count,
    enumerate_simple_loop_count,
    first_return_index,
    iter_loops,
    split_at_first_return,
    walk_probability,
)

__all__ = [
    "Direction",
    "LoopClass",
    "Walk",
    "check_enumeration_cap",
    "classify",
    "directions",
    "displacement",
    "enumerate_loop_count",
    "enumerate_simple_loop_count",
    "first_return_index",
    "iter_loops",
    "split_at_first_return",
    "walk_probability",
]
