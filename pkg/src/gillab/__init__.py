"""Exact-arithmetic lab for a nested Cantor-set family, its set-valued
bonding map, and finite approximations of the generalized inverse limit."""

from .exact import ClosedInterval, IntervalSet, Rational, rat
from .cantor import (
    CantorFamily,
    GapAttachedCantor,
    IntermediateCantor,
    Membership,
    MiddleThirds,
    build_family,
)
from .bonding import BaseMap, FBracket, SetValuedMap, eval_F, eval_f, make_map
from .dynamics import Cycle, Orbit, iterate_f, make_cycle, verify_orbit
from .invlimit import (
    ArcSystem,
    BoxCover,
    Thread,
    ZERO_THREAD,
    make_arc_system,
    make_thread,
    mahavier_cover,
    tail_index,
    verify_arc_chain,
)
from .errors import BoxCountError, BracketSearchError, CacheError, GillabError

__version__ = "0.1.0"

__all__ = [
    "ArcSystem", "BaseMap", "BoxCountError", "BoxCover", "BracketSearchError",
    "CacheError", "CantorFamily", "ClosedInterval", "Cycle", "FBracket",
    "GapAttachedCantor", "GillabError", "IntermediateCantor", "IntervalSet",
    "Membership", "MiddleThirds", "Orbit", "Rational", "SetValuedMap",
    "Thread", "ZERO_THREAD", "build_family", "eval_F", "eval_f", "iterate_f",
    "mahavier_cover", "make_arc_system", "make_cycle", "make_map",
    "make_thread", "rat", "tail_index", "verify_arc_chain", "verify_orbit",
]
