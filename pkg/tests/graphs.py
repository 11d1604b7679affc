"""Test graphs shared by the suite."""
from fractions import Fraction
from pathlib import Path

from tate_periods.graph import StableGraph, Edge, Tail, CoordinateAssignment, INF


def g1(symbolic=False):
    g = StableGraph(("v",), (Edge("e", "v", "v"),), (Tail("t", "v", 1),), "v")
    if symbolic:
        return g, CoordinateAssignment({})
    return g, CoordinateAssignment({"e+": Fraction(0), "e-": Fraction(1), "t": Fraction(-1)})


def theta():
    g = StableGraph(("v1", "v2"),
                    (Edge("e1", "v1", "v2"), Edge("e2", "v1", "v2"), Edge("e3", "v1", "v2")),
                    (Tail("t1", "v1", 1), Tail("t2", "v2", 2)), "v1")
    c = {"e1-": 0, "e2-": 1, "e3-": 2, "t1": 3, "e1+": 4, "e2+": -1, "e3+": 5, "t2": 2}
    return g, CoordinateAssignment({k: Fraction(v) for k, v in c.items()})


def dumbbell():
    g = StableGraph(("v1", "v2"),
                    (Edge("a", "v1", "v1"), Edge("b", "v2", "v2"), Edge("c", "v1", "v2")),
                    (Tail("t1", "v1", 1), Tail("t2", "v2", 2)), "v1")
    c = {"a+": 0, "a-": 1, "c-": 2, "t1": -1, "b+": 0, "b-": 1, "c+": INF, "t2": 2}
    return g, CoordinateAssignment({k: (v if v is INF else Fraction(v)) for k, v in c.items()})


def g1t2():
    return StableGraph(("v1", "v2"), (Edge("e", "v1", "v1"), Edge("b", "v1", "v2")),
                       (Tail("t0", "v2", 1), Tail("t1", "v2", 2)), "v2")


DATA = Path(__file__).resolve().parent.parent / "data" / "graphs"
