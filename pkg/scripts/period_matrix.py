"""Print the log-period matrix, its exponential and the monodromy checks for a graph file."""
import argparse
import itertools
from dataclasses import dataclass
from pathlib import Path

from tate_periods.graph import load_graph
from tate_periods.monodromy import monodromy_identity_check
from tate_periods.periods import log_period_matrix
from tate_periods.schottky import TateCurve

DATA = Path(__file__).resolve().parent.parent / "data" / "graphs"


@dataclass
class Config:
    graph: Path = DATA / "theta.json"
    order: int = 2
    jobs: int = 1
    monodromy: bool = True


def run(cfg):
    graph, coords = load_graph(cfg.graph)
    curve = TateCurve(graph, coords)
    P = log_period_matrix(curve, cfg.order, jobs=cfg.jobs)
    print("genus %d, order %d" % (curve.genus, cfg.order))
    for i, row in enumerate(P, 1):
        for j, p in enumerate(row, 1):
            print("P[%d][%d] = %s" % (i, j, p))
            print("  exp = %s" % p.exp())
    if cfg.monodromy:
        edges = graph.edge_ids
        for r in range(len(edges) + 1):
            for sub in itertools.combinations(edges, r):
                rep = monodromy_identity_check(curve, sub, cfg.order, P)
                print("E' = {%s}: %s" % (",".join(sub), "ok" if rep.ok else rep.message))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--graph", type=Path, default=Config.graph)
    ap.add_argument("--order", type=int, default=Config.order)
    ap.add_argument("--jobs", type=int, default=Config.jobs)
    ap.add_argument("--no-monodromy", dest="monodromy", action="store_false")
    run(Config(**vars(ap.parse_args())))
