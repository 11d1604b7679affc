"""Tabulate unipotent periods of all admissible words up to a given length."""
import argparse
import itertools
from dataclasses import dataclass
from pathlib import Path

from tate_periods.graph import load_graph
from tate_periods.schottky import TateCurve
from tate_periods.unipotent import (kz_residual, kz_solution, local_forms_at_tail, standard_curve,
                                    unipotent_period)

DATA = Path(__file__).resolve().parent.parent / "data" / "graphs"


@dataclass
class Config:
    graph: Path = DATA / "g1t2.json"
    tail: str = "t1"
    length: int = 2
    order: int = 1
    zorder: int = 10
    jobs: int = 1


def run(cfg):
    graph, coords = load_graph(cfg.graph)
    curve = TateCurve(graph, coords) if coords is not None else standard_curve(graph)
    system = local_forms_at_tail(curve, cfg.tail, cfg.order)
    for m in range(1, cfg.length + 1):
        for word in itertools.product(system.names, repeat=m):
            if word[0] == system.residue_letter:
                continue
            up = unipotent_period(system, word, cfg.order, jobs=cfg.jobs)
            print("I(%s) = %s" % (", ".join(word), up))
    sol = kz_solution(system, cfg.length, cfg.order, cfg.zorder)
    bad = kz_residual(sol)
    print("KZ residual through z^%d: %s" % (cfg.zorder, "zero" if not bad else bad))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for f, v in Config.__dataclass_fields__.items():
        ap.add_argument("--" + f, type=type(v.default), default=v.default)
    run(Config(**vars(ap.parse_args())))
