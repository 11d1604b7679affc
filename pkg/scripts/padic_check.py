"""Compare p-adic Li_k(z) for several cutoffs and, for k = 1, against -log(1 - z)."""
import argparse
from dataclasses import dataclass
from fractions import Fraction

from tate_periods.polylog import PAdic, padic_cutoff, padic_li_eval, vp


@dataclass
class Config:
    p: int = 5
    prec: int = 10
    z: str = "5"
    weight: int = 3


def run(cfg):
    z = Fraction(cfg.z)
    v = vp(z, cfg.p)
    for k in range(1, cfg.weight + 1):
        n = padic_cutoff(k, v, cfg.p, cfg.prec)
        a = padic_li_eval((k,), z, cfg.p, cfg.prec)
        b = padic_li_eval((k,), z, cfg.p, cfg.prec, cutoff=2 * n + 10)
        print("Li[%d](%s) = %s  (cutoff %d, stable: %s)" % (k, z, a, n, a == b))
    ref = sum((z ** n / n for n in range(1, 400)), Fraction(0))
    print("Li[1] equals -log(1-z): %s" % (padic_li_eval((1,), z, cfg.p, cfg.prec)
                                          == PAdic.from_rational(ref, cfg.p, cfg.prec)))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for f, v in Config.__dataclass_fields__.items():
        ap.add_argument("--" + f, type=type(v.default), default=v.default)
    run(Config(**vars(ap.parse_args())))
