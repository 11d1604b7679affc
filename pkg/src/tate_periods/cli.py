"""Command line front end.

    tate-periods validate -g theta.json
    tate-periods differentials -g loop.json --omega 1 --order 2
    tate-periods unipotent -g g1t2.json --word omega1,omega_t1_t0 --order 1 --zorder 12

Exit status: 0 success, 1 domain error, 2 usage error.
"""
import argparse
import json
import sys
from fractions import Fraction

from .algebra import fmt_monomial
from .differentials import differential, kind_name, restrict_closed_fiber
from .errors import TatePeriodsError
from .graph import assign_standard_coords, load_graph, validate_graph, coordinate_ring
from .monodromy import f0_in_f1, monodromy_identity_check, weight_filtration
from .periods import a_period_residue, eta_b_periods, log_period_matrix, eta_basis
from .polylog import (FormLetter, W0, W1, li_series, padic_li_eval, reduce_iterated_integral,
                      shuffle_product)
from .schottky import TateCurve
from .unipotent import local_forms_at_tail, unipotent_period


class UsageError(Exception):
    pass


def _ints(text, what):
    try:
        out = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError("%s must be a comma-separated list of integers" % what) from None
    if not out:
        raise UsageError("%s is empty" % what)
    return out


def _mono(yvars, e):
    return fmt_monomial(yvars, e) or "1"


def series_json(s, fmt=str):
    """{y-monomial: coefficient string}, in the canonical term order."""
    from .algebra import series_key
    return {_mono(s.yvars, e): fmt(c) for e, c in sorted(s.terms.items(), key=lambda t: series_key(t[0]))}


def _curve(args, standard=False):
    if not args.graph:
        raise UsageError("-g/--graph is required")
    graph, coords = load_graph(args.graph)
    if coords is None and standard:
        coords = assign_standard_coords(graph)
    return TateCurve(graph, coords, getattr(args, "t0", None))


def _kind(args, curve):
    tails = args.tail or []
    if args.omega is not None:
        if tails or args.k is not None:
            raise UsageError("--omega cannot be combined with --tail/--k")
        return ("first", args.omega)
    if args.k is not None:
        t = tails[0] if tails else curve.t0
        if len(tails) > 1:
            raise UsageError("second-kind forms take a single --tail")
        return ("second", t, args.k)
    if len(tails) == 2:
        return ("third", tails[0], tails[1])
    if len(tails) == 1:
        return ("third", tails[0], curve.t0)
    raise UsageError("choose a form with --omega I, --k K [--tail T] or --tail T1 [--tail T2]")


# ---------------------------------------------------------------------------
# commands; each returns (text lines, json object)

def cmd_validate(args):
    if not args.graph:
        raise UsageError("-g/--graph is required")
    graph, coords = load_graph(args.graph)
    ring = coordinate_ring(graph, coords) if coords is not None else None
    rep = validate_graph(graph, coords, ring)
    rep.raise_if_bad()
    lines = ["valid: yes", "genus: %d" % rep.genus,
             "vertices: %s" % ",".join(graph.vertices),
             "edges: %s" % ",".join(graph.edge_ids),
             "tails: %s" % ",".join(t.id for t in graph.sorted_tails()),
             "base_vertex: %s" % graph.base_vertex]
    obj = {"valid": True, "genus": rep.genus, "vertices": list(graph.vertices),
           "edges": list(graph.edge_ids), "tails": [t.id for t in graph.sorted_tails()],
           "base_vertex": graph.base_vertex}
    return lines, obj


def cmd_differentials(args):
    curve = _curve(args)
    kind = _kind(args, curve)
    form = differential(curve, kind, args.order, args.vertex)
    name = kind_name(kind)
    lines = ["%s [chart %s, order %d] = %s" % (name, form.chart, args.order, form)]
    obj = {"form": name, "chart": form.chart, "order": args.order, "coeff": series_json(form.coeff)}
    return lines, obj


def cmd_restrict(args):
    curve = _curve(args)
    kind = _kind(args, curve)
    verts = [args.vertex] if args.vertex else list(curve.graph.vertices)
    name = kind_name(kind)
    lines, obj = [], {"form": name, "restriction": {}}
    for v in verts:
        r = restrict_closed_fiber(curve, kind, v)
        s = "0" if r.is_zero() else "(%s) dz" % r
        lines.append("%s | %s = %s" % (name, v, s))
        obj["restriction"][v] = str(r)
    return lines, obj


def cmd_periods(args):
    curve = _curve(args)
    g, N = curve.genus, args.order
    logP = log_period_matrix(curve, N, jobs=args.jobs)
    eta = eta_basis(curve, N, jobs=args.jobs)
    beta = eta_b_periods(curve, eta, N)
    lines, obj = [], {"order": N, "a_omega": {}, "log_P": {}, "eta": {}, "b_eta": {}}
    for i in range(1, g + 1):
        for j in range(1, g + 1):
            a = a_period_residue(curve, i, ("first", j), N)
            lines.append("a_%d(omega%d) = %s" % (i, j, a))
            obj["a_omega"]["%d,%d" % (i, j)] = series_json(a)
    for i in range(g):
        for j in range(g):
            lines.append("log P[%d][%d] = %s" % (i + 1, j + 1, logP[i][j]))
            obj["log_P"]["%d,%d" % (i + 1, j + 1)] = str(logP[i][j])
    for j in range(g):
        for k in range(g):
            lines.append("eta%d: c[omega_%s_%d] = %s" % (j + 1, curve.t0, k + 2, eta.c[j][k]))
            obj["eta"]["%d,%d" % (j + 1, k + 2)] = series_json(eta.c[j][k])
    for i in range(g):
        for j in range(g):
            lines.append("b_%d(eta%d) = %s" % (i + 1, j + 1, beta[i][j]))
            obj["b_eta"]["%d,%d" % (i + 1, j + 1)] = series_json(beta[i][j])
    return lines, obj


def cmd_filtration(args):
    curve = _curve(args)
    edges = tuple(e.strip() for e in (args.edges or "").split(",") if e.strip())
    for e in edges:
        curve.graph.edge(e)
    wf = weight_filtration(curve, edges, args.order)
    rep = monodromy_identity_check(curve, edges, args.order)
    g = curve.genus
    fq = lambda row: "[" + ", ".join(str(Fraction(x)) for x in row) + "]"
    lines = ["edges: %s" % (",".join(wf.edges) or "-"),
             "dim F0 = %d" % wf.dim_f0, "dim F1 = %d" % wf.dim_f1]
    for e, row in zip(wf.edges, wf.residues):
        lines.append("Res_%s = %s" % (e, fq(row[:g])))
    for v in wf.f0_eta:
        lines.append("F0 (eta coordinates): %s" % fq(v))
    ok_incl = f0_in_f1(curve, wf)
    lines.append("F0 in F1: %s" % ("yes" if ok_incl else "no"))
    lines.append("monodromy identity: %s" % ("ok" if rep.ok else "FAILED (%s)" % rep.message))
    obj = {"edges": list(wf.edges), "dim_F0": wf.dim_f0, "dim_F1": wf.dim_f1,
           "residues": {e: [str(Fraction(x)) for x in row[:g]] for e, row in zip(wf.edges, wf.residues)},
           "F0_eta": [[str(x) for x in v] for v in wf.f0_eta],
           "F0_in_F1": ok_incl, "monodromy_identity": rep.ok}
    return lines, obj


def cmd_unipotent(args):
    curve = _curve(args, standard=True)
    if args.word is None:
        raise UsageError("--word is required")
    tails = args.tail or []
    if len(tails) > 1:
        raise UsageError("unipotent takes a single --tail (the tail t1 placed at z = 0)")
    t1 = tails[0] if tails else next(t.id for t in curve.graph.sorted_tails() if t.id != curve.t0)
    system = local_forms_at_tail(curve, t1, args.order)
    up = unipotent_period(system, args.word, args.order, jobs=args.jobs)
    word = ",".join(up.word)
    lines = ["I(%s) [t1 = %s, order %d] = %s" % (word, t1, args.order, up)]
    obj = {"word": list(up.word), "t1": t1, "order": args.order,
           "value": series_json(up),
           "series": {_mono(up.yvars, e): [str(c) for c in cs]
                      for e, cs in sorted(up.series(args.zorder).items())}}
    return lines, obj


def _parse_letter(tok):
    tok = tok.strip()
    if tok == "w0":
        return W0
    if tok == "w1":
        return W1
    if tok.startswith("z^"):
        return FormLetter("z", int(tok[2:]))
    if tok == "z":
        return FormLetter("z", 1)
    if tok == "1":
        return FormLetter("z", 0)
    if tok.startswith("p^"):
        return FormLetter("pole", int(tok[2:]))
    raise UsageError("unknown letter %r (use w0, w1, 1, z, z^k, p^l)" % tok)


def _zseries(cs):
    out = []
    for n, c in enumerate(cs):
        if not c:
            continue
        m = "" if n == 0 else ("z" if n == 1 else "z^%d" % n)
        body = str(abs(c)) if not m else (m if abs(c) == 1 else "%s*%s" % (abs(c), m))
        sign = "-" if c < 0 else "+"
        out.append(("-" if sign == "-" else "") + body if not out else " %s %s" % (sign, body))
    return "".join(out) or "0"


def cmd_polylog(args):
    lines, obj = [], {}
    if args.word:
        letters = [_parse_letter(t) for t in args.word.split(",")]
        combo = reduce_iterated_integral(letters)
        lines.append("I(%s) = %s" % (", ".join(str(l) for l in letters), combo))
        obj["integral"] = str(combo)
    if args.index:
        s = _ints(args.index, "--index")
        if args.shuffle:
            s2 = _ints(args.shuffle, "--shuffle")
            prod = shuffle_product(s, s2)
            lines.append("Li[%s] * Li[%s] = %s" % (args.index, args.shuffle, prod))
            obj["shuffle"] = str(prod)
        cs = li_series(s, args.zorder)
        lines.append("Li[%s](z) = %s + O(z^%d)" % (",".join(map(str, s)), _zseries(cs), args.zorder + 1))
        obj["series"] = [str(c) for c in cs]
    if not lines:
        raise UsageError("polylog needs --index and/or --word")
    return lines, obj


def cmd_padic(args):
    if not args.index:
        raise UsageError("--index is required")
    s = _ints(args.index, "--index")
    if args.p is None or args.p < 2:
        raise UsageError("--p must be a prime")
    z = Fraction(args.z) if args.z is not None else Fraction(args.p)
    val = padic_li_eval(s, z, args.p, args.prec)
    lines = ["Li[%s](%s) = %s" % (args.index, z, val),
             "digits: %s" % " ".join(map(str, val.digits()))]
    obj = {"index": list(s), "z": str(z), "p": args.p, "prec": args.prec,
           "valuation": val.val, "unit": str(val.unit)}
    return lines, obj


COMMANDS = {
    "validate": cmd_validate,
    "differentials": cmd_differentials,
    "restrict": cmd_restrict,
    "periods": cmd_periods,
    "filtration": cmd_filtration,
    "unipotent": cmd_unipotent,
    "polylog": cmd_polylog,
    "padic": cmd_padic,
}


def build_parser():
    p = argparse.ArgumentParser(prog="tate-periods", description="Exact periods of generalized Tate curves.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("-g", "--graph")
        sp.add_argument("--order", type=int, default=2)
        sp.add_argument("--zorder", type=int, default=10)
        sp.add_argument("--omega", type=int)
        sp.add_argument("--tail", action="append")
        sp.add_argument("--t0")
        sp.add_argument("--k", type=int)
        sp.add_argument("--edges")
        sp.add_argument("--word")
        sp.add_argument("--index")
        sp.add_argument("--shuffle")
        sp.add_argument("--p", type=int)
        sp.add_argument("--prec", type=int, default=10)
        sp.add_argument("--z")
        sp.add_argument("--vertex")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--out", choices=("text", "json"), default="text")
    return p


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if args.order < 0 or args.zorder < 0 or args.jobs < 1:
        stderr.write("usage error: --order/--zorder must be >= 0 and --jobs >= 1\n")
        return 2
    try:
        lines, obj = COMMANDS[args.command](args)
    except UsageError as exc:
        stderr.write("usage error: %s\n" % exc)
        return 2
    except TatePeriodsError as exc:
        stderr.write("error[%s]: %s\n" % (exc.code, exc))
        return 1
    if args.out == "json":
        stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    else:
        stdout.write("\n".join(lines) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
