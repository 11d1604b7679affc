"""Stable graphs, half-edges, spanning trees, contraction and coordinates.

Half-edges are strings: ``"e+"`` is edge ``e`` read along its orientation and
ends at the `to` vertex, ``"e-"`` ends at the `from` vertex.  Tails are
referred to by their bare id.  A *word* is a tuple of half-edges
(h1, ..., hl) in matrix order: letter h maps the chart at v(-h) to the chart
at v(h), and consecutive letters satisfy v(-h_i) = v(h_{i+1}).
"""
from dataclasses import dataclass, field
from fractions import Fraction
import json

from .errors import GraphError


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "infty"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
INF_NAMES = ("infty", "inf", "oo", "∞")


def is_half(h):
    return h[-1:] in ("+", "-")


def neg(h):
    if h.endswith("+"):
        return h[:-1] + "-"
    if h.endswith("-"):
        return h[:-1] + "+"
    raise GraphError("not a half-edge: %r" % (h,))


def edge_of(h):
    return h[:-1]


def sign_of(h):
    return 1 if h.endswith("+") else -1


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str

    @property
    def is_loop(self):
        return self.src == self.dst


@dataclass(frozen=True)
class Tail:
    id: str
    at: str
    number: int


@dataclass(frozen=True)
class StableGraph:
    vertices: tuple
    edges: tuple
    tails: tuple
    base_vertex: str

    def __post_init__(self):
        object.__setattr__(self, "_edge", {e.id: e for e in self.edges})
        object.__setattr__(self, "_tail", {t.id: t for t in self.tails})

    def edge(self, eid):
        try:
            return self._edge[eid]
        except KeyError:
            raise GraphError("unknown edge %r" % eid) from None

    def tail(self, tid):
        try:
            return self._tail[tid]
        except KeyError:
            raise GraphError("unknown tail %r" % tid) from None

    def has_tail(self, tid):
        return tid in self._tail

    @property
    def edge_ids(self):
        return tuple(sorted(self._edge))

    @property
    def genus(self):
        return len(self.edges) - len(self.vertices) + 1

    def half_edges(self):
        out = []
        for eid in self.edge_ids:
            out += [eid + "+", eid + "-"]
        return out

    def terminal(self, h):
        """v_h: the vertex a half-edge (or tail) ends at."""
        if h in self._tail:
            return self._tail[h].at
        e = self.edge(edge_of(h))
        return e.dst if h.endswith("+") else e.src

    def branches(self):
        return self.half_edges() + [t.id for t in self.sorted_tails()]

    def sorted_tails(self):
        return sorted(self.tails, key=lambda t: t.number)

    def branches_at(self, v):
        """Branches at v: half-edges first (sorted), then tails by number."""
        hs = [h for h in self.half_edges() if self.terminal(h) == v]
        ts = [t.id for t in self.sorted_tails() if t.at == v]
        return hs + ts

    def tails_at(self, v):
        return [t.id for t in self.sorted_tails() if t.at == v]

    def letters_into(self, v):
        """Half-edges h with v_h = v, i.e. letters whose target chart is v."""
        return [h for h in self.half_edges() if self.terminal(h) == v]


# ---------------------------------------------------------------------------
# words

def word_dst(graph, w):
    return graph.terminal(w[0])


def word_src(graph, w):
    return graph.terminal(neg(w[-1]))


def check_composable(graph, w):
    for a, b in zip(w, w[1:]):
        if graph.terminal(neg(a)) != graph.terminal(b):
            raise GraphError("word %r is not a path" % (w,))


def is_reduced(w):
    return all(a != neg(b) for a, b in zip(w, w[1:]))


def reduce_word(w):
    out = []
    for h in w:
        if out and out[-1] == neg(h):
            out.pop()
        else:
            out.append(h)
    return tuple(out)


def inverse_word(w):
    return tuple(neg(h) for h in reversed(w))


def cyclic_core(w):
    """Split a reduced closed word as sigma . c . sigma^-1 with c cyclically reduced."""
    w = tuple(w)
    k = 0
    while len(w) - 2 * k >= 2 and w[k] == neg(w[len(w) - 1 - k]):
        k += 1
    return w[:k], w[k:len(w) - k]


def signed_count(w, eid):
    return sum(sign_of(h) for h in w if edge_of(h) == eid)


# ---------------------------------------------------------------------------
# validation

@dataclass
class ValidationReport:
    ok: bool
    genus: int
    errors: list = field(default_factory=list)

    def raise_if_bad(self):
        if not self.ok:
            raise GraphError("; ".join(self.errors))


def _structural_errors(graph):
    errs = []
    vs = list(graph.vertices)
    if len(set(vs)) != len(vs):
        errs.append("duplicate vertex names")
    vset = set(vs)
    ids = [e.id for e in graph.edges] + [t.id for t in graph.tails]
    if len(set(ids)) != len(ids):
        errs.append("edge and tail ids must be distinct")
    for e in graph.edges:
        if e.src not in vset or e.dst not in vset:
            errs.append("edge %s has an unknown endpoint" % e.id)
        if is_half(e.id) or not e.id:
            errs.append("edge id %r may not end in + or -" % e.id)
    for t in graph.tails:
        if t.at not in vset:
            errs.append("tail %s attached to unknown vertex %s" % (t.id, t.at))
    if graph.base_vertex not in vset:
        errs.append("base vertex %r is not a vertex" % graph.base_vertex)
    nums = sorted(t.number for t in graph.tails)
    if nums != list(range(1, len(graph.tails) + 1)):
        errs.append("tail numbers must be a bijection onto 1..%d" % len(graph.tails))
    return errs


def _connected(graph):
    if not graph.vertices:
        return False
    adj = {v: set() for v in graph.vertices}
    for e in graph.edges:
        adj[e.src].add(e.dst)
        adj[e.dst].add(e.src)
    seen = {graph.vertices[0]}
    stack = [graph.vertices[0]]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(graph.vertices)


def validate_graph(graph, coords=None, ring=None):
    errs = _structural_errors(graph)
    if errs:
        return ValidationReport(False, graph.genus, errs)
    if not _connected(graph):
        errs.append("graph is not connected")
    for v in graph.vertices:
        n = len(graph.branches_at(v))
        if n < 3:
            errs.append("vertex %s has %d branches; stability needs at least 3" % (v, n))
    if not graph.tails_at(graph.base_vertex):
        errs.append("base vertex %s carries no tail" % graph.base_vertex)
    if coords is not None:
        errs += coordinate_errors(graph, coords, ring)
    return ValidationReport(not errs, graph.genus, errs)


def coordinate_errors(graph, coords, ring=None):
    errs = []
    branches = set(graph.branches())
    for b in coords.values:
        if b not in branches:
            errs.append("coordinate given for unknown branch %r" % b)
    if errs:
        return errs
    if ring is None:
        ring = coordinate_ring(graph, coords)
    try:
        vals = coordinate_values(graph, coords, ring)
    except Exception as exc:  # bad expression text
        return ["cannot read coordinates: %s" % exc]
    infs = [b for b in graph.branches() if vals[b] is INF]
    for h in infs:
        if is_half(h) and neg(h) in infs and h.endswith("+"):
            errs.append("both halves of edge %s sit at infinity" % edge_of(h))
    seen = {}
    for b in infs:
        v = graph.terminal(b)
        if v in seen:
            errs.append("two branches at infinity (%s, %s) share vertex %s" % (seen[v], b, v))
        seen[v] = b
    for h in infs:
        if is_half(h) and graph.terminal(h) == graph.base_vertex:
            errs.append("edge half %s at the base vertex may not sit at infinity" % h)
    for eid in graph.edge_ids:
        a, b = vals[eid + "+"], vals[eid + "-"]
        if a is not INF and b is not INF and a == b:
            errs.append("x_e = x_-e for edge %s" % eid)
    for v in graph.vertices:
        bs = [b for b in graph.branches_at(v) if vals[b] is not INF]
        for i in range(len(bs)):
            for j in range(i + 1, len(bs)):
                if vals[bs[i]] == vals[bs[j]]:
                    errs.append("branches %s and %s at %s share a coordinate" % (bs[i], bs[j], v))
    return errs


# ---------------------------------------------------------------------------
# coordinates

@dataclass(frozen=True)
class CoordinateAssignment:
    """branch -> INF, a Fraction, or an expression string over x[...] symbols.

    Branches that are missing get the symbolic default x[branch].
    """
    values: dict

    @classmethod
    def symbolic(cls, graph, infinite=()):
        return cls({b: INF for b in infinite})

    def get(self, b):
        return self.values.get(b)


def _symbols_in(text):
    from .algebra import _tokenize
    return [v for k, v in _tokenize(text) if k == "sym"]


def coordinate_ring(graph, coords, extra=("z", "z0")):
    from .algebra import poly_ring
    names = set(extra)
    for b in graph.branches():
        v = coords.values.get(b)
        if v is None:
            names.add("x[%s]" % b)
        elif isinstance(v, str):
            names.update(_symbols_in(v))
    return poly_ring(*sorted(names))


def coordinate_values(graph, coords, ring):
    out = {}
    for b in graph.branches():
        v = coords.values.get(b)
        if v is None:
            out[b] = ring.var("x[%s]" % b)
        elif v is INF:
            out[b] = INF
        elif isinstance(v, str):
            out[b] = ring.parse(v)
        else:
            out[b] = ring.rf(Fraction(v))
    return out


def parse_coordinate(text):
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise GraphError("coordinate must be a string or integer, got %r" % (text,))
    t = text.strip()
    if t.lower() in INF_NAMES:
        return INF
    if t == "sym":
        return None
    try:
        return Fraction(t)
    except ValueError:
        return t


def assign_standard_coords(graph):
    """Per vertex, put one branch at infinity and give the other two 0 and 1.

    Infinity goes on the last tail when the vertex has one, otherwise on an
    edge half (never at the base vertex).  The search backtracks so that the
    two halves of every edge get different values and never both infinity.
    """
    for v in graph.vertices:
        n = len(graph.branches_at(v))
        if n != 3:
            raise GraphError("vertex %s has %d branches; standard coordinates need exactly 3" % (v, n))
    verts = sorted(graph.vertices)

    def options(v):
        bs = graph.branches_at(v)
        tails = [b for b in bs if not is_half(b)]
        halves = [b for b in bs if is_half(b)]
        infs = list(reversed(tails))
        if v != graph.base_vertex:
            infs += list(reversed(halves))
        for b in infs:
            rest = [c for c in bs if c != b]
            yield {b: INF, rest[0]: Fraction(0), rest[1]: Fraction(1)}
            yield {b: INF, rest[0]: Fraction(1), rest[1]: Fraction(0)}

    vals = {}

    def consistent(choice):
        for b, x in choice.items():
            if is_half(b) and neg(b) in vals and vals[neg(b)] == x:
                return False
            if is_half(b) and neg(b) in choice and b.endswith("+") and choice[neg(b)] == x:
                return False
        return True

    def search(i):
        if i == len(verts):
            return True
        for choice in options(verts[i]):
            if consistent(choice):
                vals.update(choice)
                if search(i + 1):
                    return True
                for b in choice:
                    del vals[b]
        return False

    if not search(0):
        raise GraphError("no valid placement of infinity")
    return CoordinateAssignment({b: vals[b] for b in graph.branches()})


# ---------------------------------------------------------------------------
# spanning tree and fundamental group

class _UF:
    def __init__(self, items):
        self.p = {x: x for x in items}

    def find(self, x):
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.p[rb] = ra
        return True


@dataclass(frozen=True)
class CycleBasis:
    tree: tuple          # edge ids
    chords: tuple        # edge ids, one per generator
    generators: tuple    # closed reduced words at the base vertex
    tree_words: dict     # vertex -> word with target v_b and source vertex
    base_vertex: str

    @property
    def genus(self):
        return len(self.chords)

    def tail_path(self, graph, t):
        return self.tree_words[graph.tail(t).at]


def spanning_tree_and_generators(graph):
    uf = _UF(graph.vertices)
    tree = []
    chords = []
    for eid in graph.edge_ids:
        e = graph.edge(eid)
        if uf.union(e.src, e.dst):
            tree.append(eid)
        else:
            chords.append(eid)
    # tree words by BFS from the base vertex
    tw = {graph.base_vertex: ()}
    frontier = [graph.base_vertex]

    while frontier:
        nxt = []
        for u in frontier:
            for eid in tree:
                e = graph.edge(eid)
                for h in (eid + "+", eid + "-"):
                    # letter h goes from chart v(-h) to chart v(h) = u
                    if graph.terminal(h) == u and graph.terminal(neg(h)) not in tw:
                        w = graph.terminal(neg(h))
                        tw[w] = tw[u] + (h,)
                        nxt.append(w)
        frontier = sorted(nxt)
    if len(tw) != len(graph.vertices):
        raise GraphError("graph is not connected")
    gens = []
    for eid in chords:
        e = graph.edge(eid)
        w = tw[e.dst] + (eid + "+",) + inverse_word(tw[e.src])
        gens.append(reduce_word(w))
    return CycleBasis(tuple(tree), tuple(chords), tuple(gens), tw, graph.base_vertex)


def contract_graph(graph, keep):
    """Contract every edge not in `keep`."""
    keep = set(keep)
    for eid in keep:
        graph.edge(eid)
    uf = _UF(graph.vertices)
    for e in graph.edges:
        if e.id not in keep:
            uf.union(e.src, e.dst)
    rep = {v: uf.find(v) for v in graph.vertices}
    verts = tuple(sorted(set(rep.values())))
    edges = tuple(Edge(e.id, rep[e.src], rep[e.dst]) for e in graph.edges if e.id in keep)
    tails = tuple(Tail(t.id, rep[t.at], t.number) for t in graph.tails)
    return StableGraph(verts, edges, tails, rep[graph.base_vertex])


@dataclass(frozen=True)
class H1Inclusion:
    chords: tuple     # chords of the contracted graph, indexing H^1 of it
    matrix: tuple     # rows: those chords, columns: ambient generators

    @property
    def rank(self):
        return len(self.chords)


def graph_h1(sub, ambient):
    """Matrix of H^1(sub) -> H^1(ambient graph) in the chord-dual bases.

    A row is the cocycle dual to one chord of `sub`; its entry against an
    ambient generator is the signed number of times the generator runs
    through that chord.
    """
    cb = spanning_tree_and_generators(sub)
    rows = []
    for c in cb.chords:
        rows.append(tuple(signed_count(g, c) for g in ambient.generators))
    return H1Inclusion(cb.chords, tuple(rows))


# ---------------------------------------------------------------------------
# graph files

def parse_graph_dict(d):
    for key in ("vertices", "edges", "base_vertex"):
        if key not in d:
            raise GraphError("graph file is missing field %r" % key)
    try:
        verts = tuple(str(v) for v in d["vertices"])
        edges = tuple(Edge(str(e["id"]), str(e["from"]), str(e["to"])) for e in d["edges"])
        tails = tuple(Tail(str(t["id"]), str(t["at"]), int(t["number"])) for t in d.get("tails", []))
    except KeyError as exc:
        raise GraphError("graph file entry is missing field %s" % exc) from None
    graph = StableGraph(verts, edges, tails, str(d["base_vertex"]))
    coords = None
    if "coords" in d and d["coords"] is not None:
        vals = {}
        for k, v in d["coords"].items():
            c = parse_coordinate(v)
            if c is not None:
                vals[str(k)] = c
        coords = CoordinateAssignment(vals)
    return graph, coords


def load_graph(path):
    try:
        with open(path, encoding="utf-8") as fh:
            d = json.load(fh)
    except json.JSONDecodeError as exc:
        raise GraphError("%s: line %d column %d: %s" % (path, exc.lineno, exc.colno, exc.msg)) from None
    except OSError as exc:
        raise GraphError("cannot read %s: %s" % (path, exc.strerror)) from None
    return parse_graph_dict(d)


def graph_to_dict(graph, coords=None):
    d = {
        "vertices": list(graph.vertices),
        "edges": [{"id": e.id, "from": e.src, "to": e.dst} for e in graph.edges],
        "tails": [{"id": t.id, "at": t.at, "number": t.number} for t in graph.tails],
        "base_vertex": graph.base_vertex,
    }
    if coords is not None:
        out = {}
        for b in graph.branches():
            v = coords.values.get(b)
            if v is None:
                continue
            if v is INF:
                out[b] = "infty"
            else:
                out[b] = str(v)
        d["coords"] = out
    return d
