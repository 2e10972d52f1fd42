"""Bounded breadth-first search over mutation classes.

Two granularities of node identity are supported.  Quiver-level search
identifies nodes by matrix (exact labels) or by canonical form (labels
quotiented out); seed-level search identifies nodes by the unordered
cluster together with the compatibly permuted matrix.  Quiver classes are
what dilation and growth arguments consume, seed counts are what torus
coverage consumes, hence both.

All searches are capped.  Caps that actually stopped anything are reported
in the result rather than raised, except for the fork-less walk, whose
callers want a hard error when the cap cuts the answer short.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ExplorationExceeded
from .quiver import IceQuiver, canonical_form, is_fork
from .seeds import Seed, initial_seed, mutate_seed


# -- node identity --------------------------------------------------------


def _matrix_key(q: IceQuiver):
    return ("Q", q.n, q.m, q.matrix)


def _canonical_key(q: IceQuiver):
    return ("C",) + canonical_form(q).key


def canonical_representative(q: IceQuiver) -> IceQuiver:
    """The relabeled quiver realizing the canonical form."""
    cf = canonical_form(q)
    return q.relabel(list(cf.mutable_perm), list(cf.frozen_perm))


def _poly_sort_key(p):
    return tuple(sorted(p.terms.items()))


def _seed_key(seed: Seed):
    """Unordered cluster plus the matrix carried along the sorting permutation.

    Two seeds that differ only by a simultaneous relabeling of mutable
    vertices (cluster entries and matrix rows/columns together) collapse to
    one node; frozen rows keep their positions.
    """
    q = seed.quiver
    n, m = q.n, q.m
    tagged = sorted((_poly_sort_key(seed.cluster[i]), i) for i in range(n))
    perm = [i for (_, i) in tagged]
    B = q.matrix
    rows = [tuple(B[perm[a]][perm[b]] for b in range(n)) for a in range(n)]
    for f in range(n, n + m):
        rows.append(tuple(B[f][perm[b]] for b in range(n)))
    return ("S", tuple(k for (k, _) in tagged), tuple(rows))


_QUIVER_KEYS = {"canonical": _canonical_key, "matrix": _matrix_key}


# -- reports --------------------------------------------------------------


@dataclass(frozen=True)
class ExplorationReport:
    """Result of a bounded mutation-graph search.

    nodes holds one representative per identity class, in discovery order;
    words[i] is a mutation word from the start reaching nodes[i].  Edges are
    directed triples (a, k, b): mutating representative a at direction k
    lands in the class of b.  Directions are labeled by the source's own
    vertex numbering, so the reverse step (b, k', a) may use a different k'
    when dedup quotients labelings out; on an exhausted search the reverse
    step is always present, mutation being an involution.  caps_hit lists
    the limits that actually cut the search off; frontier_exhausted means
    neither did.
    """

    kind: str
    nodes: tuple
    words: tuple
    edges: tuple
    frontier_exhausted: bool
    caps_hit: tuple

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    def to_json_dict(self) -> dict:
        if self.kind == "seed":
            payload = [s.to_json_dict(include_cluster=True) for s in self.nodes]
        else:
            payload = [q.to_json_dict() for q in self.nodes]
        return {
            "kind": self.kind,
            "node_count": len(self.nodes),
            "nodes": payload,
            "words": [[k + 1 for k in w] for w in self.words],
            "edges": [[a, k + 1, b] for (a, k, b) in self.edges],
            "frontier_exhausted": self.frontier_exhausted,
            "caps_hit": list(self.caps_hit),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    def to_dot(self) -> str:
        """Graphviz source; one line per adjacency, direction labels merged."""
        lines = ["graph mutation_class {", "  node [shape=box];"]
        for idx, node in enumerate(self.nodes):
            lines.append('  n%d [label="%s"];' % (idx, _node_label(self.kind, node, self.words[idx])))
        grouped = {}
        for (a, k, b) in self.edges:
            grouped.setdefault((min(a, b), max(a, b)), set()).add(k + 1)
        for (a, b) in sorted(grouped):
            label = ",".join(str(k) for k in sorted(grouped[(a, b)]))
            lines.append('  n%d -- n%d [label="%s"];' % (a, b, label))
        lines.append("}")
        return "\n".join(lines)


def _node_label(kind, node, word):
    if kind == "seed":
        return "start" if not word else "mu " + ",".join(str(k + 1) for k in word)
    parts = []
    for (i, j, w) in node.arrows():
        arrow = "%d->%d" % (i + 1, j + 1)
        if w > 1:
            arrow += "(%d)" % w
        parts.append(arrow)
    return "; ".join(parts) if parts else "no arrows"


# -- the shared breadth-first core ----------------------------------------


def _check_caps(max_depth, max_nodes):
    if max_depth is not None and max_depth < 1:
        raise ValueError("max_depth must be positive")
    if max_nodes is not None and max_nodes < 1:
        raise ValueError("max_nodes must be positive")


def _bfs(start, key_fn, step_fn, ndirs, max_depth, max_nodes):
    """Level-order search; nodes at the depth cap are still expanded once so
    that unseen material beyond the horizon is detected and reported."""
    nodes = [start]
    words = [()]
    index = {key_fn(start): 0}
    edges = set()
    caps = set()
    level = [0]
    depth = 0
    while level:
        nxt = []
        for u in level:
            obj = nodes[u]
            for k in range(ndirs):
                child = step_fn(obj, k)
                ck = key_fn(child)
                v = index.get(ck)
                if v is None:
                    if max_depth is not None and depth >= max_depth:
                        caps.add("max_depth")
                        continue
                    if max_nodes is not None and len(nodes) >= max_nodes:
                        caps.add("max_nodes")
                        continue
                    v = len(nodes)
                    index[ck] = v
                    nodes.append(child)
                    words.append(words[u] + (k,))
                    nxt.append(v)
                edges.add((u, k, v))
        level = nxt
        depth += 1
    return nodes, words, edges, caps


# -- public searches ------------------------------------------------------


def explore_quivers(q: IceQuiver, max_depth: int, max_nodes: int, dedup: str = "canonical") -> ExplorationReport:
    """All quiver classes within max_depth mutations, up to max_nodes."""
    _check_caps(max_depth, max_nodes)
    if dedup not in _QUIVER_KEYS:
        raise ValueError("dedup must be 'canonical' or 'matrix'")
    key_fn = _QUIVER_KEYS[dedup]
    nodes, words, edges, caps = _bfs(
        q, key_fn, lambda p, k: p.mutate(k), q.n, max_depth, max_nodes
    )
    return ExplorationReport(
        kind="quiver",
        nodes=tuple(nodes),
        words=tuple(words),
        edges=tuple(sorted(edges)),
        frontier_exhausted=not caps,
        caps_hit=tuple(sorted(caps)),
    )


def explore_seeds(q: IceQuiver, max_depth: int, max_nodes: int) -> ExplorationReport:
    _check_caps(max_depth, max_nodes)
    nodes, words, edges, caps = _bfs(
        initial_seed(q), _seed_key, mutate_seed, q.n, max_depth, max_nodes
    )
    return ExplorationReport(
        kind="seed",
        nodes=tuple(nodes),
        words=tuple(words),
        edges=tuple(sorted(edges)),
        frontier_exhausted=not caps,
        caps_hit=tuple(sorted(caps)),
    )


def forkless_part(q: IceQuiver, max_nodes: int, dedup: str = "canonical"):
    """The set of non-fork quivers in the reachable mutation class.

    A fork only opens up at its point of return: mutating anywhere else
    yields another fork whose return points straight back.  So a starting
    fork is walked down through returns first; revisiting a matrix during
    that descent proves every member of the class is a fork and the answer
    is the empty set.  From a non-fork the usual breadth-first walk runs,
    and forks met on the boundary are recorded as visited but never
    expanded, which loses nothing because such a fork aims its return back
    at the vertex we came from.
    """
    _check_caps(None, max_nodes)
    if dedup not in _QUIVER_KEYS:
        raise ValueError("dedup must be 'canonical' or 'matrix'")
    key_fn = _QUIVER_KEYS[dedup]
    node = q
    trail = {_matrix_key(node)}
    while True:
        r = is_fork(node)
        if r is None:
            break
        node = node.mutate(r)
        nk = _matrix_key(node)
        if nk in trail:
            return set()
        trail.add(nk)
        if len(trail) > max_nodes:
            raise ExplorationExceeded(
                "fork descent exceeds %d nodes without leaving fork territory"
                % max_nodes
            )
    result = [node]
    seen = {key_fn(node)}
    frontier = [node]
    while frontier:
        nxt = []
        for node in frontier:
            for k in range(q.n):
                child = node.mutate(k)
                ck = key_fn(child)
                if ck in seen:
                    continue
                seen.add(ck)
                if is_fork(child) is not None:
                    continue
                if len(result) >= max_nodes:
                    raise ExplorationExceeded(
                        "fork-less part exceeds %d nodes" % max_nodes
                    )
                result.append(child)
                nxt.append(child)
        frontier = nxt
    if dedup == "canonical":
        return {canonical_representative(x) for x in result}
    return set(result)


# -- entry-growth spot checks ---------------------------------------------


@dataclass(frozen=True)
class GrowthReport:
    """Outcome of checking a per-entry bound over a bounded search.

    ok means every node within the horizon satisfied the bound at every
    requested pair.  Otherwise counterexample carries the offending quiver,
    word the mutations reaching it, and pair the entry that failed.
    """

    ok: bool
    nodes_checked: int
    frontier_exhausted: bool
    counterexample: IceQuiver | None = None
    word: tuple | None = None
    pair: tuple | None = None

    def to_json_dict(self) -> dict:
        doc = {
            "ok": self.ok,
            "nodes_checked": self.nodes_checked,
            "frontier_exhausted": self.frontier_exhausted,
        }
        if not self.ok:
            doc["counterexample"] = self.counterexample.to_json_dict()
            doc["word"] = [k + 1 for k in self.word]
            doc["pair"] = [self.pair[0] + 1, self.pair[1] + 1]
        return doc


def verify_entry_growth(q: IceQuiver, pairs=None, bound_fn=None, max_depth: int = 6, max_nodes=None) -> GrowthReport:
    """Check an entrywise bound on every quiver within max_depth mutations.

    The default bound asks that no requested entry shrink in absolute value
    below its starting size.  Nodes are deduplicated by exact matrix so that
    entry positions keep their meaning.  The first violation in search order
    is returned; the check is a finite shadow of a growth statement, not a
    proof of it.
    """
    _check_caps(max_depth, max_nodes)
    if pairs is None:
        pairs = [(i, j) for i in range(q.n) for j in range(i + 1, q.n)]
    pairs = [tuple(p) for p in pairs]
    if bound_fn is None:
        base = {p: abs(q.entry(p[0], p[1])) for p in pairs}

        def bound_fn(node, i, j):
            return abs(node.entry(i, j)) >= base[(i, j)]

    def violation(node):
        for (i, j) in pairs:
            if not bound_fn(node, i, j):
                return (i, j)
        return None

    bad = violation(q)
    if bad is not None:
        return GrowthReport(
            ok=False, nodes_checked=1, frontier_exhausted=False,
            counterexample=q, word=(), pair=bad,
        )
    nodes = [q]
    words = [()]
    index = {q.matrix: 0}
    caps = set()
    level = [0]
    depth = 0
    while level:
        nxt = []
        for u in level:
            obj = nodes[u]
            for k in range(q.n):
                child = obj.mutate(k)
                if child.matrix in index:
                    continue
                if depth >= max_depth:
                    caps.add("max_depth")
                    continue
                if max_nodes is not None and len(nodes) >= max_nodes:
                    caps.add("max_nodes")
                    continue
                v = len(nodes)
                index[child.matrix] = v
                nodes.append(child)
                words.append(words[u] + (k,))
                nxt.append(v)
                bad = violation(child)
                if bad is not None:
                    return GrowthReport(
                        ok=False, nodes_checked=len(nodes),
                        frontier_exhausted=False,
                        counterexample=child, word=words[v], pair=bad,
                    )
        level = nxt
        depth += 1
    return GrowthReport(
        ok=True, nodes_checked=len(nodes), frontier_exhausted=not caps,
    )
