"""Independent brute-force oracles used by the tests."""

import itertools

import networkx as nx


def host_graph(parts):
    """Complete multipartite host as a networkx graph on (part, offset) vertices."""
    g = nx.Graph()
    verts = [(p, i) for p, size in enumerate(parts) for i in range(size)]
    g.add_nodes_from(verts)
    g.add_edges_from((u, v) for u, v in itertools.combinations(verts, 2) if u[0] != v[0])
    return g


def brute_force_forests(parts):
    """Every acyclic edge subset of the host, by filtering all 2^|E| subsets."""
    g = host_graph(parts)
    edges = sorted(g.edges())
    out = []
    for r in range(len(edges) + 1):
        for subset in itertools.combinations(edges, r):
            h = nx.Graph()
            h.add_nodes_from(g.nodes)
            h.add_edges_from(subset)
            if nx.is_forest(h):
                out.append(frozenset(frozenset(e) for e in subset))
    return out


def brute_force_forced_trees(parts, forest_edges):
    """Count host spanning trees containing forest_edges by checking every (N-1)-subset."""
    g = host_graph(parts)
    edges = sorted(g.edges())
    need = {frozenset(e) for e in forest_edges}
    n = g.number_of_nodes()
    count = 0
    for subset in itertools.combinations(edges, n - 1):
        if not need <= {frozenset(e) for e in subset}:
            continue
        h = nx.Graph()
        h.add_nodes_from(g.nodes)
        h.add_edges_from(subset)
        if nx.is_tree(h):
            count += 1
    return count


def cofactor_det(a):
    n = len(a)
    if n == 0:
        return 1
    if n == 1:
        return a[0][0]
    return sum(
        (-1) ** j * a[0][j] * cofactor_det([row[:j] + row[j + 1:] for row in a[1:]])
        for j in range(n)
        if a[0][j]
    )
