"""One test per acceptance criterion. Each prints a single PASS/FAIL line,
also collected into the terminal summary."""

import json
import random
import time

import numpy as np

from conftest import ACCEPTANCE_LINES
from fracgraph import io
from fracgraph.coalescence import FpzParameters, coalescence_edges, fpz_length
from fracgraph.damage import AlignedDamage, align, coverage, fit
from fracgraph.errors import NoPathError
from fracgraph.geometry import CrackNetwork, CrackSegment, Domain, Orientation, Tip, TipRef, make_crack
from fracgraph.pathfinding import boundary_nodes, constrained_paths, shortest_path, trace_prediction
from fracgraph.synth import ConfigSpec, DamageCurveSpec, generate_damage_curves, generate_network
from fracgraph.zoning import ComponentSummary, TieBreak, ZoneConfig, select_failure_zone

from oracles import (
    brute_coalescence,
    brute_coalescence_knn,
    brute_select,
    brute_shortest,
    component_of,
    random_graph,
    random_network,
)


def report(name, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  [{detail}]" if detail else "")
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def _working(n_cracks, count, start=0):
    out, seed = [], start
    while len(out) < count:
        net = generate_network(ConfigSpec(n_cracks=n_cracks, seed=seed))
        try:
            out.append((net, trace_prediction(net)))
        except NoPathError:
            pass
        seed += 1
    return out


def test_fpz_formula():
    exact = CrackSegment(1, (0.0, 1.0), (0.3, 1.0), Orientation.DEG0)
    pairs = [(exact, exact), (make_crack(2, (1.0, 2.0), 0.3, 0), make_crack(3, (0.5, 0.5), 0.3, 60))]
    net = generate_network(ConfigSpec(seed=3))
    pairs += list(zip(net.cracks, net.cracks[1:]))
    got = {fpz_length(a, b, FpzParameters(0.75)) for a, b in pairs}
    report("fpz formula: 0.75 * (0.3 + 0.3) == 0.45", got == {0.45}, f"got {sorted(got)!r} over {len(pairs)} pairs")


def test_boundary_nodes():
    net = CrackNetwork(Domain(2.0, 3.0), (make_crack(1, (1.0, 1.5), 0.3, 0),))
    left, right = boundary_nodes(net, 2, ZoneConfig(3))
    ok = left.position == (0.0, 1.5) and right.position == (2.0, 1.5)
    report("boundary nodes: zone 2 of 3 on 2 x 3 m", ok, f"{left.position} {right.position}")


def test_dijkstra_oracle():
    rng = random.Random(2024)
    graphs = [random_graph(rng) for _ in range(1000)]
    mismatches, t_fast = 0, 0.0
    t0 = time.perf_counter()
    for g in graphs:
        expected = brute_shortest(len(g.nodes), {k: e.weight for k, e in g.edges.items()}, g.left, g.right)
        t1 = time.perf_counter()
        try:
            p = shortest_path(g)
            got = (p.total_weight, p.node_ids)
        except NoPathError:
            got = None
        t_fast += time.perf_counter() - t1
        mismatches += got != expected
    total = time.perf_counter() - t0
    report(
        "dijkstra == exhaustive enumeration on 1000 graphs (<= 10 nodes)",
        mismatches == 0 and total < 10.0,
        f"mismatches {mismatches}, dijkstra {t_fast:.3f} s, with oracle {total:.2f} s",
    )


def test_component_selection_oracle():
    rng = random.Random(7)
    bad = 0
    for case in range(500):
        comps = []
        for i in range(rng.randint(1, 10)):
            size = rng.randint(1, 5)
            nodes = frozenset(TipRef(100 * i + k, Tip.A, (0.0, 0.0)) for k in range(size))
            comps.append(
                ComponentSummary(nodes, size, rng.randint(0, 3), rng.choice([1e-4, 2e-4, 0.3, 0.6]), rng.randint(1, 3))
            )
        sel = select_failure_zone(comps)
        winners = brute_select(comps)
        if len(winners) == 1:
            bad += sel.maximal_component != winners[0]
        else:
            bad += sel.maximal_component != min(winners, key=lambda c: c.sorted_nodes())
            bad += sel.tie_break_level_used is not TieBreak.LOADING_PROXIMITY
        bad += sel.zone_index != sel.maximal_component.zone_index
    report("failure-zone selection == four-rule brute force on 500 lists", bad == 0, f"mismatches {bad}")


def test_coalescence_oracle():
    rng = random.Random(11)
    bad_full, bad_knn, truncated = 0, 0, 0
    for case in range(200):
        net = random_network(rng, rng.randint(1, 8), domain=Domain(1.0, 1.5), length=0.3)
        keys = lambda es: {frozenset((e.source.key, e.target.key)) for e in es}  # noqa: E731
        # k = 16 exceeds the 14 foreign tips of an 8-crack network: pure FPZ filter
        bad_full += keys(coalescence_edges(net, FpzParameters(0.75, 16))) != brute_coalescence(net, 0.75)
        default = keys(coalescence_edges(net, FpzParameters(0.75, 10)))
        bad_knn += default != brute_coalescence_knn(net, 0.75, 10)
        truncated += default != brute_coalescence(net, 0.75)
    report(
        "coalescence == quadratic FPZ filter on 200 networks (<= 8 cracks)",
        bad_full == 0 and bad_knn == 0,
        f"exhaustive-k mismatches {bad_full}, k=10 truncated-oracle mismatches {bad_knn}, "
        f"cases where k=10 drops pairs {truncated}",
    )


def test_constrained_dominance():
    rng = random.Random(5)
    checked, bad = 0, 0
    graphs = []
    for _ in range(1000):
        g = random_graph(rng)
        inner = list(range(1, len(g.nodes) - 1))
        graphs.append((g, component_of(g, rng.sample(inner, k=rng.randint(0, len(inner))))))
    for _, tr in _working(20, 30):
        graphs.append((tr.graph, tr.selection.maximal_component))
    for g, comp in graphs:
        try:
            free = shortest_path(g).total_weight
        except NoPathError:
            continue
        marked = {g.index[n] for n in comp.node_set if n in g.index}
        for p in constrained_paths(g, comp, 4):
            checked += 1
            bad += not (free <= p.total_weight and marked & set(p.node_ids))
    report("constrained paths never beat the free shortest path and touch the component", bad == 0,
           f"{checked} constrained paths on {len(graphs)} graphs, violations {bad}")


def test_bootstrap_invariants():
    fits = []
    rng = np.random.default_rng(3)
    for k in range(20):
        n = int(rng.integers(2, 30))
        x = np.sort(rng.uniform(0, 1, (n, 40)), axis=1)
        band = ("population", "mean")[k % 2]
        fits.append(fit(AlignedDamage(np.arange(40.0), x, tuple(map(str, range(n)))), 200, seed=k, band=band))
    train = align(generate_damage_curves(DamageCurveSpec(n_curves=150, seed=8)))
    a, b = fit(train, 2000, seed=42), fit(train, 2000, seed=42)
    fits += [a, fit(train, 2000, seed=42, band="mean")]
    order = all(np.all(m.lower <= m.mean) and np.all(m.mean <= m.upper) for m in fits)
    unit = all(np.all(m.lower >= 0) and np.all(m.upper <= 1) for m in fits)
    sigma = all(
        np.array_equal(m.sigma, np.maximum(0.5 * (m.mean - m.lower), 0.5 * (m.upper - m.mean))) for m in fits
    )
    same = a.to_json().encode() == b.to_json().encode()
    report("bootstrap: lower <= mean <= upper, sigma identity, byte-identical JSON",
           order and unit and sigma and same, f"{len(fits)} fits; order {order}, sigma {sigma}, json {same}")


def test_statistical_coverage():
    t0 = time.perf_counter()
    covs = []
    for seed in range(10):
        train = align(generate_damage_curves(DamageCurveSpec(n_curves=150, seed=seed)))
        test = align(generate_damage_curves(DamageCurveSpec(n_curves=200, seed=10_000 + seed)), train.times)
        covs.append(coverage(fit(train, 2000, seed=seed), test).mean_coverage)
    elapsed = time.perf_counter() - t0
    ok = all(0.88 <= c <= 1.0 for c in covs) and elapsed < 60
    report("coverage of 200 fresh curves in [0.88, 1.00] over 10 seeds", ok,
           f"min {min(covs):.3f}, max {max(covs):.3f}, {elapsed:.1f} s")


def test_end_to_end_performance():
    worst = {}
    for n, limit in ((20, 1.0), (50, 2.0)):
        worst[n] = 0.0
        for net, _ in _working(n, 5, start=100):
            t0 = time.perf_counter()
            trace_prediction(net)
            worst[n] = max(worst[n], time.perf_counter() - t0)
    ok = worst[20] < 1.0 and worst[50] < 2.0
    report("predict: 20 cracks < 1 s, 50 cracks < 2 s", ok, f"worst {worst[20]*1e3:.1f} ms / {worst[50]*1e3:.1f} ms")


def test_pipeline_walkthrough(tmp_path):
    net = generate_network(ConfigSpec(seed=1))
    tr = trace_prediction(net)
    files = io.write_trace(tmp_path, tr)
    stages = [json.loads(p.read_text()) for p in files]
    zero, edges, comps, zone, bnodes, graph, paths = stages
    checks = {
        "zero-degree ids": zero["crack_ids"] == [c.id for c in net.cracks if c.orientation is Orientation.DEG0],
        "coalescence edges": len(edges["edges"]) == len(tr.coalescence),
        "zone chosen from components": zone["zone_index"] in {c["zone_index"] for c in comps["components"]},
        "boundary nodes mid-zone": [n["y"] for n in bnodes["nodes"]]
        == [(zone["zone_index"] - 0.5) * 1.0] * 2,
        "2-NN graph has both boundaries": graph["nodes"][0].get("side") == "left"
        and graph["nodes"][-1].get("side") == "right",
        "<= 4 ranked paths": 1 <= len(paths["paths"]) <= 4
        and [p["rank"] for p in paths["paths"]] == list(range(1, len(paths["paths"]) + 1))
        and [p["total_weight"] for p in paths["paths"]] == sorted(p["total_weight"] for p in paths["paths"]),
    }
    failed = [k for k, v in checks.items() if not v]
    report("pipeline walkthrough emits all seven stage artifacts", len(files) == 7 and not failed,
           f"{len(files)} files" + (f", failed: {failed}" if failed else ""))
