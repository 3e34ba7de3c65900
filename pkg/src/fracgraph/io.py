"""File formats: crack-network JSON, prediction JSON, reference JSON, damage and plot CSVs."""

from __future__ import annotations

import csv
import json
from collections import OrderedDict
from pathlib import Path

import numpy as np

from .damage import AlignedDamage, CoverageReport, DamageModel, DamageSeries
from .errors import InputParseError
from .geometry import CrackNetwork, CrackSegment, Domain, Orientation, Tip, TipRef
from .pathfinding import BoundaryNode, FailureGraph, FailurePrediction, GraphEdge, PredictedPath
from .scoring import MatchResult, ReferencePath, Summary
from .zoning import ComponentSummary, EdgeKind, FailureZoneSelection, TieBreak, ZoneConfig


def _read_json(path) -> dict:
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as exc:
        raise InputParseError(f"{path}: malformed JSON: {exc}") from exc
    except OSError as exc:
        raise InputParseError(f"{path}: cannot read: {exc}") from exc


def _write_json(path, data) -> None:
    Path(path).write_text(json.dumps(data, indent=1, sort_keys=False) + "\n")


# crack networks


def network_to_dict(network: CrackNetwork) -> dict:
    dom = network.domain
    d_dom = {"width": dom.width, "height": dom.height}
    if dom.x_min or dom.y_min:
        d_dom.update(x_min=dom.x_min, y_min=dom.y_min)
    return {
        "domain": d_dom,
        "cracks": [
            {"id": c.id, "tip_a": list(c.tip_a), "tip_b": list(c.tip_b), "orientation": int(c.orientation)}
            for c in network.cracks
        ],
    }


def network_from_dict(data: dict) -> CrackNetwork:
    try:
        d = data["domain"]
        dom = Domain(float(d["width"]), float(d["height"]), float(d.get("x_min", 0.0)), float(d.get("y_min", 0.0)))
        cracks = []
        for c in data["cracks"]:
            ta, tb = c["tip_a"], c["tip_b"]
            if len(ta) != 2 or len(tb) != 2:
                raise ValueError(f"crack {c.get('id')}: tips must be [x, y]")
            cracks.append(
                CrackSegment(
                    int(c["id"]),
                    (float(ta[0]), float(ta[1])),
                    (float(tb[0]), float(tb[1])),
                    Orientation(int(c["orientation"])),
                )
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputParseError(f"bad crack-network document: {exc!r}") from exc
    return CrackNetwork(dom, tuple(cracks))


def read_network(path) -> CrackNetwork:
    return network_from_dict(_read_json(path))


def write_network(path, network: CrackNetwork) -> None:
    _write_json(path, network_to_dict(network))


# predictions


def _node_to_dict(n) -> dict:
    if isinstance(n, TipRef):
        return {"kind": "tip", "crack_id": n.crack_id, "which": n.which.value, "x": n.position[0], "y": n.position[1]}
    return {"kind": "boundary", "side": n.side, "x": n.position[0], "y": n.position[1]}


def _node_from_dict(d: dict):
    pos = (float(d["x"]), float(d["y"]))
    if d["kind"] == "tip":
        return TipRef(int(d["crack_id"]), Tip(d["which"]), pos)
    return BoundaryNode(d["side"], pos)


def _component_to_dict(c: ComponentSummary) -> dict:
    return {
        "nodes": [_node_to_dict(n) for n in c.sorted_nodes()],
        "size": c.size,
        "zero_degree_count": c.zero_degree_count,
        "total_length": c.total_length,
        "zone_index": c.zone_index,
    }


def _component_from_dict(d: dict) -> ComponentSummary:
    return ComponentSummary(
        frozenset(_node_from_dict(n) for n in d["nodes"]),
        int(d["size"]), int(d["zero_degree_count"]), float(d["total_length"]), int(d["zone_index"]),
    )


def path_to_dict(p: PredictedPath, rank: int | None = None) -> dict:
    out = {} if rank is None else {"rank": rank}
    out.update(
        node_ids=list(p.node_ids),
        nodes=[_node_to_dict(n) for n in p.nodes],
        crack_ids=sorted(p.crack_ids),
        total_weight=p.total_weight,
        constrained=p.constrained,
    )
    return out


def prediction_to_dict(pred: FailurePrediction, simulation_id: str | None = None) -> dict:
    g = pred.graph
    return {
        "simulation_id": simulation_id,
        "failure_zone": pred.selection.zone_index,
        "tie_break": pred.selection.tie_break_level_used.value,
        "maximal_component": _component_to_dict(pred.selection.maximal_component),
        "paths": [path_to_dict(p, k + 1) for k, p in enumerate(pred.paths)],
        "graph": {
            "zone_index": g.zone_index,
            "nodes": [_node_to_dict(n) for n in g.nodes],
            "edges": [[i, j, e.weight, e.kind.value] for (i, j), e in sorted(g.edges.items())],
        },
    }


def prediction_from_dict(d: dict) -> FailurePrediction:
    try:
        gd = d["graph"]
        nodes = tuple(_node_from_dict(n) for n in gd["nodes"])
        edges = {(int(i), int(j)): GraphEdge(float(w), EdgeKind(k)) for i, j, w, k in gd["edges"]}
        graph = FailureGraph(nodes, edges, int(gd["zone_index"]))
        sel = FailureZoneSelection(
            int(d["failure_zone"]), _component_from_dict(d["maximal_component"]), TieBreak(d["tie_break"])
        )
        paths = tuple(
            PredictedPath(
                tuple(int(i) for i in p["node_ids"]),
                tuple(_node_from_dict(n) for n in p["nodes"]),
                float(p["total_weight"]),
                frozenset(int(c) for c in p["crack_ids"]),
                bool(p["constrained"]),
            )
            for p in d["paths"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputParseError(f"bad prediction document: {exc!r}") from exc
    return FailurePrediction(sel, paths, graph)


def read_prediction(path) -> tuple[str | None, FailurePrediction]:
    d = _read_json(path)
    return d.get("simulation_id"), prediction_from_dict(d)


def write_prediction(path, pred: FailurePrediction, simulation_id: str | None = None) -> None:
    _write_json(path, prediction_to_dict(pred, simulation_id))


def write_prediction_plot_csv(path, network: CrackNetwork, pred: FailurePrediction, config: ZoneConfig) -> None:
    """Long-format plot data: cracks, zone boundaries, boundary nodes and paths."""
    dom = network.domain
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["series", "item", "order", "x", "y"])
        for c in network.cracks:
            w.writerow(["crack", c.id, 0, *c.tip_a])
            w.writerow(["crack", c.id, 1, *c.tip_b])
        for i in range(config.num_zones + 1):
            y = dom.y_min + i * dom.height / config.num_zones
            w.writerow(["zone_boundary", i, 0, dom.x_min, y])
            w.writerow(["zone_boundary", i, 1, dom.x_max, y])
        lo, hi = config.zone_bounds(dom, pred.selection.zone_index)
        for k, (x, y) in enumerate([(dom.x_min, lo), (dom.x_max, lo), (dom.x_max, hi), (dom.x_min, hi)]):
            w.writerow(["failure_zone", pred.selection.zone_index, k, x, y])
        for rank, p in enumerate(pred.paths, 1):
            for k, n in enumerate(p.nodes):
                w.writerow(["path", rank, k, *n.position])


# references and scores


def reference_from_dict(d: dict) -> ReferencePath:
    try:
        zone = d.get("failure_zone")
        poly = d.get("polyline")
        return ReferencePath(
            frozenset(int(c) for c in d["failure_crack_ids"]),
            None if d.get("simulation_id") is None else str(d["simulation_id"]),
            None if zone is None else int(zone),
            None if poly is None else tuple((float(x), float(y)) for x, y in poly),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputParseError(f"bad reference document: {exc!r}") from exc


def read_reference(path) -> ReferencePath:
    return reference_from_dict(_read_json(path))


def reference_to_dict(ref: ReferencePath) -> dict:
    out = {"simulation_id": ref.simulation_id, "failure_crack_ids": sorted(ref.crack_ids)}
    if ref.failure_zone is not None:
        out["failure_zone"] = ref.failure_zone
    if ref.polyline is not None:
        out["polyline"] = [list(p) for p in ref.polyline]
    return out


def write_match_csv(path, rows: list[tuple[str, MatchResult, int, int | None]]) -> None:
    """``rows`` holds (simulation_id, result, predicted zone, reference zone)."""
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["simulation_id", "fraction_matched", "classification", "matched_ids", "unmatched_ids",
                    "predicted_zone", "reference_zone", "zone_match"])
        for sid, r, pz, rz in rows:
            w.writerow([
                sid, r.fraction_matched, r.classification.value,
                " ".join(map(str, sorted(r.matched_ids))), " ".join(map(str, sorted(r.unmatched_ids))),
                pz, "" if rz is None else rz, "" if rz is None else int(pz == rz),
            ])


def write_summary_csv(path, summary: Summary, zone_accuracy: float | None = None) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["classification", "count", "fraction"])
        for row in summary.rows():
            w.writerow(row)
        if zone_accuracy is not None:
            w.writerow(["ZoneMatch", "", zone_accuracy])


# damage data


def read_damage_csv(path) -> list[DamageSeries]:
    """Parse ``simulation_id,time_s,damage`` rows, grouped per simulation in file order.

    Row numbers in errors count the header as row 1.
    """
    groups: OrderedDict[str, list[tuple[float, float, int]]] = OrderedDict()
    try:
        with open(path, newline="") as f:
            reader = csv.DictReader(f)
            if reader.fieldnames is None or not {"simulation_id", "time_s", "damage"} <= set(reader.fieldnames):
                raise InputParseError(f"{path}: header must be simulation_id,time_s,damage")
            for lineno, row in enumerate(reader, start=2):
                try:
                    t, d = float(row["time_s"]), float(row["damage"])
                except (TypeError, ValueError) as exc:
                    raise InputParseError(f"{path}: row {lineno}: {exc}") from exc
                groups.setdefault(row["simulation_id"], []).append((t, d, lineno))
    except OSError as exc:
        raise InputParseError(f"{path}: cannot read: {exc}") from exc
    out = []
    for sid, rows in groups.items():
        out.append(DamageSeries(sid, [r[0] for r in rows], [r[1] for r in rows], source_rows=[r[2] for r in rows]))
    return out


def write_damage_csv(path, series: list[DamageSeries]) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["simulation_id", "time_s", "damage"])
        for s in series:
            for t, d in zip(s.times.tolist(), s.damage.tolist()):
                w.writerow([s.simulation_id, repr(t), repr(d)])


def read_model(path) -> DamageModel:
    try:
        return DamageModel.from_dict(_read_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputParseError(f"{path}: bad model document: {exc!r}") from exc


def write_model(path, model: DamageModel) -> None:
    Path(path).write_text(model.to_json())


def write_coverage_csv(path, report: CoverageReport) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["time_s", "n_test", "covered", "coverage"])
        for t, n, c, cov in zip(report.times.tolist(), report.n_test.tolist(), report.covered.tolist(),
                                report.coverage.tolist()):
            w.writerow([repr(t), n, c, "" if np.isnan(cov) else repr(cov)])


def write_band_csv(path, model: DamageModel, test: AlignedDamage | None = None) -> None:
    """Band plot data; one extra column per overlaid test curve."""
    ids = list(test.ids) if test is not None else []
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["time_s", "mean", "lower", "upper", *ids])
        for k, t in enumerate(model.time_grid.tolist()):
            extra = [] if test is None else ["" if np.isnan(v) else repr(float(v)) for v in test.values[:, k]]
            w.writerow([repr(t), repr(float(model.mean[k])), repr(float(model.lower[k])),
                        repr(float(model.upper[k])), *extra])



# stage-by-stage prediction artifacts


def write_trace(directory, trace) -> list[Path]:
    """Write one JSON file per pipeline stage; returns the paths in stage order."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    pred = trace.prediction
    stages = [
        ("01_zero_degree_cracks", {"crack_ids": trace.zero_degree}),
        ("02_coalescence_edges", {"edges": [
            {"source": _node_to_dict(e.source), "target": _node_to_dict(e.target), "weight": e.weight}
            for e in trace.coalescence]}),
        ("03_components", {"components": [_component_to_dict(c) for c in trace.components]}),
        ("04_failure_zone", {
            "zone_index": trace.selection.zone_index,
            "tie_break": trace.selection.tie_break_level_used.value,
            "maximal_component": _component_to_dict(trace.selection.maximal_component)}),
        ("05_boundary_nodes", {"nodes": [_node_to_dict(n) for n in trace.boundary]}),
        ("06_failure_graph", prediction_to_dict(pred)["graph"]),
        ("07_paths", {"paths": [path_to_dict(p, k + 1) for k, p in enumerate(pred.paths)]}),
    ]
    out = []
    for name, data in stages:
        p = d / f"{name}.json"
        _write_json(p, data)
        out.append(p)
    return out
