import csv
import json

import pytest

from fracgraph import io
from fracgraph.cli import DEFAULTS, build_parser, main
from fracgraph.pathfinding import predict
from fracgraph.scoring import ReferencePath
from fracgraph.synth import ConfigSpec, DamageCurveSpec, generate_damage_curves, generate_network

OK_SEED, NO_PATH_SEED = 1, 0


@pytest.fixture
def cracks(tmp_path):
    p = tmp_path / "case01.json"
    io.write_network(p, generate_network(ConfigSpec(seed=OK_SEED)))
    return p


def rows(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def test_defaults_follow_reference_settings():
    assert (DEFAULTS.fpz_fraction, DEFAULTS.k_neighbors, DEFAULTS.num_zones) == (0.75, 10, 3)
    assert (DEFAULTS.max_paths, DEFAULTS.n_boot, DEFAULTS.level, DEFAULTS.grid_points) == (4, 2000, 0.95, 150)
    args = build_parser().parse_args(["predict", "--input", "a", "--out", "b"])
    assert (args.fpz_fraction, args.k_neighbors, args.num_zones, args.max_paths) == (0.75, 10, 3, 4)
    args = build_parser().parse_args(["fit", "--input", "a", "--out", "b"])
    assert (args.n_boot, args.level, args.seed, args.grid_points) == (2000, 0.95, 0, 150)


def test_predict_writes_json_plot_and_trace(tmp_path, cracks):
    out = tmp_path / "pred.json"
    assert main(["predict", "--input", str(cracks), "--out", str(out), "--trace-dir", str(tmp_path / "tr")]) == 0
    doc = json.loads(out.read_text())
    assert doc["simulation_id"] == "case01"
    assert 1 <= len(doc["paths"]) <= 4
    assert [p["rank"] for p in doc["paths"]] == list(range(1, len(doc["paths"]) + 1))
    plot = rows(tmp_path / "pred.plot.csv")
    assert {r["series"] for r in plot} == {"crack", "zone_boundary", "failure_zone", "path"}
    assert sum(r["series"] == "zone_boundary" for r in plot) == 8
    assert len(list((tmp_path / "tr").glob("*.json"))) == 7


def test_prediction_round_trip(tmp_path, cracks):
    out = tmp_path / "pred.json"
    main(["predict", "--input", str(cracks), "--out", str(out), "--simulation-id", "x"])
    sid, back = io.read_prediction(out)
    assert sid == "x"
    assert back == predict(io.read_network(cracks))


def test_predict_error_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["predict", "--input", str(bad), "--out", str(tmp_path / "o.json")]) == 3
    assert "malformed JSON" in capsys.readouterr().err

    net = io.network_to_dict(generate_network(ConfigSpec(seed=OK_SEED)))
    net["cracks"][0]["tip_b"] = [9.0, 9.0]
    invalid = tmp_path / "invalid.json"
    invalid.write_text(json.dumps(net))
    assert main(["predict", "--input", str(invalid), "--out", str(tmp_path / "o.json")]) == 4

    stuck = tmp_path / "stuck.json"
    io.write_network(stuck, generate_network(ConfigSpec(seed=NO_PATH_SEED)))
    assert main(["predict", "--input", str(stuck), "--out", str(tmp_path / "o.json")]) == 6

    empty = tmp_path / "empty.json"
    empty.write_text(json.dumps({"domain": {"width": 2, "height": 3}, "cracks": []}))
    assert main(["predict", "--input", str(empty), "--out", str(tmp_path / "o.json")]) == 10


def _predict_cases(tmp_path, seeds):
    preds = []
    for s in seeds:
        src = tmp_path / f"net{s}.json"
        io.write_network(src, generate_network(ConfigSpec(seed=s)))
        dst = tmp_path / f"pred{s}.json"
        assert main(["predict", "--input", str(src), "--out", str(dst), "--simulation-id", f"s{s}"]) == 0
        preds.append(dst)
    return preds


def _reference(tmp_path, sid, ids, zone):
    p = tmp_path / f"ref_{sid}.json"
    p.write_text(json.dumps(io.reference_to_dict(ReferencePath(frozenset(ids), sid, zone))))
    return p


def test_score_table_and_zone_accuracy(tmp_path, capsys):
    seeds = (1, 3, 6)
    preds = _predict_cases(tmp_path, seeds)
    refs = []
    for s, p in zip(seeds, preds):
        _, pred = io.read_prediction(p)
        best = pred.paths[0]
        if s == 1:
            ids, zone = best.crack_ids, pred.selection.zone_index  # accurate, zone hit
        elif s == 3:
            ids, zone = {min(best.crack_ids)}, pred.selection.zone_index % 3 + 1
        else:
            ids, zone = {999}, pred.selection.zone_index
        refs.append(_reference(tmp_path, f"s{s}", ids, zone))
    out, summary = tmp_path / "match.csv", tmp_path / "summary.csv"
    argv = ["score", "--prediction", *map(str, preds), "--reference", *map(str, refs),
            "--out", str(out), "--summary", str(summary)]
    assert main(argv) == 0
    assert "ZoneMatch" in capsys.readouterr().out
    table = {r["classification"]: r for r in rows(summary)}
    assert sum(int(table[c]["count"]) for c in ("Accurate", "Reasonable", "NonMatch")) == 3
    assert int(table["Accurate"]["count"]) >= 1
    assert float(table["ZoneMatch"]["fraction"]) == pytest.approx(2 / 3)
    assert [r["simulation_id"] for r in rows(out)] == ["s1", "s3", "s6"]


def test_single_accurate_case(tmp_path):
    (pred,) = _predict_cases(tmp_path, (7,))
    _, p = io.read_prediction(pred)
    ref = _reference(tmp_path, "s7", p.paths[0].crack_ids, None)
    summary = tmp_path / "summary.csv"
    main(["score", "--prediction", str(pred), "--reference", str(ref), "--out", str(tmp_path / "m.csv"),
          "--summary", str(summary)])
    assert [(r["classification"], r["count"]) for r in rows(summary)] == [
        ("Accurate", "1"), ("Reasonable", "0"), ("NonMatch", "0")]


def test_score_id_mismatch(tmp_path):
    (pred,) = _predict_cases(tmp_path, (1,))
    ref = _reference(tmp_path, "other", {1}, None)
    argv = ["score", "--prediction", str(pred), "--reference", str(ref), "--out", str(tmp_path / "m.csv"),
            "--summary", str(tmp_path / "s.csv")]
    assert main(argv) == 7


def test_fit_and_coverage(tmp_path, capsys):
    train, test = tmp_path / "train.csv", tmp_path / "test.csv"
    argv = ["generate", "damage", "--out", str(train), "--seed", "3", "--split", "150", "--test-out", str(test)]
    assert main(argv) == 0
    assert len({r["simulation_id"] for r in rows(train)}) == 150
    assert len({r["simulation_id"] for r in rows(test)}) == 40
    m1, m2 = tmp_path / "m1.json", tmp_path / "m2.json"
    for m in (m1, m2):
        assert main(["fit", "--input", str(train), "--out", str(m), "--n-boot", "300", "--seed", "5"]) == 0
    assert m1.read_bytes() == m2.read_bytes()
    cov = tmp_path / "cov.csv"
    assert main(["coverage", "--model", str(m1), "--input", str(test), "--out", str(cov)]) == 0
    mean_cov = float(capsys.readouterr().out.split()[2])
    assert mean_cov >= 0.90
    assert list(rows(cov)[0]) == ["time_s", "n_test", "covered", "coverage"]
    band = rows(tmp_path / "cov.band.csv")
    assert len(band) == 150 and len(band[0]) == 4 + 40


def test_non_monotone_damage_names_the_series(tmp_path, capsys):
    p = tmp_path / "bad.csv"
    p.write_text("simulation_id,time_s,damage\nok,0,0\nok,1,0.5\nsimX,0,0.2\nsimX,1,0.1\n")
    assert main(["fit", "--input", str(p), "--out", str(tmp_path / "m.json")]) == 8
    err = capsys.readouterr().err
    assert "simX" in err and "row 5" in err


def test_damage_csv_round_trip(tmp_path):
    curves = generate_damage_curves(DamageCurveSpec(n_curves=3, seed=1))
    p = tmp_path / "d.csv"
    io.write_damage_csv(p, curves)
    assert io.read_damage_csv(p) == curves


def test_generate_network_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["generate", "network", "--out", str(p), "--seed", "4", "--n-cracks", "50"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert len(io.read_network(a).cracks) == 50
