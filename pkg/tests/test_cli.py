import json

from kgonal.chain import ChipList, k_gonal_chain, normal_form
from kgonal.cli import run
from kgonal.io import (chain_from_json, chain_to_json, chips_to_json, divisor_from_json,
                       divisor_to_json, dumps, skeleton_from_json, skeleton_to_json)


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_rho_bar(capsys):
    code, out, _ = call(capsys, "rho-bar", "--g", "5", "--r", "2", "--d", "5", "--k", "3")
    data = json.loads(out)
    assert code == 0 and data["value"] == 0 and data["maximizers"] == [1]


def test_rho(capsys):
    code, out, _ = call(capsys, "rho", "--g", "5", "--r", "2", "--d", "5")
    assert json.loads(out)["rho"] == -1


def test_example_genus5(capsys, tmp_path):
    code, out, _ = call(capsys, "example", "genus5", "--out-dir", str(tmp_path))
    assert code == 0
    assert "0 8 4" in out and "1 5 2" in out and "2 2 0" in out and "3 -1 -1" in out
    assert "naively-well-spaced: true" in out
    report = json.loads((tmp_path / "genus5_report.json").read_text())
    assert report["pencil_slopes"]["psi0"] == [2, 3, 3, 2]
    assert report["chain"]["profile"] == [0, 0, 3, 0, 0]
    assert all(m["contains"] for m in report["membership"])
    assert (tmp_path / "genus5_skeleton.svg").read_text().startswith("<svg")
    code, out, _ = call(capsys, "map", "certify", "--skeleton",
                        str(tmp_path / "genus5_skeleton.json"), "--strict")
    assert code == 0 and json.loads(out)["naively-well-spaced"] is True


def test_outputs_are_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    call(capsys, "example", "genus5", "--out-dir", str(a))
    call(capsys, "example", "genus5", "--out-dir", str(b))
    for name in ("genus5_report.json", "genus5_skeleton.json", "genus5_skeleton.svg"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_certify_strict_fails_on_broken_tie(capsys, tmp_path):
    call(capsys, "example", "genus5", "--out-dir", str(tmp_path))
    data = json.loads((tmp_path / "genus5_skeleton.json").read_text())
    sk = skeleton_from_json(data)
    tree = next(t for t in sk.trees if t.root_edge is not None and t.point.j == 1)
    sk.set_length(tree.root_edge, 2)
    sk.integrate_positions()
    path = tmp_path / "broken.json"
    path.write_text(dumps(skeleton_to_json(sk)))
    code, out, err = call(capsys, "map", "certify", "--skeleton", str(path), "--strict")
    assert code == 3
    assert json.loads(err)["error"] == "CertificateError"
    code, out, _ = call(capsys, "map", "certify", "--skeleton", str(path))
    assert code == 0 and json.loads(out)["naively-well-spaced"] is False
    code, out, _ = call(capsys, "map", "certify", "--skeleton", str(path), "--tune", "--strict")
    assert code == 0


def test_input_errors_are_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"cycles": [\n')
    code, _, err = call(capsys, "chain", "show", "--chain", str(bad))
    msg = json.loads(err)
    assert code == 2 and msg["error"] == "InputError" and "bad.json:2" in msg["message"]
    code, _, err = call(capsys, "chain", "show", "--chain", '{"cycles": [{"l": "1/1", "m": "x"}]}')
    assert code == 2 and "cycles[0].m" in json.loads(err)["message"]
    code, _, err = call(capsys, "rho", "--g", "5")
    assert code == 2


def test_chain_new_and_rank(capsys, tmp_path):
    path = tmp_path / "chain.json"
    assert call(capsys, "chain", "new", "--gonal", "5,3", "--out", str(path))[0] == 0
    pencil = json.dumps({"chips": [{"at": {"vertex": "v3"}, "mult": 3}]})
    code, out, _ = call(capsys, "divisor", "rank", "--chain", str(path), "--divisor", pencil)
    assert json.loads(out)["rank"] == 1
    code, out, _ = call(capsys, "divisor", "normal-form", "--gonal", "5,3", "--divisor", pencil)
    assert json.loads(out)["normal"]["xi"] == ["0/1", "1/1", "2/1", "0/1", "1/1"]
    code, out, _ = call(capsys, "divisor", "canonical", "--gonal", "5,3")
    assert json.loads(out)["normal"]["d"] == 8
    code, out, _ = call(capsys, "divisor", "gonality", "--gonal", "5,3")
    assert json.loads(out)["normal"]["xi"] == ["0/1", "1/1", "2/1", "0/1", "1/1"]
    e1 = json.dumps({"chips": [{"at": {"vertex": "v1"}}, {"at": {"cycle": 1, "xi": "1"}},
                               {"at": {"cycle": 2, "xi": "2"}}]})
    code, out, _ = call(capsys, "divisor", "equivalent", "--gonal", "5,3", "--divisor", pencil,
                        "--other", e1)
    assert json.loads(out)["equivalent"] is True


def test_tableaux_commands(capsys):
    code, out, _ = call(capsys, "tableaux", "enumerate", "--gonal", "5,3", "--cols", "2",
                        "--rows", "3")
    assert [json.loads(line) for line in out.splitlines()] == [[[1, 3], [2, 4], [3, 5]]]
    code, serial, _ = call(capsys, "tableaux", "enumerate", "--gonal", "8,3", "--cols", "2",
                           "--rows", "3")
    code, par, _ = call(capsys, "tableaux", "enumerate", "--gonal", "8,3", "--cols", "2",
                        "--rows", "3", "--parallel", "2")
    assert serial == par
    code, lim, _ = call(capsys, "tableaux", "enumerate", "--gonal", "8,3", "--cols", "2",
                        "--rows", "3", "--limit", "2")
    assert lim.splitlines() == serial.splitlines()[:2]
    code, out, _ = call(capsys, "tableaux", "validate", "--gonal", "5,3", "--tableau",
                        "[[1,3],[2,4],[3,5]]")
    assert json.loads(out) == {"valid": True, "torus_dimension": 0}
    code, out, _ = call(capsys, "tableaux", "dim-wrd", "--gonal", "5,3", "--r", "1", "--d", "3")
    assert json.loads(out)["dim"] == 0
    code, out, _ = call(capsys, "tableaux", "lattice-path", "--tableau", "[[1,3],[2,4],[3,5]]")
    assert json.loads(out)["steps"] == [[1], [2], [3], [3], [2], [1]]


def test_scrollar_commands(capsys):
    code, out, _ = call(capsys, "scrollar", "generate", "--a", "1", "--b", "2", "--k", "5",
                        "--cols", "8", "--rows", "5")
    t = json.loads(out)
    assert t[0] == [1, 2, 3, 7, 8, 9, 13, 14]
    code, out, _ = call(capsys, "scrollar", "minus-one", "--a", "1", "--b", "1", "--k", "3",
                        "--tableau", "[[1,2,3,4,5]]", "--times", "2")
    assert json.loads(out) == [[1], [3], [5]]
    code, out, _ = call(capsys, "scrollar", "check-dim", "--a", "1", "--b", "2", "--k", "5",
                        "--g", "25", "--tableau", json.dumps(t))
    assert json.loads(out)["agrees"] is True
    code, out, _ = call(capsys, "scrollar", "slopes", "--a", "1", "--b", "2", "--k", "5",
                        "--tableau", json.dumps(t))
    assert json.loads(out)["distinct"] is True
    code, out, _ = call(capsys, "scrollar", "serial-subtract", "--gonal", "5,3", "--a", "1",
                        "--b", "1", "--tableau", "[[1,2,3,4,5]]", "--divisor",
                        json.dumps({"normal": {"d": 8, "xi": ["0", "-1", "1", "-3", "-4"]}}))
    steps = json.loads(out)
    assert [s["tableau"] for s in steps] == [[[1, 2, 3], [3, 4, 5]], [[1], [3], [5]]]


def test_map_commands(capsys, tmp_path):
    out_json, out_svg = tmp_path / "m.json", tmp_path / "m.svg"
    code, _, err = call(capsys, "map", "build-scroll", "--gonal", "5,3", "--tableau",
                        "[[1,2,3,4,5]]", "--a", "1", "--b", "1", "--out", str(out_json),
                        "--svg", str(out_svg))
    assert code == 0, err
    code, out, _ = call(capsys, "map", "certify", "--skeleton", str(out_json), "--tune")
    report = json.loads(out)
    assert report["assumptions"]["spans"] == [1, 2, 2, 2, 1]
    assert report["naively-well-spaced"] is True
    code, out, err = call(capsys, "map", "build-generic", "--profile", "0,0,0,0,0,0",
                          "--tableau", "[[1,2,3],[4,5,6]]")
    assert code == 0, err
    code, _, err = call(capsys, "map", "build-generic", "--gonal", "5,3",
                        "--tableau", "[[1,2],[3,4]]")
    assert code == 2


def test_bn_region(capsys, tmp_path):
    csv, svg = tmp_path / "r.csv", tmp_path / "r.svg"
    code, _, _ = call(capsys, "bn-region", "--g", "5", "--k", "3", "--x-max", "4", "--y-max", "4",
                      "--csv", str(csv), "--svg", str(svg))
    assert code == 0
    rows = csv.read_text().splitlines()
    assert rows[0] == "x,y,r,d,rho_bar,nonempty"
    assert "3,2,2,5,0,1" in rows
    assert "<polyline" in svg.read_text()


def test_io_round_trips():
    ch = k_gonal_chain(5, 3)
    assert chain_from_json(json.loads(json.dumps(chain_to_json(ch)))) == ch
    D = normal_form(ch, ChipList.of(ch.v(3), ch.point(2, "1/2")))
    assert divisor_from_json(ch, divisor_to_json(D)) == D
    chips = ChipList([(ch.point(2, "1/2"), 2), (ch.bridge_point(1, "1/3"), -1)])
    assert divisor_from_json(ch, json.loads(json.dumps(chips_to_json(chips)))) == chips


def test_version(capsys):
    code, out, _ = call(capsys, "--version")
    assert code == 0 and out.startswith("kgonal ")
