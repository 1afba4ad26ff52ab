import json

import kmchev.alcove as alcove
from kmchev.cli import main

AFF = ["--cartan", "A2~", "--weight", "1,1,0"]
AFFW = AFF + ["--w", "0 1 2 1"]


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_chevalley_json_schema(capsys):
    code, out, err = run(capsys, ["chevalley", *AFFW, "--model", "all"])
    assert code == 0, err
    doc = json.loads(out)
    assert set(doc) == {"cartan", "lambda", "sign", "w", "rows", "truncated"}
    assert doc["lambda"] == {"fund": [1, 1, 0], "delta": 0}
    assert doc["sign"] == 1
    assert doc["w"] == ["0", "1", "2", "1"]
    assert doc["truncated"] is False
    assert len(doc["rows"]) == 4
    for row in doc["rows"]:
        assert set(row) == {"z", "terms"}
        for term in row["terms"]:
            assert set(term) == {"weight", "mult"}
    zs = [tuple(r["z"]) for r in doc["rows"]]
    assert zs == sorted(zs, key=lambda t: (len(t), t))


def test_chevalley_table_contains_frozen_row(capsys):
    code, out, _ = run(capsys, ["chevalley", *AFFW, "--format", "table"])
    assert code == 0
    assert "e[-3,3,2,delta=-3] +e[-1,2,1,delta=-2] +e[1,1,0,delta=-1]" in out


def test_chevalley_antidominant_sign(capsys):
    code, out, _ = run(capsys, ["chevalley", *AFFW, "--sign", "-1", "--format", "table"])
    assert code == 0
    assert "-e[-1,-1,0]" in out  # the bottom row carries coefficient -1


def test_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for target in (a, b):
        code, _, _ = run(capsys, ["chevalley", *AFFW, "--out", str(target)])
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_single_model_runs(capsys):
    rows = {}
    for model in ("ls", "alcove", "nilhecke"):
        code, out, _ = run(capsys, ["chevalley", *AFFW, "--model", model])
        assert code == 0
        rows[model] = json.loads(out)["rows"]
    assert rows["ls"] == rows["alcove"] == rows["nilhecke"]


def test_fixed_z_expansion(capsys):
    code, out, _ = run(
        capsys,
        ["chevalley", *AFF, "--z", "1 2", "--max-length", "4", "--model", "alcove"],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["z"] == ["1", "2"]
    assert doc["truncated"] is True
    byw = {tuple(r["w"]): r["terms"] for r in doc["rows"]}
    target = byw[("0", "1", "2", "1")]
    assert {"weight": {"fund": [1, 1, 0], "delta": -1}, "mult": 1} in target


def test_fixed_z_rejects_other_models(capsys):
    code, _, err = run(
        capsys,
        ["chevalley", *AFF, "--z", "1", "--max-length", "3", "--model", "ls"],
    )
    assert code == 2
    assert "alcove" in err


def test_crystal_counts(capsys):
    for argv, n in [
        (["crystal", *AFFW], 9),
        (["crystal", *AFFW, "--realization", "alcove"], 9),
        (["crystal", "--cartan", "A2", "--weight", "2,1", "--w", "1 2 1"], 15),
        (["crystal", "--cartan", "A2", "--weight", "2,1", "--w", "e"], 1),
    ]:
        code, out, _ = run(capsys, argv)
        assert code == 0
        doc = json.loads(out)
        assert doc["count"] == n and len(doc["elements"]) == n


def test_crystal_realizations_agree_on_weights(capsys):
    _, ls_out, _ = run(capsys, ["crystal", *AFFW])
    _, alc_out, _ = run(capsys, ["crystal", *AFFW, "--realization", "alcove"])
    ls_w = sorted(json.dumps(p["weight"], sort_keys=True) for p in json.loads(ls_out)["elements"])
    alc_w = sorted(json.dumps(p["weight"], sort_keys=True) for p in json.loads(alc_out)["elements"])
    assert ls_w == alc_w


def test_opposite_crystal_truncation(capsys):
    code, out, _ = run(
        capsys,
        ["crystal", *AFF, "--opposite", "--z", "1", "--max-length", "4"],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["truncated"] is True
    assert doc["count"] == 57 and len(doc["elements"]) == 57


def test_dot_outputs(capsys):
    code, out, _ = run(capsys, ["chevalley", *AFFW, "--model", "alcove", "--format", "dot"])
    assert code == 0
    assert "(2|1,2,2)/3" in out and out.count("->") == 7
    code, out, _ = run(capsys, ["crystal", *AFFW, "--format", "dot"])
    assert code == 0
    assert out.count("->") == 8 and 'label="0"' in out
    code, _, err = run(capsys, ["chevalley", *AFFW, "--model", "ls", "--format", "dot"])
    assert code == 2


def test_gcm_file_input(tmp_path, capsys):
    gcm = tmp_path / "g2.json"
    gcm.write_text(json.dumps({"matrix": [[2, -1], [-3, 2]], "nodes": ["1", "2"]}))
    code, out, _ = run(
        capsys,
        ["chevalley", "--gcm-file", str(gcm), "--weight", "1,0", "--w", "1 2"],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["cartan"]["matrix"] == [[2, -1], [-3, 2]]
    assert len(doc["rows"]) >= 2


def test_error_exits(capsys):
    cases = [
        ["chevalley", "--weight", "1,1", "--w", "e"],  # no matrix given
        ["chevalley", "--cartan", "A2", "--weight", "1,-1", "--w", "e"],  # not dominant
        ["chevalley", "--cartan", "A2", "--weight", "1,1", "--w", "7"],  # bad node
        ["chevalley", "--cartan", "A2", "--weight", "1,1"],  # neither --w nor --z
        ["chevalley", "--cartan", "A2", "--weight", "1,1", "--w", "e", "--sign", "2"],
        ["chevalley", "--cartan", "A2", "--weight", "oops", "--w", "e"],
        ["crystal", "--cartan", "A2", "--weight", "1,1", "--opposite", "--z", "1"],
        ["crystal", "--cartan", "A2", "--weight", "1,1"],
    ]
    for argv in cases:
        code, _, err = run(capsys, argv)
        assert code == 2, argv
        assert err.startswith("error:"), argv


def test_identity_word_forms(capsys):
    for text in ("e", " "):
        code, out, _ = run(
            capsys, ["chevalley", "--cartan", "A2", "--weight", "1,1", "--w", text]
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["w"] == []
        assert doc["rows"] == [
            {"z": [], "terms": [{"weight": {"fund": [1, 1]}, "mult": 1}]}
        ]


def test_selftest_all_green(capsys):
    code, out, _ = run(capsys, ["selftest"])
    assert code == 0
    doc = json.loads(out)
    assert doc["all_ok"] is True
    names = [s["name"] for s in doc["scenarios"]]
    assert "finite-triangles" in names and "negative-control" in names
    assert all(s["ok"] for s in doc["scenarios"])


def test_selftest_filters(capsys):
    code, out, _ = run(capsys, ["selftest", "--scenario", "crystal-mass"])
    assert code == 0
    doc = json.loads(out)
    assert [s["name"] for s in doc["scenarios"]] == ["crystal-mass"]
    code, out, _ = run(capsys, ["selftest", "--scenario", ""])
    assert code == 0
    assert json.loads(out)["scenarios"] == []


def test_selftest_catches_an_injected_fault(capsys, monkeypatch):
    """Corrupting the hyperplane comparator must trip the cross-checks."""
    monkeypatch.setattr(alcove, "_inverted_lex", True)
    code, out, _ = run(capsys, ["selftest"])
    assert code == 1
    doc = json.loads(out)
    assert doc["all_ok"] is False
    bad = {s["name"] for s in doc["scenarios"] if not s["ok"]}
    assert "finite-triangles" in bad


def test_out_writes_file_and_stdout_stays_quiet(tmp_path, capsys):
    target = tmp_path / "rows.json"
    code, out, _ = run(capsys, ["chevalley", *AFFW, "--out", str(target)])
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["rows"]
