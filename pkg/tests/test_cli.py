import json
import os

import pytest

from homcat.cli import main
from homcat import io as hio
from homcat.algebra import truncated_poly
from homcat.linalg import Mat
from homcat.modules import hom_basis, regular_module, simple_module, zero_module
from homcat.morphisms import make_object


@pytest.fixture
def r2_file(tmp_path):
    path = tmp_path / "r2.json"
    path.write_text(json.dumps(hio.ring_to_data(truncated_poly(2, 2))))
    return str(path)


@pytest.fixture
def k_module_file(tmp_path):
    k = simple_module(truncated_poly(2, 2))
    path = tmp_path / "k.json"
    path.write_text(json.dumps(hio.module_to_data(k)))
    return str(path)


@pytest.fixture
def socle_morph_file(tmp_path):
    R = truncated_poly(2, 2)
    k = simple_module(R)
    reg = regular_module(R)
    soc = hom_basis(k, reg)[0]
    obj = make_object(k, reg, soc.matrix)
    path = tmp_path / "socle.json"
    path.write_text(json.dumps(hio.morph_to_data(obj)))
    return str(path)


@pytest.fixture
def zero_to_k_file(tmp_path):
    R = truncated_poly(2, 2)
    k = simple_module(R)
    obj = make_object(zero_module(R), k, Mat.zeros(2, 1, 0))
    path = tmp_path / "z2k.json"
    path.write_text(json.dumps(hio.morph_to_data(obj)))
    return str(path)


def test_ring_classify_preset(capsys):
    rc = main(["ring", "classify", "preset:truncated_poly,p=2,n=2"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "local: yes" in out and "gorenstein: yes" in out


def test_ring_classify_square_zero(capsys):
    rc = main(["ring", "classify", "preset:square_zero_plane,p=2"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "gorenstein: no" in out


def test_ring_validate_good_and_bad(tmp_path, capsys):
    rc = main(["ring", "validate", "preset:truncated_poly,p=2,n=3"])
    assert rc == 0
    bad = {
        "p": 2, "dim": 3, "basis": ["1", "u", "v"], "unit": [1, 0, 0],
        "mul": [[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
                [[0, 1, 0], [0, 0, 0], [1, 0, 0]],
                [[0, 0, 1], [0, 0, 0], [0, 0, 0]]],
    }
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(bad))
    rc = main(["ring", "validate", str(path)])
    out = capsys.readouterr().out
    assert rc == 1
    assert "associativity" in out


def test_ring_triangular_emits_ring(r2_file, capsys):
    rc = main(["ring", "triangular", r2_file, "--json"])
    out = capsys.readouterr().out
    assert rc == 0
    data = json.loads(out)
    assert data["dim"] == 6


def test_ring_parse_error_exit_2(tmp_path, capsys):
    path = tmp_path / "garbage.json"
    path.write_text("{not json")
    rc = main(["ring", "classify", str(path)])
    assert rc == 2


def test_module_syzygy_and_tau(k_module_file, capsys):
    rc = main(["module", "syzygy", "-i", "2", k_module_file])
    out = capsys.readouterr().out
    assert rc == 0 and "dim 1" in out
    rc = main(["module", "tau", k_module_file])
    out = capsys.readouterr().out
    assert rc == 0 and "dim 1" in out


def test_module_linked_regular_not_stable(tmp_path, capsys):
    reg = regular_module(truncated_poly(2, 2))
    path = tmp_path / "reg.json"
    path.write_text(json.dumps(hio.module_to_data(reg)))
    rc = main(["module", "linked", str(path)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "linked: false (not stable)" in out


def test_morph_transpose_report(socle_morph_file, capsys):
    rc = main(["morph", "transpose", socle_morph_file])
    out = capsys.readouterr().out
    assert rc == 0
    assert "four-term sequence exact: True" in out


def test_morph_linked_all_methods(zero_to_k_file, capsys):
    rc = main(["morph", "linked", zero_to_k_file, "--method", "all"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "direct: True" in out and "ext_criterion: True" in out and "component: True" in out


def test_morph_red_strips(tmp_path, capsys):
    R = truncated_poly(2, 2)
    reg = regular_module(R)
    k = simple_module(R)
    from homcat.morphisms import direct_sum_objects
    from homcat.linalg import Mat as M
    z2k = make_object(zero_module(R), k, M.zeros(2, 1, 0))
    rr = make_object(reg, reg, M.identity(2, 2))
    obj = direct_sum_objects([z2k, rr])
    path = tmp_path / "fp.json"
    path.write_text(json.dumps(hio.morph_to_data(obj)))
    rc = main(["morph", "red", str(path), "--ctx", "M"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "(0 -> 1)" in out


def test_ar_sequence_and_verify(tmp_path, k_module_file, capsys):
    corpus_dir = tmp_path / "corpus"
    corpus_dir.mkdir()
    R = truncated_poly(2, 2)
    for i, m in enumerate((simple_module(R), regular_module(R))):
        (corpus_dir / ("m%d.json" % i)).write_text(json.dumps(hio.module_to_data(m)))
    rc = main(["ar", "sequence", "--cat", "R", "--end", k_module_file,
               "--corpus", str(corpus_dir), "--json"])
    out = capsys.readouterr().out
    assert rc == 0
    data = json.loads(out)
    assert data["report"]["all"] is True
    seq_path = tmp_path / "seq.json"
    seq_path.write_text(json.dumps(data))
    rc = main(["ar", "verify", str(seq_path), "--corpus", str(corpus_dir)])
    assert rc == 0


def test_ar_verify_split_sequence_fails(tmp_path, capsys):
    R = truncated_poly(2, 2)
    k = simple_module(R)
    from homcat.modules import direct_sum
    ds, incls, projs = direct_sum([k, k])
    from homcat.artheory import ARSequence
    seq = ARSequence("R", k, ds, k, incls[0], projs[1])
    path = tmp_path / "split.json"
    path.write_text(json.dumps(hio.arseq_to_data(seq)))
    rc = main(["ar", "verify", str(path)])
    out = capsys.readouterr().out
    assert rc == 1
    assert "'non_split': False" in out


def test_ar_tau_cat_g(zero_to_k_file, capsys):
    rc = main(["ar", "tau", "--cat", "G", zero_to_k_file])
    out = capsys.readouterr().out
    assert rc == 0
    assert "(1 -> 1)" in out


def test_ar_family(tmp_path, k_module_file, capsys):
    rc = main(["ar", "sequence", "--cat", "R", "--end", k_module_file, "--json"])
    data = json.loads(capsys.readouterr().out)
    assert rc == 0
    seq_path = tmp_path / "seq.json"
    seq_path.write_text(json.dumps(data))
    rc = main(["ar", "family", str(seq_path), "--method", "i"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "'all': True" in out


def test_paper_check_json_deterministic(capsys):
    rc1 = main(["paper", "check", "preset:truncated_poly,p=2,n=2", "--json", "--max-dim", "6"])
    out1 = capsys.readouterr().out
    rc2 = main(["paper", "check", "preset:truncated_poly,p=2,n=2", "--json", "--max-dim", "6"])
    out2 = capsys.readouterr().out
    assert rc1 == rc2 == 0
    assert out1 == out2  # byte identical


def test_paper_check_seed_env(monkeypatch, capsys):
    monkeypatch.setenv("HOMCAT_SEED", "7")
    rc = main(["paper", "check", "preset:truncated_poly,p=2,n=2", "--json", "--max-dim", "6"])
    out = capsys.readouterr().out
    assert rc == 0
    assert json.loads(out)["ring"].startswith("truncated_poly")


def test_module_json_roundtrip(tmp_path):
    R = truncated_poly(2, 3)
    k = simple_module(R)
    data = hio.module_to_data(k)
    back = hio.module_from_data(data)
    assert back.dim == k.dim
    from homcat.modules import is_isomorphic
    assert is_isomorphic(back, k) or back.algebra != k.algebra


def test_morph_json_roundtrip():
    R = truncated_poly(2, 2)
    k = simple_module(R)
    reg = regular_module(R)
    soc = hom_basis(k, reg)[0]
    obj = make_object(k, reg, soc.matrix)
    data = hio.morph_to_data(obj)
    back = hio.morph_from_data(data)
    assert back.A.dim == 1 and back.B.dim == 2
    assert back.f.is_injective()
