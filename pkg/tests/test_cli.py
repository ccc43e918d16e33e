import json
import os
import subprocess
import sys

from leibhol import catalog
from leibhol.cli import main
from leibhol.fields import GF
from leibhol.expectations import EXPLICIT_MAPS
from leibhol.holomorph import lie_holomorph
from leibhol.io import emit_algebra, emit_map, parse_algebra


def _file(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def _alg(tmp_path, name, **kw):
    return _file(tmp_path, f"{name}.alg", emit_algebra(catalog.get(name, **kw)))


def test_check_exit_codes(tmp_path, capsys):
    assert main(["check", _alg(tmp_path, "L_B")]) == 0
    assert "right_leibniz: yes" in capsys.readouterr().out
    bad = _file(tmp_path, "bad.alg", json.dumps({"field": {"kind": "Q"}, "dim": 1, "brackets": [
        {"left": 1, "right": 1, "value": [{"index": 1, "coeff": "1"}]}]}))
    assert main(["check", bad]) == 1


def test_invariants_prints_table_and_document(tmp_path, capsys):
    assert main(["invariants", _alg(tmp_path, "d1")]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    doc = json.loads(out[-1])
    assert doc["der"] == 6 and doc["der_lie"] == 4 and doc["inn"] == 2
    assert any(line.startswith("nilpotency_class") for line in out)


def test_spaces_selection(tmp_path, capsys):
    assert main(["spaces", _alg(tmp_path, "L_A"), "--bider", "--lieder"]) == 0
    out = capsys.readouterr().out
    assert "Bider: dim 3" in out and "DerLie: dim 1" in out and "Der:" not in out


def test_holomorph_of_l_a(tmp_path, capsys):
    out_path = str(tmp_path / "h.alg")
    assert main(["holomorph", _alg(tmp_path, "L_A"), "--kind", "lie", "-o", out_path]) == 0
    H = parse_algebra(open(out_path).read())
    assert H.dim == 3
    nz = {(i + 1, j + 1): v for i, j, v in H.nonzero_brackets()}
    assert nz == {(2, 2): (1, 0, 0), (2, 3): (-1, 0, 0), (3, 2): (1, 0, 0)}
    assert "right_leibniz: yes" in capsys.readouterr().out


def test_holomorph_kind_preconditions(tmp_path):
    lb = _alg(tmp_path, "L_B")
    assert main(["holomorph", lb, "--kind", "misra"]) == 1
    assert main(["holomorph", lb, "--kind", "misra", "--op", "-o", str(tmp_path / "m.alg")]) == 0
    assert main(["holomorph", lb, "--kind", "classical"]) == 1


def test_iso_with_explicit_map(tmp_path, capsys):
    src, dst, m = EXPLICIT_MAPS["phi: R5 -> hol_Lie(L_12)"][0]()
    a = _file(tmp_path, "R5.alg", emit_algebra(src))
    b = _file(tmp_path, "holL12.alg", emit_algebra(dst))
    phi = _file(tmp_path, "phi.map", emit_map(m))
    assert main(["iso", a, b, "--map", phi]) == 0
    assert "isomorphism verified" in capsys.readouterr().out


def test_iso_map_that_fails(tmp_path, capsys):
    a = _alg(tmp_path, "L_4")
    swap = _file(tmp_path, "s.map", json.dumps({"matrix": [["2", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}))
    assert main(["iso", a, a, "--map", swap]) == 1
    assert "not a homomorphism" in capsys.readouterr().out


def test_iso_search_outcomes(tmp_path, capsys):
    a = _file(tmp_path, "a.alg", emit_algebra(catalog.get("L_4", fld=GF(5))))
    b = _file(tmp_path, "b.alg", emit_algebra(catalog.get("L_5", {"alpha": 4}, GF(5))))
    c = _file(tmp_path, "c.alg", emit_algebra(catalog.get("L_5", {"alpha": 2}, GF(5))))
    assert main(["iso", a, b, "--search"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("isomorphism found")
    assert len(json.loads(out.splitlines()[1])["matrix"]) == 3
    assert main(["iso", a, c, "--search"]) == 1
    assert "none (exhausted)" in capsys.readouterr().out
    q = _alg(tmp_path, "L_4")
    assert main(["iso", q, q, "--search"]) == 1
    assert "unknown (field infinite)" in capsys.readouterr().out


def test_catalog_commands(tmp_path, capsys):
    assert main(["catalog", "list"]) == 0
    assert "L_13" in capsys.readouterr().out
    assert main(["catalog", "emit", "L_6", "--param", "alpha=1/4", "--field", "Q"]) == 0
    L = parse_algebra(capsys.readouterr().out)
    assert L == catalog.get("L_6", {"alpha": "1/4"})
    assert main(["catalog", "emit", "L_2", "--param", "alpha=0"]) == 2
    assert main(["catalog", "emit", "nope"]) == 2
    assert main(["catalog", "emit", "L_4", "--field", "F2"]) == 2


def test_usage_errors_exit_two(tmp_path, capsys):
    assert main([]) == 2
    assert main(["check", str(tmp_path / "missing.alg")]) == 2
    assert main(["iso", "a", "b"]) == 2
    broken = _file(tmp_path, "x.alg", '{"field": {"kind": "Fp", "p": 2}, "dim": 1, "brackets": []}')
    assert main(["check", broken]) == 2
    assert "characteristic 2" in capsys.readouterr().err


def _run(args, env_extra=None):
    env = dict(os.environ)
    env.update(env_extra or {})
    return subprocess.run([sys.executable, "-m", "leibhol", *args], capture_output=True, text=True, env=env)


def test_module_entry_point_and_numpy_fallback(tmp_path):
    a = _alg(tmp_path, "L_13", fld=GF(3))
    fast = _run(["invariants", a])
    slow = _run(["invariants", a], {"LEIBHOL_DISABLE_NUMBA": "1"})
    assert fast.returncode == slow.returncode == 0
    assert fast.stdout == slow.stdout


def test_search_identical_without_numba(tmp_path):
    a = _file(tmp_path, "a.alg", emit_algebra(lie_holomorph(catalog.get("L_4", fld=GF(3))).algebra))
    b = _file(tmp_path, "b.alg", emit_algebra(lie_holomorph(catalog.get("L_5", {"alpha": 2}, GF(3))).algebra))
    fast = _run(["iso", a, b, "--search"])
    slow = _run(["iso", a, b, "--search"], {"LEIBHOL_DISABLE_NUMBA": "1"})
    assert fast.stdout == slow.stdout and fast.returncode == slow.returncode
