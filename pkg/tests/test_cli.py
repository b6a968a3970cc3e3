"""Command-line client: exit codes, output formats, file arguments."""

import json

import pytest

from monoid_topos.cli import EXIT_GUARD, EXIT_INPUT, EXIT_OK, main
from monoid_topos.primes import MAX_GENERATORS_ENV


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_primes_text_output(capsys):
    code, out, err = run(capsys, "primes", "--monoid", "free:2")
    assert code == EXIT_OK
    assert "prime ideals: 4" in out
    assert "char 00" in out
    assert err == ""


def test_json_format_flag(capsys):
    code, out, _ = run(capsys, "--format", "json", "primes",
                       "--monoid", "free:1")
    assert code == EXIT_OK
    body = json.loads(out)
    assert body["command"] == "primes"
    assert body["results"]["count"] == 2
    assert body["provenance"]["schema_version"] == 1


def test_input_error_exit_code(capsys):
    code, out, err = run(capsys, "primes", "--monoid", "bogus:9")
    assert code == EXIT_INPUT
    assert out == ""
    assert err.startswith("error (input):")


def test_guard_error_exit_code(capsys, monkeypatch):
    monkeypatch.setenv(MAX_GENERATORS_ENV, "1")
    code, _, err = run(capsys, "primes", "--monoid", "free:2")
    assert code == EXIT_GUARD
    assert err.startswith("error (guard):")


def test_matrices_spec_points_to_snf(capsys):
    code, _, err = run(capsys, "primes", "--monoid", "matrices")
    assert code == EXIT_INPUT
    assert "snf" in err


def test_presentation_file_argument(capsys, tmp_path):
    f = tmp_path / "tor.txt"
    f.write_text("gens: a b\nrel: aa = bbb\n")
    code, out, _ = run(capsys, "primes", "--monoid", str(f))
    assert code == EXIT_OK
    assert "prime ideals: 2" in out


def test_inline_presentation_with_semicolons(capsys):
    code, out, _ = run(capsys, "primes", "--monoid",
                       "gens: a b; rel: aa = bbb")
    assert code == EXIT_OK
    assert "prime ideals: 2" in out


def test_ore_text_output(capsys):
    code, out, _ = run(capsys, "ore", "--monoid", "free:2")
    assert code == EXIT_OK
    assert "right Ore condition: fails" in out
    assert "counterexample" in out
    code, out, _ = run(capsys, "ore", "--monoid", "torus:2,3", "--table")
    assert code == EXIT_OK
    assert "right Ore condition: holds (exhaustive)" in out
    assert "(a, b) -> t = a, n = bb" in out


def test_localize_text_output(capsys):
    code, out, _ = run(capsys, "localize", "--monoid", "free:2",
                       "--char", "10")
    assert code == EXIT_OK
    assert "free:2[10^-1]" in out
    assert "a -> a'" in out


def test_subtoposes_text_output(capsys):
    code, out, _ = run(capsys, "subtoposes", "--monoid", "torus:2,3")
    assert code == EXIT_OK
    assert "subtoposes of monoid type: 2 confirmed, 0 excluded" in out


def test_flat_check_with_mset_file(capsys, tmp_path):
    f = tmp_path / "act.txt"
    f.write_text("elems: e\nact a: e->e\nact b: e->e\n")
    code, out, _ = run(capsys, "flat-check", "--monoid", "free:2",
                       "--mset", str(f))
    assert code == EXIT_OK
    assert "flatness (finite): not-flat" in out


def test_tensor_text_output(capsys):
    code, out, _ = run(capsys, "tensor", "--monoid", "free:1",
                       "--right", "elems: x0 x1; act a: x0->x1 x1->x1",
                       "--left", "elems: p q; act a: p->q q->q")
    assert code == EXIT_OK
    assert "tensor classes: 2" in out
    assert "{(x0, p)}" in out


def test_points_text_output(capsys):
    code, out, _ = run(capsys, "points", "--monoid", "free:2",
                       "--max-len", "2")
    assert code == EXIT_OK
    assert "ideals: 7" in out
    code, out, _ = run(capsys, "points", "--divisors", "36")
    assert code == EXIT_OK
    assert "ideals: 9" in out
    code, out, _ = run(capsys, "points", "--monoid", "free:2",
                       "--point", "b(a)^w", "--member", "baB")
    assert code == EXIT_OK
    assert "fixer group: infinite-cyclic, generator baB" in out
    assert "baB in M_y: True" in out


def test_snf_text_output(capsys):
    code, out, _ = run(capsys, "snf", "--matrix", "2 0; 0 3")
    assert code == EXIT_OK
    assert "diagonal: 1 6" in out
    assert "checks: all passed" in out


def test_tk_text_output(capsys):
    code, out, _ = run(capsys, "tk", "--k", "2", "--l", "3",
                       "normal-form", "bbbb")
    assert code == EXIT_OK
    assert "t^1" in out
    code, out, _ = run(capsys, "tk", "--k", "2", "--l", "3",
                       "equal", "aa", "bbb")
    assert code == EXIT_OK
    assert "aa = bbb: True" in out


def test_sn_text_output(capsys):
    code, out, _ = run(capsys, "sn", "--primes", "2,3", "--y", "2:inf,3:1",
                       "in-M", "5/4")
    assert code == EXIT_OK
    assert "member: True" in out
