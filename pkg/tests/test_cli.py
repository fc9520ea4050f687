"""The command-line surface: subcommands, JSON output, exit codes."""

import io
import json

import pytest

from dlog.cli import (
    EXIT_CAP,
    EXIT_INTERNAL,
    EXIT_NOT_DERIVABLE,
    EXIT_OK,
    EXIT_PARSE,
    main,
)


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_check(bird_path):
    code, out = run(["check", str(bird_path)])
    assert code == EXIT_OK
    assert "2 facts, 9 rules, 4 superiority pairs" in out
    assert "base 20" in out
    assert "warning" in out  # the two non-conflicting superiority pairs


def test_check_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.dl"
    bad.write_text("p => ")
    code, _ = run(["check", str(bad)])
    assert code == EXIT_PARSE
    assert "error" in capsys.readouterr().err


def test_check_missing_file():
    code, _ = run(["check", "/no/such/file.dl"])
    assert code == EXIT_PARSE


def test_derive_text(bird_path):
    code, out = run(["derive", str(bird_path)])
    assert code == EXIT_OK
    assert "+d flies(tweety)" in out
    assert "-d flies(ethel)" in out
    # blocked by the defeater, flies(ethel) gets no positive conclusion,
    # but every literal of this theory is settled at both levels
    assert "+d flies(ethel)" not in out
    assert "undefined:" not in out


def test_derive_reports_undefined_literals(tmp_path):
    f = tmp_path / "loop.dl"
    f.write_text("r: p => p.\n")
    code, out = run(["derive", str(f)])
    assert code == EXIT_OK
    assert "undefined:" in out
    assert "p (partial)" in out


def test_derive_json(bird_path):
    code, out = run(["derive", "--json", str(bird_path)])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert set(doc) == {"conclusions", "undefined"}
    assert {"tag": "+d", "literal": "flies(tweety)"} in doc["conclusions"]
    assert doc["undefined"] == []


def test_derive_json_undefined(tmp_path):
    f = tmp_path / "loop.dl"
    f.write_text("r: p => p.\n")
    _, out = run(["derive", "--json", str(f)])
    doc = json.loads(out)
    assert {"literal": "p", "levels": ["partial"]} in doc["undefined"]


def test_query(bird_path):
    code, out = run(["query", "+d", "flies(tweety)", str(bird_path)])
    assert code == EXIT_OK and "proved" in out
    code, out = run(["query", "+d", "flies(ethel)", str(bird_path)])
    assert code == EXIT_NOT_DERIVABLE and "not derivable" in out
    # tags spelled -D/-d must survive argparse's option syntax
    code, _ = run(["query", "-d", "~flies(ethel)", str(bird_path)])
    assert code == EXIT_OK
    # querying a literal outside the theory's base is fine
    code, _ = run(["query", "-D", "zebra(ethel)", str(bird_path)])
    assert code == EXIT_OK


def test_explain(bird_path):
    code, out = run(["explain", "+d", "flies(tweety)", str(bird_path)])
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0].startswith("P(1) = ")
    assert lines[-1].endswith("+d flies(tweety)")
    code, _ = run(["explain", "+d", "flies(ethel)", str(bird_path)])
    assert code == EXIT_NOT_DERIVABLE


def test_stdin_input(monkeypatch):
    import sys

    monkeypatch.setattr(sys, "stdin", io.StringIO("p. r: p => q.\n"))
    code, out = run(["derive", "-"])
    assert code == EXIT_OK
    assert "+d q" in out


def test_meta(tmp_path):
    f = tmp_path / "t.dl"
    f.write_text("p. r: p => q.\n")
    code, out = run(["meta", str(f)])
    assert code == EXIT_OK
    assert "definitely(p)." in out
    assert "defeasibly(q) :- not definitely(~q), defeasibly(p), not overruled(r, q)." in out


def test_models(tmp_path):
    f = tmp_path / "loop.dl"
    f.write_text("r: p => p.\n")
    code, out = run(["models", str(f)])
    assert code == EXIT_OK and "models: 3" in out
    code, out = run(["models", "--consequences", str(f)])
    assert "-d ~p" in out


def test_models_cap(tmp_path, capsys):
    f = tmp_path / "big.dl"
    f.write_text("p. q. r. s. t. u. v. w.\n")
    code, _ = run(["models", str(f)])
    assert code == EXIT_CAP
    assert "cap" in capsys.readouterr().err
    code, _ = run(["models", "--cap", "100", str(f)])
    assert code == EXIT_CAP


def test_models_cap_env(tmp_path, monkeypatch, capsys):
    f = tmp_path / "two.dl"
    f.write_text("p.\n")
    monkeypatch.setenv("DLOG_CAP", "10")
    code, _ = run(["models", str(f)])
    assert code == EXIT_CAP
    capsys.readouterr()


def test_validation_error_exit(tmp_path):
    f = tmp_path / "dup.dl"
    f.write_text("r: => p. r: => q.\n")
    code, _ = run(["check", str(f)])
    assert code == EXIT_PARSE


def test_fuzz_command():
    code, out = run(["fuzz", "--count", "25", "--seed", "3"])
    assert code == EXIT_OK
    assert "no divergence" in out


def test_fuzz_divergence_is_internal_error(monkeypatch):
    import dlog.differential as d
    from dlog.core import ConclusionSet

    real = d.metaprogram.conclusions
    monkeypatch.setattr(
        d.metaprogram, "conclusions", lambda g: ConclusionSet([])
    )
    code, out = run(["fuzz", "--count", "5", "--seed", "0", "--no-models"])
    assert code == EXIT_INTERNAL
    assert "FAILURE" in out
    monkeypatch.setattr(d.metaprogram, "conclusions", real)


def test_bench_command():
    code, out = run(["bench", "--sizes", "200,400"])
    assert code == EXIT_OK
    assert "chain 200:" in out and "chain 400:" in out
    assert "scaling ratio" in out
