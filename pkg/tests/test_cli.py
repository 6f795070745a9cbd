import json

import pytest

from bdmodal.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_prove_exit_codes(capsys):
    code, out, _ = run(capsys, "prove", "Ip & Iq |- I(p | q)")
    assert code == 0 and out.startswith("proved:") and "×" in out
    code, out, _ = run(capsys, "prove", "[*](p & q) |- [*]p")
    assert code == 1 and "worlds:" in out


def test_prove_unicode_and_file_input(capsys, tmp_path):
    f = tmp_path / "seq.txt"
    f.write_text("Ip ∧ Iq ⊢ I(p ∨ q)\n", encoding="utf-8")
    assert run(capsys, "prove", f"@{f}")[0] == 0


def test_prove_emits_files(capsys, tmp_path):
    proof, model = tmp_path / "tree.txt", tmp_path / "cm.model"
    code, _, _ = run(capsys, "prove", "[*]p |- p", "--emit-proof", str(proof), "--emit-model", str(model))
    assert code == 1 and "○" in proof.read_text(encoding="utf-8")
    assert run(capsys, "check", str(model), "w0", "[*]p")[0] == 0
    assert run(capsys, "check", str(model), "w0", "p")[0] == 1


def test_prove_usage_errors(capsys):
    code, _, err = run(capsys, "prove", "[]p |- p")
    assert code == 2 and "search" in err
    code, _, err = run(capsys, "prove", "p & |- q")
    assert code == 2 and "offset 4" in err
    assert run(capsys, "prove", "@/nonexistent/file")[0] == 2
    assert run(capsys, "prove", "Ip & Iq |- I(p | q)", "--max-steps", "2")[0] == 3


def test_check(capsys, tmp_path):
    m = tmp_path / "m.model"
    m.write_text("worlds: a b\nedges: a->a a->b\nval p: a=T b=B\n")
    code, out, _ = run(capsys, "check", str(m), "a", "■p")
    assert code == 1 and out.splitlines() == ["F", "supports truth: no", "supports falsity: yes"]
    code, out, _ = run(capsys, "check", str(m), "a", "[]p")
    assert code == 0 and out.splitlines()[0] == "B"
    assert run(capsys, "check", str(m), "zz", "p")[0] == 2
    m.write_text("worlds: a\nedges: a->b\n")
    assert run(capsys, "check", str(m), "a", "p")[0] == 2


def test_search(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "[]p |- p")
    assert code == 1 and "edges:" in out
    code, out, _ = run(capsys, "search", "Ip |- p", "--max-worlds", "2")
    assert code == 0 and "none up to budget" in out
    frame = tmp_path / "refl.frame"
    frame.write_text("worlds: a\nedges: a->a\n")
    assert run(capsys, "search", "[]p |- p", "--frame", str(frame))[0] == 0
    assert run(capsys, "search", "p|-q", "--max-valuations", "4")[0] == 3


def test_experiment_command(capsys):
    code, out, _ = run(capsys, "experiment", "duality", "--trials", "50", "--seed", "2", "--json")
    data = json.loads(out)
    assert code == 0 and data[0]["experiment"] == "duality" and data[0]["checks"] > 0
    assert run(capsys, "experiment", "nope")[0] == 2


def test_fixtures_command(capsys, tmp_path):
    assert run(capsys, "fixtures", "--out", str(tmp_path))[0] == 0
    assert len(list(tmp_path.glob("*.model"))) == 9
    code, out, _ = run(capsys, "check", str(tmp_path / "fig1.model"), "w0", "[]p")
    assert code == 0 and out.startswith("B")


@pytest.mark.parametrize("argv", [[], ["bogus"], ["prove"]])
def test_bad_arguments(capsys, argv):
    assert main(argv) == 2
