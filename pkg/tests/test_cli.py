import pytest

from conftest import latex_balanced
from dysonct.cli import EXIT_IO, EXIT_MATH, EXIT_OK, EXIT_USAGE, main
from dysonct.store import ResultStore


@pytest.fixture(autouse=True)
def isolated_store(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("DYSON_STORE", raising=False)
    return tmp_path


def test_ct_examples(capsys):
    assert main(["ct", "-n", "3", "-a", "1,1,1", "-b", "0,0,0"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "6"
    assert main(["ct", "-n", "2", "-a", "1,1", "-b", "1,-1"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "-1"
    assert main(["ct", "-n", "3", "-a", "1,1,1", "-b", "1,0,0"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "0"


def test_ct_usage_errors(capsys):
    assert main(["ct", "-n", "3", "-a", "1,1", "-b", "0,0,0"]) == EXIT_USAGE
    assert main(["ct", "-n", "2", "-a", "1,x", "-b", "0,0"]) == EXIT_USAGE
    assert main(["ct", "-n", "2", "-a", "-1,1", "-b", "0,0"]) == EXIT_USAGE
    assert main(["nonsense"]) == EXIT_USAGE
    capsys.readouterr()


def test_guess_2m1m1(capsys):
    assert main(["guess", "-n", "3", "-b", "2,-1,-1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "d_3(a; <2,-1,-1>)" in out
    assert "a_2*a_3*(2+2a_1+a_2+a_3)" in out
    assert "(1+a_1+a_2)*(1+a_1+a_3)*(1+a_1)" in out


def test_guess_single_move_and_multinomial(capsys):
    assert main(["guess", "-n", "3", "-b", "-1,0,1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "-1*a_1 * (a_1+a_2+a_3)!" in out and "(1+a_2+a_3)" in out
    assert main(["guess", "-n", "3", "-b", "0,0,0"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "= (a_1+a_2+a_3)! / (a_1! a_2! a_3!)" in out


def test_guess_gives_up_cleanly(capsys):
    assert main(["guess", "-n", "3", "-b", "2,-1,-1", "--max-t", "0"]) == EXIT_MATH
    err = capsys.readouterr().err
    assert "samples" in err


def test_prove_writes_document_and_store(tmp_path, capsys):
    code = main(["prove", "-n", "3", "-b", "2,-1,-1", "--format", "latex"])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    doc_path = tmp_path / "proof_n3_b2_m1_m1.tex"
    assert doc_path.exists()
    assert latex_balanced(doc_path.read_text())
    store = ResultStore.load(str(tmp_path / "dyson-store.json"))
    assert store.get(3, (2, -1, -1)) is not None
    # dependency forms are archived as well
    assert store.get(2, (1, -1)) is not None


def test_write_paper_alias_and_custom_out(tmp_path):
    code = main(
        ["write-paper", "-n", "3", "-b", "1,0,0", "--out", "zero.md", "--format", "markdown"]
    )
    assert code == EXIT_OK
    text = (tmp_path / "zero.md").read_text()
    assert "= 0" in text


def test_prove_failure_leaves_no_document(tmp_path, capsys):
    code = main(["prove", "-n", "3", "-b", "2,-1,-1", "--max-t", "0"])
    assert code == EXIT_MATH
    assert not list(tmp_path.glob("proof_*"))


def test_turbo_summary_and_idempotence(tmp_path, capsys):
    assert main(["turbo", "-n", "3", "-C", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "7 new entries" in out
    assert "guessed" in out and "permuted" in out
    assert main(["turbo", "-n", "3", "-C", "1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "0 new entries" in out


def test_turbo_n2_store_contents(tmp_path, capsys):
    assert main(["turbo", "-n", "2", "-C", "2", "--store", "c2.json"]) == EXIT_OK
    capsys.readouterr()
    store = ResultStore.load(str(tmp_path / "c2.json"))
    assert len(store) == 5
    from dysonct.prover import c2_closed_form

    for entry in store:
        assert entry.form.R == c2_closed_form(entry.b).R


def test_store_env_override(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("DYSON_STORE", str(tmp_path / "env.json"))
    assert main(["turbo", "-n", "2", "-C", "0"]) == EXIT_OK
    capsys.readouterr()
    assert (tmp_path / "env.json").exists()


def test_io_failure_exit_code(tmp_path, capsys):
    code = main(
        ["prove", "-n", "3", "-b", "1,0,0", "--store", str(tmp_path / "no/dir/s.json")]
    )
    assert code == EXIT_IO
    capsys.readouterr()
