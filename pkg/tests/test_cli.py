import subprocess
import sys
from pathlib import Path

import pytest

from conftest import LATIN_LISTING
from xcover.cli import main

DATA = Path(__file__).parent / "data"


def run(*args, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "xcover", *args], input=stdin, capture_output=True, check=False
    )


def pipe(gen_args, *args):
    produced = run("gen", *gen_args)
    assert produced.returncode == 0, produced.stderr
    return run(*args, "-", stdin=produced.stdout)


@pytest.fixture
def listing(tmp_path):
    path = tmp_path / "latin.xc"
    path.write_text(LATIN_LISTING)
    return path


def test_solve_listing(listing, capsys):
    assert main(["solve", str(listing), "--stats"]) == 0
    out, err = capsys.readouterr()
    lines = out.splitlines()
    assert lines[0] == "SOLUTION 1" and len(lines) == 17
    assert "solutions 1" in err.splitlines()


def test_solve_without_solutions(tmp_path, capsys):
    path = tmp_path / "none.xc"
    path.write_text("%primary z\na\n")
    assert main(["solve", str(path), "--stats"]) == 1
    out, err = capsys.readouterr()
    assert out == ""
    assert "solutions 0" in err.splitlines()


def test_engines_print_identical_solutions(tmp_path, capsys):
    path = tmp_path / "q.xc"
    assert main(["gen", "queens", "--n", "6"]) == 0
    path.write_bytes(capsys.readouterr().out.encode())
    main(["solve", str(path), "--engine", "naive"])
    naive = capsys.readouterr().out
    main(["solve", str(path), "--engine", "dlx"])
    assert capsys.readouterr().out == naive
    assert naive.count("SOLUTION") == 4


def test_first_and_max(listing, tmp_path, capsys):
    path = tmp_path / "q.xc"
    main(["gen", "queens", "--n", "8"])
    path.write_bytes(capsys.readouterr().out.encode())
    main(["solve", str(path), "--first"])
    assert capsys.readouterr().out.count("SOLUTION") == 1
    main(["solve", str(path), "--max", "5"])
    assert capsys.readouterr().out.count("SOLUTION") == 5


def test_max_updates_halt(tmp_path, capsys):
    path = tmp_path / "q.xc"
    main(["gen", "queens", "--n", "8"])
    path.write_bytes(capsys.readouterr().out.encode())
    main(["solve", str(path), "--quiet", "--stats", "--max-updates", "10"])
    assert "halted_by update_limit" in capsys.readouterr().err.splitlines()


def test_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.xc"
    path.write_text("a\n%bogus x\n")
    assert main(["solve", str(path)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_missing_file(capsys):
    assert main(["count", "/nonexistent/file.xc"]) == 2


@pytest.mark.parametrize(
    "gen_args, expected",
    [
        (["latin", "--n", "4", "--normalized"], "4"),
        (["latin", "--n", "3"], "12"),
        (["sudoku", "--order", "2"], "288"),
        (["queens", "--n", "8"], "92"),
        (["pentomino", "--board", "3x20"], "8"),
    ],
)
def test_gen_count_pipes(gen_args, expected):
    result = pipe(gen_args, "count")
    assert result.returncode == 0, result.stderr
    assert result.stdout.decode().strip() == expected


def test_gen_sudoku_with_puzzle_pipes_into_solve():
    result = pipe(["sudoku", "--puzzle", str(DATA / "hardest.sudoku")], "solve")
    assert result.returncode == 0
    assert result.stdout.decode().count("SOLUTION") == 1


def test_placement_table(tmp_path, capsys):
    table = tmp_path / "placements.txt"
    main(["gen", "pentomino", "--board", "3x20", "--placements", str(table)])
    instance_rows = [ln for ln in capsys.readouterr().out.splitlines() if not ln.startswith("%")]
    lines = table.read_text().splitlines()
    assert len(lines) == len(instance_rows) == 1236
    assert lines[0].split()[0] == "1"


def test_pentomino_command(capsys):
    assert main(["pentomino", "--board", "3x20", "--unique", "--render"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[:4] == ["rows 1236", "columns 72", "solutions 8", "unique 2"]
    assert out.count("SOLUTION 1") == 1 and len(out) == 4 + 2 * 4


def test_pentomino_board_file(tmp_path, capsys):
    path = tmp_path / "board.txt"
    path.write_text("#####\n#####\n")
    assert main(["pentomino", "--board-file", str(path)]) == 1
    assert "solutions 0" in capsys.readouterr().out


def test_pentomino_bad_board_file(tmp_path, capsys):
    path = tmp_path / "board.txt"
    path.write_text("##x\n")
    assert main(["pentomino", "--board-file", str(path)]) == 2


def test_sudoku_hardest(capsys):
    assert main(["sudoku", str(DATA / "hardest.sudoku"), "--check-unique"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "9 2 5 4 1 3 7 8 6"
    assert out[-1] == "solutions 1"


def test_sudoku_render(capsys):
    main(["sudoku", str(DATA / "hardest.sudoku"), "--render"])
    assert "|" in capsys.readouterr().out


def test_sudoku_multiple_and_inconsistent(tmp_path, capsys):
    blank = tmp_path / "blank.txt"
    blank.write_text("." * 16)
    assert main(["sudoku", str(blank), "--check-unique"]) == 3
    assert capsys.readouterr().out.splitlines()[-1] == "solutions 2+"
    bad = tmp_path / "bad.txt"
    bad.write_text("11" + "." * 14)
    assert main(["sudoku", str(bad)]) == 2


def test_sudoku_all(tmp_path, capsys):
    blank = tmp_path / "blank.txt"
    blank.write_text("." * 16)
    assert main(["sudoku", str(blank), "--all"]) == 3
    assert capsys.readouterr().out.splitlines()[-1] == "solutions 288"


def test_queens_command(capsys):
    assert main(["queens", "--n", "4", "--render"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "solutions 2" and "SOLUTION 2" in out
    assert main(["queens", "--n", "3"]) == 1


def test_bench_command(tmp_path, listing, capsys):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    (corpus / "latin.xc").write_text(LATIN_LISTING)
    (corpus / "broken.xc").write_text("%nope\n")
    figs = tmp_path / "figs"
    assert main(["bench", str(corpus), "--figures", str(figs)]) == 0
    out, err = capsys.readouterr()
    rows = [ln.split("\t") for ln in out.splitlines() if not ln.startswith("#")]
    assert rows[0][:3] == ["instance", "engine", "repeat"]
    assert [r[1] for r in rows[1:]] == ["naive", "dlx"]
    assert "broken.xc" in err
    assert sorted(p.name for p in figs.iterdir()) == ["latin_levels.png", "update_rates.png"]


def test_bench_unknown_engine(tmp_path, capsys):
    assert main(["bench", str(tmp_path), "--engines", "quantum"]) == 2


def test_console_entry_point():
    result = run("--help")
    assert result.returncode == 0 and b"solve" in result.stdout


def test_pentomino_chess_unique(capsys):
    assert main(["pentomino", "--board", "chess", "--unique"]) == 0
    assert capsys.readouterr().out.splitlines()[2:4] == ["solutions 520", "unique 65"]


def test_pentomino_cross_board_file(tmp_path, capsys):
    from xcover.pentomino import builtin_board

    path = tmp_path / "cross.board"
    path.write_text(builtin_board("cross").mask())
    assert main(["pentomino", "--board-file", str(path), "--unique"]) == 0
    assert capsys.readouterr().out.splitlines()[2:4] == ["solutions 42", "unique 21"]


def test_sudoku_empty_nine_check_unique(tmp_path, capsys):
    blank = tmp_path / "blank.txt"
    blank.write_text("." * 81)
    assert main(["sudoku", str(blank), "--check-unique"]) == 3
    assert capsys.readouterr().out.splitlines()[-1] == "solutions 2+"


def test_bench_latin_five(tmp_path, capsys):
    from xcover.fileio import write_instance
    from xcover.latin import LatinSpec, build_instance

    corpus = tmp_path / "corpus"
    corpus.mkdir()
    (corpus / "latin5.xc").write_bytes(write_instance(build_instance(LatinSpec(5, True))))
    assert main(["bench", str(corpus), "--repeats", "3"]) == 0
    rows = [ln.split("\t") for ln in capsys.readouterr().out.splitlines()[2:]]
    assert len(rows) == 6 and {r[5] for r in rows} == {"56"}
    for engine in ("naive", "dlx"):
        assert len({r[6] for r in rows if r[1] == engine}) == 1
