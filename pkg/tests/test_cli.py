import csv
import io
import json

import pytest

from klmu.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["kl", "e", "rtstr"], "1 + q"),
        (["mu", "r", "rs"], "1"),
        (["mu", "sr", "srtsr"], "1"),
        (["cell", "e"], "c_e D_empty a=0"),
        (["cell", "rtstr"], "c_2 B_rt a=2"),
        (["cell", "stst"], "c_0 A_st a=4"),
        (["b", "2,4", "3,5"], "v^-1"),
        (["b", "2,4", "3,5", "--method", "direct"], "v^-1"),
        (["acoef", "1,1", "1,2"], "-v^-2"),
        (["b", "1,1", "2,4"], "v^-4 + v^-2"),
        (["mu", "0", "010", "--system", "A2"], "0"),
    ],
)
def test_single_queries(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip() == expected


def test_usage_errors(capsys):
    assert run(capsys, "kl", "e", "rxq")[0] == 2
    assert run(capsys, "verify", "9.9")[0] == 2
    assert run(capsys, "b", "1,1", "0,1")[0] == 2
    assert run(capsys, "table-mu", "--max-length", "99")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "5.4", "--bound", "14")
    assert code == 0 and out.startswith("5.4: pass")
    code, out, _ = run(capsys, "verify", "5.4", "--bound", "14", "--perturb")
    assert code == 1 and "1 counterexamples" in out
    code, out, _ = run(capsys, "verify", "5.4", "--json")
    assert code == 0 and json.loads(out)["checked"] == 6


def test_table_filters(capsys):
    code, out, _ = run(capsys, "table-mu", "--max-length", "7", "--cell-u", "c_2", "--cell-w", "c_2")
    rows = [line.split("\t") for line in out.splitlines()]
    assert ["srts", "srtsrts", "4", "7", "c_2", "c_2", "3"] in rows
    code, out, _ = run(capsys, "table-mu", "--max-length", "6", "--cell-u", "c_1", "--cell-w", "c_1")
    assert all(int(r.split("\t")[3]) - int(r.split("\t")[2]) == 1 for r in out.splitlines())
    code, out, _ = run(capsys, "table-mu", "--max-length", "0")
    assert code == 0 and out == ""


def test_table_order_and_determinism(capsys):
    _, first, _ = run(capsys, "table-mu", "--max-length", "6")
    _, second, _ = run(capsys, "table-mu", "--max-length", "6")
    assert first == second
    rows = [line.split("\t") for line in first.splitlines()]
    keys = [(int(r[3]), r[1], int(r[2]), r[0]) for r in rows]
    # ShortLex: r < s < t coincides with string order on these labels
    assert keys == sorted(keys)


def test_json_roundtrip(capsys):
    _, out, _ = run(capsys, "table-mu", "--max-length", "5", "--json")
    rows = [json.loads(line) for line in out.splitlines()]
    assert list(rows[0]) == ["u", "w", "lu", "lw", "cell_u", "cell_w", "mu"]
    assert "".join(json.dumps(r) + "\n" for r in rows) == out


def test_csv(capsys):
    _, out, _ = run(capsys, "table-mu", "--max-length", "4", "--csv", "--zeros")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["u", "w", "lu", "lw", "cell_u", "cell_w", "mu"]
    assert any(r[-1] == "0" for r in rows[1:])


def test_env_defaults(capsys, monkeypatch):
    monkeypatch.setenv("KLMU_MAX_LENGTH", "3")
    _, env_out, _ = run(capsys, "table-mu")
    _, flag_out, _ = run(capsys, "table-mu", "--max-length", "3")
    assert env_out == flag_out
    _, explicit, _ = run(capsys, "table-mu", "--max-length", "4")
    assert explicit != env_out


def test_cache_file(capsys, tmp_path):
    path = tmp_path / "cache.klc"
    code, out, _ = run(capsys, "cache", "build", "--max-length", "6", "--cache", str(path))
    assert code == 0 and path.read_text().startswith("# klmu-cache")
    assert run(capsys, "kl", "e", "rtstr", "--cache", str(path))[1].strip() == "1 + q"
    bad = tmp_path / "bad.klc"
    bad.write_text("garbage\n")
    assert run(capsys, "mu", "r", "rs", "--cache", str(bad))[0] == 2
