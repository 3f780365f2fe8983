import io
import json
import subprocess
import sys

import pytest

from chandas.cli import RunConfig, main, run_classify, split_verses

from corpus import BY_KEY, CORPUS


def run(argv, stdin=""):
    proc = subprocess.run([sys.executable, "-m", "chandas.cli", *argv], input=stdin, capture_output=True,
                          text=True, encoding="utf-8")
    return proc.returncode, proc.stdout, proc.stderr


def test_split_verses():
    text = "a | b || 1 ||\nc | d ॥ २ ॥\ne | f ||\ntrailing"
    assert split_verses(text) == ["a | b ||", "c | d ||", "e | f ||", "trailing"]


def test_scan_golden(capsys):
    assert main(["scan", "vande gurūnām caraṇāravinde"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "11011001011"


def test_scan_shows_exceptions(capsys):
    main(["scan", "vipra"])
    out = capsys.readouterr().out.splitlines()
    assert out[:2] == ["10", "exceptions: 0"]
    assert out[2].split()[-1] == "*"


def test_translit(capsys):
    assert main(["translit", "हरिः"]) == 0
    assert capsys.readouterr().out.strip() == "hariḥ"


def test_three_verses_json(tmp_path, capsys):
    keys = ["indravajra-definition", "gita-1.1", "bhagavata-10.90.48"]
    p = tmp_path / "in.txt"
    p.write_text("\n".join(BY_KEY[k].iast for k in keys), encoding="utf-8")
    assert main(["classify", "--json", str(p)]) == 0
    lines = capsys.readouterr().out.splitlines()
    records = [json.loads(line) for line in lines]
    assert [r["metre"] for r in records] == ["Indravajrā", "Anuṣṭubh", "Mālinī"]
    for key in ("verse", "metre", "class", "split", "ganas", "yati", "matra", "corrections", "variants_tried"):
        assert key in records[0]
    assert records[2]["yati"] == [[8]] * 4


def test_nomatch_exit_1(capsys):
    text = BY_KEY["gita-1.1"].iast + "\nna ca rāmaḥ vanaṁ gacchati | kiṁ tu sītā gṛhe vasati ||\n"
    out = io.StringIO()
    assert run_classify(RunConfig(output="json"), text, out) == 1
    records = [json.loads(line) for line in out.getvalue().splitlines()]
    assert [r["status"] for r in records] == ["ok", "NoMatch"]
    assert records[1]["diagnostics"]["N1"] == 9


def test_bad_verse_exit_2():
    out = io.StringIO()
    assert run_classify(RunConfig(output="json"), "ka | ta | pa ||", out) == 2
    assert json.loads(out.getvalue())["status"] == "error"


def test_missing_db_exit_2(tmp_path):
    p = tmp_path / "in.txt"
    p.write_text(BY_KEY["gita-1.1"].iast, encoding="utf-8")
    code, _, err = run(["classify", "--db", str(tmp_path / "nope.db"), str(p)])
    assert code == 2 and "nope.db" in err


def test_missing_input_exit_2(tmp_path):
    assert main(["classify", str(tmp_path / "absent.txt")]) == 2


def test_stdin_and_text_mode():
    code, out, _ = run(["classify", "-"], stdin=BY_KEY["meghaduta-1.1"].deva)
    assert code == 0
    assert out.startswith("Mandākrāntā [sama]")
    assert "¦" in out


def test_jobs_preserve_order_and_bytes():
    text = "\n".join(v.iast for v in CORPUS)
    serial, parallel = io.StringIO(), io.StringIO()
    run_classify(RunConfig(output="json"), text, serial)
    run_classify(RunConfig(output="json", jobs=3), text, parallel)
    assert serial.getvalue() == parallel.getvalue()
    assert [json.loads(x)["verse"] for x in serial.getvalue().splitlines()] == [v.iast for v in CORPUS]


def test_all_flag(capsys):
    out = io.StringIO()
    run_classify(RunConfig(output="json", all_matches=True), BY_KEY["indravajra-definition"].iast, out)
    rec = json.loads(out.getvalue())
    assert [m["metre"] for m in rec["matches"]] == ["Indravajrā", "Upajāti"]


def test_no_sandhi_flag(tmp_path, capsys):
    p = tmp_path / "in.txt"
    p.write_text("hariḥ itā ta ta tā ta ta tā ta tā " + " ".join(["ta ta ta tā ta ta tā ta ta tā ta tā"] * 1)
                 + " | " + " ".join(["ta ta ta tā ta ta tā ta ta tā ta tā"] * 2) + " ||", encoding="utf-8")
    assert main(["classify", "--json", str(p)]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["corrections"][0]["rule"] == "VisargaToR"
    assert main(["classify", "--json", "--no-apply-sandhi", str(p)]) == 1


def test_format_flag(capsys):
    v = BY_KEY["gita-1.1"]
    out = io.StringIO()
    assert run_classify(RunConfig(input_format="deva", output="json"), v.deva, out) == 0


def test_db_validate(capsys):
    assert main(["db", "validate"]) == 0
    out = capsys.readouterr().out
    assert "ALT 21: 10+11" in out and "VLT 16,16: 8+8+8+8" in out


def test_negative_max_exceptions():
    with pytest.raises(SystemExit):
        main(["classify", "--max-exceptions", "-1", "-"])


def test_byte_stable(tmp_path):
    p = tmp_path / "in.txt"
    p.write_text(BY_KEY["sarasvati-stuti"].deva, encoding="utf-8")
    first, second = run(["classify", "--json", str(p)]), run(["classify", "--json", str(p)])
    assert first == second and first[0] == 0
