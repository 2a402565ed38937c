import json

import pytest

from lienilp.catalog import build, build_named, group_fingerprint
from lienilp.cli import (
    InputDocument,
    cmd_analyze,
    group_to_table_payload,
    main,
    parse_presentation,
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_named_d16_json(capsys):
    code, out, _ = run(capsys, "analyze", "--named", "D16", "-p", "2", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["t_lower"] == 5 and doc["t_upper"] == 5 and doc["jennings_t_upper"] == 5
    assert doc["predicts_maximal"] and doc["observed_maximal"]
    assert doc["passed"] is True


def test_analyze_s3_not_lie_nilpotent(capsys):
    code, out, _ = run(capsys, "analyze", "--named", "S3", "-p", "2", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["lie_nilpotent"] is False
    assert doc["t_lower"] is None


def test_analyze_c1(capsys):
    code, out, _ = run(capsys, "analyze", "--named", "C1", "-p", "2", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["t_lower"] == 2 and doc["observed_maximal"] is True


def test_json_output_is_byte_stable(capsys):
    _, out1, _ = run(capsys, "analyze", "--named", "Q16", "-p", "2", "--json")
    _, out2, _ = run(capsys, "analyze", "--named", "Q16", "-p", "2", "--json")
    assert out1 == out2


def test_input_errors(capsys):
    code, _, err = run(capsys, "analyze", "--named", "NOPE", "-p", "2")
    assert code == 2 and "unknown group name" in err
    code, _, err = run(capsys, "analyze", "--named", "D8", "-p", "6")
    assert code == 2 and "prime" in err


def test_table_input(tmp_path, capsys):
    payload = group_to_table_payload(build_named("D8"))
    path = tmp_path / "d8.json"
    path.write_text(json.dumps(payload))
    code, out, _ = run(capsys, "analyze", "--table", str(path), "-p", "2", "--json")
    assert code == 0
    assert json.loads(out)["t_lower"] == 3


def test_table_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "analyze", "--table", str(bad), "-p", "2")
    assert code == 2 and "line 1" in err
    shifted = tmp_path / "shifted.json"
    payload = group_to_table_payload(build_named("C4"))
    payload["table"] = payload["table"][1:] + payload["table"][:1]
    shifted.write_text(json.dumps(payload))
    code, _, err = run(capsys, "analyze", "--table", str(shifted), "-p", "2")
    assert code == 2 and "identity" in err
    code, _, err = run(capsys, "analyze", "--table", str(tmp_path / "missing.json"), "-p", "2")
    assert code == 2


def test_presentation_inputs(capsys):
    spec = parse_presentation("a^8=1; b^2=1; a^b=a^-1")
    assert group_fingerprint(build(spec)) == group_fingerprint(build_named("D16"))
    spec = parse_presentation("a^4=1; b^2=a^2; a^b=a^-1")
    assert group_fingerprint(build(spec)) == group_fingerprint(build_named("Q8"))
    spec = parse_presentation("a^8=1; b^2=1; a^b=a^3")
    assert group_fingerprint(build(spec)) == group_fingerprint(build_named("SD16"))
    code, out, _ = run(
        capsys, "analyze", "--present", "a^8=1; b^2=1; a^b=a^-1", "-p", "2", "--json"
    )
    assert code == 0 and json.loads(out)["t_lower"] == 5


def test_presentation_errors(capsys):
    with pytest.raises(ValueError, match="cannot parse"):
        parse_presentation("a^8=1; b^3=1; a^b=a^-1")
    with pytest.raises(ValueError, match="unsupported presentation"):
        parse_presentation("a^8=1")
    with pytest.raises(ValueError, match="unsupported presentation"):
        # a^b = a^2 is not invertible mod 8
        parse_presentation("a^8=1; b^2=1; a^b=a^2")
    code, _, err = run(capsys, "analyze", "--present", "nonsense", "-p", "2")
    assert code == 2 and "cannot parse" in err


def test_cmd_analyze_direct_object(capsys):
    doc = InputDocument("named", "MD16", 2)
    code = cmd_analyze(doc, json_out=False, verbose=True)
    out = capsys.readouterr().out
    assert code == 0
    assert "t_L  (brute)    : 3" in out
    assert "[AGREE]" in out
    with pytest.raises(ValueError):
        InputDocument("named", "D8", 4)
    with pytest.raises(ValueError):
        InputDocument("csv", "D8", 2)


def test_verify_small_cap_passes(capsys):
    code, out, _ = run(capsys, "verify", "--max-order", "16")
    assert code == 0
    assert "all" in out and "pass" in out
    assert "validated default: ceiling" in out


def test_verify_strict_greater_fails(capsys):
    code, out, _ = run(capsys, "verify", "--max-order", "32", "--convention", "strict-greater")
    assert code == 1
    assert "FAILURES" in out
