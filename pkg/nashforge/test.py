if __name__=="nashforge.test":
    from .utils import *
    from .algebra import *
    from .tasks import *
    from .cli import *
else:
    from utils import *
    from algebra import *
    from tasks import *
    from cli import *

import pytest
import jsonschema


def shipped(name):
    return INPUTS_DIR / (name + ".ini")


def report_for(name, **options):
    return run_task(parse_variety_file(shipped(name)), None, options)


CUSP_TEXT = """[variety]
characteristic = 0
variables = x, y
ideal = x^3 - y^2
"""


########################################################################################################################
# Input files
########################################################################################################################

def test_every_shipped_input_parses():
    paths = sorted(INPUTS_DIR.glob("*.ini"))
    assert len(paths) >= 10
    for path in paths:
        inp = parse_variety_file(path)
        assert len(inp.input_hash) == 64
        assert inp.task.get("kind") in taskdict


def test_generator_spellings_agree():
    listed = parse_variety_text(CUSP_TEXT.replace("x^3 - y^2", '["x^3 - y^2"]'))
    plain = parse_variety_text(CUSP_TEXT)
    assert listed.ideal.equals(plain.ideal)
    two = parse_variety_text(CUSP_TEXT.replace("x^3 - y^2", "x^2; y"))
    assert two.ideal.equals(Ideal(two.ctx, ["x^2", "y"]))
    multi = parse_variety_file(shipped("pm_id_q"))
    assert len(multi.group) == 2


def test_point_moves_to_origin():
    inp = parse_variety_file(shipped("cusp_point_q"))
    assert inp.point == ("1", "1")
    assert inp.ideal.equals(Ideal(inp.ctx, ["x^3 - y^2"]))
    assert inp.generators == ["(x - 1)^3 - (y - 1)^2"]
    override = parse_variety_text(CUSP_TEXT.replace("x^3 - y^2", "x^3 - (y - 2)^2"), point="0, 2")
    assert override.ideal.equals(Ideal(override.ctx, ["x^3 - y^2"]))
    assert override.input_hash != parse_variety_text(CUSP_TEXT).input_hash


def test_input_errors():
    with pytest.raises(FieldMismatchError):
        parse_variety_text(CUSP_TEXT.replace("characteristic = 0", "characteristic = 2").replace("y^2", "1/2 y^2"))
    with pytest.raises(CharacteristicError):
        parse_variety_text(CUSP_TEXT.replace("characteristic = 0", "characteristic = 6"))
    with pytest.raises(ParseError) as err:
        parse_variety_text(CUSP_TEXT.replace("x^3 - y^2", "x^3 + $"))
    assert (err.value.line, err.value.column) == (4, 7)
    with pytest.raises(ParseError) as err:
        parse_variety_text(CUSP_TEXT + "colour = blue\n")
    assert err.value.line == 5
    with pytest.raises(ParseError):
        parse_variety_text(CUSP_TEXT + "\n[options]\nfast = yes\n")
    with pytest.raises(ParseError):
        parse_variety_text("characteristic = 0\n")
    with pytest.raises(ParseError):
        parse_variety_text(CUSP_TEXT.replace("x^3 - y^2", "x^3 - z^2"))
    with pytest.raises(PointNotOnVarietyError):
        parse_variety_text(CUSP_TEXT.replace("x^3 - y^2", "x - 1"))
    with pytest.raises(PointNotOnVarietyError):
        parse_variety_text(CUSP_TEXT, point="1, 0")
    with pytest.raises(ParseError):
        parse_variety_text(CUSP_TEXT, point="1, 1, 1")
    with pytest.raises(InputError):
        parse_variety_file(shipped("does_not_exist"))


########################################################################################################################
# Tasks
########################################################################################################################

@pytest.mark.parametrize("name, verdict", [
    ("cusp_q", "NOT_ISO"),
    ("cusp_f2", "ISO_CERTIFIED"),
    ("cusp_point_q", "NOT_ISO"),
    ("cone_q", "FREE_RANK_DEFICIENT"),
    ("cone_f5", "AGREE"),
    ("cone_f2", "F_PURE"),
    ("line_q", "SMOOTH"),
    ("smooth_curve_f3", "REGULAR"),
    ("plane_q", "PAIRING_NONDEGENERATE"),
    ("pm_id_f5", "NOT_ISO"),
    ("pm_id_q", "NOT_ISO"),
])
def test_shipped_verdicts(name, verdict):
    report = report_for(name, verify=True)
    assert report.verdict == verdict
    assert BASE_FIELD_CAVEAT in report.caveats
    assert rederive_verdict(json.loads(report.to_json())) == verdict


def test_nash_check_evidence():
    cusp = report_for("cusp_q").evidence
    assert (cusp["free_rank"], cusp["expected_rank"]) == (1, 2)
    assert cusp["minor_ideal_generators"] == 2
    f2 = report_for("cusp_f2").evidence
    assert (f2["free_rank"], f2["expected_rank"], f2["minor_ideal_generators"]) == (2, 2, 1)
    assert f2["principal_witness"] is not None
    moved = report_for("cusp_point_q")
    assert any("(1, 1)" in c for c in moved.caveats)
    assert IRREDUCIBLE_CAVEAT in moved.caveats


def test_pparts_and_quotient_evidence():
    cone = report_for("cone_q").evidence
    assert cone["torsion_free"] is True
    assert cone["expected_rank"] == 3
    assert cone["multiplier"] == "w"
    assert len(cone["generators"]) == 4
    cusp = run_task(parse_variety_file(shipped("cusp_q")), "pparts", {"multiplier": "x"}).evidence
    assert cusp["torsion_free"] is False
    assert cusp["multiplier"] == "x"
    quotient = report_for("pm_id_q").evidence
    assert (quotient["codim"], quotient["bound"]) == (4, 6)
    assert quotient["invariants"] == {"u1": "x^2", "u2": "x*y", "u3": "y^2"}
    assert quotient["presentation"] == ["u2^2 - u1*u3"]
    assert quotient["pseudo_reflection_check"] == "HYPOTHESIS_HOLDS"


def test_pparts_on_the_char_two_cusp():
    report = run_task(parse_variety_file(shipped("cusp_f2")), "pparts", {"verify": True})
    assert report.verdict == "FULL_FREE_RANK"
    evidence = report.evidence
    assert evidence["multiplier"] == "x^2"
    assert evidence["torsion_free"] is False
    assert (evidence["free_rank"], evidence["structural_free_rank"]) == (2, 2)
    assert evidence["structural_conclusive"] is True
    assert main(["pparts", "--input", str(shipped("cusp_f2"))]) == 0


def test_refusals():
    with pytest.raises(UnsupportedScopeError):
        report_for("reflection_q")
    with pytest.raises(CharacteristicError):
        run_task(parse_variety_file(shipped("cusp_q")), "kunz")
    with pytest.raises(InputError):
        run_task(parse_variety_file(shipped("cusp_q")), "quotient")
    with pytest.raises(InputError):
        run_task(parse_variety_file(shipped("cusp_q")), "no-such-task")
    with pytest.raises(InputError):
        run_task(parse_variety_file(shipped("cusp_q")), "nash-check", {"order": 0})


def test_summary_is_consistent():
    for name in ("cusp_q", "cusp_f2", "line_q", "cone_f2"):
        report = run_task(parse_variety_file(shipped(name)), "summary", {"depth": 3, "verify": True})
        assert report.verdict == "CONSISTENT"
        assert rederive_verdict(report.to_dict()) == "CONSISTENT"
    f2 = run_task(parse_variety_file(shipped("cusp_f2")), "summary", {"depth": 3}).evidence
    assert (f2["smooth"], f2["kunz"], f2["fpure"], f2["nash_order_1"]) == \
        ("SINGULAR", "SINGULAR", "NOT_F_PURE", "ISO_CERTIFIED")
    broken = dict(f2, fpure="F_PURE")
    assert SummaryTask.verdict_from_evidence(broken) == "INCONSISTENT"


def test_core_chain_task():
    report = run_task(parse_variety_file(shipped("cusp_q")), "core-chain", {"depth": 3})
    assert report.verdict == "CORE_ZERO_LIKELY"
    assert report.evidence["codims"][:2] == [1, 1]
    assert report.order == 3


########################################################################################################################
# Reports
########################################################################################################################

def test_reports_are_byte_stable():
    for name in ("cusp_q", "cone_f2", "pm_id_f5"):
        first = emit_report(report_for(name))
        second = emit_report(report_for(name))
        assert first == second
        assert first.endswith(b"\n")
    timed = report_for("cusp_q", timing=True)
    assert timed.ms >= 0


def test_reports_match_schema():
    schema = load_schema()
    for name in ("cusp_q", "cusp_f2", "cone_q", "cone_f2", "line_q", "smooth_curve_f3", "plane_q", "pm_id_f5"):
        report = report_for(name)
        jsonschema.validate(instance=json.loads(report.to_json()), schema=schema)
    bad = report_for("line_q").to_dict()
    bad["caveats"] = []
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(instance=bad, schema=schema)


def test_text_format():
    text = emit_report(report_for("line_q"), "text").decode("utf-8")
    assert "verdict:        SMOOTH" in text
    assert BASE_FIELD_CAVEAT in text
    with pytest.raises(InputError):
        emit_report(report_for("line_q"), "yaml")


########################################################################################################################
# Entry point
########################################################################################################################

def test_main_exit_codes(tmp_path, capsys, monkeypatch):
    assert main(["nash-check", "--input", str(shipped("cusp_q"))]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["verdict"] == "NOT_ISO"
    assert main(["quotient", "--input", str(shipped("reflection_q"))]) == 2
    assert main(["nash-check", "--input", str(shipped("cusp_q")), "--budget", "1"]) == 3
    bad = tmp_path / "bad.ini"
    bad.write_text(CUSP_TEXT.replace("x^3 - y^2", "x^3 +* y"), encoding="utf-8")
    assert main(["nash-check", "--input", str(bad)]) == 4
    assert "line 4" in capsys.readouterr().err
    # a cross-check that disagrees is an internal inconsistency
    module = sys.modules[OracleTask.__module__]
    monkeypatch.setattr(module, "jets_oracle_diff_dim", lambda ideal, n, cutoff=None: (99, 0))
    assert main(["oracle", "--input", str(shipped("cone_f5")), "--verify"]) == 1


def test_unexpected_failures_get_their_own_exit_code(capsys, monkeypatch):
    def broken(*args, **kwargs):
        raise RuntimeError("oracle crashed")
    monkeypatch.setattr(sys.modules[OracleTask.__module__], "jets_oracle_diff_dim", broken)
    assert main(["oracle", "--input", str(shipped("cone_f5"))]) == INTERNAL_ERROR_EXIT
    err = capsys.readouterr().err
    assert "internal error: RuntimeError: oracle crashed" in err
    assert INTERNAL_ERROR_EXIT not in {ConsistencyError.exit_code, InputError.exit_code}
    assert batch([shipped("cone_f5")], jobs=1, kind="oracle") == INTERNAL_ERROR_EXIT
    assert "\toracle\tINTERNAL ERROR: RuntimeError" in capsys.readouterr().out


def test_rng_is_reproducible():
    first, second = reset_rng(), reset_rng()
    assert first is not second
    assert list(first.integers(0, 1000, size=5)) == list(second.integers(0, 1000, size=5))


def test_budget_does_not_leak():
    main(["smooth", "--input", str(shipped("line_q")), "--budget", "5"])
    assert get_budget() == DEFAULT_BUDGET or os.environ.get(BUDGET_ENV)


def test_batch(tmp_path, capsys):
    paths = [shipped("cusp_q"), shipped("line_q"), shipped("reflection_q")]
    code = batch(paths, jobs=1, outdir=str(tmp_path))
    assert code == 2
    table = capsys.readouterr().out.strip().split("\n")
    assert len(table) == 3
    assert table[0].endswith("\tnash-check\tNOT_ISO")
    assert (tmp_path / "cusp_q.json").exists()
    assert not (tmp_path / "reflection_q.json").exists()
    written = json.loads((tmp_path / "line_q.json").read_text(encoding="utf-8"))
    assert written["verdict"] == "SMOOTH"
    assert main(["batch", str(shipped("line_q")), "--task", "smooth", "--outdir", str(tmp_path / "again")]) == 0


if __name__ == '__main__':
    test_every_shipped_input_parses()
    test_shipped_verdicts("cusp_q", "NOT_ISO")
    test_reports_are_byte_stable()
