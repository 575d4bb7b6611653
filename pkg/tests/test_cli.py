import json

from cyheights.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_height_text(capsys):
    code, out, err = run(capsys, "height", "--p", "11", "--m", "5", "--r", "3")
    assert code == 0
    assert "height 1" in out
    assert "agree: yes" in out


def test_height_json_is_single_document(capsys):
    code, out, _ = run(capsys, "height", "--p", "2", "--m", "5", "--r", "3",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["height"] == "inf"
    assert payload["agree"] is True
    assert payload["alpha_count"] == 204


def test_height_rejects_composite_prime(capsys):
    code, out, err = run(capsys, "height", "--p", "10", "--m", "5", "--r", "3")
    assert code == 2
    assert out == ""
    assert "prime" in err


def test_zeta_with_checks(capsys):
    code, out, _ = run(capsys, "zeta", "--p", "7", "--m", "3", "--r", "1",
                       "--check", "1,2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["poly_coeffs"] == [1, 1, 7]
    assert all(c["match"] for c in payload["checks"])


def test_zeta_rejects_common_factor(capsys):
    code, _, err = run(capsys, "zeta", "--p", "5", "--m", "5", "--r", "3")
    assert code == 2
    assert "gcd" in err


def test_zeta_budget_exhaustion_names_budget(capsys):
    code, _, err = run(capsys, "zeta", "--p", "7", "--m", "3", "--r", "1",
                       "--check", "2", "--point-budget", "100")
    assert code == 3
    assert "budget" in err


def test_stickelberger_text_and_exit(capsys):
    code, out, _ = run(capsys, "stickelberger", "--p", "3", "--m", "4",
                       "--r", "2")
    assert code == 0
    assert "21/21" in out


def test_stickelberger_csv_schema(capsys):
    code, out, _ = run(capsys, "stickelberger", "--p", "3", "--m", "4",
                       "--r", "2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# schema=cyheights.stickelberger/v1"
    assert lines[1] == "alpha,exponent,valuation,equal,error"
    assert len(lines) == 23


def test_survey_height_matches_congruence(capsys):
    code, out, _ = run(capsys, "survey", "height", "--m", "5", "--r", "3",
                       "--p-max", "100", "--format", "json", "--jobs", "1")
    assert code == 0
    rows = json.loads(out)["rows"]
    finite = sorted(row["p"] for row in rows if row["height"] != "inf")
    assert finite == [11, 31, 41, 61, 71]
    assert all(row["agree"] for row in rows)


def test_survey_artin_exhibits_counterexample(capsys):
    code, out, _ = run(capsys, "survey", "artin", "--m", "8", "--r", "6",
                       "--p-max", "20", "--format", "json", "--jobs", "1")
    assert code == 0
    rows = {row["p"]: row for row in json.loads(out)["rows"]}
    assert rows[3]["additive_type"] is True
    assert rows[3]["fully_rigged"] is False
    assert rows[17]["additive_type"] is False


def test_survey_kummer_pattern(capsys):
    code, out, _ = run(capsys, "survey", "kummer", "--p-max", "50",
                       "--format", "json", "--jobs", "1")
    assert code == 0
    rows = json.loads(out)["rows"]
    for row in rows:
        assert (row["height"] == "inf") == (row["p"] % 3 == 2)
        assert row["agree"] is True


def test_survey_requires_parameters(capsys):
    code, _, err = run(capsys, "survey", "height", "--p-max", "40")
    assert code == 2
    assert "--m" in err


def test_survey_empty_range(capsys):
    code, _, err = run(capsys, "survey", "kummer", "--p-max", "5")
    assert code == 2
    assert "empty" in err


def test_survey_csv_headers(capsys):
    code, out, _ = run(capsys, "survey", "kummer", "--p-max", "20",
                       "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "# schema=cyheights.survey-kummer/v1"
    assert lines[1] == "p,height,predicted_height,agree"


def test_survey_parallel_matches_serial(capsys):
    code1, serial, _ = run(capsys, "survey", "kummer", "--p-max", "60",
                           "--format", "json", "--jobs", "1")
    code2, parallel, _ = run(capsys, "survey", "kummer", "--p-max", "60",
                             "--format", "json", "--jobs", "2")
    assert code1 == code2 == 0
    assert serial == parallel


def test_kummer_command(capsys):
    code, out, _ = run(capsys, "kummer", "--p", "7", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["points"] == 12
    assert payload["quotient_height"] == 1
    assert payload["agree"] is True

    code, out, _ = run(capsys, "kummer", "--p", "5")
    assert code == 0
    assert "inf" in out

    code, _, err = run(capsys, "kummer", "--p", "4")
    assert code == 2


def test_warm_cache_is_byte_identical(capsys, tmp_path):
    args = ["zeta", "--p", "3", "--m", "4", "--r", "2", "--check", "1",
            "--format", "json", "--cache-dir", str(tmp_path)]
    code1, cold, _ = run(capsys, *args)
    assert (tmp_path / "jacobi_sums_v1.json").exists()
    code2, warm, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert cold == warm
    payload = json.loads(cold)
    assert payload["degree"] == 21 and len(payload["poly_coeffs"]) == 22
    assert payload["checks"][0]["match"] is True


def test_cache_dir_env_var(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("CYHEIGHTS_CACHE_DIR", str(tmp_path))
    code, _, _ = run(capsys, "stickelberger", "--p", "3", "--m", "4",
                     "--r", "2")
    assert code == 0
    assert (tmp_path / "jacobi_sums_v1.json").exists()


def test_diagnostics_go_to_stderr_only(capsys):
    code, out, err = run(capsys, "height", "--p", "11", "--m", "5",
                         "--r", "3", "--format", "json")
    json.loads(out)  # stdout parses as one document
    assert "finished" in err


def test_jobs_validation(capsys):
    code, _, err = run(capsys, "survey", "kummer", "--p-max", "30",
                       "--jobs", "0")
    assert code == 2


def test_budget_flags_must_be_positive(capsys):
    code, _, err = run(capsys, "height", "--p", "11", "--m", "5", "--r", "3",
                       "--alpha-budget", "0")
    assert code == 2
    assert "positive" in err


def test_height_full_report(capsys):
    code, out, _ = run(capsys, "height", "--p", "11", "--m", "5", "--r", "3",
                       "--full", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["slopes"] == [["0", 1], ["1", 101], ["2", 101], ["3", 1]]
    assert payload["hodge"] == [1, 101, 101, 1]
    assert payload["fully_rigged"] is None  # r odd: predicate undefined
