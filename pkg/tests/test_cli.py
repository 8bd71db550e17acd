"""The textual front end: parsing, dispatch, output and exit codes."""

import json

import pytest

from flagstab.cli import ParseError, main, parse_document, parse_polynomial

from conftest import V


CONIC_DOC = """\
ring x, y, z
command: flat-limit
ideal: x*z - y^2
weights: 2, -1, -1
"""


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParsePolynomial:
    def test_conic(self):
        f = parse_polynomial("x*z - y^2", ["x", "y", "z"])
        assert f == V(3, 0) * V(3, 2) - V(3, 1) ** 2

    def test_rational_coefficients(self):
        f = parse_polynomial("1/2*x^2 - 3*x*y", ["x", "y"])
        from fractions import Fraction

        assert f.coefficient((2, 0)) == Fraction(1, 2)
        assert f.coefficient((1, 1)) == -3

    def test_parentheses_and_signs(self):
        f = parse_polynomial("x*(x + y) - (-y)^2", ["x", "y"])
        assert f == V(2, 0) ** 2 + V(2, 0) * V(2, 1) - V(2, 1) ** 2

    def test_undeclared_variable(self):
        with pytest.raises(ParseError) as err:
            parse_polynomial("x*w", ["x", "y"], line=3)
        assert err.value.line == 3
        assert "undeclared" in str(err.value)


class TestParseDocument:
    def test_conic_document(self):
        doc = parse_document(CONIC_DOC)
        assert doc.names == ["x", "y", "z"]
        assert doc.command == "flat-limit"
        assert doc.weights == [2, -1, -1]
        assert len(doc.ideal_gens) == 1

    def test_comments_and_blank_lines(self):
        doc = parse_document("# header\nring x, y\n\nideal: x*y  # conic\n")
        assert len(doc.ideal_gens) == 1

    def test_unknown_section(self):
        with pytest.raises(ParseError):
            parse_document("ring x\nfoo: bar\n")

    def test_ideal_before_ring(self):
        with pytest.raises(ParseError):
            parse_document("ideal: x\n")


class TestCommands:
    def test_flat_limit_conic(self, tmp_path, capsys):
        path = tmp_path / "conic.txt"
        path.write_text(CONIC_DOC)
        code, out, _ = run(capsys, "flat-limit", str(path))
        assert code == 0
        payload = json.loads(out)
        assert payload["results"]["generators"] == ["y^2"]

    def test_check_flag(self, tmp_path, capsys):
        path = tmp_path / "conic.txt"
        path.write_text(CONIC_DOC)
        code, out, _ = run(capsys, "flat-limit", str(path), "--check")
        assert code == 0

    def test_chow_points_unstable_with_witness(self, tmp_path, capsys):
        path = tmp_path / "pts.txt"
        path.write_text(
            "ring x, y, z\npoints: (1,0,0); (0,1,0); (1,1,0); (0,0,1)\n"
        )
        code, out, _ = run(capsys, "chow-points", str(path))
        assert code == 0  # computed, even though the verdict is negative
        payload = json.loads(out)
        assert payload["results"]["verdict"] == "unstable"
        assert payload["results"]["witness_indices"] == [0, 1]

    def test_admissible_false_with_reason(self, tmp_path, capsys):
        path = tmp_path / "adm.txt"
        path.write_text("ring x, y, z\nflag: n=1 d=2 dimv=3\n")
        code, out, _ = run(capsys, "admissible", str(path))
        assert code == 0
        payload = json.loads(out)
        assert payload["results"]["admissible"] is False
        assert payload["results"]["reasons"]

    def test_gb_and_hilbert(self, tmp_path, capsys):
        path = tmp_path / "tc.txt"
        path.write_text(
            "ring x, y, z, w\n"
            "ideal: x*z - y^2; y*w - z^2; x*w - y*z\n"
        )
        code, out, _ = run(capsys, "hilbert", str(path))
        assert code == 0
        payload = json.loads(out)
        assert payload["results"]["dimension"] == 1
        assert payload["results"]["degree"] == 3
        assert payload["results"]["hilbert_polynomial"] == ["1", "3"]

    def test_flag_check_stable(self, tmp_path, capsys):
        path = tmp_path / "flag.txt"
        path.write_text(
            "ring x, y, v1\n"
            "ideal: x^2*y + x*y^2 + v1^3\n"
            "points: (1,0); (0,1); (1,-1)\n"
            "flag: n=1 a0=5\n"
            "beta: 1, -2\n"
            "mults: 2, 1\n"
        )
        code, out, _ = run(capsys, "flag-check", str(path))
        assert code == 0
        payload = json.loads(out)
        assert payload["results"]["verdict"] == "stable"
        assert payload["results"]["stages"][0]["weight"] == "16"

    def test_batch_aggregates(self, tmp_path, capsys):
        a = tmp_path / "a.txt"
        a.write_text(CONIC_DOC)
        b = tmp_path / "b.txt"
        b.write_text("ring x, y, z\ncommand: gb\nideal: x*y\n")
        code, out, _ = run(capsys, "batch", str(a), str(b))
        assert code == 0
        payload = json.loads(out)
        assert len(payload["runs"]) == 2


class TestExitCodes:
    def test_input_error_on_arity_mismatch(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("ring x, y, z\ncommand: flat-limit\nideal: x*y\nweights: 1, 1\n")
        code, _, err = run(capsys, "flat-limit", str(path))
        assert code == 1
        assert "error" in err

    def test_input_error_on_inhomogeneous_generator(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("ring x, y\ncommand: gb\nideal: x*y - y\n")
        code, _, _ = run(capsys, "gb", str(path))
        assert code == 1

    def test_input_error_on_parse_error(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("ring x\nideal: x + w\n")
        code, _, err = run(capsys, "gb", str(path))
        assert code == 1
        assert "undeclared" in err

    def test_missing_file(self, capsys):
        code, _, _ = run(capsys, "gb", "/nonexistent/nope.txt")
        assert code == 1

    def test_inconclusive_flag_validate(self, tmp_path, capsys):
        # no points certificate: the stability leg is inconclusive
        path = tmp_path / "flag.txt"
        path.write_text(
            "ring x, y, v1\n"
            "ideal: x^2*y + x*y^2 + v1^3\n"
            "flag: n=1\n"
        )
        code, out, _ = run(capsys, "flag-validate", str(path))
        assert code == 2


class TestDeterminism:
    def test_byte_identical_output(self, tmp_path, capsys):
        path = tmp_path / "conic.txt"
        path.write_text(CONIC_DOC)
        _, out1, _ = run(capsys, "flat-limit", str(path))
        _, out2, _ = run(capsys, "flat-limit", str(path))
        assert out1 == out2

    def test_text_output_mode(self, tmp_path, capsys):
        path = tmp_path / "conic.txt"
        path.write_text(CONIC_DOC)
        code, out, _ = run(capsys, "flat-limit", str(path), "--output", "text")
        assert code == 0
        assert "results.generators = y^2" in out
