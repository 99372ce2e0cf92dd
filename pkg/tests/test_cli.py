import json
import subprocess
import sys
import xml.etree.ElementTree as ET
from importlib import resources

import jsonschema
import pytest

from charlab.cli import main
from charlab.render import lozenges, nth_pp, render_svg


def schema(name):
    return json.loads(resources.files("charlab").joinpath(f"schemas/{name}.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


class TestEval:
    def test_principal(self, capsys):
        code, doc, _ = run(capsys, "eval", "--family", "gl", "--shape", "2,2", "--vars", "4", "--principal")
        assert code == 0 and doc["value"] == "20" and doc["shape"] == "2,2,0,0"
        jsonschema.validate(doc, schema("eval"))

    def test_at_point(self, capsys):
        code, doc, _ = run(capsys, "eval", "--family", "so-odd", "--shape", "0,0", "--vars", "2", "--at", "2,3")
        assert code == 0 and doc["value"] == "1"
        jsonschema.validate(doc, schema("eval"))

    def test_rational_value(self, capsys):
        code, doc, _ = run(capsys, "eval", "--family", "so-odd", "--shape", "1", "--vars", "1", "--at", "2")
        assert doc["value"] == "7/2"

    def test_half_shape_at_square(self, capsys):
        code, doc, _ = run(capsys, "eval", "--family", "so-odd", "--shape", "1/2", "--vars", "1", "--at", "4")
        assert code == 0 and doc["value"] == "5/2"

    def test_negate(self, capsys):
        code, doc, _ = run(capsys, "eval", "--family", "so-odd", "--shape", "1,1", "--vars", "2", "--principal", "--negate")
        assert doc["value"] == "2" and doc["specialization"] == "minus-ones"

    def test_o_even_caveat(self, capsys):
        code, doc, err = run(capsys, "eval", "--family", "o-even", "--shape", "0,0", "--vars", "2")
        assert code == 2 and doc is None and "strictly positive" in err

    def test_singular(self, capsys):
        code, _, err = run(capsys, "eval", "--family", "gl", "--shape", "1,0", "--vars", "2", "--at", "2,2")
        assert code == 3 and "--principal" in err

    @pytest.mark.parametrize("argv", [
        ["eval", "--family", "gl", "--shape", "1,1,1", "--vars", "2"],
        ["eval", "--family", "gl", "--shape", "1,2", "--vars", "2"],
        ["eval", "--family", "gl", "--shape", "1", "--vars", "2", "--at", "1"],
        ["eval", "--family", "gl", "--shape", "1", "--vars", "1", "--at", "1/0"],
        ["eval", "--family", "so-odd", "--shape", "1/2", "--vars", "1", "--at", "2"],
        ["eval", "--family", "sp", "--shape", "1", "--vars", "1", "--at", "2", "--negate"],
    ])
    def test_usage_errors(self, capsys, argv):
        assert main(argv) == 2

    def test_unknown_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["eval", "--family", "gl", "--shape", "1", "--vars", "1", "--bogus"])
        assert exc.value.code == 2


class TestVerify:
    def test_thm1(self, capsys):
        code, doc, _ = run(capsys, "verify", "--identity", "thm1", "--m", "1", "--n", "1", "--mode", "symbolic")
        assert code == 0 and doc["verdict"] == "equal"
        jsonschema.validate(doc, schema("verification_report"))

    def test_thm1_trivial(self, capsys):
        code, doc, _ = run(capsys, "verify", "--identity", "thm1", "--m", "0", "--n", "3", "--mode", "symbolic")
        assert code == 0

    def test_thm2_random(self, capsys):
        code, doc, _ = run(capsys, "verify", "--identity", "thm2", "--m", "1", "--n", "2", "--mode", "random",
                           "--trials", "10", "--seed", "7")
        assert code == 0 and doc["trials"] == "10" and doc["seed"] == "7"

    def test_uniform_half(self, capsys):
        code, doc, _ = run(capsys, "verify", "--identity", "uniform65", "--m", "3/2", "--n", "2")
        assert code == 0 and doc["params"]["m"] == "3/2"

    def test_half_m_rejected_for_thm(self, capsys):
        assert main(["verify", "--identity", "thm1", "--m", "1/2", "--n", "1"]) == 2

    def test_counterexample_exit(self, capsys, monkeypatch):
        from charlab import identities

        real = identities.side_at
        calls = []

        def skewed(side, n, x):
            calls.append(1)
            return real(side, n, x) + len(calls) % 2

        monkeypatch.setattr(identities, "side_at", skewed)
        code, doc, _ = run(capsys, "verify", "--identity", "thm1", "--m", "1", "--n", "1", "--mode", "random", "--trials", "2")
        assert code == 1 and doc["verdict"] == "counterexample"
        jsonschema.validate(doc, schema("verification_report"))


class TestLemma:
    def test_basis(self, capsys):
        code, doc, _ = run(capsys, "lemma", "--which", "1", "--N", "1", "--mode", "symbolic")
        assert code == 0 and doc["identity"] == "lemma1"

    def test_lemma3_empty(self, capsys):
        assert run(capsys, "lemma", "--which", "3", "--N", "0", "--mode", "symbolic")[0] == 0

    def test_random(self, capsys):
        code, doc, _ = run(capsys, "lemma", "--which", "2", "--N", "3", "--mode", "random", "--trials", "25", "--seed", "1")
        assert code == 0 and doc["verdict"] == "equal"

    def test_guard_is_usage(self, capsys):
        assert run(capsys, "lemma", "--which", "1", "--N", "5", "--mode", "symbolic")[0] == 2


class TestCount:
    def test_pp(self, capsys):
        code, doc, _ = run(capsys, "count", "--family", "pp", "--m", "1", "--n", "2", "--methods", "bruteforce,character")
        assert code == 0 and doc["methods"] == {"bruteforce": "20", "character": "20"}
        jsonschema.validate(doc, schema("count_report"))

    def test_tcpp(self, capsys):
        code, doc, _ = run(capsys, "count", "--family", "tcpp", "--m", "1", "--n", "2", "--methods", "bruteforce,product")
        assert doc["methods"] == {"bruteforce": "2", "product": "2"}

    def test_spp_star(self, capsys):
        code, doc, _ = run(capsys, "count", "--family", "spp-star", "--m", "0", "--n", "1", "--methods", "product")
        assert code == 0 and doc["methods"] == {"product": "2"}

    def test_spp_star_default_methods(self, capsys):
        code, doc, _ = run(capsys, "count", "--family", "spp-star", "--m", "1", "--n", "2")
        assert doc["methods"] == {"character": "6", "product": "6"}

    def test_spp_star_bruteforce_is_usage(self, capsys):
        assert run(capsys, "count", "--family", "spp-star", "--m", "1", "--n", "2", "--methods", "bruteforce")[0] == 2

    def test_pp_rectangular_base(self, capsys):
        code, doc, _ = run(capsys, "count", "--family", "pp", "--m", "1", "--n", "2", "--b", "1", "--c", "3")
        assert doc["params"] == {"height": "2", "b": "1", "c": "3"} and doc["methods"]["product"] == "10"

    def test_bad_method(self, capsys):
        assert run(capsys, "count", "--family", "pp", "--m", "1", "--n", "1", "--methods", "magic")[0] == 2

    def test_inconsistent_exit(self, capsys, monkeypatch):
        from charlab import combinat

        monkeypatch.setattr(combinat, "pp_product", lambda a, b, c: 0)
        code, doc, _ = run(capsys, "count", "--family", "pp", "--m", "1", "--n", "2")
        assert code == 1 and doc["consistent"] is False


class TestRender:
    def test_trivial(self, capsys, tmp_path):
        out = tmp_path / "t.svg"
        code, doc, _ = run(capsys, "render", "--family", "pp", "--m", "0", "--n", "1", "--index", "0", "--out", str(out))
        assert code == 0 and doc["matrix"] == [["0"]]
        ET.fromstring(out.read_bytes())
        jsonschema.validate(doc, schema("render"))

    def test_floor_tiling(self):
        faces = lozenges(nth_pp(2, 2, 2, 0), 2)
        tops = [pts for kind, pts in faces if kind == "top"]
        assert len(tops) == 4 and len(faces) == 4 + 4 + 4
        # every top face of the empty stack sits on the floor: lowest vertex at v = -(x+y)/2
        assert min(p[1] for pts in tops for p in pts) == -2

    def test_face_counts(self):
        pp = ((3, 2, 1), (2, 2, 0))
        kinds = [k for k, _ in lozenges(pp, 4)]
        assert kinds.count("top") == 6 and kinds.count("x") == 12 and kinds.count("y") == 8

    def test_index_out_of_range(self, capsys, tmp_path):
        code, _, err = run(capsys, "render", "--family", "pp", "--m", "0", "--n", "1", "--index", "3", "--out", str(tmp_path / "x.svg"))
        assert code == 2 and "fewer than" in err

    def test_deterministic_and_well_formed(self):
        pp = nth_pp(4, 3, 3, 57)
        a, b = render_svg(pp, 4), render_svg(pp, 4)
        assert a == b
        root = ET.fromstring(a)
        assert root.tag.endswith("svg")


class TestProcess:
    def test_module_entry_and_streams(self):
        p = subprocess.run([sys.executable, "-m", "charlab", "-v", "count", "--family", "spp", "--m", "1", "--n", "2"],
                           capture_output=True, text=True, check=True)
        assert json.loads(p.stdout)["methods"]["bruteforce"] == "10"
        assert "charlab:" in p.stderr

    def test_byte_identical(self):
        cmd = [sys.executable, "-m", "charlab", "verify", "--identity", "thm3", "--m", "1", "--n", "2",
               "--mode", "random", "--trials", "5", "--seed", "11"]
        a = subprocess.run(cmd, capture_output=True, check=True).stdout
        b = subprocess.run(cmd, capture_output=True, check=True).stdout
        assert a == b
