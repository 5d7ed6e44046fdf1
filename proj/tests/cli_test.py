"""End-to-end checks of the isocat CLI: exit codes, JSON schemas and emitted files."""

import json
import os
import pathlib
import subprocess
import sys
import tempfile
import unittest

import jsonschema

ISOCAT = os.environ["ISOCAT"]
SCHEMAS = pathlib.Path(os.environ["SCHEMAS"])
DATA = pathlib.Path(os.environ["DATA"])


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def run(*args):
    proc = subprocess.run([ISOCAT, *args], capture_output=True, text=True, timeout=300)
    return proc.returncode, proc.stdout, proc.stderr


def run_json(*args):
    code, out, err = run("--json", *args)
    doc = json.loads(out)
    jsonschema.validate(doc, schema(doc["command"]))
    assert doc["exit_code"] == code, (doc["exit_code"], code)
    return code, doc


class Presets(unittest.TestCase):
    def test_list(self):
        code, doc = run_json("presets", "list")
        self.assertEqual(code, 0)
        names = {p["name"] for p in doc["presets"]}
        self.assertTrue({"sp3", "f2d6-sylow2", "quaternion-f2d2", "semireal-f2d4"} <= names)

    def test_export_matches_shipped_files(self):
        with tempfile.TemporaryDirectory() as tmp:
            code, _ = run_json("presets", "export", tmp)
            self.assertEqual(code, 0)
            for f in sorted((DATA / "presets").glob("*.toml")):
                self.assertEqual((pathlib.Path(tmp) / f.name).read_text(), f.read_text(), f.name)

    def test_show_unknown(self):
        code, _, _ = run("presets", "show", "nope")
        self.assertEqual(code, 2)


class Validate(unittest.TestCase):
    def test_sp3_preset_and_file(self):
        for args in (["--preset", "sp3"], ["--datum", str(DATA / "presets" / "sp3.toml")]):
            code, doc = run_json("validate", *args)
            self.assertEqual(code, 0)
            self.assertTrue(doc["ok"])
            self.assertEqual(doc["group_order"], 216)

    def test_degenerate_sigma(self):
        text = (DATA / "presets" / "sp3.toml").read_text()
        start = text.index("matrix = ")
        end = text.index("\n", start)
        text = text[:start] + "matrix = [ [ '0', '0' ], [ '0', '0' ] ]" + text[end:]
        with tempfile.TemporaryDirectory() as tmp:
            path = pathlib.Path(tmp) / "bad.toml"
            path.write_text(text)
            code, doc = run_json("validate", "--datum", str(path))
        self.assertEqual(code, 1)
        failed = {c["id"] for c in doc["conditions"] if not c["passed"]}
        self.assertIn("galois.nondegenerate", failed)

    def test_missing_file(self):
        code, doc = run_json("validate", "--datum", "/nonexistent/datum.toml")
        self.assertEqual(code, 2)
        self.assertEqual(doc["error"]["kind"], "usage")

    def test_malformed_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = pathlib.Path(tmp) / "broken.toml"
            path.write_text("[module]\norders = [2, 2\n")
            code, doc = run_json("validate", "--datum", str(path))
        self.assertEqual(code, 2)

    def test_usage_errors(self):
        self.assertEqual(run("validate")[0], 2)
        self.assertEqual(run("frobnicate")[0], 2)
        self.assertEqual(run("validate", "--preset", "sp3", "--no-such-flag")[0], 2)


class Pair(unittest.TestCase):
    def test_sp3_emits_groups_and_certificate(self):
        with tempfile.TemporaryDirectory() as tmp:
            code, doc = run_json("pair", "--preset", "sp3", "--emit", tmp)
            self.assertEqual(code, 0)
            self.assertEqual(doc["members"]["semidirect"]["order"], 216)
            self.assertEqual(doc["members"]["crossed"]["order"], 216)
            cert = json.loads((pathlib.Path(tmp) / "certificate.json").read_text())
            jsonschema.validate(cert, schema("certificate"))
            code, fp = run_json("fingerprint", str(pathlib.Path(tmp) / "semidirect.toml"),
                                str(pathlib.Path(tmp) / "crossed.toml"))
            self.assertEqual(code, 0)
            self.assertEqual(fp["a"]["fingerprint"]["order"], 216)

    def test_deterministic(self):
        _, a = run_json("pair", "--preset", "q4-omega")
        _, b = run_json("pair", "--preset", "q4-omega")
        a.pop("seconds")
        b.pop("seconds")
        self.assertEqual(a, b)

    def test_restrict_to_non_subgroup(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = pathlib.Path(tmp) / "half.toml"
            path.write_text("elements = [ [[0, 1], [1, 0]] ]\n")
            code, doc = run_json("pair", "--preset", "q2-ps", "--restrict-st", str(path))
            self.assertEqual(code, 1)
            self.assertIn("subgroup", doc["error"]["message"])
            path.write_text("elements = [ [[1, 0], [0, 1]], [[0, 1], [1, 0]] ]\n")
            code, doc = run_json("pair", "--preset", "q2-ps", "--restrict-st", str(path))
            self.assertEqual(code, 0)
            self.assertEqual(doc["st_order"], 2)

    def test_named_restriction(self):
        code, doc = run_json("pair", "--preset", "q4-ps", "--restrict-st", "omega")
        self.assertEqual(code, 0)
        self.assertEqual(doc["members"]["crossed"]["order"], 576)


class Weil(unittest.TestCase):
    def test_sp3_matrices(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = pathlib.Path(tmp) / "m.json"
            code, doc = run_json("weil", "--preset", "sp3", "--emit", str(path))
            self.assertEqual(code, 0)
            m = doc["matrices"]
            self.assertEqual((m["count"], m["dimension"]), (24, 3))
            self.assertTrue(m["projective"] and m["solution_dims_one"])
            self.assertEqual(m["pairs_checked"], 576)
            emitted = json.loads(path.read_text())
            jsonschema.validate(emitted, schema("weil-emit"))
            self.assertEqual(len(emitted["matrices"]), 24)

    def test_division_algebra(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = pathlib.Path(tmp) / "q.json"
            code, doc = run_json("weil", "--preset", "quaternion-f2d2", "--emit", str(path))
            self.assertEqual(code, 0)
            self.assertFalse(doc["matrices"]["available"])
            self.assertIn("matrices unavailable over this field", doc["matrices"]["reason"])
            self.assertIsNone(doc["action"]["violation"])
            emitted = json.loads(path.read_text())
            jsonschema.validate(emitted, schema("weil-emit"))
            self.assertEqual(len(emitted["action_table"]), 6)

    def test_seeded_rational_check(self):
        code, doc = run_json("--seed", "5", "weil", "--preset", "semireal-f2d2", "--rational")
        self.assertEqual(code, 0)
        self.assertTrue(doc["action"]["exhaustive"])

    def test_unknown_preset(self):
        code, doc = run_json("weil", "--preset", "nope")
        self.assertEqual(code, 2)
        self.assertIn("unknown preset", doc["error"]["message"])


class TextMode(unittest.TestCase):
    def test_human_output(self):
        code, out, _ = run("validate", "--preset", "sp3")
        self.assertEqual(code, 0)
        self.assertIn("valid torsor datum", out)


if __name__ == "__main__":
    sys.exit(0 if unittest.main(exit=False, verbosity=2).result.wasSuccessful() else 1)
