"""End-to-end checks of the carleson-lab command line: schemas, exit codes, determinism."""

import json
import os
import subprocess
import sys
import tempfile
import unittest

import jsonschema

CLI, SCHEMAS, DATA = sys.argv[1:4]
del sys.argv[1:4]


def schema(name):
    with open(os.path.join(SCHEMAS, name + ".schema.json")) as f:
        return json.load(f)


def data(name):
    return os.path.join(DATA, name)


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True, timeout=600)


class Reports(unittest.TestCase):
    def report(self, kind, *args):
        result = run(*args)
        self.assertEqual(result.returncode, 0, result.stderr)
        doc = json.loads(result.stdout)
        jsonschema.validate(doc, schema(kind))
        return doc

    def test_measure_files_match_schema(self):
        for name in sorted(os.listdir(DATA)):
            with open(data(name)) as f:
                jsonschema.validate(json.load(f), schema("measure"))

    def test_carleson(self):
        doc = self.report("carleson", "carleson", "--measure", data("lebesgue.json"))
        self.assertTrue(doc["is_carleson"])
        self.assertAlmostEqual(doc["sup_ratio"], 1.0, places=5)
        doc = self.report("carleson", "carleson", "--measure", data("inverse_sqrt.json"))
        self.assertTrue(doc["is_carleson"])
        doc = self.report("carleson", "carleson", "--measure", "power:p=-0.5")
        self.assertFalse(doc["is_carleson"])
        self.assertEqual(doc["sup_ratio"], "inf")
        doc = self.report("carleson", "carleson", "--measure", "lebesgue-halfplane")
        self.assertTrue(doc["is_carleson"])

    def test_moments(self):
        doc = self.report("moments", "moments", "--measure", data("linear.json"), "--n-max", "8")
        for n, s in enumerate(doc["moments"]):
            self.assertAlmostEqual(s, 1.0 / ((2 * n + 1) * (2 * n + 2)), places=14)

    def test_fejer(self):
        doc = self.report("fejer", "fejer", "--measure", data("lebesgue.json"), "--n-list", "2")
        self.assertEqual(len(doc["rows"]), 1)
        self.assertAlmostEqual(doc["rows"][0]["a2_norm_sq"], 3.5343, places=4)
        self.assertAlmostEqual(doc["rows"][0]["h1_norm"], 1.0, places=12)

    def test_sumnorm(self):
        doc = self.report("sumnorm", "sumnorm", "--measure", "atom:r=0.5", "--n-max", "4", "--grid", "32")
        norm = doc["norm"]
        self.assertTrue(norm["converged"])
        self.assertLessEqual(norm["lower"], norm["upper"])
        self.assertLessEqual(norm["gap"], 1e-5 * norm["upper"])

    def test_corpus_commands(self):
        common = ["--n-max", "8", "--grid", "32", "--count", "3"]
        for command in ("bbb", "adapted", "embedding"):
            doc = self.report("corpus", command, "--measure", data("lebesgue.json"), *common)
            self.assertEqual(doc["kind"], command)
            self.assertEqual(len(doc["ratios"]), 3)
        doc = self.report("corpus", "adapted", "--measure", "power:p=-0.5", "--eps-list", "0.1,0.01", *common)
        self.assertEqual([run["eps"] for run in doc["runs"]], [0.1, 0.01])

    def test_wsigma(self):
        doc = self.report("wsigma", "wsigma", "--measure", data("atom.json"), "--grid", "64")
        self.assertEqual(doc["samples"]["m"], 64)

    def test_halfplane(self):
        doc = self.report("halfplane", "halfplane", "--measure", data("halfplane_lebesgue.json"))
        self.assertAlmostEqual(doc["w_pi_sup"], 1.5707963268, places=8)
        self.assertLessEqual(doc["truncated_check"]["check"]["max_error"], 5e-3)
        doc = self.report("halfplane", "halfplane", "--measure", data("halfplane_atom.json"))
        self.assertAlmostEqual(doc["w_pi_sup"], 0.5, places=8)

    def test_garnett(self):
        doc = self.report("garnett", "garnett", "--measure", data("line_lebesgue.json"))
        self.assertAlmostEqual(doc["poisson_sup"], 3.14159265, places=6)
        doc = self.report("garnett", "garnett", "--measure", data("line_inverse_sqrt.json"))
        self.assertEqual(doc["poisson_sup"], "inf")
        self.assertEqual(doc["box_sup"], "inf")

    def test_csv_and_plot(self):
        with tempfile.TemporaryDirectory() as tmp:
            plot = os.path.join(tmp, "plot.dat")
            result = run("fejer", "--measure", "lebesgue-disk", "--n-list", "2,4", "--format", "csv", "--plot", plot)
            self.assertEqual(result.returncode, 0, result.stderr)
            lines = result.stdout.splitlines()
            self.assertEqual(lines[0], "n,h1_norm,a2_norm_sq,partial_moment_sum")
            self.assertEqual(len(lines), 3)
            with open(plot) as f:
                self.assertEqual(len(f.read().splitlines()), 2)


class Determinism(unittest.TestCase):
    def test_same_seed_same_bytes(self):
        with tempfile.TemporaryDirectory() as tmp:
            outputs = []
            for i, seed in enumerate(("7", "7", "8")):
                path = os.path.join(tmp, f"out{i}.json")
                result = run("adapted", "--measure", "lebesgue-disk", "--n-max", "8", "--grid", "32", "--count", "4",
                             "--seed", seed, "--out", path)
                self.assertEqual(result.returncode, 0, result.stderr)
                with open(path, "rb") as f:
                    outputs.append(f.read())
            self.assertEqual(outputs[0], outputs[1])
            self.assertNotEqual(outputs[0], outputs[2])

    def test_thread_count_does_not_change_output(self):
        args = ["bbb", "--measure", "lebesgue-disk", "--n-max", "8", "--grid", "32", "--count", "6"]
        outputs = []
        for threads in ("1", "3"):
            env = dict(os.environ, CARLESON_LAB_THREADS=threads)
            result = subprocess.run([CLI, *args], capture_output=True, env=env, timeout=600)
            self.assertEqual(result.returncode, 0)
            outputs.append(result.stdout)
        self.assertEqual(outputs[0], outputs[1])


class ExitCodes(unittest.TestCase):
    def test_malformed_file_reports_the_line(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "bad.json")
            with open(path, "w") as f:
                f.write('{\n  "atoms": [\n    {"r": 0.5,}\n  ]\n}\n')
            result = run("carleson", "--measure", path)
            self.assertEqual(result.returncode, 2)
            self.assertIn("line 3", result.stderr)

    def test_invalid_fields_report_the_field(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "bad.json")
            with open(path, "w") as f:
                json.dump({"pieces": [{"a": 0, "b": 1, "p": 1, "slope": 2}]}, f)
            result = run("moments", "--measure", path)
            self.assertEqual(result.returncode, 2)
            self.assertIn("pieces[0].slope", result.stderr)
            with open(path, "w") as f:
                json.dump({"pieces": [{"a": 0, "b": 1, "p": -1.5}]}, f)
            self.assertEqual(run("moments", "--measure", path).returncode, 2)

    def test_invalid_options(self):
        self.assertEqual(run("sumnorm", "--n-max", "8", "--grid", "16").returncode, 2)
        self.assertEqual(run("sumnorm", "--tol", "0").returncode, 2)
        self.assertEqual(run("carleson", "--measure", "atom:r=1.5").returncode, 2)
        self.assertEqual(run("carleson", "--measure", "atom:radius=0.5").returncode, 2)
        self.assertEqual(run("carleson", "--measure", "/nonexistent.json").returncode, 2)
        self.assertEqual(run("halfplane", "--eps", "20", "--R", "10").returncode, 2)
        self.assertEqual(run("bbb", "--eps-list", "1.5", "--n-max", "4", "--grid", "16").returncode, 2)
        self.assertEqual(run("frobnicate").returncode, 2)

    def test_non_convergence(self):
        result = run("sumnorm", "--measure", "lebesgue-disk", "--n-max", "8", "--grid", "64",
                     "--tol", "1e-12", "--max-iters", "10")
        self.assertEqual(result.returncode, 3)
        doc = json.loads(result.stdout)
        jsonschema.validate(doc, schema("sumnorm"))
        self.assertFalse(doc["norm"]["converged"])


if __name__ == "__main__":
    unittest.main(verbosity=2)
