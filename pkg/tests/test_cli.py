import sys
import io
import json
import pathlib
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from unittest import TestCase, mock

sys.path.append(str(pathlib.Path(__file__).resolve().parents[1]))

import main
from config.settings import Settings
from domain.status import CommandStatus, exit_code
from infrastructure.parser import parse_file

SAMPLES = pathlib.Path(__file__).resolve().parents[1] / "samples"


def _sample(name: str) -> str:
    return str(SAMPLES / f"{name}.alg")


class CliTestCase(TestCase):
    settings = Settings()

    def run_cli(self, *argv: str):
        """Exécute main() avec des Settings par défaut ; renvoie (code, stdout)."""
        out = io.StringIO()
        with mock.patch.object(main, "load_settings", return_value=self.settings), \
                redirect_stdout(out), redirect_stderr(io.StringIO()):
            code = main.main(list(argv))
        return code, out.getvalue()

    def run_json(self, *argv: str):
        code, out = self.run_cli(*argv, "--json", "-")
        return code, json.loads(out)


class InfoCommandTest(CliTestCase):
    def test_text_report(self):
        code, out = self.run_cli("info", _sample("swap3"))
        self.assertEqual(code, 0)
        self.assertIn("(1 2)(3)", out)
        self.assertIn("dimension 10", out)

    def test_json_on_stdout_replaces_text(self):
        code, payload = self.run_json("info", _sample("swap3"))
        self.assertEqual(code, 0)
        self.assertEqual(payload["status"], "ok")
        self.assertEqual(payload["command"], "info")
        self.assertEqual(payload["algebra"]["dim"], 10)
        self.assertEqual(payload["radical_dim"], 7)
        self.assertEqual(payload["socle_dim"], 3)
        self.assertEqual(payload["nakayama_permutation"]["cycles"], "(1 2)(3)")

    def test_json_file_keeps_text(self):
        with tempfile.TemporaryDirectory() as tmp:
            target = pathlib.Path(tmp) / "info.json"
            code, out = self.run_cli("info", _sample("ka2"), "--json", str(target))
            self.assertEqual(code, 0)
            self.assertIn("Algèbre ka2", out)
            payload = json.loads(target.read_text(encoding="utf-8"))
            self.assertFalse(payload["self_injective"])
            self.assertIsNone(payload["nakayama_permutation"])


class InputErrorsTest(CliTestCase):
    def test_unreadable_document(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = pathlib.Path(tmp) / "faux.alg"
            path.write_text("vertices: 1 2\narrow a: 1 -> 4\n", encoding="utf-8")
            code, payload = self.run_json("info", str(path))
        self.assertEqual(code, 2)
        self.assertEqual(payload["status"], "usage_error")
        self.assertIsNone(payload["algebra"])
        self.assertIn("ligne 2", payload["message"])

    def test_missing_file(self):
        code, out = self.run_cli("info", _sample("inexistant"))
        self.assertEqual(code, 2)
        self.assertTrue(out.startswith("[usage_error]"))

    def test_threads_must_be_positive(self):
        code, payload = self.run_json("slices", _sample("swap3"), "--threads", "0")
        self.assertEqual(code, 2)
        self.assertIn("--threads", payload["message"])

    def test_argparse_errors_exit_with_usage_code(self):
        code, _ = self.run_cli()
        self.assertEqual(code, 2)
        code, _ = self.run_cli("info")
        self.assertEqual(code, 2)

    def test_settings_failure(self):
        out = io.StringIO()
        with mock.patch.object(main, "load_settings", side_effect=RuntimeError("ALGEBRA_THREADS doit être ≥ 1")), \
                redirect_stdout(out), redirect_stderr(io.StringIO()):
            code = main.main(["info", _sample("swap3"), "--json", "-"])
        self.assertEqual(code, 2)
        payload = json.loads(out.getvalue())
        self.assertEqual(payload["status"], "usage_error")
        self.assertIsNone(payload["algebra"])


class InternalErrorTest(CliTestCase):
    def test_unexpected_error_exits_with_code_four(self):
        with mock.patch.object(main, "is_self_injective", side_effect=ZeroDivisionError("division par zéro")):
            code, payload = self.run_json("info", _sample("swap3"))
        self.assertEqual(code, 4)
        self.assertEqual(payload["status"], "internal_error")
        self.assertIn("division par zéro", payload["message"])

    def test_exit_codes_cover_every_status(self):
        self.assertEqual([exit_code(s) for s in CommandStatus], [0, 1, 2, 3, 4])


class ArQuiverCommandTest(CliTestCase):
    def test_swap_algebra_has_twelve_vertices(self):
        code, payload = self.run_json("ar-quiver", _sample("swap3"))
        self.assertEqual(code, 0)
        self.assertEqual(len(payload["ar_quiver"]["vertices"]), 12)
        self.assertEqual(payload["projectives"], 3)
        self.assertEqual(payload["stable_vertices"], 9)
        self.assertEqual(sorted(len(o) for o in payload["tau_orbits"]), [3, 6])

    def test_dot_export(self):
        with tempfile.TemporaryDirectory() as tmp:
            target = pathlib.Path(tmp) / "gamma.dot"
            code, _ = self.run_cli("ar-quiver", _sample("dual_numbers"), "--dot", str(target))
            self.assertEqual(code, 0)
            self.assertIn("digraph", target.read_text(encoding="utf-8"))


class LimitsTest(CliTestCase):
    settings = Settings(max_modules=5)

    def test_knitting_limit_gives_partial_quiver(self):
        code, payload = self.run_json("ar-quiver", _sample("swap3"))
        self.assertEqual(code, 3)
        self.assertEqual(payload["status"], "limit_exceeded")
        self.assertFalse(payload["ar_quiver"]["complete"])
        self.assertEqual(payload["algebra"]["dim"], 10)


class SliceCommandsTest(CliTestCase):
    def test_hereditary_only_lists_two_slices(self):
        code, payload = self.run_json("slices", _sample("swap3"), "--hereditary-only")
        self.assertEqual(code, 0)
        self.assertEqual(len(payload["slices"]), 2)
        self.assertFalse(payload["truncated"])

    def test_named_slice_from_document(self):
        code, payload = self.run_json("check-slice", _sample("swap3"), "--modules", "tau_delta_p3")
        self.assertEqual(code, 0)
        self.assertTrue(payload["slice"]["hereditary"])
        self.assertTrue(payload["slice"]["right_regular"])

    def test_slice_given_by_selectors(self):
        code, payload = self.run_json("check-slice", _sample("swap3"), "--modules", "rad P1, S3, P2/S1")
        self.assertEqual(code, 0)
        self.assertFalse(payload["slice"]["hereditary"])

    def test_single_vertex_is_negative(self):
        code, payload = self.run_json("check-slice", _sample("swap3"), "--modules", "S3")
        self.assertEqual(code, 1)
        self.assertEqual(payload["status"], "negative")
        self.assertFalse(payload["slice"]["is_stable_slice"])

    def test_unknown_selector_is_usage_error(self):
        code, _ = self.run_json("check-slice", _sample("swap3"), "--modules", "X9")
        self.assertEqual(code, 2)


class BuildCommandTest(CliTestCase):
    def test_trivial_extension_written_and_reparsed(self):
        with tempfile.TemporaryDirectory() as tmp:
            target = pathlib.Path(tmp) / "t_ka2.alg"
            code, out = self.run_cli("build", "trivial-extension", _sample("ka2"), "-o", str(target))
            self.assertEqual(code, 0)
            self.assertIn("name T(ka2)", out)
            rebuilt = parse_file(target).build()
            self.assertEqual(rebuilt.dim, 6)
            # le document écrit repasse par `info`
            code, payload = self.run_json("info", str(target))
            self.assertEqual(code, 0)
            self.assertTrue(payload["self_injective"])

    def test_r_fold(self):
        code, payload = self.run_json("build", "trivial-extension", _sample("ka2"), "-r", "3")
        self.assertEqual(code, 0)
        self.assertEqual(payload["result"]["dim"], 18)
        self.assertEqual(payload["r"], 3)

    def test_twisted(self):
        code, payload = self.run_json("build", "trivial-extension", _sample("kq_1_3_2"), "--twist", "swap")
        self.assertEqual(code, 0)
        self.assertEqual(payload["result"]["dim"], 10)
        self.assertEqual(payload["twist"], "swap")

    def test_invalid_options(self):
        code, _ = self.run_json("build", "trivial-extension", _sample("ka2"), "-r", "0")
        self.assertEqual(code, 2)
        code, payload = self.run_json("build", "trivial-extension", _sample("ka2"), "--twist", "rotation")
        self.assertEqual(code, 2)
        self.assertIn("rotation", payload["message"])


class SocleCompareCommandTest(CliTestCase):
    def test_equivalent(self):
        code, payload = self.run_json("socle-compare", _sample("swap3"), _sample("swap3"))
        self.assertEqual(code, 0)
        self.assertEqual(payload["socle_equivalent"], "yes")
        self.assertIsNotNone(payload["witness"])

    def test_not_equivalent(self):
        code, payload = self.run_json("socle-compare", _sample("swap3"), _sample("nakayama_3_4"))
        self.assertEqual(code, 1)
        self.assertEqual(payload["socle_equivalent"], "no")
        self.assertIsNotNone(payload["invariant"])
        self.assertEqual(payload["other"]["dim"], 12)


class CheckTheoremCommandTest(CliTestCase):
    def test_named_slice(self):
        code, payload = self.run_json("check-theorem", _sample("swap3"), "--slice", "tau_delta_p3")
        self.assertEqual(code, 0)
        self.assertEqual(payload["socle_equivalent"], "yes")
        self.assertIsNone(payload["failed_stage"])
        self.assertEqual(payload["b"]["dim"], 5)

    def test_default_slice_on_dual_numbers(self):
        code, payload = self.run_json("check-theorem", _sample("dual_numbers"))
        self.assertEqual(code, 0)
        self.assertEqual(payload["slice"], ["S1"])
        self.assertEqual(payload["b"]["dim"], 1)

    def test_non_self_injective_algebra_is_negative(self):
        code, payload = self.run_json("check-theorem", _sample("ka2"))
        self.assertEqual(code, 1)
        self.assertEqual(payload["status"], "negative")
