from pathlib import Path
import runpy

import pytest
from pytest import CaptureFixture
from pytest_mock import MockerFixture

from tests.conftest import runner_mod
import tfac.__main__ as tfac_main_module

Runner = runner_mod.Runner


class TestTfacMain:
    def test_returns_zero(self, tmp_path: Path, capsys: CaptureFixture[str]):
        result = tfac_main_module.main(
            ["mesh-info", "--nx", "2", "--output", str(tmp_path)]
        )

        assert result == 0
        assert "triangles 8" in capsys.readouterr().out

    def test_invalid_configuration(self, capsys: CaptureFixture[str]):
        result = tfac_main_module.main(["kernels", "--alpha", "1.5"])

        assert result == 2
        assert "invalid configuration: alpha" in capsys.readouterr().err

    def test_missing_config_file(self, tmp_path: Path, capsys: CaptureFixture[str]):
        result = tfac_main_module.main(["--config", str(tmp_path / "absent.txt")])

        assert result == 2
        assert "cannot read configuration" in capsys.readouterr().err

    def test_runtime_domain_error(self, tmp_path: Path, capsys: CaptureFixture[str]):
        result = tfac_main_module.main(
            ["mesh-info", "--example", "6.3", "--nx", "5", "--output", str(tmp_path)]
        )

        assert result == 2
        assert "kink" in capsys.readouterr().err

    def test_failure_status(self, tmp_path: Path, mocker: MockerFixture):
        execute = mocker.patch.object(Runner, "execute", return_value=1)

        assert tfac_main_module.main(["kernels", "--alpha", "0.5"]) == 1
        execute.assert_called_once()

    def test_reads_process_arguments(self, mocker: MockerFixture):
        mocker.patch("sys.argv", ["tfac", "kernels", "--alpha", "0.5"])
        execute = mocker.patch.object(Runner, "execute", return_value=0)

        assert tfac_main_module.main() == 0
        assert execute.call_args.args[0].alpha == 0.5

    @pytest.mark.filterwarnings("ignore::RuntimeWarning")
    def test_module_run_exits_with_status(self, mocker: MockerFixture):
        mocker.patch("sys.argv", ["tfac", "kernels", "--alpha", "0.5"])
        mocker.patch.object(Runner, "execute", return_value=1)

        with pytest.raises(SystemExit) as info:
            runpy.run_module("tfac.__main__", run_name="__main__")

        assert info.value.code == 1
