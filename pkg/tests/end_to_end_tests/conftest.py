import json

from pytest import fixture

from specsetlab.cli import main

TEST_CONFIG = "tests/data/config/test_config.yaml"


@fixture
def run_cli(capsys):
    """Run the command line with the test config; returns the exit code and the parsed report."""

    def _run(*argv: str, quiet: bool = True) -> tuple[int, dict | None]:
        flags = ["--quiet"] if quiet else []
        code = main([*flags, "--config", TEST_CONFIG, *argv])
        out = capsys.readouterr().out
        return code, json.loads(out) if out.strip() else None

    return _run
