"""Tests for the audit-params subcommand."""

import argparse

from src.landmarker.features.audit.handlers import format_audit, resolve_model_config
from src.landmarker.main import main
from src.landmarker.services.models.params import audit_parameters


def _args(**overrides) -> argparse.Namespace:
    return argparse.Namespace(**{"config": None, "manifests": None, "depth": None, "base_channels": None, **overrides})


class TestResolveModelConfig:
    """Test where audited domains and architecture come from."""

    def test_presets_without_manifests(self):
        """Test head, hand and chest are audited by default."""
        assert resolve_model_config(_args()).domain_ids == ["head", "hand", "chest"]

    def test_manifests_and_flags(self, synth_manifest_paths):
        """Test manifests provide domains and flags override the architecture."""
        config = resolve_model_config(_args(manifests=synth_manifest_paths, depth=3))

        assert config.domain_ids == ["synth0", "synth1"]
        assert config.depth == 3


class TestAuditCommand:
    """Test the printed table and exit codes."""

    def test_passes_on_synthetic_domains(self, synth_manifest_paths, capsys):
        """Test every check passes and every variant is listed."""
        argv = ["audit-params"]
        for path in synth_manifest_paths:
            argv += ["--manifest", str(path)]

        code = main(argv)

        out = capsys.readouterr().out
        assert code == 0
        assert "All parameter checks passed" in out
        for variant in ("gu2net", "unet", "tri_unet", "local_only", "global_only"):
            assert variant in out

    def test_table_rows(self, synth_manifest_paths):
        """Test one table row per variant plus header and footer."""
        audit = audit_parameters(resolve_model_config(_args(manifests=synth_manifest_paths)))

        lines = format_audit(audit).splitlines()

        assert lines[0].split()[:2] == ["variant", "total"]
        assert len(lines) == 1 + 5 + 1
        assert "global receptive field 92 px" in lines[-1]
