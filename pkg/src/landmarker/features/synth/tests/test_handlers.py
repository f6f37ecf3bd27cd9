"""Tests for the synth subcommand."""

from src.landmarker.main import main
from src.landmarker.services.data.manifest import load_manifests


def test_synth_writes_loadable_manifests(tmp_path, capsys):
    """Generated manifests load with the requested shapes."""
    out = tmp_path / "corpus"

    code = main(
        [
            "synth",
            "--out",
            str(out),
            "--domains",
            "3",
            "--images",
            "4",
            "--landmarks",
            "2",
            "--size",
            "32",
            "--test-count",
            "1",
        ]
    )

    assert code == 0
    printed = capsys.readouterr().out.split()
    assert len(printed) == 3
    manifests = load_manifests([out / f"synth{d}" for d in range(3)])
    assert [m.domain.num_landmarks for m in manifests] == [2, 2, 2]
    assert all(m.domain.resize_to == (32, 32) for m in manifests)


def test_synth_rejects_bad_size(tmp_path, capsys):
    """A size that is not a multiple of 8 exits with 1."""
    code = main(["synth", "--out", str(tmp_path), "--size", "60"])

    assert code == 1
    assert "size" in capsys.readouterr().err
