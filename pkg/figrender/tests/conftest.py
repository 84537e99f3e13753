"""Fixtures handing each test a fresh schema-valid CSV of every kind."""

from __future__ import annotations

from pathlib import Path

import pytest

from _csvdata import (
    MAP_HEADER,
    SWEEP_HEADER,
    TRAJECTORY_HEADER,
    map_rows,
    sweep_rows,
    trajectory_rows,
    write_csv,
)


@pytest.fixture
def trajectory_csv(tmp_path) -> Path:
    return write_csv(tmp_path / "trajectory.csv", TRAJECTORY_HEADER, trajectory_rows())


@pytest.fixture
def map_csv(tmp_path) -> Path:
    return write_csv(tmp_path / "stability_map.csv", MAP_HEADER, map_rows())


@pytest.fixture
def sweep_csv(tmp_path) -> Path:
    return write_csv(tmp_path / "sweep.csv", SWEEP_HEADER, sweep_rows())
