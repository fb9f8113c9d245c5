"""Fixtures for chainrank tests."""

from __future__ import annotations

from pathlib import Path

import pytest

from chainrank.const import CACHE_DIR_ENV
from chainrank.groups import (
    FinGroup,
    cyclic_group,
    dihedral_group,
    elementary_abelian_group,
    quaternion_group,
    symmetric_group,
)
from chainrank.marking import MarkedGroup, default_marking


@pytest.fixture
def c2() -> FinGroup:
    """Cyclic group of order 2."""
    return cyclic_group(2)


@pytest.fixture
def klein() -> FinGroup:
    """Klein four-group."""
    return elementary_abelian_group(2, 2)


@pytest.fixture
def s3() -> FinGroup:
    """Symmetric group on three points."""
    return symmetric_group(3)


@pytest.fixture
def d4() -> FinGroup:
    """Dihedral group of order 8."""
    return dihedral_group(4)


@pytest.fixture
def q8() -> FinGroup:
    """Quaternion group."""
    return quaternion_group()


@pytest.fixture
def s4() -> FinGroup:
    """Symmetric group on four points."""
    return symmetric_group(4)


@pytest.fixture
def marked_s3(s3: FinGroup) -> MarkedGroup:
    """S3 with its canonical marking."""
    return default_marking(s3)


@pytest.fixture
def cache_dir(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    """Point the result cache at a temporary directory."""
    root = tmp_path / "cache"
    monkeypatch.setenv(CACHE_DIR_ENV, str(root))
    return root
