"""Shared fixtures: reference configurations and a config-file factory."""

import json

import pytest

from ionbridge import reference_config


@pytest.fixture
def cfg_rr():
    """30S-30S reference system, 2z0 = 16 um."""
    return reference_config("rr")


@pytest.fixture
def cfg_rg():
    """30S-ground reference system, 2z0 = 16 um."""
    return reference_config("rg")


@pytest.fixture
def cfg_gg():
    """Ground-ground reference system, 2z0 = 16 um."""
    return reference_config("gg")


@pytest.fixture
def cfg_25():
    """25S-25S reference system, 2z0 = 16 um."""
    return reference_config("rr", n=25)


@pytest.fixture
def config_file(tmp_path):
    """Write a JSON config document and return its path."""

    def write(name="config.json", **document):
        path = tmp_path / name
        path.write_text(json.dumps(document))
        return path

    return write
