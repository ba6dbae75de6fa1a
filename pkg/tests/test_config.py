import json

import pytest
from pydantic import ValidationError

from knotball.config import CONFIG_DIR, Settings, apply_overrides, catalog_registry, settings
from knotball.models.errors import UnknownName
from knotball.services.logging_service import configure_logging, logger, logging_service


def test_defaults_from_yaml():
    s = Settings.from_yaml(CONFIG_DIR / "settings.yaml")
    assert s.seeds == [1, 2, 3]
    assert s.knot_groups == ["S3", "A4", "D4"]
    assert s.hom_generator_cap == 8
    assert s.jobs == 1


def test_overrides_win_and_none_is_ignored():
    s = Settings.from_yaml(CONFIG_DIR / "settings.yaml", flip_budget=50, jobs=None)
    assert s.flip_budget == 50
    assert s.jobs == 1


def test_invalid_override():
    with pytest.raises(ValidationError):
        settings.with_overrides(jobs=0)
    with pytest.raises(ValidationError):
        settings.with_overrides(anneal_cooling=1.5)


def test_apply_overrides_updates_shared_instance():
    snapshot = settings.model_dump()
    try:
        apply_overrides(hom_generator_cap=4)
        assert settings.hom_generator_cap == 4
    finally:
        apply_overrides(**snapshot)
    assert settings.hom_generator_cap == snapshot["hom_generator_cap"]


def test_catalog_registry():
    assert "S3_13_56" in catalog_registry.list_names()
    assert catalog_registry.expected("S3_13_56", "f_vector") == [13, 69, 112, 56]
    assert catalog_registry.expected("knot_cycle", "vertices", 3) == 3
    with pytest.raises(UnknownName):
        catalog_registry.get_entry("S4_1_1")


def test_json_log_records(capsys):
    configure_logging("INFO", json_format=True)
    try:
        logging_service.log_claim("boundary28", True, 1.234)
        record = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert record["event"] == "claim_checked"
        assert record["claim"] == "boundary28"
        assert record["elapsed_ms"] == 1.23
        assert len(logger.handlers) == 1
    finally:
        configure_logging("WARNING")
