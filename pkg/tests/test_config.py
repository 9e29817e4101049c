"""Configuration documents: defaults, validation messages, digests."""

import pytest

from ionbridge import (
    ConfigError,
    GROUND,
    config_from_document,
    constants as cst,
    load_config,
    parse_state,
)


class TestStateParsing:
    @pytest.mark.parametrize("token, kind, n", [
        ("g", "ground", None),
        ("ground", "ground", None),
        ("G", "ground", None),
        ("Ground", "ground", None),
        ("5S", "ground", None),
        ("30S", "rydberg", 30),
        ("25s", "rydberg", 25),
        (" 30S ", "rydberg", 30),
    ])
    def test_valid_labels(self, token, kind, n):
        state = parse_state(token)
        if kind == "ground":
            assert state == GROUND
        else:
            assert state.is_rydberg and state.principal_n == n

    @pytest.mark.parametrize("token", ["", "S", "3OS", "30P", "30", "S30"])
    def test_malformed_labels(self, token):
        with pytest.raises(ConfigError):
            parse_state(token)

    def test_non_string_rejected(self):
        with pytest.raises(ConfigError, match="string"):
            parse_state(30)


class TestDocumentResolution:
    def test_empty_document_gives_reference_values(self):
        config, resolved, _ = config_from_document({})
        assert config.atom.name == "87Rb"
        assert config.ion.name == "40Ca+"
        assert config.atom.mass == pytest.approx(
            cst.RB87_MASS_U * cst.ATOMIC_MASS_KG, rel=1e-15)
        assert config.atom_trap.radial == pytest.approx(cst.TWO_PI * 100e3, rel=1e-13)
        assert config.atom_trap.axial == pytest.approx(cst.TWO_PI * 9e3, rel=1e-13)
        assert config.ion_trap.radial == pytest.approx(cst.TWO_PI * 1e6, rel=1e-13)
        assert config.half_separation_z0 == pytest.approx(8e-6, rel=1e-15)
        assert all(s.is_rydberg and s.principal_n == 30 for s in config.state_pair)
        assert resolved["scaling"] == "bare_n"

    def test_explicit_defaults_do_not_change_the_digest(self):
        _, _, bare = config_from_document({})
        _, _, spelled = config_from_document({"z0_um": 8.0, "scaling": "bare_n"})
        assert spelled == bare

    def test_digest_tracks_content(self):
        _, _, base = config_from_document({})
        _, _, moved = config_from_document({"z0_um": 9.0})
        assert moved != base
        assert len(base) == 64 and all(c in "0123456789abcdef" for c in base)

    def test_c6_unit_conversion(self):
        config, _, _ = config_from_document({})
        assert config.coefficients.c6_rydberg_anchor == pytest.approx(
            cst.C6_30S_PAIR_JM6, rel=1e-15)
        custom, _, _ = config_from_document({"c6_pair_MHz_um6": -53.22})
        assert custom.coefficients.c6_rydberg_anchor == pytest.approx(
            2.0 * cst.C6_30S_PAIR_JM6, rel=1e-12)

    def test_partial_section_merge(self):
        config, resolved, _ = config_from_document(
            {"atom": {"omega_z_kHz": 12.0}})
        assert config.atom_trap.axial == pytest.approx(cst.TWO_PI * 12e3, rel=1e-13)
        assert config.atom_trap.radial == pytest.approx(cst.TWO_PI * 100e3, rel=1e-13)
        assert resolved["atom"]["species"] == "87Rb"

    def test_mixed_state_pair(self):
        config, _, _ = config_from_document({"states": ["40S", "g"]})
        a, b = config.state_pair
        assert a.is_rydberg and a.principal_n == 40
        assert b == GROUND

    @pytest.mark.parametrize("document, fragment", [
        ({"zz0_um": 8.0}, "zz0_um"),
        ({"ion": {"omega_x_kHz": 1.0}}, "omega_x_kHz"),
        ({"ion": 3.0}, "must be an object"),
        ({"z0_um": "eight"}, "z0_um"),
        ({"z0_um": True}, "z0_um"),
        ({"atom": {"mass_u": None}}, "atom.mass_u"),
        ({"states": ["30S"]}, "states"),
        ({"states": "30S"}, "states"),
        ({"ion_mode": [0, 0]}, "ion_mode"),
        ({"ion_mode": [0, 0, 0.5]}, "ion_mode"),
        ({"ion_mode": [0, 0, True]}, "ion_mode"),
        ({"scaling": "cubic"}, "scaling"),
    ])
    def test_schema_errors_name_the_field(self, document, fragment):
        with pytest.raises(ConfigError, match=fragment):
            config_from_document(document)

    def test_root_must_be_object(self):
        with pytest.raises(ConfigError, match="object"):
            config_from_document([1, 2, 3])


class TestFileLoading:
    def test_round_trip(self, config_file):
        path = config_file(z0_um=7.0, states=["30S", "g"])
        config, resolved, digest = load_config(path)
        assert config.half_separation_z0 == pytest.approx(7e-6, rel=1e-15)
        _, _, direct = config_from_document({"z0_um": 7.0, "states": ["30S", "g"]})
        assert digest == direct

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            load_config(tmp_path / "absent.json")

    def test_malformed_json_reports_position(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"z0_um": 8.0,\n  "states": [30S]}')
        with pytest.raises(ConfigError, match="line 2"):
            load_config(path)

    def test_nan_rejected_by_parser_settings_or_physics(self, config_file):
        # json.loads accepts NaN; the physical validation must then refuse it.
        path = config_file(z0_um=float("nan"))
        with pytest.raises(ConfigError):
            load_config(path)
