import numpy as np
import pytest

from porosol.campaign import (CampaignError, ConfigError, StudyConfig, config_from_ini,
                              load_config, run_depletion_study, run_rom_build, run_sobol_study,
                              select_components)
from porosol.campaign.presets import FAR_FIELDS, observation_points
from porosol.campaign.sobol_study import INDEX_COLUMNS, OUTPUT_KEYS, WORKERS_ENV, worker_count
from porosol.rom import eval_rom

UNIT3 = (("u", 0.0, 1.0, "linear"), ("v", 0.0, 1.0, "linear"), ("w", 0.0, 1.0, "linear"))

CALLS = []


def additive(x, horizon):
    u, v, w = x
    return np.full(len(OUTPUT_KEYS), u + 2.0 * v ** 2 + 0.1 * w) * np.arange(1, 19)


def counting(x, horizon):
    CALLS.append(tuple(x))
    return additive(x, horizon)


def constant(x, horizon):
    return np.ones(len(OUTPUT_KEYS))


def flaky(x, horizon):
    # fails on roughly a tenth of the unit cube
    if x[0] > 0.9:
        raise RuntimeError("solver diverged")
    return additive(x, horizon)


def one_dim(x, horizon):
    return np.full(len(OUTPUT_KEYS), np.sin(3.0 * x[0]))


def small_cfg(tmp_path=None, **kw):
    base = dict(name="t", seed=7, N=256, horizons=("1y",), space=UNIT3, n_boot=20,
                output_dir=tmp_path)
    base.update(kw)
    return StudyConfig(**base)


def data_lines(path):
    return [ln for ln in path.read_text().splitlines() if not ln.startswith("#")]


def test_seeded_study_is_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run_sobol_study(small_cfg(a), additive)
    run_sobol_study(small_cfg(b), additive)
    for name in ("indices.csv", "indices_all.csv", "summary.csv", "runs_1y.csv",
                 "bars_pore_pressure_1y.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes(), name


def test_parallel_matches_serial(tmp_path):
    s1 = run_sobol_study(small_cfg(tmp_path / "s"), additive, workers=1)
    s2 = run_sobol_study(small_cfg(tmp_path / "p"), additive, workers=2)
    assert (tmp_path / "s/indices.csv").read_bytes() == (tmp_path / "p/indices.csv").read_bytes()
    np.testing.assert_array_equal(s1.outputs["1y"], s2.outputs["1y"])


def test_interrupted_study_recomputes_only_missing_runs(tmp_path):
    cfg = small_cfg(tmp_path, N=32)
    run_sobol_study(cfg, additive)
    ref = (tmp_path / "indices.csv").read_bytes()
    runs = tmp_path / "runs_1y.csv"
    lines = runs.read_text().splitlines(keepends=True)
    n_head = sum(ln.startswith("#") for ln in lines) + 1
    keep = 40
    # keep 40 complete runs and half of the next line, as a kill mid-write would
    runs.write_text("".join(lines[:n_head + keep]) + lines[n_head + keep][:15])
    CALLS.clear()
    run_sobol_study(cfg, counting)
    total = (2 * 3 + 2) * 32
    assert len(CALLS) == total - keep
    assert (tmp_path / "indices.csv").read_bytes() == ref


def test_cache_from_other_config_is_refused(tmp_path):
    run_sobol_study(small_cfg(tmp_path, N=8), additive)
    with pytest.raises(CampaignError, match="different configuration"):
        run_sobol_study(small_cfg(tmp_path, N=8, seed=8), additive)


def test_failure_budget_aborts(tmp_path):
    with pytest.raises(CampaignError, match="budget"):
        run_sobol_study(small_cfg(tmp_path, N=32), flaky)


def test_failed_samples_are_dropped_and_logged(tmp_path):
    st = run_sobol_study(small_cfg(tmp_path, N=64, failure_budget=0.5), flaky)
    fails = st.failures()
    assert fails and all("diverged" in m for _, _, m in fails)
    assert len(data_lines(tmp_path / "failures.csv")) == len(fails) + 1
    res = st.results[("pore_pressure", "P1", "1y")]
    assert res.meta["dropped_samples"] > 0
    assert res.N == 64 - res.meta["dropped_samples"]


def test_every_output_carries_the_config_hash(tmp_path):
    cfg = small_cfg(tmp_path, N=16)
    st = run_sobol_study(cfg, additive)
    run_rom_build(st, 0.9)
    files = sorted(tmp_path.rglob("*.csv"))
    assert len(files) > 10
    for f in files:
        head = [ln for ln in f.read_text().splitlines() if ln.startswith("#")]
        assert f"# config_hash={cfg.hash}" in head, f.name
    for f in (tmp_path / "roms").glob("*.json"):
        assert f"config_hash={cfg.hash}" in f.read_text()


def test_constant_model_gives_empty_index_table(tmp_path):
    st = run_sobol_study(small_cfg(tmp_path, N=16), constant)
    assert not st.results
    assert len(st.skipped) == len(OUTPUT_KEYS)
    assert data_lines(tmp_path / "indices.csv") == [
        ",".join(INDEX_COLUMNS)]
    assert len(data_lines(tmp_path / "skipped.csv")) == len(OUTPUT_KEYS) + 1


def test_single_free_variable_takes_all_variance():
    cfg = small_cfg(None, space=(("u", 0.0, 1.0, "linear"),), N=512)
    res = run_sobol_study(cfg, one_dim).results[("pore_pressure", "P6", "1y")]
    assert res.first[0] == pytest.approx(1.0, abs=0.02)


def test_rom_threshold_zero_is_constant_only():
    st = run_sobol_study(small_cfg(None, N=128), additive)
    rom = run_rom_build(st, 0.0).roms[("pore_pressure", "P1", "1y")]
    assert rom.components == ()
    assert rom.f0 == pytest.approx(np.mean(st.output("pore_pressure", "P1", "1y")))


def test_additive_rom_predicts_holdout(tmp_path):
    cfg = small_cfg(tmp_path, N=1024)
    st = run_sobol_study(cfg, additive)
    build = run_rom_build(st, 0.9)
    rom = build.roms[("sigma_max", "P3", "1y")]
    assert 0.9 <= rom.declared_accuracy <= 1.05
    Xh = np.random.default_rng(99).random((2000, 3))
    k = OUTPUT_KEYS.index(("sigma_max", "P3"))
    yh = np.array([additive(x, 0)[k] for x in Xh])
    pred = eval_rom(rom, Xh, check_range=False)
    r2 = 1 - np.mean((pred - yh) ** 2) / np.var(yh)
    assert r2 > 0.9
    assert (tmp_path / "roms.csv").exists()
    assert any((tmp_path / "fits").glob("*.csv"))


def test_select_components_orders_and_stops(tmp_path):
    st = run_sobol_study(small_cfg(None, N=512), additive)
    res = st.results[("pore_pressure", "P1", "1y")]
    chosen = select_components(res, 0.9)
    assert chosen[0][0] == (2,)
    assert [v for v, _ in chosen][:2] == [(2,), (1,)]
    assert select_components(res, 0.0) == []


def test_worker_count_env(monkeypatch):
    monkeypatch.delenv(WORKERS_ENV, raising=False)
    assert worker_count() == 1
    monkeypatch.setenv(WORKERS_ENV, "3")
    assert worker_count() == 3
    monkeypatch.setenv(WORKERS_ENV, "many")
    with pytest.raises(CampaignError):
        worker_count()


# ---------------------------------------------------------------- depletion

@pytest.fixture(scope="module")
def berea(rocks):
    return {"Berea Sandstone": rocks["Berea Sandstone"]}


def test_no_drawdown_keeps_profiles_flat(berea):
    ff = FAR_FIELDS["two_fracture"]
    cfg = StudyConfig(horizons=("1y",), far_field=ff, far_field_preset="two_fracture",
                      p_f=ff.p_r, profile_points=21)
    st = run_depletion_study(cfg, berea)
    for _, s in st.profiles["Berea Sandstone"]:
        np.testing.assert_allclose(s.p, ff.p_r, rtol=1e-12)
        np.testing.assert_allclose(s.sxx - s.syy, ff.sigma_H - ff.sigma_h, rtol=1e-9)


@pytest.mark.parametrize("preset,gap", [("sensitivity", 3.45e6), ("two_fracture", 1.38e6)])
def test_initial_anisotropy(preset, gap, berea):
    cfg = StudyConfig(horizons=("1m",), far_field=FAR_FIELDS[preset], far_field_preset=preset,
                      profile_points=11)
    h0, s0 = run_depletion_study(cfg, berea).profiles["Berea Sandstone"][0]
    assert h0 == "0" and s0.t == 0.0
    np.testing.assert_allclose(s0.sxx - s0.syy, gap, rtol=1e-9)


def test_depletion_is_stronger_between_fractures(berea, tmp_path):
    cfg = StudyConfig(horizons=("1m", "1y"), profile_points=31, output_dir=tmp_path)
    st = run_depletion_study(cfg, berea)
    m = st.region_means("Berea Sandstone", "1y")
    assert m["region1_dp"] > m["region2_dp"] > 0
    prof = data_lines(tmp_path / "profile_berea_sandstone.csv")
    assert len(prof) == 1 + 3 * 31
    assert len(data_lines(tmp_path / "regions.csv")) == 1 + 3
    with pytest.raises(KeyError):
        st.region_means("Berea Sandstone", "5y")


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_failing_rock_does_not_stop_the_others(rocks):
    bad = rocks["Berea Sandstone"].replace(kappa=float("inf"), name="broken")
    cfg = StudyConfig(horizons=("1m",), profile_points=5)
    st = run_depletion_study(cfg, {"broken": bad, "Berea Sandstone": rocks["Berea Sandstone"]})
    assert "Berea Sandstone" in st.profiles and "broken" not in st.profiles
    assert st.failures[0][0] == "broken"


# ---------------------------------------------------------------- config

def test_ini_round_trip(tmp_path):
    text = """
[study]
name = desk
seed = 3
N = 32
tier = coarse
horizons = 1m, 1y   ; two horizons
far_field = two_fracture
output_dir = out/desk
coupled = yes

[geometry]
a = 40
p_f = 2.5e7

[rocks]
names = Berea Sandstone, Weber Sandstone

[points]
P1 = 1.2, 2.5

[space]
p_f = 2e7, 3e7
G = 1e9, 1e10, log10

[rom]
threshold = 0.8
"""
    (tmp_path / "s.ini").write_text(text)
    cfg = load_config(tmp_path / "s.ini")
    assert (cfg.name, cfg.seed, cfg.N, cfg.horizons) == ("desk", 3, 32, ("1m", "1y"))
    assert cfg.far_field == FAR_FIELDS["two_fracture"]
    assert cfg.output_dir == tmp_path / "out/desk"
    assert cfg.coupled and cfg.a == 40 and cfg.p_f == 2.5e7 and cfg.b == 30
    assert cfg.rocks == ("Berea Sandstone", "Weber Sandstone")
    assert observation_points(cfg.a, cfg.b, cfg.points)["P1"] == pytest.approx((36.0, 100.0))
    assert cfg.space[2] == ("p_f", 2e7, 3e7, "linear")
    assert cfg.space[3] == ("G", 1e9, 1e10, "log10")
    assert cfg.input_space.dims[3].scale == "log10"
    assert cfg.rom_threshold == 0.8
    # the output folder and the name do not change the results
    assert cfg.hash == cfg.with_(output_dir=None, name="other").hash
    assert cfg.hash != cfg.with_(seed=4).hash


def test_custom_far_field_section():
    cfg = config_from_ini("[far_field]\nsigma_H = 60e6\nsigma_h = 50e6\np_r = 40e6\n")
    assert cfg.far_field_preset == "custom"
    assert cfg.far_field.sigma_H == 60e6


@pytest.mark.parametrize("text,msg", [
    ("[study]\ntier = gigantic\n", "tier"),
    ("[study]\nfar_field = mars\n", "far-field"),
    ("[study]\nN = lots\n", "bad config value"),
    ("[study]\nhorizons = 7q\n", "horizon"),
    ("[study]\nfailure_budget = 2\n", "failure_budget"),
    ("[study]\nbc_mode = sideways\n", "boundary"),
    ("[far_field]\nsigma_H = 1\n", "bad config value"),
    ("no section header\n", "malformed"),
])
def test_bad_configs_are_rejected(text, msg):
    with pytest.raises((ConfigError, KeyError), match=msg):
        config_from_ini(text)


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "nope.ini")
