import math

import pytest

import meander as mw


def test_builtin_laws_and_moments():
    law = mw.builtin_law("simple")
    s = mw.moments(law)
    assert s.sigma2 == pytest.approx(1.0, abs=1e-14)
    assert s.abs3 == pytest.approx(1.0, abs=1e-14)
    assert s.smoothing_A == pytest.approx(0.125, abs=1e-14)
    assert s.eu_abs == pytest.approx(48 * math.log(2) / math.pi, abs=1e-12)
    assert set(mw.builtin_law_names()) == {"simple", "lazy", "skew3", "sym5"}


def test_law_validation():
    with pytest.raises(mw.MeanderError):
        mw.make_law([(-1, 0.4), (1, 0.6)])  # non-zero mean
    with pytest.raises(mw.MeanderError):
        mw.make_law([(1, 0.5), (2, 0.5)])  # no negative support


def test_meander_table_and_tail():
    law = mw.builtin_law("simple")
    t = mw.build_meander(law, 64)
    assert t.b(1, 1) == pytest.approx(0.5, abs=1e-15)
    assert t.b(2, 2) == pytest.approx(0.25, abs=1e-15)
    assert t.survival(2) == pytest.approx(0.25, abs=1e-15)
    assert t.tail(8, 1) == pytest.approx(mw.simple_walk_tail(8, 1), abs=1e-12)
    assert mw.conditioned_tail(t, 4, 0.0) == 1.0


def test_be_error_and_limits():
    law = mw.builtin_law("simple")
    t = mw.build_meander(law, 64)
    assert mw.be_error(t, 1) == pytest.approx(math.exp(-0.5), abs=1e-12)
    assert mw.rayleigh_tail(1.0) == pytest.approx(math.exp(-0.5), abs=1e-15)
    assert mw.h_transform_target(0.0) == 0.0
    assert mw.h_transform_target(30.0) == pytest.approx(1.0, abs=1e-12)


def test_ladder_identity():
    law = mw.builtin_law("sym5")
    s = mw.moments(law)
    lad = mw.ladder_data(law, 64)
    assert lad.mean_height * lad.es_tau_abs == pytest.approx(s.sigma2 / 2, abs=1e-9)
    assert lad.horizon_tail < 1e-9


def test_monte_carlo_determinism():
    law = mw.builtin_law("simple")
    cfg = mw.McConfig()
    cfg.seed = 7
    cfg.n = 16
    cfg.paths = 500
    a = mw.sample_conditioned(cfg, law)
    b = mw.sample_conditioned(cfg, law)
    assert a.ecdf == b.ecdf
    assert a.trials == b.trials
    assert 0 < a.acceptance_rate <= 1


def test_audits_pass():
    law = mw.builtin_law("lazy")
    t = mw.build_meander(law, 256)
    tau = mw.tau_summary(t, law)
    lad = mw.ladder_data(law, 64)
    report = mw.audit_inequalities(law, t, tau, lad, [4, 16, 64, 256])
    explicit = {"eq.tau", "eq.tau1", "eq.tau2", "cont_of_normal", "be.classical"}
    seen = set()
    for check in report:
        if check.id in explicit:
            seen.add(check.id)
            assert check.pass_, check.id
            assert check.margin >= 0
    assert seen == explicit
