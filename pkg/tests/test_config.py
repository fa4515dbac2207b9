import math

import pytest

from tascap import SystemConfig, db_to_linear, linear_to_db


def test_derived_sizes_large_pool():
    cfg = SystemConfig(n_t=256, n_r=8, l_t=16, rho=1.0)
    assert (cfg.l, cfg.m) == (8, 16)
    assert cfg.l * cfg.m == cfg.l_t * cfg.n_r


def test_derived_sizes_single_receive():
    cfg = SystemConfig(n_t=4, n_r=1, l_t=1, rho=1.0)
    assert (cfg.l, cfg.m) == (1, 1)


@pytest.mark.parametrize(
    "kwargs, fragment",
    [
        (dict(n_t=4, n_r=2, l_t=8), "l_t > n_t"),
        (dict(n_t=4, n_r=0, l_t=2), "n_r"),
        (dict(n_t=0, n_r=2, l_t=1), "n_t"),
        (dict(n_t=4, n_r=2, l_t=0), "l_t"),
        (dict(n_t=4, n_r=2, l_t=2, rho=0.0), "rho"),
        (dict(n_t=4, n_r=2, l_t=2, rho=-1.0), "rho"),
        (dict(n_t=4, n_r=2, l_t=2, rho=math.inf), "rho"),
        (dict(n_t=4, n_r=2, l_t=2, seed=-1), "seed"),
        (dict(n_t=4, n_r=2, l_t=2, seed=2**64), "seed"),
    ],
)
def test_validation_errors_name_the_field(kwargs, fragment):
    with pytest.raises(ValueError, match=fragment):
        SystemConfig(**kwargs)


def test_db_to_linear_values():
    assert db_to_linear(0.0) == 1.0
    assert db_to_linear(10.0) == 10.0
    assert db_to_linear(-10.0) == pytest.approx(0.1, rel=1e-15)


def test_db_round_trip():
    for x_db in [-37.5, -10.0, -3.0, 0.0, 0.1, 7.0, 25.0, 60.0]:
        assert linear_to_db(db_to_linear(x_db)) == pytest.approx(x_db, abs=1e-12)
    for x in [1e-6, 0.25, 1.0, 3.7, 1e8]:
        assert db_to_linear(linear_to_db(x)) == pytest.approx(x, rel=1e-12)


def test_l_le_m_and_equality_iff_square():
    for n_r in (1, 2, 5, 8):
        for l_t in (1, 2, 5, 8):
            cfg = SystemConfig(n_t=16, n_r=n_r, l_t=l_t, rho=1.0)
            assert cfg.l <= cfg.m
            assert (cfg.l == cfg.m) == (l_t == n_r)


def test_from_dict_round_trip():
    cfg = SystemConfig.from_dict({"n_t": 128, "n_r": 16, "l_t": 4, "rho_db": 5.0, "seed": 9})
    assert cfg.n_t == 128 and cfg.seed == 9
    assert cfg.rho == pytest.approx(db_to_linear(5.0), rel=1e-15)
    echo = cfg.to_dict()
    assert SystemConfig.from_dict(echo) == cfg


def test_from_dict_rejects_unknown_and_missing_keys():
    with pytest.raises(ValueError, match="unknown"):
        SystemConfig.from_dict({"n_t": 8, "n_r": 2, "l_t": 2, "rho": 1.0})
    with pytest.raises(ValueError, match="missing"):
        SystemConfig.from_dict({"n_t": 8, "n_r": 2})


def test_updated_revalidates():
    cfg = SystemConfig(n_t=16, n_r=2, l_t=4, rho=1.0)
    assert cfg.updated(n_t=32).n_t == 32
    with pytest.raises(ValueError, match="l_t > n_t"):
        cfg.updated(n_t=2)
