import pytest

from algebroids.suite import (
    EXTRA_IDENTITIES,
    IDENTITIES,
    IDENTITY_NAMES,
    SuiteConfig,
    frozen_fixtures,
    identity_rng,
    run_identity,
)

FROZEN = (
    "half-pi-pi",
    "twisted-half-pi-pi",
    "sharp-compat",
    "ls-obstruction",
    "cocyc",
    "twisted-sharp",
    "psi-intertwine",
    "poissonize-scaling",
    "kvize-scaling",
    "dtheta-closed-form",
    "pack-H-equivalence",
)


def test_frozen_identity_names():
    assert IDENTITY_NAMES == FROZEN
    assert not set(EXTRA_IDENTITIES) & set(IDENTITIES)


def test_rng_streams_are_stable_and_independent():
    a = [identity_rng(0, "cocyc", 3).random() for _ in range(2)]
    assert a[0] == a[1]
    assert identity_rng(0, "cocyc", 3).random() != identity_rng(0, "cocyc", 4).random()
    assert identity_rng(0, "cocyc", 3).random() != identity_rng(1, "cocyc", 3).random()


@pytest.mark.parametrize("name", list(IDENTITIES) + list(EXTRA_IDENTITIES))
def test_identity_passes_on_fresh_seed(name):
    result = run_identity(name, seed=1234, max_degree=2, instances=3)
    assert result["verdict"] == "pass", result["failures"]


def test_run_identity_is_deterministic():
    assert run_identity("twisted-sharp", 9, 2, 3) == run_identity("twisted-sharp", 9, 2, 3)


def test_unknown_identity():
    with pytest.raises(KeyError):
        run_identity("nope")


@pytest.mark.parametrize("fixture", frozen_fixtures(), ids=lambda f: f.name)
def test_frozen_fixture_expectation(fixture):
    assert fixture.build().ok == fixture.expect_pass


def test_suite_config_small_run():
    config = SuiteConfig(seed=3, max_degree=1, instances=1)
    first = config.run()
    assert first["verdict"] == "pass"
    assert first["suite"] == {"seed": 3, "max_degree": 1, "instances": 1}
    assert all(v["status"] == "ok" for v in first["fixtures"].values())
    assert config.run() == first
