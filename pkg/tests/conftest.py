import json
import pathlib

import pytest

from blowup_profiles import profile, weber

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def as_complex(d) -> complex:
    return complex(d["re"], d["im"])


@pytest.fixture(scope="session")
def oracle() -> dict:
    with open(FIXTURES / "oracle.json") as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def cfg() -> weber.QuadratureConfig:
    return weber.QuadratureConfig()


@pytest.fixture(scope="session")
def profile_p5() -> profile.ProfileSolution:
    """One well-resolved p=5 profile shared by the verification tests."""
    return profile.build_profile(p=5.0, grid=profile.profile_grid(260.0, 2600))


@pytest.fixture(scope="session")
def profile_small_h() -> profile.ProfileSolution:
    """Small-h profile (h = 0.15) for the WKB comparisons."""
    return profile.build_profile(h=0.15, grid=profile.profile_grid(80.0, 900))
