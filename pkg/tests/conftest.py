import sys
from pathlib import Path

import pytest
from mpmath import mpc

sys.path.insert(0, str(Path(__file__).parent))

from dzeta import (SEARCH, HARMONIC_PRODUCT, PrecisionContext, ZeroCatalog,
                   certify_zero, refine_zero)

import reference


@pytest.fixture(scope="session")
def ctx50():
    return PrecisionContext(digits=50, guard_digits=15)


@pytest.fixture(scope="session")
def ctx30():
    return PrecisionContext(digits=30, guard_digits=10)


@pytest.fixture(scope="session")
def catalog30(ctx50):
    """The thirty t < 60 zeros refined at 50 digits and certified."""
    cat = ZeroCatalog(metadata={"sigma_lo": -1.0, "sigma_hi": 2.0,
                                "t_lo": 0.0, "t_hi": 60.0, "digits": 50})
    for sigma, t in reference.ZEROS_T_LT_60:
        rec = refine_zero(mpc(sigma, t), HARMONIC_PRODUCT, ctx50)
        rec = certify_zero(rec, ctx=ctx50)
        cat.add(rec)
    return cat
