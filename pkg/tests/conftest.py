import math

import hypothesis.strategies as st
import numpy as np
import pytest

from cfroots import build_blueprint, make_triangle, sample_cf, validate


# -- worked example specs ----------------------------------------------------


@pytest.fixture(scope="session")
def spec_single():
    """Three components: (-4,-2), (-1,1), (2,4); rho = 1."""
    return validate(1.0, [(2.0, 4.0)])


@pytest.fixture(scope="session")
def spec_two():
    """Five components with knot multiplicity 3 on the outer one; rho = 1."""
    return validate(1.0, [(2.0, 4.0), (5.0, 9.0)])


@pytest.fixture(scope="session")
def spec_half_inf():
    """Half-infinite outer component; rho comes from the center alone."""
    return validate(1.0, [(2.0, math.inf)])


@pytest.fixture(scope="session")
def spec_k0():
    """Single component (-1, 1): the degenerate one-interval case."""
    return validate(1.0)


@pytest.fixture(scope="session")
def bp_single(spec_single):
    return build_blueprint(spec_single)


@pytest.fixture(scope="session")
def bp_two(spec_two):
    return build_blueprint(spec_two)


@pytest.fixture(scope="session")
def bp_half_inf(spec_half_inf):
    return build_blueprint(spec_half_inf)


@pytest.fixture(scope="session")
def bp_k0(spec_k0):
    return build_blueprint(spec_k0)


# -- a hand-built function whose root twists are NOT all positive definite ---
#
# Found by scripts/find_failing_candidate.py: unit-width triangle bumps at
# +-3 and +-4.5 (merged outer component (2, 5.5)) with lopsided weights. The
# cosine factor of the inverse transform is 1 + 0.82 cos(3t) + 0.38 cos(4.5t):
# minimum +0.0211 (so f is a characteristic function), but the half-turn
# twist flips it to a minimum of -0.0318 at t=0, and a pi/7 twist reaches
# -0.00545 near t=0.75. Margins re-verified in the tests themselves.

LOPSIDED_WEIGHTS = ((3.0, 0.41), (4.5, 0.19))


def lopsided_two_bump(xs):
    kernel = make_triangle(1.0)
    xs = np.asarray(xs, dtype=float)
    out = np.asarray(kernel.eval(xs), dtype=float)
    for tau, w in LOPSIDED_WEIGHTS:
        out = out + w * (kernel.eval(xs - tau) + kernel.eval(xs + tau))
    return out


@pytest.fixture(scope="session")
def lopsided_spec():
    return validate(1.0, [(2.0, 5.5)])


@pytest.fixture(scope="session")
def lopsided_grid():
    return sample_cf(lopsided_two_bump, 6.5, 1e-3)


# -- hypothesis strategies ----------------------------------------------------

finite_floats = st.floats(
    min_value=0.15, max_value=2.5, allow_nan=False, allow_infinity=False
)


@st.composite
def support_specs(draw, max_k=3, allow_infinite=True):
    b0 = draw(st.floats(min_value=0.2, max_value=3.0))
    k = draw(st.integers(min_value=0, max_value=max_k))
    edges = [b0]
    for _ in range(2 * k):
        edges.append(edges[-1] + draw(finite_floats))
    positives = [(edges[1 + 2 * i], edges[2 + 2 * i]) for i in range(k)]
    if k and allow_infinite and draw(st.booleans()):
        positives[-1] = (positives[-1][0], math.inf)
    return validate(b0, positives)
