import math

import pytest

from schwarzaudit.errors import QuadratureFailure
from schwarzaudit.quadrature import adaptive_simpson, radial_integrate


def test_constant():
    assert abs(radial_integrate(lambda s: 1.0, 0.7) - 0.7) < 1e-15


@pytest.mark.parametrize(
    "g, exact",
    [
        (lambda s: 1.0 / (1.0 - s * s), math.atanh(0.5)),
        (lambda s: 1.0 / (1.0 + s * s), math.atan(0.5)),
    ],
    ids=["artanh", "arctan"],
)
def test_closed_forms(g, exact):
    for tol in (1e-6, 1e-10, 1e-12):
        assert abs(radial_integrate(g, 0.5, tol) - exact) <= tol


def test_complex_integrand():
    # int_0^1 e^{i s} ds = (e^i - 1)/i
    val = adaptive_simpson(lambda s: complex(math.cos(s), math.sin(s)), 0.0, 1.0, 1e-12)
    exact = (complex(math.cos(1), math.sin(1)) - 1) / 1j
    assert abs(val - exact) < 1e-12


def test_empty_interval():
    assert radial_integrate(lambda s: 5.0, 0.0) == 0.0


def test_budget_exhausted():
    with pytest.raises(QuadratureFailure):
        adaptive_simpson(lambda s: math.sin(1.0 / max(s, 1e-300)), 0.0, 1.0, 1e-14, max_subdivisions=50)


def test_bad_tolerance():
    with pytest.raises(QuadratureFailure):
        adaptive_simpson(lambda s: s, 0.0, 1.0, 0.0)
