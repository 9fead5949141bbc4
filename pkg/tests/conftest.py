"""Shared strategies for the property-based tests.

Media are drawn with velocity contrasts up to 10x and spacer widths of
order one, which covers every regime the solvers distinguish
(propagating, evanescent, near-cutoff) without wandering into float
extremes where nothing physical is being tested.
"""

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from layerwave import SpectralPoint, TrilayerMedium

settings.register_profile(
    "suite",
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

velocities = st.floats(min_value=0.3, max_value=3.0, allow_nan=False, allow_infinity=False)
spacer_widths = st.floats(min_value=0.5, max_value=2.0, allow_nan=False, allow_infinity=False)


@st.composite
def media(draw):
    return TrilayerMedium(
        v1=draw(velocities),
        v2=draw(velocities),
        v3=draw(velocities),
        d=draw(spacer_widths),
    )


@st.composite
def propagating_cases(draw):
    """(medium, spectral point) with all three layers propagating."""
    medium = draw(media())
    omega = draw(st.floats(min_value=0.5, max_value=20.0))
    fraction = draw(st.floats(min_value=0.0, max_value=0.9))
    vmax = max(medium.v1, medium.v2, medium.v3)
    return medium, SpectralPoint.at(medium, omega, fraction * omega / vmax)


@st.composite
def mixed_cases(draw):
    """(medium, spectral point) where some channels may be evanescent."""
    medium = draw(media())
    omega = draw(st.floats(min_value=0.5, max_value=12.0))
    fraction = draw(st.floats(min_value=0.0, max_value=1.3))
    vmax = max(medium.v1, medium.v2, medium.v3)
    return medium, SpectralPoint.at(medium, omega, fraction * omega / vmax)
