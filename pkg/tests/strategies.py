"""Shared hypothesis strategies over the four curve families."""

from hypothesis import strategies as st

from lcd_agc import curve as cv
from lcd_agc.function_field import CurveFunction, Divisor
from lcd_agc.gf import create_field

F16 = create_field(2, 4)
F9 = create_field(3, 2, (2, 2, 1))
F4 = create_field(2, 2)

CURVES = {
    "line": cv.make_curve(cv.PROJECTIVE_LINE, F16),
    "elliptic": cv.make_curve(cv.ELLIPTIC_AS, F16, c=8),
    "elliptic4": cv.make_curve(cv.ELLIPTIC_AS, F4),
    "hyper": cv.make_curve(cv.HYPERELLIPTIC_AS, F16, q=4),
    "hermitian": cv.make_curve(cv.HERMITIAN, F9, q=3),
}
FAMILY_KEYS = ("line", "elliptic", "hyper", "hermitian")


def xpoly(F, max_deg):
    return st.lists(st.integers(0, F.q - 1), min_size=1, max_size=max_deg + 1)


@st.composite
def functions(draw, C, max_deg=2, with_den=True):
    F = C.field
    parts = [draw(xpoly(F, max_deg)) for _ in range(min(C.deg_y, 2))]
    if not any(any(p) for p in parts):
        parts[0] = [draw(st.integers(1, F.q - 1))]
    den = [1]
    if with_den and draw(st.booleans()):
        den = draw(xpoly(F, 1)) + [1]
    return CurveFunction.make(C, parts, den)


@st.composite
def rational_divisors(draw, C, max_places=4, lo=-3, hi=3):
    pts = C.enumerate_points()
    chosen = draw(st.lists(st.sampled_from(pts), min_size=1, max_size=max_places))
    terms = [(draw(st.integers(lo, hi)), P) for P in chosen]
    return Divisor.of(C, *terms)
