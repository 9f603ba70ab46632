"""Worked bundle examples shared across the test suite.

Names match the built-in catalog; each function builds the bundle fresh so
tests cannot leak state through shared objects.
"""

from taucover.covers import ChartedScheme, TorsionBundle
from taucover.fields import FqField
from taucover.rings import ChartRing


def gm_p2() -> TorsionBundle:
    """Square root of t in characteristic 2: wildly ramified, order = p."""
    field = FqField(2)
    scheme = ChartedScheme(field, [ChartRing(field, ["t"])])
    return TorsionBundle(scheme, 2, {}, ["t"])


def gm_p3() -> TorsionBundle:
    """Cube root of t in characteristic 3."""
    field = FqField(3)
    scheme = ChartedScheme(field, [ChartRing(field, ["t"])])
    return TorsionBundle(scheme, 3, {}, ["t"])


def zerotorsion() -> TorsionBundle:
    """Fifth root of t^2 - t over F_5 with both zeros of u inverted."""
    field = FqField(5)
    scheme = ChartedScheme(field, [ChartRing(field, ["t", "t+4"])])
    return TorsionBundle(scheme, 5, {}, ["t^2-t"])


def coprime() -> TorsionBundle:
    """Square root of t in characteristic 3: tame, order prime to p."""
    field = FqField(3)
    scheme = ChartedScheme(field, [ChartRing(field, ["t"])])
    return TorsionBundle(scheme, 2, {}, ["t"])


def mixed() -> TorsionBundle:
    """Sixth root of t over F_4: separable degree 3 under a square root."""
    field = FqField(2, 2)
    scheme = ChartedScheme(field, [ChartRing(field, ["t"])])
    return TorsionBundle(scheme, 6, {}, ["t"])


def twochart() -> TorsionBundle:
    """Two charts over F_4 glued by g = (t+a)/(t+1), with g^2 = u1/u0."""
    field = FqField(2, 2)
    chart0 = ChartRing(field, ["t", "t+1"])
    chart1 = ChartRing(field, ["t", "t+a"])
    scheme = ChartedScheme(field, [chart0, chart1])
    g = scheme.overlap(0, 1).parse("(t+a)/(t+1)")
    return TorsionBundle(
        scheme,
        2,
        {(0, 1): g},
        [chart0.parse("t*(t+1)^2"), chart1.parse("t*(t+a)^2")],
    )


def degenerate() -> TorsionBundle:
    """Square root of t^2 in characteristic 2: du = 0, the degenerate wall."""
    field = FqField(2)
    scheme = ChartedScheme(field, [ChartRing(field, ["t"])])
    return TorsionBundle(scheme, 2, {}, ["t^2"])


FIXTURES = {
    "COPRIME": coprime,
    "DEGENERATE": degenerate,
    "GM_P2": gm_p2,
    "GM_P3": gm_p3,
    "MIXED": mixed,
    "TWOCHART": twochart,
    "ZEROTORSION": zerotorsion,
}
