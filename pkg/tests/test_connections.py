"""Connection layer: Leibniz, flatness, gluing, degeneration, class triviality."""

import random

import pytest
from fixtures import FIXTURES, coprime, twochart

from taucover.covers import ChartedScheme, Cover, TorsionBundle
from taucover.connections import (
    ClassicalConnection,
    TauConnection,
    cech_class,
    classical_connection,
    coboundary_class,
    coprime_degeneration_check,
    is_trivial_class,
)
from taucover.errors import NotCoprime
from taucover.fields import FqField
from taucover.rings import ChartRing


def build(name):
    return Cover(FIXTURES[name]())


def coprime_two_chart_bundle():
    field = FqField(3)
    chart0 = ChartRing(field, ["t"])
    chart1 = ChartRing(field, ["t+1"])
    scheme = ChartedScheme(field, [chart0, chart1])
    overlap = scheme.overlap(0, 1)
    g = {(0, 1): overlap.parse("(t+1)/t")}
    u = [chart0.parse("t^2"), chart1.parse("(t+1)^2")]
    return TorsionBundle(scheme, 2, g, u)


def quartic_coprime_bundle():
    field = FqField(3)
    ring = ChartRing(field, ["t"])
    scheme = ChartedScheme(field, [ring])
    return TorsionBundle(scheme, 4, {}, [ring.parse("t")])


# -- the tau-connection


def test_connection_coords_and_form():
    conn = TauConnection(build("GM_P2"))
    ring = conn.charts[0].ring
    assert conn.connection_coords(0) == (ring.zero, -ring.one)
    assert str(conn.connection_form(0)) == "(1/t*v)*dv"


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_leibniz_on_random_sections(name):
    cover = build(name)
    report = TauConnection(cover).leibniz_check(seed=5, samples=30)
    assert report["passed"], (name, report)
    p = cover.bundle.scheme.field.p
    for chart_report in report["charts"]:
        assert chart_report["stays_partial"]
        assert chart_report["matches_formula"]
        if cover.bundle.n % p == 0:
            assert chart_report["matches_classical"] is None
        else:
            assert chart_report["matches_classical"] is True


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_flatness(name):
    report = TauConnection(build(name)).flatness_check()
    assert report["passed"], (name, report)
    for chart_report in report["charts"]:
        assert chart_report["d_omega_zero"]
        assert chart_report["omega_wedge_omega_zero"]


def test_cocycle_rule_across_charts():
    report = TauConnection(Cover(twochart())).cocycle_check()
    assert report["passed"], report
    assert report["overlaps"][0]["overlap"] == [0, 1]


def test_cocycle_rule_on_coprime_two_chart_bundle():
    report = TauConnection(Cover(coprime_two_chart_bundle())).cocycle_check()
    assert report["passed"], report


def test_full_connection_report():
    report = TauConnection(build("GM_P3")).report(samples=20)
    assert report["passed"]
    assert set(report) == {"leibniz", "flatness", "cocycle", "passed"}


# -- the classical averaged connection


def test_classical_connection_requires_invertible_order():
    with pytest.raises(NotCoprime):
        classical_connection(FIXTURES["GM_P2"]())


def test_classical_eta_pinned():
    conn = classical_connection(coprime())
    ring = conn.bundle.scheme.charts[0]
    assert conn.eta[0] == ring.parse("2/t")


def test_classical_delta_condition_two_charts():
    conn = classical_connection(coprime_two_chart_bundle())
    chart0 = conn.bundle.scheme.charts[0]
    chart1 = conn.bundle.scheme.charts[1]
    assert conn.eta[0] == chart0.parse("1/t")
    assert conn.eta[1] == chart1.parse("1/(t+1)")
    report = conn.report()
    assert report["passed"], report
    assert report["delta_condition"]["overlaps"][0]["passed"]
    assert report["curvature"]["passed"]


# -- degeneration when the order is invertible


def test_coprime_degeneration_single_chart():
    report = coprime_degeneration_check(Cover(coprime()))
    assert report["passed"], report
    chart = report["charts"][0]
    assert chart["partial_equals_pullback"]
    assert chart["root_form_equals_classical"]
    assert chart["connection_coords_agree"]


def test_coprime_degeneration_quartic():
    report = coprime_degeneration_check(Cover(quartic_coprime_bundle()))
    assert report["passed"], report


def test_coprime_degeneration_two_charts():
    report = coprime_degeneration_check(Cover(coprime_two_chart_bundle()))
    assert report["passed"], report
    assert report["delta_condition"]["passed"]


def test_coprime_degeneration_rejects_shared_characteristic():
    with pytest.raises(NotCoprime):
        coprime_degeneration_check(build("MIXED"))


# -- the obstruction class


def test_cech_class_two_charts():
    report = cech_class(Cover(twochart()))
    assert report["passed"], report
    assert list(report["transitions"]) == ["(0,1)"]
    assert all(c["closed"] for c in report["charts"])


NONTRIVIAL = ["DEGENERATE", "GM_P2", "GM_P3", "MIXED", "TWOCHART", "ZEROTORSION"]


@pytest.mark.parametrize("name", NONTRIVIAL)
def test_canonical_class_obstructed_by_functional(name):
    verdict = is_trivial_class(build(name))
    assert not verdict["trivial"]
    assert verdict["obstruction"] == "s-functional"
    assert verdict["details"]["s_value"] == "1"
    assert verdict["s_kills_coboundaries"] is True
    assert verdict["witness"] is None


def test_canonical_class_trivial_for_coprime():
    verdict = is_trivial_class(Cover(coprime()))
    assert verdict["trivial"]
    assert verdict["obstruction"] is None
    assert verdict["witness"] == {"units": ["t^2"]}
    assert verdict["witness_verified"]


def test_canonical_class_trivial_for_coprime_two_charts():
    verdict = is_trivial_class(Cover(coprime_two_chart_bundle()))
    assert verdict["trivial"], verdict
    units = verdict["witness"]["units"]
    assert units == ["t", "t + 1"]


def test_degenerate_coprime_canonical_class_vanishes():
    # v^2 = t^3 in characteristic 3: the relation 2v dv = d(t^3) = 0 kills
    # v dv, so dv/v is the zero class and the witness is the constant unit.
    field = FqField(3)
    ring = ChartRing(field, ["t"])
    scheme = ChartedScheme(field, [ring])
    bundle = TorsionBundle(scheme, 2, {}, [ring.parse("t^3")])
    verdict = is_trivial_class(Cover(bundle))
    assert verdict["trivial"]
    assert verdict["witness"] == {"units": ["1"]}


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_coboundaries_round_trip(name):
    cover = build(name)
    scheme = cover.bundle.scheme
    rng = random.Random(hash(name) % 10**6)
    for _ in range(8):
        units = [scheme.charts[i].random_unit(rng) for i in range(len(scheme.charts))]
        cochain = coboundary_class(cover, units)
        verdict = is_trivial_class(cover, cochain)
        assert verdict["trivial"], (name, [str(u) for u in units], verdict)
        assert verdict["witness_verified"]


def test_round_trip_witness_satisfies_both_identities():
    cover = Cover(twochart())
    scheme = cover.bundle.scheme
    rng = random.Random(9)
    units = [scheme.charts[i].random_unit(rng) for i in range(2)]
    cochain = coboundary_class(cover, units)
    verdict = is_trivial_class(cover, cochain)
    found = [scheme.charts[i].parse(s) for i, s in enumerate(verdict["witness"]["units"])]
    li = scheme.restrict(0, found[0], 1)
    lj = scheme.restrict(1, found[1], 0)
    assert lj * li.inv() == cochain["transitions"][(0, 1)]
    for i in (0, 1):
        assert scheme.charts[i].dlog(found[i]) == scheme.charts[i].dlog(units[i])


def test_dlog_image_obstruction():
    cover = Cover(coprime())
    ring = cover.bundle.scheme.charts[0]
    cochain = {
        "transitions": {},
        "chart_coords": [(ring.parse("1/t^2"), ring.zero)],
    }
    verdict = is_trivial_class(cover, cochain)
    assert not verdict["trivial"]
    assert verdict["obstruction"] == "dlog-image"
    assert verdict["details"]["chart"] == 0


def test_transition_lattice_obstruction():
    bundle = coprime_two_chart_bundle()
    cover = Cover(bundle)
    scheme = bundle.scheme
    overlap = scheme.overlap(0, 1)
    cochain = {
        "transitions": {(0, 1): overlap.parse("t+1")},
        "chart_coords": [
            (scheme.charts[0].zero, scheme.charts[0].zero),
            (scheme.charts[1].zero, scheme.charts[1].zero),
        ],
    }
    verdict = is_trivial_class(cover, cochain)
    assert not verdict["trivial"]
    assert verdict["obstruction"] == "transitions"


def test_zero_cochain_is_trivial():
    cover = Cover(coprime_two_chart_bundle())
    scheme = cover.bundle.scheme
    overlap = scheme.overlap(0, 1)
    cochain = {
        "transitions": {(0, 1): overlap.one},
        "chart_coords": [
            (scheme.charts[0].zero, scheme.charts[0].zero),
            (scheme.charts[1].zero, scheme.charts[1].zero),
        ],
    }
    verdict = is_trivial_class(cover, cochain)
    assert verdict["trivial"]


def test_reports_are_json_serializable():
    import json

    cover = Cover(twochart())
    conn = TauConnection(cover)
    for payload in (
        conn.report(samples=4),
        cech_class(cover),
        is_trivial_class(cover),
        ClassicalConnection(coprime_two_chart_bundle()).report(),
        coprime_degeneration_check(Cover(coprime())),
    ):
        json.dumps(payload, sort_keys=True)
