import random
from fractions import Fraction

import pytest

from toric_additive.additive import classify, find_admissible_basis
from toric_additive.catalog import example_fan
from toric_additive.coxring import (
    ActionMap,
    LndFamily,
    Poly,
    build_lnd_family,
    exp_action,
    parse_poly,
    torus_conjugate,
)
from toric_additive.errors import Inconclusive, NotApplicable, ZeroCoordinate
from toric_additive.fan import build_fan
from toric_additive.roots import enumerate_roots_at
from toric_additive.verify import (
    ActionClass,
    AnnihilatorReport,
    annihilator_profile,
    brute_force_roots,
    check_bracket_table,
    check_cone_condition_redundant,
    check_collections_bases_bijection,
    check_grading_relations,
    check_group_law,
    check_homogeneous_images,
    check_identity_at_zero,
    check_open_orbit,
    check_root_lnd_degree_zero,
    check_roots_box_oracle,
    classify_profile,
    distinguish_actions,
    verification_report,
)

CATALOG = ("p2", "p1xp1", "f1", "p112", "p113", "wide")


def test_brute_force_roots_p2():
    fan = build_fan(example_fan("p2"))
    got = {(r.ray, r.e) for r in brute_force_roots(fan, 5)}
    assert got == {
        (0, (-1, 0)), (0, (-1, 1)),
        (1, (0, -1)), (1, (1, -1)),
        (2, (1, 0)), (2, (0, 1)),
    }


@pytest.mark.parametrize("name", CATALOG)
def test_roots_box_oracle_catalog(name):
    fan = build_fan(example_fan(name))
    assert check_roots_box_oracle(fan, 10)
    assert check_cone_condition_redundant(fan)
    assert check_collections_bases_bijection(fan)


def test_roots_box_oracle_detects_escaping_roots():
    # a box too small to hold all roots is reported, not silently clipped
    fan = build_fan(example_fan("p113"))
    assert any(max(abs(r.e[0]), abs(r.e[1])) > 2
               for i in range(fan.nrays) for r in enumerate_roots_at(fan, i))
    assert not check_roots_box_oracle(fan, 2)


def test_bracket_table_catalog():
    for name, d in (("p112", 2), ("p113", 3), ("p2", 1), ("p1xp1", 0)):
        basis = find_admissible_basis(example_fan(name))
        assert check_bracket_table(build_lnd_family(basis, d))


def test_bracket_table_rejects_shuffled_family():
    basis = find_admissible_basis(example_fan("p112"))
    family = build_lnd_family(basis, 2)
    p0, p1, p2 = family.partials
    bogus = LndFamily(ring=family.ring, basis=family.basis,
                      grading=family.grading, delta=family.delta,
                      partials=(p0, p2, p1), d=2)
    assert not check_bracket_table(bogus)


def _p2_actions():
    c = classify(build_fan(example_fan("p2")))
    return c


def test_identity_and_group_law_pass():
    c = _p2_actions()
    for act in (c.normalized_action, c.non_normalized_action):
        assert check_identity_at_zero(act)
        assert check_group_law(act)
        assert check_homogeneous_images(act, c.family.grading)


def test_group_law_rejects_corrupted_map():
    # replace the s1*x1 term of the non-normalized projective plane action
    # by s1^2*x1: still the identity at zero, no longer a homomorphism
    c = _p2_actions()
    ring = c.family.ring
    images = (
        parse_poly(ring, "x1 + x3*s1"),
        parse_poly(ring, "x2 + x3*s2 + x1*s1^2"),
        parse_poly(ring, "x3"),
    )
    bad = ActionMap(ring=ring, images=images)
    assert check_identity_at_zero(bad)
    assert not check_group_law(bad)


def test_homogeneous_images_rejects_mixed_degrees():
    basis = find_admissible_basis(example_fan("f1"))
    family = build_lnd_family(basis, 1)
    ring = family.ring
    images = tuple(Poly.var(ring, i) for i in range(4))
    bad = ActionMap(ring=ring, images=(
        parse_poly(ring, "x1 + x2"),) + images[1:])
    assert not check_homogeneous_images(bad, family.grading)


def test_grading_relation_checks():
    c = _p2_actions()
    assert check_grading_relations(c.basis, c.family.grading)
    assert check_root_lnd_degree_zero(c)


def test_open_orbit_pass():
    c = _p2_actions()
    fam = c.family
    assert check_open_orbit(fam.delta, fam.partials[0], fam.grading)
    assert check_open_orbit(fam.delta + fam.partials[1], fam.partials[0],
                            fam.grading)


def test_open_orbit_degenerate_pair():
    # both derivations move only the second coordinate: the orbit stays thin
    c = _p2_actions()
    fam = c.family
    assert not check_open_orbit(fam.partials[0], fam.partials[1], fam.grading)


def test_open_orbit_explicit_point():
    c = _p2_actions()
    fam = c.family
    assert check_open_orbit(fam.delta, fam.partials[0], fam.grading,
                            point=(1, 1, 1))
    with pytest.raises(ZeroCoordinate):
        check_open_orbit(fam.delta, fam.partials[0], fam.grading,
                         point=(1, 1))
    with pytest.raises(ZeroCoordinate):
        check_open_orbit(fam.delta, fam.partials[0], fam.grading,
                         point=(1, 0, 1))


def test_annihilator_profile_p2():
    c = _p2_actions()
    rep = annihilator_profile(c.normalized_action, c.family)
    assert rep.lines == ((0, 1), (1, -1), (1, 0), (1, 1))
    assert "M0" in rep.full_labels
    assert classify_profile(rep) is ActionClass.NORMALIZED
    rep = annihilator_profile(c.non_normalized_action, c.family)
    assert rep.lines == ((0, 1),)
    assert "M0" in rep.full_labels
    assert classify_profile(rep) is ActionClass.NON_NORMALIZED


def test_classify_profile_inconclusive():
    with pytest.raises(Inconclusive):
        classify_profile(AnnihilatorReport(probes=(), lines=(),
                                           full_labels=()))


@pytest.mark.parametrize("name", ("p2", "f1", "p112"))
def test_distinguish_actions(name):
    c = classify(build_fan(example_fan(name)))
    got = distinguish_actions(c)
    assert got == {"normalized": ActionClass.NORMALIZED,
                   "non_normalized": ActionClass.NON_NORMALIZED}


def test_distinguish_actions_not_applicable():
    with pytest.raises(NotApplicable):
        distinguish_actions(classify(build_fan(example_fan("wide"))))
    with pytest.raises(NotApplicable):
        distinguish_actions(classify(build_fan(
            [(1, 0), (-1, 3), (0, -1), (-1, -1), (1, -2)])))


def test_distinguisher_invariant_under_torus_conjugation():
    rng = random.Random(41)
    c = classify(build_fan(example_fan("f1")))
    fam = c.family
    for _ in range(5):
        t = [Fraction(rng.randint(1, 5), rng.randint(1, 5))
             * rng.choice([-1, 1]) for _ in range(4)]
        d1 = torus_conjugate(fam.delta, t) \
            + torus_conjugate(fam.partials[fam.d], t)
        d2 = torus_conjugate(fam.partials[0], t)
        act = exp_action(d1, d2)
        rep = annihilator_profile(act, fam)
        assert classify_profile(rep) is ActionClass.NON_NORMALIZED


@pytest.mark.parametrize("name", CATALOG)
def test_verification_report_catalog(name):
    c = classify(build_fan(example_fan(name)))
    rep = verification_report(c, box=10, seed=0)
    assert rep["all_pass"], rep["checks"]
    assert rep["admits_action"] is True
    assert rep["rays"] == [list(r) for r in c.fan.rays]
    base_keys = {"roots_box_oracle", "cone_condition_redundant",
                 "collections_bases_bijection", "classes_match_wideness",
                 "bracket_table", "grading_relations",
                 "root_lnd_degree_zero"}
    assert base_keys <= set(rep["checks"])
    if c.d >= 1:
        assert rep["checks"]["distinguish_actions"] is True
        assert "open_orbit_non_normalized" in rep["checks"]
    else:
        assert "distinguish_actions" not in rep["checks"]
        assert "open_orbit_non_normalized" not in rep["checks"]


def test_verification_report_non_admitting():
    c = classify(build_fan([(1, 0), (-1, 3), (0, -1), (-1, -1), (1, -2)]))
    rep = verification_report(c)
    assert rep["all_pass"]
    assert rep["admits_action"] is False
    assert rep["num_classes"] == 0
    assert "bracket_table" not in rep["checks"]
    assert rep["checks"]["classes_match_wideness"] is True
