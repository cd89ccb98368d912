import re

import pytest
from hypothesis import given, settings, strategies as st

from se_revise.propositional import (
    FaithfulnessError,
    PropOperator,
    TotalPreorder,
    dalal_operator,
    distance_operator,
    drastic_operator,
    faithful_operator,
    hamming,
    hamming_preorder,
    mc_prop,
    rank_table_operator,
    revise,
    to_dnf,
    two_level_preorder,
    validate_faithful,
)
from se_revise.semantics import ModelSet
from se_revise.syntax import Alphabet, AlphabetError, parse_formula
from se_revise.verify import check_km


def _all_modelsets(n):
    size = 1 << n
    return [ModelSet(n, (m for m in range(size) if bits >> m & 1))
            for bits in range(1 << size)]


# ---------------------------------------------------------------------------
# distances and preorders


def test_hamming():
    assert hamming(0b101, 0b101) == 0
    assert hamming(0b101, 0b010) == 3
    assert hamming(0, 0b111) == 3


def test_total_preorder_normalizes_levels():
    a = TotalPreorder(1, {0: 5, 1: 9})
    b = TotalPreorder(1, {0: 0, 1: 1})
    assert a == b
    assert a.level(1) == 1
    assert a.leq(0, 1) and not a.leq(1, 0)
    assert a.min_of((0, 1)) == {0}


def test_total_preorder_requires_full_table():
    with pytest.raises(ValueError):
        TotalPreorder(2, {0: 0, 1: 0})


def test_validate_faithful_conditions():
    phi = ModelSet(2, (1, 2))
    validate_faithful(two_level_preorder(phi), phi)
    validate_faithful(hamming_preorder(phi), phi)
    split = TotalPreorder(2, {1: 0, 2: 1, 0: 2, 3: 2})
    with pytest.raises(FaithfulnessError) as err:
        validate_faithful(split, phi)
    assert "condition (a)" in str(err.value)
    low = TotalPreorder(2, {1: 0, 2: 0, 0: 0, 3: 1})
    with pytest.raises(FaithfulnessError) as err:
        validate_faithful(low, phi)
    assert "condition (b)" in str(err.value)
    with pytest.raises(AlphabetError):
        validate_faithful(two_level_preorder(phi), ModelSet(1, (1,)))
    validate_faithful(two_level_preorder(ModelSet(2, ())), ModelSet(2, ()))


@settings(max_examples=80, deadline=None)
@given(st.sets(st.integers(0, 7), min_size=1))
def test_builtin_preorders_are_faithful(models):
    phi = ModelSet(3, models)
    validate_faithful(two_level_preorder(phi), phi)
    validate_faithful(hamming_preorder(phi), phi)


# ---------------------------------------------------------------------------
# the two classic operators and their reconstructions


def test_drastic_operator_cases():
    op = drastic_operator()
    phi = ModelSet(2, (1,))
    assert op.revise(phi, ModelSet(2, (1, 3))) == ModelSet(2, (1,))
    assert op.revise(phi, ModelSet(2, (2, 3))) == ModelSet(2, (2, 3))
    assert op.revise(ModelSet(2, ()), ModelSet(2, (2,))) == ModelSet(2, (2,))


def test_dalal_operator_cases():
    op = dalal_operator()
    phi = ModelSet(2, (3,))
    assert op.revise(phi, ModelSet(2, (0, 1))) == ModelSet(2, (1,))
    assert op.revise(phi, ModelSet(2, (0,))) == ModelSet(2, (0,))
    assert op.revise(ModelSet(2, ()), ModelSet(2, (0, 1))) == ModelSet(2, (0, 1))


def test_dalal_equals_generic_reconstructions_n2():
    dal = dalal_operator()
    dist = distance_operator(hamming, "hamming")
    faith = faithful_operator(hamming_preorder, "hamming-faithful")
    sets = _all_modelsets(2)
    for phi in sets:
        for psi in sets:
            expected = dal.revise(phi, psi)
            assert dist.revise(phi, psi) == expected
            assert faith.revise(phi, psi) == expected


def test_drastic_equals_two_level_faithful_n2():
    dra = drastic_operator()
    faith = faithful_operator(two_level_preorder, "two-level")
    sets = _all_modelsets(2)
    for phi in sets:
        for psi in sets:
            assert faith.revise(phi, psi) == dra.revise(phi, psi)


@settings(max_examples=150, deadline=None)
@given(st.sets(st.integers(0, 7)), st.sets(st.integers(0, 7)))
def test_dalal_reconstructions_agree_n3(ms1, ms2):
    phi, psi = ModelSet(3, ms1), ModelSet(3, ms2)
    expected = dalal_operator().revise(phi, psi)
    assert distance_operator(hamming).revise(phi, psi) == expected
    assert faithful_operator(hamming_preorder).revise(phi, psi) == expected


def test_faithful_operator_validates_on_use():
    # the provider ignores phi, so any phi with other models trips it
    fixed = TotalPreorder(1, {0: 0, 1: 1})
    op = faithful_operator(lambda phi: fixed, "fixed")
    assert op.revise(ModelSet(1, (0,)), ModelSet(1, (1,))) == ModelSet(1, (1,))
    with pytest.raises(FaithfulnessError):
        op.revise(ModelSet(1, (1,)), ModelSet(1, (0, 1)))


def test_operator_width_mismatch():
    with pytest.raises(AlphabetError):
        drastic_operator().revise(ModelSet(1, ()), ModelSet(2, ()))


def test_revise_and_mc_prop_wrappers():
    op = dalal_operator()
    phi, psi = ModelSet(2, (3,)), ModelSet(2, (0, 1))
    assert revise(op, phi, psi) == op.revise(phi, psi)
    assert mc_prop(op, phi, psi, 1)
    assert not mc_prop(op, phi, psi, 0)


# ---------------------------------------------------------------------------
# worked examples


def test_faithful_revision_example_two_atoms():
    # phi with models {p}, {q}; preorder p ~ q < pq < empty; revising by
    # ~p & q selects {q}, revising by p <-> q selects {pq}
    op, a = rank_table_operator({
        "atoms": ["p", "q"],
        "phi_models": [["p"], ["q"]],
        "ranks": {"p": 0, "q": 0, "p,q": 1, "": 2},
    })
    phi, _ = parse_formula("p <-> ~q", a)
    assert sorted(phi.models) == [1, 2]
    psi1, _ = parse_formula("~p & q", a)
    assert op.revise(phi, psi1) == psi1
    psi2, _ = parse_formula("p <-> q", a)
    assert op.revise(phi, psi2) == ModelSet(2, (3,))


def test_rank_table_operator_rejects_other_phi():
    op, a = rank_table_operator({
        "atoms": ["p", "q"],
        "phi_models": [["p"], ["q"]],
        "ranks": {"p": 0, "q": 0, "p,q": 1, "": 2},
    })
    with pytest.raises(FaithfulnessError):
        op.revise(ModelSet(2, (1,)), ModelSet(2, (0,)))


def test_drastic_vs_dalal_example_three_atoms():
    # phi = p & q & ~r revised by r: drastic surrenders to all models of
    # r, Dalal keeps only the closest one
    a = Alphabet(("p", "q", "r"))
    phi, _ = parse_formula("p & q & ~r", a)
    psi, _ = parse_formula("r", a)
    assert sorted(phi.models) == [3]
    assert drastic_operator().revise(phi, psi) == psi
    assert dalal_operator().revise(phi, psi) == ModelSet(3, (7,))


# ---------------------------------------------------------------------------
# postulate checking on the propositional side


def test_check_km_passes_for_both_operators():
    for op in (drastic_operator(), dalal_operator()):
        reports = check_km(op, n=2, mode="exhaustive")
        assert [r.postulate for r in reports] == ["R1", "R2", "R3", "R4",
                                                  "R5", "R6"]
        assert all(r.passed for r in reports)
        assert all(r.cases > 0 for r in reports)


def _difference_operator():
    # keeps what phi does not share with psi: violates success outright
    def fn(phi, psi):
        left = ModelSet(phi.n, phi.models - psi.models)
        return left if left else psi
    return PropOperator("difference", fn)


def _parse_witness(witness, alphabet):
    out = []
    for _, body in re.findall(r"(phi|psi)=\{(.*?)\}(?= psi=|\Z)", witness):
        models = [alphabet.mask([a for a in m.split(",") if a])
                  for m in re.findall(r"\{([a-z,]*)\}", body)]
        out.append(ModelSet(alphabet.n, models))
    return out


def test_check_km_flags_difference_operator_with_replayable_witness():
    op = _difference_operator()
    reports = {r.postulate: r for r in check_km(op, n=2, mode="exhaustive")}
    assert not reports["R1"].passed
    assert not reports["R2"].passed
    phi, psi = _parse_witness(reports["R1"].witness, Alphabet.default(2))
    out = op.revise(phi, psi)
    assert not out.models <= psi.models


def test_check_km_seeded_is_deterministic():
    op = dalal_operator()
    r1 = check_km(op, n=3, mode="seeded", seed=7, samples=200)
    r2 = check_km(op, n=3, mode="seeded", seed=7, samples=200)
    assert [(r.postulate, r.passed, r.cases, r.witness) for r in r1] \
        == [(r.postulate, r.passed, r.cases, r.witness) for r in r2]
    assert all(r.passed for r in r1)


def test_check_km_mode_errors():
    with pytest.raises(ValueError):
        check_km(dalal_operator(), n=3, mode="exhaustive")
    with pytest.raises(ValueError):
        check_km(dalal_operator(), mode="bogus")


# ---------------------------------------------------------------------------
# DNF rendering


def test_to_dnf_fixed():
    a = Alphabet(("p", "q"))
    assert to_dnf(ModelSet(2, ()), a) == "false"
    assert to_dnf(ModelSet(2, range(4)), a) == "true"
    assert to_dnf(ModelSet(2, (1,)), a) == "p & ~q"
    assert to_dnf(ModelSet(2, (1, 2)), a) == "p & ~q | ~p & q"


def test_to_dnf_round_trip_exhaustive_n2():
    a = Alphabet(("p", "q"))
    for ms in _all_modelsets(2):
        back, _ = parse_formula(to_dnf(ms, a), a)
        assert back == ms


@settings(max_examples=100, deadline=None)
@given(st.sets(st.integers(0, 7)))
def test_to_dnf_round_trip_random_n3(models):
    a = Alphabet(("p", "q", "r"))
    ms = ModelSet(3, models)
    back, _ = parse_formula(to_dnf(ms, a), a)
    assert back == ms
