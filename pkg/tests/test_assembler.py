"""Index assembly from per-stratum spectral data."""

from fractions import Fraction

import pytest

from equichi import (
    FineEntry,
    IndexData,
    StratumRecord,
    ValidationError,
    assemble_index,
    beta_term,
    character_table,
    equivariant_euler_via_strata,
    index_data_from_breakdown,
)
from equichi.corpus import load_index_case


def entry(type_count=1, rank=1, eta=0, h=0, integral=0):
    return FineEntry(
        type_count=type_count,
        rank=rank,
        eta=Fraction(eta),
        harmonic_dim=h,
        integral=Fraction(integral),
    )


def test_single_entry_worked_example():
    # one fine piece, eta 1/2, one harmonic mode, integral 2: beta is 1/2
    rec = StratumRecord("s", (entry(1, 1, Fraction(1, 2), 1, 2),))
    assert beta_term(rec, "equivariant", 1) == Fraction(1, 2)
    data = IndexData("equivariant", 1, Fraction(0), (rec,))
    out = assemble_index(data)
    assert out.total == Fraction(1, 2)
    assert not out.is_integer
    assert out.warning == "assembled index 1/2 is not an integer"
    assert out.beta_terms == (("s", Fraction(1, 2)),)


def test_zero_spectral_data_gives_zero_beta():
    rec = StratumRecord("s", (entry(1, 1, 0, 0, 5), entry(2, 4, 0, 0, -3)))
    assert beta_term(rec, "equivariant", 1) == 0
    assert beta_term(rec, "basic", 1) == 0


def test_beta_weights_each_entry_by_type_count_and_rank():
    rec = StratumRecord(
        "s",
        (
            entry(2, 3, Fraction(1, 4), 2, 6),
            entry(1, 5, Fraction(-1, 2), 0, 10),
        ),
    )
    # recompute the sum longhand
    first = Fraction(1, 2 * 3) * (2 - Fraction(1, 4)) * 6
    second = Fraction(1, 1 * 5) * (0 - Fraction(-1, 2)) * 10
    assert beta_term(rec, "equivariant", 1) == Fraction(1, 2) * (first + second)
    assert beta_term(rec, "equivariant", 3) == Fraction(1, 6) * (first + second)
    assert beta_term(rec, "basic", 1) == Fraction(1, 2) * (first + second)


def test_beta_is_additive_over_entry_splitting():
    entries = (
        entry(1, 2, Fraction(1, 3), 1, 4),
        entry(3, 1, Fraction(1, 5), 2, -2),
    )
    joined = beta_term(StratumRecord("s", entries), "equivariant", 1)
    split = sum(
        beta_term(StratumRecord("s", (e,)), "equivariant", 1) for e in entries
    )
    assert joined == split


def test_beta_is_linear_in_the_integral():
    def with_integral(q):
        return StratumRecord("s", (entry(1, 2, Fraction(1, 7), 1, q),))

    base = beta_term(with_integral(1), "equivariant", 1)
    assert beta_term(with_integral(5), "equivariant", 1) == 5 * base
    assert beta_term(with_integral(Fraction(-3, 2)), "equivariant", 1) == Fraction(-3, 2) * base


def test_total_sums_principal_and_all_strata():
    recs = (
        StratumRecord("a", (entry(1, 1, Fraction(1, 2), 1, 2),)),
        StratumRecord("b", (entry(1, 1, 0, 1, 4),)),
    )
    out = assemble_index(IndexData("equivariant", 1, Fraction(3), recs))
    assert dict(out.beta_terms) == {"a": Fraction(1, 2), "b": Fraction(2)}
    assert out.total == Fraction(3) + Fraction(1, 2) + Fraction(2)
    assert out.principal == Fraction(3)


def test_basic_mode_agrees_with_one_dimensional_equivariant():
    recs = (StratumRecord("s", (entry(2, 3, Fraction(1, 6), 1, 9),)),)
    a = assemble_index(IndexData("equivariant", 1, Fraction(1), recs))
    b = assemble_index(IndexData("basic", 1, Fraction(1), recs))
    assert a.total == b.total


def test_corpus_beta_example():
    out = assemble_index(load_index_case("index-beta-example"))
    assert out.total == Fraction(1, 2)
    assert not out.is_integer
    assert out.warning is not None


def test_corpus_basic_example():
    out = assemble_index(load_index_case("index-basic-example"))
    assert out.mode == "basic"
    assert out.beta_terms == (("s0", Fraction(1, 2)),)
    assert out.total == 2
    assert out.is_integer
    assert out.warning is None


def test_perturbed_eta_flags_non_integer_without_raising():
    rec = StratumRecord("s", (entry(1, 1, Fraction(1, 3), 1, 2),))
    out = assemble_index(IndexData("equivariant", 1, Fraction(1), (rec,)))
    # (1/2) * (1 - 1/3) * 2 = 2/3 on top of principal 1
    assert out.total == Fraction(5, 3)
    assert not out.is_integer
    assert "not an integer" in out.warning


def test_validation_rejects_bad_shapes():
    good = (StratumRecord("s", (entry(1, 1, 0, 1, 1),)),)
    with pytest.raises(ValidationError):
        IndexData("spectral", 1, Fraction(0), good)  # unknown mode
    with pytest.raises(ValidationError):
        IndexData("equivariant", 0, Fraction(0), good)  # dim must be positive
    with pytest.raises(ValidationError):
        IndexData("basic", 2, Fraction(0), good)  # basic data is one dimensional
    with pytest.raises(ValidationError):
        IndexData(
            "equivariant",
            1,
            Fraction(0),
            (good[0], StratumRecord("s", (entry(1, 1, 0, 1, 1),))),
        )  # duplicate stratum ids
    with pytest.raises(ValidationError):
        FineEntry(type_count=0, rank=1, eta=Fraction(0), harmonic_dim=1, integral=Fraction(1))
    with pytest.raises(ValidationError):
        FineEntry(type_count=1, rank=-2, eta=Fraction(0), harmonic_dim=1, integral=Fraction(1))
    with pytest.raises(ValidationError):
        FineEntry(type_count=1, rank=1, eta=Fraction(0), harmonic_dim=-1, integral=Fraction(1))


def test_result_json_uses_exact_rationals():
    rec = StratumRecord("s", (entry(1, 1, Fraction(1, 2), 1, 2),))
    out = assemble_index(IndexData("equivariant", 1, Fraction(1, 3), (rec,)))
    doc = out.to_json_dict()
    assert doc["principal"] == [1, 3]
    assert doc["beta_terms"] == [{"id": "s", "value": [1, 2]}]
    assert doc["total"] == [5, 6]
    assert doc["is_integer"] is False


def test_round_trip_from_breakdowns_recovers_multiplicities(regular_cases, oracle_reports):
    # harmonic data synthesized from a breakdown assembles back to the
    # multiplicity the trace oracle reports, and is always an integer
    for cid, X in regular_cases.items():
        if cid == "s2-reflection":
            continue
        rep = oracle_reports[cid]
        for rho in character_table(X.group):
            b = equivariant_euler_via_strata(X, rho)
            data = index_data_from_breakdown(b, rho.degree)
            out = assemble_index(data)
            assert out.is_integer, (cid, rho.index)
            assert out.total == rep.multiplicities[rho.index], (cid, rho.index)


def test_round_trip_basic_mode_matches_equivariant(regular_cases):
    X = regular_cases["torus-involution"]
    for rho in character_table(X.group):
        b = equivariant_euler_via_strata(X, rho)
        eq_total = assemble_index(index_data_from_breakdown(b, rho.degree)).total
        basic_total = assemble_index(
            index_data_from_breakdown(b, rho.degree, mode="basic")
        ).total
        assert eq_total == basic_total
