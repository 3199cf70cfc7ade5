"""Shared fixtures over the bundled action corpus.

Regularization and the trace oracle are the slow parts, so both are
computed once per session and shared across test modules.
"""

import pytest

from equichi import corpus, equivariant_multiplicities, regularize


@pytest.fixture(scope="session")
def cases():
    return {cid: corpus.load_case(cid) for cid in corpus.case_ids()}


@pytest.fixture(scope="session")
def regular_cases(cases):
    return {cid: regularize(case.gcomplex) for cid, case in cases.items()}


@pytest.fixture(scope="session")
def oracle_reports(regular_cases):
    return {cid: equivariant_multiplicities(X) for cid, X in regular_cases.items()}
