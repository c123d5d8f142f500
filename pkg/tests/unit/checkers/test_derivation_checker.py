from dataclasses import replace

import pytest

from tracesimp.checkers.derivation_checker import DerivationChecker
from tracesimp.connectivity_analyzer import annotate
from tracesimp.models.derivation import Derivation
from tracesimp.trace_reducer import reduce

@pytest.fixture
def checker():
    derivation_checker = DerivationChecker()
    derivation_checker.initiate()
    return derivation_checker

def test_certificate_accepted(checker, fig0):
    program, trace = fig0
    result = reduce(program, annotate(program, trace))
    assert checker.run(program, trace, result.derivation, result.after.trace) == (True, None)

def test_wrong_claim_rejected(checker, fig0):
    program, trace = fig0
    result = reduce(program, annotate(program, trace))
    passed, problem = checker.run(program, trace, result.derivation, trace)
    assert not passed
    assert "replay gives" in problem

def test_tampered_certificate_rejected(checker, fig0):
    program, trace = fig0
    result = reduce(program, annotate(program, trace))
    root = result.derivation.rounds[0]
    tampered = Derivation((replace(root, rule="S-swap"),))
    passed, problem = checker.run(program, trace, tampered, result.after.trace)
    assert not passed
    assert problem
