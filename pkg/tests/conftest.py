"""Shared fixtures: parameter sets sized for fast unit runs."""

import pytest

from lumen.field import GOLDILOCKS
from lumen.groups import test_known_order_spec
from lumen.pcs import setup
from lumen.piop import generate_relation, index, witness_poly


@pytest.fixture(scope="session")
def fld():
    return GOLDILOCKS


@pytest.fixture(scope="session")
def pp_tiny():
    # smallest legal corner: d=8, two basis vectors
    return setup(128, 8, 2, b"fixture/tiny", group=test_known_order_spec())


@pytest.fixture(scope="session")
def pp_small():
    return setup(128, 64, 4, b"fixture/small", group=test_known_order_spec())


@pytest.fixture(scope="session")
def pp_mid():
    return setup(128, 1024, 8, b"fixture/mid", group=test_known_order_spec())


@pytest.fixture(scope="session")
def relation_small():
    rel = generate_relation(4, b"fixture/rel4")
    return index(rel)


@pytest.fixture(scope="session")
def proven_small(pp_small, relation_small):
    """One honest proof reused by read-only tests."""
    from lumen import snark

    f = witness_poly(pp_small, relation_small)
    proof = snark.prove(pp_small, relation_small, f, b"fixture/proof")
    return f, proof, proof.encode(pp_small)


def pytest_terminal_summary(terminalreporter):
    """Replay the per-criterion verdict lines after the run; output
    capture would otherwise hide them on passing tests."""
    import sys

    for name, mod in list(sys.modules.items()):
        if name.rpartition(".")[2] != "test_acceptance":
            continue
        lines = getattr(mod, "VERDICTS", None)
        if lines:
            terminalreporter.write_line("")
            terminalreporter.write_line("acceptance verdicts:")
            for line in lines:
                terminalreporter.write_line("  " + line)
