import json
from fractions import Fraction

import pytest

from oddcycles import report
from oddcycles.density import (
    DensityParams,
    check_density_exact,
    lemma_f_verify,
    weighted_min_exact,
)
from oddcycles.graph import Graph, complete
from oddcycles.homcount import blakley_roy_check
from oddcycles.verify import audit_proof_chain, verify_main_theorem

F = Fraction


def _results():
    g = complete(8)
    p = DensityParams(F(1, 2), F(1, 2))
    cert = check_density_exact(g, p)
    return [
        cert,
        check_density_exact(Graph.empty(6), p),
        weighted_min_exact(complete(5), DensityParams(F(1, 3), F(1, 2))),
        lemma_f_verify(g, p, cert, 5, 0),
        blakley_roy_check(g, 2),
        verify_main_theorem(g, p, 3),
        audit_proof_chain(g, p, 3),
    ]


@pytest.mark.parametrize("obj", _results(), ids=lambda o: type(o).__name__)
def test_text_and_json_agree(obj):
    text = report.to_text(obj)
    rec = json.loads(report.to_json(obj))
    lines = text.splitlines()
    assert [line.split(": ", 1)[0] for line in lines] == list(rec)
    assert all(": " in line for line in lines)


def test_rationals_print_as_p_over_q():
    rec = json.loads(report.to_json(weighted_min_exact(complete(5),
                                                       DensityParams(F(1, 3), F(1, 2)))))
    assert rec["omega"] == "-1/36"
    assert rec["minimizer"] == ["2/3", "1/1", "0/1", "0/1", "0/1"]
    text = report.to_text(check_density_exact(Graph.empty(6), DensityParams(F(1, 2), F(1, 2))))
    assert "witness: 0 1 2\n" in text and "d: 1/2\n" in text


def test_unknown_type():
    with pytest.raises(TypeError):
        report.to_text(object())
