"""Irreducibility certificates: builders, aggregation, replay soundness."""

import copy
import json
import random

import pytest

from skeinrep.certificates import (
    CERTIFIED,
    CERTIFIED_MODULO_ASSUMPTION,
    FAILED,
    NOT_APPLICABLE,
    SCHEMA,
    VACUOUS,
    build_decomposition_graph,
    certify_four_punctures,
    certify_irreducible,
    certify_one_holed_torus,
    connectivity,
    induction_step_graph,
    multiplicity_free_check,
    replay_certificate,
    to_canonical_json,
)
from skeinrep.matrices import RingMatrix
from skeinrep.recoupling import fusion_matrix
from skeinrep.scalars import GENERIC, Scalar, a_power, root_of_unity

R5 = root_of_unity(5)
R7 = root_of_unity(7)


def test_multiplicity_free_check():
    vals = [a_power(GENERIC, k) for k in (0, 2, 6)]
    ok, wit = multiplicity_free_check(vals)
    assert ok and wit["duplicate"] is None
    ok, wit = multiplicity_free_check(vals + [a_power(GENERIC, 2)])
    assert not ok and wit["duplicate"] == [1, 3]
    with pytest.raises(ValueError):
        multiplicity_free_check([Scalar.zero(GENERIC)])


def test_multiplicity_free_check_unit_invariant():
    # ratios ignore a common unit, the freedom a projective action has
    rng = random.Random(8)
    vals = [a_power(GENERIC, k) + Scalar.one(GENERIC) for k in (2, 4, 8)]
    for _ in range(5):
        u = -a_power(GENERIC, rng.randint(-9, 9))
        ok, _ = multiplicity_free_check([u * v for v in vals])
        assert ok


def test_decomposition_graph_connectivity():
    F = fusion_matrix(1, 1, 1, 1, GENERIC)
    graph = build_decomposition_graph(F)
    assert set(graph.left) == {"L:0", "L:2"} and set(graph.right) == {"R:0", "R:2"}
    # every entry of this F is nonzero, so the graph is complete bipartite
    assert len(graph.edges) == 2 * F.n_rows * F.n_cols
    ok, comps = connectivity(graph, "undirected")
    assert ok and len(comps) == 1
    ok, comps = connectivity(graph, "strong")
    assert ok


def test_connectivity_detects_split():
    from skeinrep.certificates import DecompositionGraph

    graph = DecompositionGraph(
        left=("L:0", "L:2"),
        right=("R:0", "R:2"),
        edges=(("L:0", "R:0", {}), ("R:0", "L:0", {})),
    )
    ok, comps = connectivity(graph, "undirected")
    assert not ok and len(comps) == 3
    with pytest.raises(ValueError):
        connectivity(DecompositionGraph((), (), ()), "undirected")
    with pytest.raises(ValueError):
        connectivity(graph, "weak")


def test_four_punctures_certificate():
    cert = certify_four_punctures((1, 1, 1, 1), R5)
    assert cert.status == CERTIFIED
    names = [c.name for c in cert.checks]
    assert "decomposition-graph-connected:undirected" in names
    doc = cert.to_json()
    assert doc["schema"] == SCHEMA
    assert doc["instance"]["p"] == 5 and doc["instance"]["colors"] == [1, 1, 1, 1]
    # generic mode demands strong connectivity
    gen = certify_four_punctures((1, 1, 1, 1), GENERIC)
    assert gen.status == CERTIFIED
    assert "decomposition-graph-connected:strong" in [c.name for c in gen.checks]


def test_four_punctures_degenerate_dimensions():
    assert certify_four_punctures((1, 1, 3, 3), R5).status == VACUOUS  # dim 1
    assert certify_four_punctures((1, 1, 1, 2), R5).status == NOT_APPLICABLE  # dim 0


def test_one_holed_torus_certificate():
    cert = certify_one_holed_torus(7, 1)
    assert cert.status == CERTIFIED_MODULO_ASSUMPTION
    assert cert.assumptions
    names = [c.name for c in cert.checks]
    assert "twist-eigenvalues-distinct" in names
    status, problems = replay_certificate(cert.to_json())
    assert status == CERTIFIED_MODULO_ASSUMPTION and not problems
    with pytest.raises(ValueError):
        certify_one_holed_torus(7, 9)


def test_induction_steps():
    graph, cert = induction_step_graph("two_boundary", 5, 1, (1, 1))
    assert cert.status == CERTIFIED
    assert graph.left and graph.right
    graph, cert = induction_step_graph("closed", 5, 2)
    assert cert.status == CERTIFIED
    graph, cert = induction_step_graph("split", 7, 0, (1, 1, 1, 1, 2))
    assert cert.status == CERTIFIED
    for bad in (
        ("two_boundary", 5, 0, (1, 1)),
        ("closed", 5, 1, ()),
        ("split", 5, 0, ()),
        ("sideways", 5, 0, (1, 1)),
    ):
        with pytest.raises(ValueError):
            induction_step_graph(*bad)


def test_certify_irreducible_trees():
    cert = certify_irreducible(5, 0, 5, (1, 1, 1, 1, 2))
    assert cert.status == CERTIFIED
    assert cert.children  # split into smaller instances
    status, problems = replay_certificate(cert.to_json())
    assert status == CERTIFIED and not problems

    # genus: the torus leaves are cited, which caps the tree at modulo-assumption
    cert = certify_irreducible(5, 1, 2, (1, 1))
    assert cert.status == CERTIFIED_MODULO_ASSUMPTION
    status, problems = replay_certificate(cert.to_json())
    assert status == CERTIFIED_MODULO_ASSUMPTION and not problems

    cert = certify_irreducible(5, 2, 0, ())
    assert cert.status == CERTIFIED_MODULO_ASSUMPTION
    assert not replay_certificate(cert.to_json())[1]


def test_certify_irreducible_degenerate():
    assert certify_irreducible(5, 0, 4, (1, 1, 3, 3)).status == VACUOUS
    assert certify_irreducible(5, 0, 4, (1, 1, 1, 2)).status == NOT_APPLICABLE
    with pytest.raises(ValueError):
        certify_irreducible(5, 0, 4, (1, 1, 1))
    with pytest.raises(ValueError):
        certify_irreducible(5, 0, 4, (1, 1, 1, 9))
    with pytest.raises(ValueError):
        certify_irreducible(4, 0, 4, (1, 1, 1, 1))


def test_certify_irreducible_zero_and_max_colors():
    # zero colors are erased before the induction; p-2 colors are merged away
    cert = certify_irreducible(5, 0, 5, (1, 1, 1, 1, 0))
    assert cert.status in (CERTIFIED, CERTIFIED_MODULO_ASSUMPTION)
    assert not replay_certificate(cert.to_json())[1]
    cert = certify_irreducible(5, 0, 4, (3, 1, 1, 1))
    assert cert.status in (CERTIFIED, CERTIFIED_MODULO_ASSUMPTION, VACUOUS)
    assert not replay_certificate(cert.to_json())[1]


def test_replay_rejects_tampering():
    cert = certify_irreducible(5, 0, 5, (1, 1, 1, 1, 2))
    doc = cert.to_json()

    # claim a different status
    bad = copy.deepcopy(doc)
    bad["status"] = FAILED
    status, problems = replay_certificate(bad)
    assert problems

    # lie about a dimension inside a genus tree
    genus_doc = certify_irreducible(5, 1, 2, (1, 1)).to_json()
    bad_genus = copy.deepcopy(genus_doc)

    def bump_dimension(node):
        for check in node.get("checks", ()):
            wit = check.get("witness", {})
            if isinstance(wit, dict) and wit.get("kind") == "dimension":
                wit["value"] += 1
                wit["expected"] += 1
                return True
        return any(bump_dimension(ch) for ch in node.get("children", ()))

    assert bump_dimension(bad_genus)
    status, problems = replay_certificate(bad_genus)
    assert status == FAILED and problems

    # zero out a scalar that the certificate claims is nonzero
    bad = copy.deepcopy(doc)

    def kill_scalar(node):
        for check in node.get("checks", ()):
            wit = check.get("witness", {})
            if isinstance(wit, dict) and wit.get("kind") == "nonzero_scalars":
                blob = wit["entries"][0]["scalar"]
                coeffs = blob["coefficients"]
                if isinstance(coeffs, dict):
                    blob["coefficients"] = {}
                else:
                    blob["coefficients"] = ["0"] * len(coeffs)
                return True
        return any(kill_scalar(ch) for ch in node.get("children", ()))

    assert kill_scalar(bad)
    status, problems = replay_certificate(bad)
    assert status == FAILED and problems


def test_replay_rejects_unknown_schema():
    cert = certify_four_punctures((1, 1, 1, 1), R5)
    doc = cert.to_json()
    doc["schema"] = "something/else"
    status, problems = replay_certificate(doc)
    assert problems


def test_canonical_json_deterministic():
    cert = certify_irreducible(7, 0, 4, (1, 1, 3, 3))
    s1 = to_canonical_json(cert.to_json())
    s2 = to_canonical_json(certify_irreducible(7, 0, 4, (1, 1, 3, 3)).to_json())
    assert s1 == s2
    assert s1.endswith("\n")
    json.loads(s1)  # well-formed


def test_descent_terminates_everywhere():
    # every (g, b) reachable from small instances certifies or degenerates
    for p in (5, 7):
        for g, b, colors in ((0, 6, (1,) * 6), (1, 3, (1, 1, 2)), (2, 1, (2,))):
            cert = certify_irreducible(p, g, b, colors)
            assert cert.status in (
                CERTIFIED,
                CERTIFIED_MODULO_ASSUMPTION,
                VACUOUS,
                NOT_APPLICABLE,
            ), (p, g, b, colors, cert.status)
            assert not replay_certificate(cert.to_json())[1]
