import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rathyper.catalog import GESSEL_A, LAWRENCE_BLOCK, RUNNING_A, RUNNING_B, prop75_matrix
from rathyper.configuration import (
    B1,
    B2,
    B3,
    Configuration,
    analyze,
    classify_stable_rational,
    configuration_from_gale,
    detect_cayley,
    reduced_gale,
)
from rathyper.lattice import IntMatrix, integer_right_equivalent, kernel_basis

PYRAMID = IntMatrix([[1, 1, 1, 1, 1], [0, 1, 2, 3, 0], [0, 0, 0, 0, 1]])

CORPUS = {
    "running": (RUNNING_A, "CayleyEssential"),
    "lawrence": (LAWRENCE_BLOCK, "Lawrence"),
    "gessel": (GESSEL_A, "CayleyEssential"),
    "three-groups": (prop75_matrix(2, 3), "CayleyEssential"),
    "pyramid": (PYRAMID, "Pyramid"),
    "b2": (configuration_from_gale(B2).A, "NoStableRational"),
    "b3": (configuration_from_gale(B3).A, "NoStableRational"),
}


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_classification_corpus(name):
    A, tag = CORPUS[name]
    assert classify_stable_rational(Configuration(A)).tag == tag


def test_gale_dual_matches_running_basis():
    K = kernel_basis(RUNNING_A)
    assert integer_right_equivalent(K, RUNNING_B, unimodular=True, permute=False) is not None


def test_analysis_running():
    rep = analyze(Configuration(RUNNING_A))
    assert rep.codimension == 2 and rep.regular and not rep.pyramid and rep.lattice_index == 1


def test_cayley_running():
    cay = detect_cayley(Configuration(RUNNING_A))
    assert cay is not None
    assert (cay.s, cay.r) == (2, 1)
    assert sorted(cay.group_sizes) == [2, 3]
    assert cay.essential and not cay.lawrence


def test_lawrence_structure():
    cls = classify_stable_rational(Configuration(LAWRENCE_BLOCK))
    assert cls.cayley.lawrence
    assert len(cls.pairing) == 2


def test_reduced_gale_of_running():
    red, pairing = reduced_gale(RUNNING_B)
    assert pairing == [(0, 1)]
    assert red.rows == 3
    assert integer_right_equivalent(red, B1) is not None


def test_reduced_gale_b2_keeps_everything():
    red, pairing = reduced_gale(B2)
    assert pairing == [] and red.rows == 5


def test_rejects_rank_deficient():
    with pytest.raises(ValueError):
        Configuration(IntMatrix([[1, 1, 1], [2, 2, 2]]))


def test_classification_needs_codim_two():
    with pytest.raises(ValueError):
        classify_stable_rational(Configuration(IntMatrix([[1, 1, 1], [0, 1, 2]])))


def test_configuration_from_gale_roundtrip():
    for B in (B1, B2, B3, RUNNING_B):
        conf = configuration_from_gale(B)
        assert (conf.A @ B).is_zero()
        assert integer_right_equivalent(conf.gale, B, unimodular=True, permute=False) is not None


# -- invariance under unimodular changes of coordinates and relabelling ----------

def _elementary_product(d: int, ops) -> IntMatrix:
    G = [[int(i == j) for j in range(d)] for i in range(d)]
    for i, j, c, neg in ops:
        i, j = i % d, j % d
        if i != j:
            for k in range(d):
                G[i][k] += c * G[j][k]
        if neg:
            G[i] = [-x for x in G[i]]
    return IntMatrix(G)


ops_strategy = st.lists(
    st.tuples(st.integers(0, 6), st.integers(0, 6), st.integers(-3, 3), st.booleans()), max_size=6
)


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(sorted(CORPUS)), ops_strategy, st.randoms(use_true_random=False))
def test_classification_invariant_under_unimodular_change(name, ops, rnd):
    A, tag = CORPUS[name]
    G = _elementary_product(A.rows, ops)
    perm = list(range(A.cols))
    rnd.shuffle(perm)
    A2 = (G @ A).select_columns(perm)
    assert classify_stable_rational(Configuration(A2)).tag == tag


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(sorted(CORPUS)), ops_strategy)
def test_gale_change_of_basis_is_unimodular(name, ops):
    A, _ = CORPUS[name]
    K = kernel_basis(A)
    U = _elementary_product(2, ops)
    assert integer_right_equivalent(K @ U, K, unimodular=True, permute=False) is not None
