import math

import numpy as np
import pytest

import cohdist


def plus(d=2):
    v = np.full(d, 1 / math.sqrt(d), dtype=complex)
    return np.outer(v, v.conj())


def block_pair():
    a = np.array([math.sqrt(0.8), math.sqrt(0.2)], dtype=complex)
    b = np.array([math.sqrt(0.7), 1j * math.sqrt(0.3)])
    rho = np.zeros((4, 4), dtype=complex)
    rho[:2, :2] = 0.5 * np.outer(a, a.conj())
    rho[2:, 2:] = 0.5 * np.outer(b, b.conj())
    return rho


def test_lattice_instance():
    assert cohdist.join([[0.5, 0.2, 0.2, 0.1], [0.31, 0.31, 0.31, 0.07]]) == pytest.approx(
        [0.5, 0.215, 0.215, 0.07], abs=1e-12
    )
    assert cohdist.meet([[0.6, 0.25, 0.15], [0.5, 0.45, 0.05]]) == pytest.approx([0.5, 0.35, 0.15], abs=1e-12)
    assert cohdist.majorizes([0.7, 0.2, 0.1], [0.5, 0.3, 0.2])
    assert not cohdist.majorizes([0.5, 0.3, 0.2], [0.7, 0.2, 0.1])


def test_n_max_report():
    report = cohdist.n_max([plus()] * 3)
    assert report["n_max"] == 3
    assert report["distillable_to_pure"]
    assert not report["bound_state"]
    mixed = cohdist.n_max([np.eye(2) / 2])
    assert mixed["n_max"] == 0 and mixed["bound_state"] and mixed["join_target"] is None


def test_decomposition_and_candidates():
    dec = cohdist.block_decompose(block_pair())
    assert len(dec["blocks"]) == 2
    assert [b["weight"] for b in dec["blocks"]] == pytest.approx([0.5, 0.5])
    cands = cohdist.candidates(block_pair())
    assert [c["indices"] for c in cands] == [[0, 1], [2, 3]]
    a = cohdist.comparison_matrix(block_pair())
    assert a[0, 1] == pytest.approx(1.0) and a[0, 2] == 0.0


def test_channel_reaches_target():
    phi = np.array([math.sqrt(0.85), math.sqrt(0.15)], dtype=complex)
    assert cohdist.can_transform_to(block_pair(), phi)
    kraus = cohdist.distillation_channel(block_pair(), phi)
    assert all(cohdist.is_strictly_incoherent(k) for k in kraus)
    total = sum(k.conj().T @ k for k in kraus)
    assert np.abs(total - np.eye(4)).max() < 1e-9
    out = cohdist.apply_channel(kraus, block_pair())
    assert np.abs(out - np.outer(phi, phi.conj())).max() < 1e-9
    assert not cohdist.can_transform_to(block_pair(), np.array([math.sqrt(0.75), math.sqrt(0.25)], dtype=complex))


def test_errors_carry_a_kind():
    with pytest.raises(cohdist.CohdistError) as info:
        cohdist.validate(np.array([[0.5, 0.1], [0.2, 0.5]], dtype=complex))
    assert info.value.kind == "NotHermitian"
    with pytest.raises(cohdist.CohdistError) as info:
        cohdist.n_max([plus()] * 3, dim_cap=4)
    assert info.value.kind == "DimensionOverflow"
    with pytest.raises(ValueError):
        cohdist.distillation_channel(np.eye(2) / 2, np.array([1, 1], dtype=complex) / math.sqrt(2))
