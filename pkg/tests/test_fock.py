from math import gcd

import numpy as np
import pytest

from braidlab import cyclotomic as cy
from braidlab.braid import Generic, RootOfUnity
from braidlab.cyclotomic import Cyclotomic
from braidlab.fock import (
    annihilation_total,
    creation_total,
    exchange_order,
    hamiltonian,
    ladder,
    nilpotency_index,
    parity_of_state,
    predicted_energies,
    slot_creation,
    spectrum,
    vacuum,
)
from braidlab.graded import Parity, StateVector, gl11_generators


def test_vacuum():
    assert vacuum(1).equals(StateVector.basis("0"))
    assert vacuum(3).support().tolist() == [0]
    assert vacuum(3).norm2().rational() == 1
    with pytest.raises(ValueError):
        vacuum(0)


def test_two_particle_creation_matrix():
    # slot-2 operator carries exp(-/+ i pi/s) at rows |01>,|11> from |00>,|10>
    s = 3
    Q = creation_total(RootOfUnity(1, s), 2)
    assert Q.parity is Parity.ODD
    A2 = slot_creation(RootOfUnity(1, s), 2, 2).mat
    assert A2[1, 0] == cy.root_of_unity(-1, 2 * s)
    assert A2[3, 2] == cy.root_of_unity(1, 2 * s)
    assert creation_total(RootOfUnity(1, s), 1).mat == gl11_generators()[2].mat


def test_annihilation():
    p = RootOfUnity(1, 3)
    assert (annihilation_total(p, 3) @ vacuum(3)).is_zero()
    assert annihilation_total(p, 3).dagger().equals(creation_total(p, 3))


def test_hamiltonian():
    assert hamiltonian(1).mat == Cyclotomic.from_int_array(np.diag([0, 1]))
    assert hamiltonian(2).mat == Cyclotomic.from_int_array(np.diag([0, 1, 1, 2]))
    diag = [bin(i).count("1") for i in range(16)]
    assert hamiltonian(4).mat == Cyclotomic.from_int_array(np.diag(diag))


def test_ladder_s3_n2():
    rep = ladder(RootOfUnity(1, 3), 2)
    assert [e.norm2.rational() for e in rep.entries[:3]] == [1, 2, 1]
    assert rep.truncation_index == 3
    # v_2 = (exp(i pi/3) + exp(-i pi/3)) |11> = |11>
    assert rep.states[2].equals(StateVector.basis("11"))


def test_pauli_exclusion():
    rep = ladder(RootOfUnity(1, 2), 2)
    assert rep.entries[2].vanished


def test_untruncated_minus_one():
    rep = ladder(Generic(cy.as_exact(-1)), 3)
    assert [e.vanished for e in rep.entries] == [False] * 4 + [True]


@pytest.mark.parametrize("s,N,top", [(3, 5, 2), (5, 3, 3)])
def test_spectrum_examples(s, N, top):
    assert spectrum(RootOfUnity(1, s), N).energies == list(range(top + 1))


def test_spectrum_generic():
    assert spectrum(Generic(cy.as_exact(-1)), 4).energies == [0, 1, 2, 3, 4]
    assert spectrum(Generic(cy.as_exact(2)), 5).energies == list(range(6))
    assert spectrum(Generic(2.0), 6).energies == list(range(7))


def test_plateau():
    assert spectrum(RootOfUnity(1, 3), 5).plateau == 2
    assert spectrum(RootOfUnity(1, 5), 3).plateau is None


def test_ladder_parity_alternates():
    for s in (3, 4, 5):
        rep = ladder(RootOfUnity(1, s), 5)
        for e, v in zip(rep.entries, rep.states):
            assert e.superselected
            if not e.vanished:
                assert parity_of_state(v) == e.n % 2


def test_vanishing_is_monotone():
    rep = ladder(RootOfUnity(2, 5), 6, n_max=9)
    flags = [e.vanished for e in rep.entries]
    assert flags == sorted(flags)


def test_nilpotency_small():
    assert nilpotency_index(RootOfUnity(1, 2), 2) == 2
    assert nilpotency_index(RootOfUnity(1, 3), 6) == 3
    assert nilpotency_index(RootOfUnity(1, 5), 3) == 4


def test_float_mode_agrees():
    for s in (3, 5):
        fl = spectrum(RootOfUnity(1, s, exact=False), 6)
        ex = spectrum(RootOfUnity(1, s), 6)
        assert fl.energies == ex.energies


def test_generic_root_truncates_at_order_of_minus_t():
    for p in [Generic(-cy.root_of_unity(1, 5)), Generic(-cy.root_of_unity(3, 7)), Generic(cy.root_of_unity(1, 5))]:
        m = exchange_order(p)
        for N in (3, 7):
            assert spectrum(p, N).energies == predicted_energies(p, N) == list(range(min(N, m - 1) + 1))
