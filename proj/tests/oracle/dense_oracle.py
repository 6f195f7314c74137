"""Brute-force dense oracle for the frozen constants in the C++ test suites.

Plain numpy/scipy, no use of the library. Run: python3 tests/oracle/dense_oracle.py
"""
import itertools

import numpy as np

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
LET = {"I": I2, "X": X, "Y": Y, "Z": Z}


def pauli(n, letters):
    m = np.array([[1]], dtype=complex)
    for s in range(1, n + 1):
        m = np.kron(m, LET[letters.get(s, "I")])
    return m


def ham(n, terms):
    """terms: list of (coefficient, "Z1 X3")."""
    h = np.zeros((2**n, 2**n), dtype=complex)
    for c, word in terms:
        letters = {int(f[1:]): f[0] for f in word.split()}
        h += c * pauli(n, letters)
    return h


def comm(a, b):
    return a @ b - b @ a


def embed(local, sites, n):
    """local acts on `sites` (ascending, 1-based); permute into place."""
    k = len(sites)
    others = [s for s in range(1, n + 1) if s not in sites]
    full = np.kron(local, np.eye(2 ** (n - k)))
    order = list(sites) + others  # qubit positions of the kron factors
    perm = [order.index(s) for s in range(1, n + 1)]
    t = full.reshape([2] * (2 * n))
    t = t.transpose(perm + [p + n for p in perm])
    return t.reshape(2**n, 2**n)


def kdq(h, rho, meas):
    """meas: list of (projectors_full, time), any order; sorted here (stable)."""
    meas = sorted(meas, key=lambda m: m[1])
    w, v = np.linalg.eigh(h)
    heis = []
    for projs, t in meas:
        u = v @ np.diag(np.exp(-1j * t * w)) @ v.conj().T
        heis.append([u.conj().T @ p @ u for p in projs])
    shape = [len(p) for p in heis]
    q = np.zeros(shape, dtype=complex)
    tpm = np.zeros(shape)
    for idx in itertools.product(*[range(s) for s in shape]):
        m = rho.copy()
        s = rho.copy()
        for k, i in enumerate(idx):
            m = heis[k][i] @ m
            s = heis[k][i] @ s @ heis[k][i]
        q[idx] = np.trace(m)
        tpm[idx] = np.trace(s).real
    return q, tpm


def algebra_checks():
    a = pauli(2, {1: "X", 2: "Z"})
    b = pauli(2, {1: "Z", 2: "X"})
    print("XZ*ZX == YY:", np.allclose(a @ b, pauli(2, {1: "Y", 2: "Y"})))
    r = comm(pauli(2, {1: "X", 2: "X"}), pauli(2, {2: "Z"}))
    print("[XX, Z2] == -2i X1 Y2:", np.allclose(r, -2j * pauli(2, {1: "X", 2: "Y"})))
    sa, sb, hc = pauli(4, {3: "Z"}), pauli(4, {4: "Z"}), pauli(4, {3: "X", 4: "X"})
    print("[S^A,S^B] = 0:", np.allclose(comm(sa, sb), 0))
    w = comm(sa, comm(hc, sb))
    print("[Z3,[X3X4,Z4]] == 4 Y3Y4:", np.allclose(w, 4 * pauli(4, {3: "Y", 4: "Y"})))
    print("  normalized HS norm:", np.linalg.norm(w) / 4.0)


def witness_instance():
    """Named product states and bases; keep the setting with largest |Im q|."""
    h = ham(3, [(1, "Z1 X3"), (1, "X2 Z3")])
    kets = {
        "0": np.array([1, 0], dtype=complex),
        "+": np.array([1, 1], dtype=complex) / np.sqrt(2),
        "+i": np.array([1, 1j], dtype=complex) / np.sqrt(2),
    }
    bases = {
        "Z": np.eye(2, dtype=complex),
        "X": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
        "Y": np.array([[1, 1], [1j, -1j]], dtype=complex) / np.sqrt(2),
    }
    best = None
    for ka, kb, kc in itertools.product(kets, repeat=3):
        psi = np.kron(np.kron(kets[ka], kets[kb]), kets[kc])
        rho = np.outer(psi, psi.conj())
        for ba, bb in itertools.product(bases, repeat=2):
            pa = [embed(np.outer(bases[ba][:, k], bases[ba][:, k].conj()), [1], 3) for k in range(2)]
            pb = [embed(np.outer(bases[bb][:, k], bases[bb][:, k].conj()), [2], 3) for k in range(2)]
            q, tpm = kdq(h, rho, [(pa, 0.0), (pb, 1.0)])
            im = np.abs(q.imag).max()
            if best is None or im > best[0] + 1e-12:
                best = (im, ka, kb, kc, ba, bb, q, tpm)
    im, ka, kb, kc, ba, bb, q, tpm = best
    print(f"instance: |{ka}>|{kb}>|{kc}>, A basis {ba} at t=0, B basis {bb} at t=1")
    print("  q   =", [[repr(complex(x)) for x in row] for row in q])
    print("  tpm =", [[repr(float(x)) for x in row] for row in tpm])
    print("  max|Im q| =", repr(im), " residual =", repr(np.abs(q - tpm).sum()),
          " l1neg =", repr(np.abs(q).sum() - 1))


# name -> (n_sites, blocks, terms); mirrors tests/support/zoo.hpp
COMPATIBLE = {
    "shared-z": (3, {"A": [1], "B": [2]}, [(1, "Z1 Z3"), (1, "X2 Z3")]),
    "uncoupled": (2, {"A": [1], "B": [2]}, [(0.8, "X1"), (0.3, "Z1"), (1.1, "Y2"), (-0.4, "Z2")]),
    "shared-z-dressed": (4, {"A": [1], "B": [2]},
                         [(1, "Z1 Z3"), (1, "X2 Z3"), (0.6, "Z3"), (0.5, "Y1"), (0.9, "X2"),
                          (1, "Z3 Z4"), (0.3, "X4")]),
    "parity-mediator": (4, {"A": [1], "B": [2]}, [(1, "Z1 Z3 Z4"), (1, "Y2 Z3"), (1, "X3 X4")]),
    "two-channel": (4, {"A": [1], "B": [2]},
                    [(1, "X1 Z3"), (1, "X2 Z3"), (1, "X1 Z4"), (0.3, "Z3 Z4"), (0.7, "Y2")]),
}
INCOMPATIBLE = {
    "zx-conflict": (3, {"A": [1], "B": [2]}, [(1, "Z1 X3"), (1, "X2 Z3")]),
    "mediated-depth2": (4, {"A": [1], "B": [2]}, [(1, "Z1 Z3"), (1, "X2 Z4"), (1, "X3 X4")]),
    "two-couplings": (3, {"A": [1], "B": [2]}, [(1, "X1 X3"), (1, "Z1 Z3"), (1, "Z2 Z3")]),
    "yy-mediated": (4, {"A": [1], "B": [2]},
                    [(1, "Z1 Y3"), (1, "Z2 Y4"), (1, "X3 X4"), (1, "Z3 Z4")]),
    "wide-block": (4, {"A": [1, 2], "B": [3]}, [(1, "Z1 Z2 Z4"), (1, "X3 X4"), (0.3, "Y1")]),
}


def calibrate(name, n, blocks, terms, samples=1000, seed=2026):
    rng = np.random.default_rng(seed)

    def haar(d):
        z = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))) / np.sqrt(2)
        qm, rr = np.linalg.qr(z)
        return qm * (np.diag(rr) / np.abs(np.diag(rr)))

    h = ham(n, terms)
    names = sorted(blocks)
    best = 0.0
    for k in range(samples):
        meas = []
        for b in names[:2]:
            d = 2 ** len(blocks[b])
            u = haar(d)
            projs = [embed(np.outer(u[:, c], u[:, c].conj()), blocks[b], n) for c in range(d)]
            meas.append((projs, rng.uniform(0, 10)))
        if k % 2:
            psi = haar(2**n)[:, 0]
        else:
            psi = np.array([1], dtype=complex)
            for _ in range(n):
                psi = np.kron(psi, haar(2)[:, 0])
        q, _ = kdq(h, np.outer(psi, psi.conj()), meas)
        best = max(best, np.abs(q.imag).max(), -q.real.min(), np.abs(q).sum() - 1)
    print(f"calibration {name:18s}: best over {samples} samples, t in [0, 10] = {best:.6g}")


def main():
    np.set_printoptions(precision=17)
    algebra_checks()
    witness_instance()
    for name, model in {**COMPATIBLE, **INCOMPATIBLE}.items():
        calibrate(name, *model)


if __name__ == "__main__":
    main()
