"""Exact linear algebra over the prime field F_p on numpy integer arrays."""

import numpy as np


def is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def rref(a, p):
    """Reduced row echelon form mod ``p``; returns ``(R, pivot_columns)``."""
    r = np.array(a, dtype=np.int64) % p
    rows, cols = r.shape
    pivots = []
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        k = row + int(nz[0])
        if k != row:
            r[[row, k]] = r[[k, row]]
        inv = pow(int(r[row, col]), -1, p)
        r[row] = (r[row] * inv) % p
        for i in range(rows):
            if i != row and r[i, col]:
                r[i] = (r[i] - r[i, col] * r[row]) % p
        pivots.append(col)
        row += 1
    return r[:row], pivots


def rank(a, p):
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def inverse(a, p):
    a = np.asarray(a, dtype=np.int64) % p
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix is not square")
    if n == 0:
        return a.copy()
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    r, piv = rref(aug, p)
    if piv[:n] != list(range(n)) or len(piv) < n or piv[n - 1] >= n:
        raise ValueError("matrix is singular")
    return r[:, n:] % p


def cokernel(d, p):
    """Projection onto ``F_p^rows / colspace(d)`` and a section of it.

    The quotient is coordinatised by the non-pivot positions of the reduced
    row echelon basis of the image, so the result is canonical.
    """
    d = np.asarray(d, dtype=np.int64) % p
    n = d.shape[0]
    if d.size:
        basis, piv = rref(d.T, p)
    else:
        basis, piv = np.zeros((0, n), dtype=np.int64), []
    free = [j for j in range(n) if j not in set(piv)]
    proj = np.zeros((len(free), n), dtype=np.int64)
    pos = {j: k for k, j in enumerate(free)}
    for j in free:
        proj[pos[j], j] = 1
    for row, pc in enumerate(piv):
        # e_pc == basis_row - (other entries), all other pivots vanish in the row
        for j in free:
            proj[pos[j], pc] = (-basis[row, j]) % p
    section = np.zeros((n, len(free)), dtype=np.int64)
    for j in free:
        section[j, pos[j]] = 1
    return proj, section
