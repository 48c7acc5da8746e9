"""Independent reference values for the C++ test suite.

Written directly from the definitions with sympy matrices and explicit
permutation signs, sharing no code with the library. Run with python3; the
printed numbers are the ones frozen in the tests.
"""
from fractions import Fraction
from itertools import combinations
from math import comb

import sympy as sp


def basis(N, p):
    return list(combinations(range(N), p))


def perm_sign(seq):
    seq = list(seq)
    s = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def bar(w):
    n = len(w) // 2
    return [w[n + i] for i in range(n)] + [-w[i] for i in range(n)]


def pair(u, v):
    return sum(a * b for a, b in zip(bar(u), v))


def unit(N, i):
    return [1 if j == i else 0 for j in range(N)]


def expand(vectors, N):
    """Coordinates of v_1 ^ ... ^ v_p in the monomial basis."""
    p = len(vectors)
    out = {}
    for idx in combinations(range(N), p):
        m = sp.Matrix([[vectors[a][i] for i in idx] for a in range(p)])
        d = m.det() if p else 1
        if d != 0:
            out[idx] = d
    return out


def derivation(A, N, p):
    B = basis(N, p)
    pos = {b: i for i, b in enumerate(B)}
    M = sp.zeros(len(B), len(B))
    for j, b in enumerate(B):
        for t in range(p):
            for r in range(N):
                a = A[r][b[t]]
                if a == 0:
                    continue
                new = list(b)
                new[t] = r
                if len(set(new)) < p:
                    continue
                M[pos[tuple(sorted(new))], j] += perm_sign(new) * a
    return M


def theta(N, p):
    src, dst = basis(N, p), basis(N, p - 2)
    pos = {b: i for i, b in enumerate(dst)}
    M = sp.zeros(len(dst), len(src))
    for j, b in enumerate(src):
        for a in range(p):
            for c in range(a + 1, p):
                f = pair(unit(N, b[a]), unit(N, b[c]))
                if f == 0:
                    continue
                rest = tuple(x for i, x in enumerate(b) if i not in (a, c))
                M[pos[rest], j] += (-1) ** ((a + 1) + (c + 1) - 1) * f
    return M


def wedge_left(x, N, p):
    src, dst = basis(N, p), basis(N, p + 1)
    pos = {b: i for i, b in enumerate(dst)}
    M = sp.zeros(len(dst), len(src))
    for j, b in enumerate(src):
        for i in range(N):
            if x[i] == 0 or i in b:
                continue
            seq = [i] + list(b)
            M[pos[tuple(sorted(seq))], j] += perm_sign(seq) * x[i]
    return M


def contraction(x, N, p):
    bx = bar(x)
    src, dst = basis(N, p), basis(N, p - 1)
    pos = {b: i for i, b in enumerate(dst)}
    M = sp.zeros(len(dst), len(src))
    for j, b in enumerate(src):
        for t in range(p):
            c = bx[b[t]]
            if c:
                M[pos[b[:t] + b[t + 1:]], j] += (-1) ** (t + 1) * c
    return M


def col_space(M):
    return sp.Matrix.hstack(*M.columnspace()) if M.rank() else sp.zeros(M.rows, 0)


def null_space(M):
    ns = M.nullspace()
    return sp.Matrix.hstack(*ns) if ns else sp.zeros(M.cols, 0)


def inter_dim(A, B):
    if A.cols == 0 or B.cols == 0:
        return 0
    return A.cols + B.cols - sp.Matrix.hstack(A, B).rank()


def fund(N, p):
    if p <= 1:
        return sp.eye(comb(N, p))
    return null_space(theta(N, p))


def family_dims(N, p, x):
    rk1 = [[x[i] * bar(x)[j] for j in range(N)] for i in range(N)]
    f = derivation(rk1, N, p)
    MIN = col_space(f)
    MAX = null_space(f)
    FULLW = col_space(wedge_left(x, N, p - 1)) if p >= 1 else None
    INT = col_space(contraction(x, N, p + 1)) if p < N else None
    out = {"MIN": MIN.cols, "MAX": MAX.cols}
    if FULLW is not None:
        out["FULLW"] = FULLW.cols
    if INT is not None:
        out["INT"] = INT.cols
    if 1 <= p <= N // 2:
        F = fund(N, p)
        out["MIN_F"] = inter_dim(MIN, F)
        out["MAX_F"] = inter_dim(MAX, F)
        if INT is not None:
            out["INT_F"] = inter_dim(INT, F)
    return out


def homology(N, p, x):
    rk1 = [[x[i] * bar(x)[j] for j in range(N)] for i in range(N)]
    f = derivation(rk1, N, p)
    out = {}
    ker = comb(N, p) if p == N else comb(N, p) - wedge_left(x, N, p).rank()
    im = 0 if p == 0 else wedge_left(x, N, p - 1).rank()
    out["DERHAM"] = ker - im
    ker = 1 if p == 0 else comb(N, p) - contraction(x, N, p).rank()
    im = 0 if p == N else contraction(x, N, p + 1).rank()
    out["TCHAIN"] = ker - im
    if 1 <= p <= N // 2:
        out["FSQ"] = comb(N, p) - 2 * f.rank()
        F = fund(N, p)
        fF = f * F
        out["FSQ_FUND"] = (F.cols - fF.rank()) - fF.rank()
    return out


def main():
    print("fundamental dims")
    for N in (2, 4, 6, 8):
        for p in range(1, N // 2 + 1):
            print(f"  N={N} p={p} dim={fund(N, p).cols}")
    print("theta_{n+1} ranks")
    for N in (2, 4, 6, 8):
        n = N // 2
        print(f"  N={N} rank={theta(N, n + 1).rank()}")

    print("map examples at k+beta = e1, N = 4")
    e1 = unit(4, 0)
    print("  T_1 on e3:", list(contraction(e1, 4, 1)[:, 2]))
    rk1 = [[e1[i] * bar(e1)[j] for j in range(4)] for i in range(4)]
    print("  f_1 on e3:", list(derivation(rk1, 4, 1)[:, 2]))
    print("  pi_0 on 1:", list(wedge_left(e1, 4, 0)[:, 0]))

    degrees = {
        4: [[1, 0, 0, 0], [1, -1, 0, 2], [Fraction(1, 2), 0, 0, 0], [Fraction(3, 2), 1, -1, 0]],
        6: [[1, 0, 0, 0, 0, 0], [1, -1, 0, 1, 0, 1], [Fraction(1, 2), 1, 0, 0, -1, 0]],
    }
    print("family dims")
    for N, xs in degrees.items():
        for x in xs:
            for p in range(0, N + 1):
                print(f"  N={N} x={[str(t) for t in x]} p={p} {family_dims(N, p, x)}")
    print("homology")
    for N, xs in degrees.items():
        for x in xs[:1]:
            for p in range(0, N + 1):
                print(f"  N={N} p={p} {homology(N, p, x)}")


if __name__ == "__main__":
    main()
