"""Independent reference implementations used only by the tests.

Nothing here imports the package's linear algebra or cube code: matrices are
plain lists of lists, and the Kauffman bracket is an independent state sum
over a planar braid closure.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


# -- dense integer linear algebra -------------------------------------------------

def dense_snf_divisors(a: list[list[int]]) -> list[int]:
    """Invariant factors of an integer matrix by the textbook algorithm:
    move a smallest nonzero entry to the corner, clear its row and column by
    division with remainder, fix divisibility, recurse on the minor."""
    m = [list(r) for r in a if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    keep = [j for j in range(ncols) if any(r[j] for r in m)]
    m = [[r[j] for j in keep] for r in m]
    out = []
    while m and m[0]:
        rows, cols = len(m), len(m[0])
        best = None
        for i in range(rows):
            ri = m[i]
            for j in range(cols):
                v = ri[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        m[0], m[i] = m[i], m[0]
        for r in m:
            r[0], r[j] = r[j], r[0]
        while True:
            p = m[0][0]
            done = True
            for i in range(1, len(m)):
                f = m[i][0] // p
                if f:
                    ri, r0 = m[i], m[0]
                    for j in range(len(r0)):
                        if r0[j]:
                            ri[j] -= f * r0[j]
                if m[i][0]:
                    done = False
            for j in range(1, len(m[0])):
                f = m[0][j] // p
                if f:
                    for r in m:
                        if r[0]:
                            r[j] -= f * r[0]
                if m[0][j]:
                    done = False
            if done:
                bad = next(((i, j) for i in range(1, len(m)) for j in range(1, len(m[0]))
                            if m[i][j] % p), None)
                if bad is None:
                    break
                i = bad[0]
                m[0] = [x + y for x, y in zip(m[0], m[i])]
                continue
            # a smaller remainder appeared in row/column 0: move it to the corner
            cand = [(abs(m[i][0]), i, 0) for i in range(len(m)) if m[i][0]]
            cand += [(abs(m[0][j]), 0, j) for j in range(len(m[0])) if m[0][j]]
            _, i, j = min(cand)
            m[0], m[i] = m[i], m[0]
            for r in m:
                r[0], r[j] = r[j], r[0]
        out.append(abs(m[0][0]))
        m = [r[1:] for r in m[1:]]
        m = [r for r in m if any(r)]
        if m:
            keep = [j for j in range(len(m[0])) if any(r[j] for r in m)]
            m = [[r[j] for j in keep] for r in m]
    return sorted(out)


def dense_rank(a: list[list]) -> int:
    """Rank over Q by Gaussian elimination with Fractions."""
    m = [[Fraction(x) for x in r] for r in a]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c] / m[rank][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def dense_kernel_basis(a: list[list], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : a v = 0} over Q."""
    m = [[Fraction(x) for x in r] for r in a]
    pivots = []
    row = 0
    for c in range(ncols):
        piv = next((i for i in range(row, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        pv = m[row][c]
        m[row] = [x / pv for x in m[row]]
        for i in range(len(m)):
            if i != row and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[row])]
        pivots.append(c)
        row += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(v)
    return basis


def complex_homology_q(dims: dict[int, int], d: dict[int, list[list[int]]]) -> dict[int, int]:
    """Rational Betti numbers of a complex given by dense differentials
    ``d[h]`` (rows = degree h+1)."""
    out = {}
    for h, n in dims.items():
        r_out = dense_rank(d[h]) if h in d and d[h] and d[h][0] else 0
        r_in = dense_rank(d[h - 1]) if h - 1 in d and d[h - 1] and d[h - 1][0] else 0
        if n - r_out - r_in:
            out[h] = n - r_out - r_in
    return out


def filtered_dims_bruteforce(qdeg: list[int], d_out: list[list[int]] | None,
                             d_in: list[list[int]] | None) -> dict[int, int]:
    """dim F_p H for a single degree, F_p = span of basis vectors with q >= p:
    dim(ker d_out restricted to F_p) - dim(im d_in intersected with F_p)."""
    n = len(qdeg)
    out = {}
    for p in sorted(set(qdeg)):
        idx = [i for i in range(n) if qdeg[i] >= p]
        low = [i for i in range(n) if qdeg[i] < p]
        if d_out:
            sub = [[row[i] for i in idx] for row in d_out]
            z = len(idx) - (dense_rank(sub) if sub and sub[0] else 0)
        else:
            z = len(idx)
        if d_in and d_in[0]:
            # image vectors whose low-q coordinates vanish
            k = len(d_in[0])
            cons = [[d_in[i][c] for c in range(k)] for i in low]
            if cons:
                ker = dense_kernel_basis(cons, k)
                imgs = [[sum(d_in[i][c] * v[c] for c in range(k)) for i in range(n)] for v in ker]
                b = dense_rank(imgs) if imgs else 0
            else:
                b = dense_rank(d_in)
        else:
            b = 0
        out[p] = z - b
    return out


# -- Kauffman bracket of a plane braid closure ----------------------------------------

def jones_euler_plane_braid(strands: int, letters: list[int]) -> dict[int, int]:
    """Unnormalised Jones polynomial (q + 1/q) J(L) of the plane closure of a
    braid, all strands upward, as {q power: coefficient}, via the state sum
    sum_v (-1)^{|v|} q^{|v|} (q + 1/q)^{#circles} times (-1)^{n-} q^{n+ - 2n-}.

    Circles are counted with a private union-find over strand segments.
    """
    L = len(letters)
    # segment (t, j): strand position j between crossing t-1 and t; t in 0..L-1 (cyclic)
    def seg(t, j):
        return (t % L) * strands + j

    # crossing signs for all-upward orientation are the letter signs
    n_plus = sum(1 for g in letters if g > 0)
    n_minus = L - n_plus
    poly: dict[int, int] = {}
    for bits in product((0, 1), repeat=L):
        parent = list(range(L * strands if L else strands))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for t, g in enumerate(letters):
            k = abs(g) - 1
            for j in range(strands):
                if j not in (k, k + 1):
                    union(seg(t, j), seg(t + 1, j))
            # A-smoothing of sigma (positive) joins the strands vertically;
            # for a negative letter the roles of the smoothings swap.
            vertical = (bits[t] == 0) == (g > 0)
            if vertical:
                union(seg(t, k), seg(t + 1, k))
                union(seg(t, k + 1), seg(t + 1, k + 1))
            else:
                union(seg(t, k), seg(t, k + 1))
                union(seg(t + 1, k), seg(t + 1, k + 1))
        if L == 0:
            circles = strands
        else:
            circles = len({find(x) for x in range(L * strands)})
        w = sum(bits)
        # (q + 1/q)^circles
        term = {0: 1}
        for _ in range(circles):
            nxt: dict[int, int] = {}
            for e, c in term.items():
                nxt[e + 1] = nxt.get(e + 1, 0) + c
                nxt[e - 1] = nxt.get(e - 1, 0) + c
            term = nxt
        sign = -1 if w % 2 else 1
        for e, c in term.items():
            key = e + w + n_plus - 2 * n_minus
            poly[key] = poly.get(key, 0) + sign * c
    sgn = -1 if n_minus % 2 else 1
    return {e: sgn * c for e, c in poly.items() if c}
