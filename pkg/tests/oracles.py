"""Independent reference implementations used to derive expected values.

Nothing here imports the package: words are plain lists of signed letters,
ranks come from Fraction elimination, covers are enumerated by brute force.
"""

from fractions import Fraction
from itertools import product
from math import gcd


def reduce_letters(letters):
    out = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def letters_of(word):
    """Expand a package Word into signed unit letters (+g / -g)."""
    out = []
    for g, e in word.letters:
        out += [g if e > 0 else -g] * abs(e)
    return out


def rank_q(rows):
    """Rank over Q by Fraction Gaussian elimination."""
    M = [[Fraction(int(x)) for x in row] for row in rows]
    rank, ncols = 0, len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(len(M)):
            if r != rank and M[r][c] != 0:
                f = M[r][c] / M[rank][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank


def rank_p(rows, p):
    M = [[int(x) % p for x in row] for row in rows]
    rank, ncols = 0, len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], -1, p)
        M[rank] = [a * inv % p for a in M[rank]]
        for r in range(len(M)):
            if r != rank and M[r][c]:
                f = M[r][c]
                M[r] = [(a - f * b) % p for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank


def _image(s, k, kind, g):
    """Image of generator index g (1..s-1, or s) as a tuple."""
    if kind == "full":
        if g == s:
            return tuple([(-1) % k] * (s - 1))
        return tuple(1 if i == g - 1 else 0 for i in range(s - 1))
    return (1 % k,) if g < s else ((-(s - 1)) % k,)


def _add(a, b, k):
    return tuple((x + y) % k for x, y in zip(a, b))


def schreier_count(s, k, kind):
    """Count nontrivial gamma(t, x) by brute force with monomial transversal."""
    r = s - 1
    labels = list(product(range(k), repeat=r)) if kind == "full" else [(i,) for i in range(k)]

    def rep(lab):
        if kind == "full":
            out = []
            for g, e in enumerate(lab, start=1):
                out += [g] * e
            return out
        return [1] * lab[0]

    count = 0
    for lab in labels:
        for x in range(1, r + 1):
            target = _add(lab, _image(s, k, kind, x), k)
            w = reduce_letters(rep(lab) + [x] + [-g for g in reversed(rep(target))])
            count += bool(w)
    return count


def riemann_hurwitz_2g(s, k, kind):
    """2g from the branching data of x_1..x_s in the deck group."""
    order = k ** (s - 1) if kind == "full" else k
    total = -2 * order
    for j in range(1, s + 1):
        img = _image(s, k, kind, j)
        ord_j = k // gcd(k, gcd(*img)) if any(img) else 1
        total += order - order // ord_j
    return total + 2


def C_value(index, k):
    full = list(index) + [sum(index) % k]
    z = sum(1 for a in full if a == 0)
    s = len(full)
    if not any(index):
        return s - z
    return s - z - 2


def group_elements(k, r):
    return list(product(range(k), repeat=r))


def regular_matrix(coeffs, k, r):
    """Left multiplication by sum c_g g on Z[(Z/k)^r], lexicographic basis."""
    elems = group_elements(k, r)
    idx = {g: i for i, g in enumerate(elems)}
    n = len(elems)
    M = [[0] * n for _ in range(n)]
    for g, c in coeffs.items():
        for col, h in enumerate(elems):
            M[idx[_add(g, h, k)]][col] += c
    return M


def alexander_expanded(s, k, kind):
    """Closed-form Q assembled from scratch as a nested list."""
    r = s - 1 if kind == "full" else 1
    n = k**r
    rows = [[0] * ((s + 1) * n) for _ in range(s * n)]
    prefix = (0,) * r

    def put(R, C, M):
        for i in range(n):
            for j in range(n):
                rows[R * n + i][C * n + j] = M[i][j]

    for j in range(1, s + 1):
        img = _image(s, k, kind, j)
        coeffs, h = {}, (0,) * r
        for _ in range(k):
            coeffs[h] = coeffs.get(h, 0) + 1
            h = _add(h, img, k)
        put(j - 1, j - 1, regular_matrix(coeffs, k, r))
        put(j - 1, s, regular_matrix({prefix: 1}, k, r))
        prefix = _add(prefix, img, k)
    return rows


def magnus_multiply(a, b, d):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            if len(m1) + len(m2) <= d:
                out[m1 + m2] = out.get(m1 + m2, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def magnus_letters(letters, d):
    """Magnus expansion by multiplying unit factors (1 + u) or (1 - u + u^2 - ...)."""
    out = {(): 1}
    for x in letters:
        g = abs(x)
        if x > 0:
            factor = {(): 1, (g,): 1}
        else:
            factor = {(g,) * m: (-1) ** m for m in range(d + 1)}
        out = magnus_multiply(out, factor, d)
    return out
