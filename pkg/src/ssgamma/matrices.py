"""Matrices over Q_p: split odd orthogonal groups, named elements,
Iwahori filtration predicates, and the double-coset solver behind the
explicit Whittaker functions.

Conventions: SO_m is defined by det = 1 and tg J g = J with J the
antidiagonal of ones.  The Iwahori predicates are concrete
entry-valuation tests:

  I    : integral, upper triangular with unit diagonal mod p
  I+   : integral, unipotent upper triangular mod p
  I++  : I+ and additionally g[i][i+1] in p for i = 1..l and
         g[2l][1] in p^2 (the simple affine entries, 1-indexed)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .padic import PAdicNumber, rational_valuation, INF

F0 = Fraction(0)
F1 = Fraction(1)


class MatrixError(Exception):
    pass


class BadDimension(MatrixError):
    pass


class SingularMatrix(MatrixError):
    pass


class NotInGroup(MatrixError):
    pass


# ---------------------------------------------------------------------------
# plain Fraction matrix helpers (row-major lists of lists)


def mat_identity(n):
    return [[F1 if i == j else F0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, m, k = len(a), len(b[0]), len(b)
    out = [[F0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                for j in range(m):
                    if bt[j]:
                        oi[j] += x * bt[j]
    return out

def mat_transpose(a):
    return [list(col) for col in zip(*a)]


def mat_det(a):
    """Determinant by fraction Gaussian elimination, exact."""
    n = len(a)
    m = [row[:] for row in a]
    det = F1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return F0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = F1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def mat_inv(a):
    n = len(a)
    m = [row[:] + ident_row for row, ident_row in zip([r[:] for r in a], mat_identity(n))]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        inv = F1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupMatrix:
    """A square matrix over Q_p tagged with its ambient group."""

    rows: tuple
    prime: int
    ambient: str  # "GL" | "SO_odd" | "SO_even"

    @staticmethod
    def make(rows, prime, ambient="GL", verify=True) -> "GroupMatrix":
        rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise BadDimension("matrix must be square")
        g = GroupMatrix(rows, prime, ambient)
        if verify:
            if ambient == "GL":
                if mat_det(g.lists()) == 0:
                    raise NotInGroup("GL matrix must be invertible")
            elif ambient in ("SO_odd", "SO_even"):
                if ambient == "SO_odd" and n % 2 == 0:
                    raise BadDimension("SO_odd needs odd size")
                if ambient == "SO_even" and n % 2 == 1:
                    raise BadDimension("SO_even needs even size")
                if not so_check(g):
                    raise NotInGroup("matrix fails the special orthogonal conditions")
        return g

    @property
    def size(self):
        return len(self.rows)

    def lists(self):
        return [list(r) for r in self.rows]

    def entry(self, i, j) -> PAdicNumber:
        return PAdicNumber(self.rows[i][j], self.prime)

    def __mul__(self, other: "GroupMatrix") -> "GroupMatrix":
        if self.size != other.size or self.prime != other.prime:
            raise BadDimension("size or prime mismatch")
        amb = self.ambient if self.ambient == other.ambient else "GL"
        return GroupMatrix(
            tuple(tuple(r) for r in mat_mul(self.lists(), other.lists())), self.prime, amb
        )

    def inv(self) -> "GroupMatrix":
        return GroupMatrix(tuple(tuple(r) for r in mat_inv(self.lists())), self.prime, self.ambient)

    def transpose(self) -> "GroupMatrix":
        return GroupMatrix(tuple(zip(*self.rows)), self.prime, self.ambient)

    def det(self) -> Fraction:
        return mat_det(self.lists())

    def star(self) -> "GroupMatrix":
        """g* = J tg^(-1) J."""
        n = self.size
        ti = mat_inv(mat_transpose(self.lists()))
        rows = tuple(tuple(ti[n - 1 - i][n - 1 - j] for j in range(n)) for i in range(n))
        return GroupMatrix(rows, self.prime, self.ambient)

    def is_identity(self) -> bool:
        return self.rows == tuple(tuple(mat_identity(self.size)[i]) for i in range(self.size))

    def to_dict(self):
        return {
            "ambient": self.ambient,
            "size": self.size,
            "prime": self.prime,
            "entries": [str(x) for r in self.rows for x in r],
        }

    @staticmethod
    def from_dict(d) -> "GroupMatrix":
        n = d["size"]
        ent = [Fraction(x) for x in d["entries"]]
        rows = [ent[i * n : (i + 1) * n] for i in range(n)]
        return GroupMatrix.make(rows, d["prime"], d["ambient"])

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"GroupMatrix[{self.ambient}]({body})"


def so_check(g: GroupMatrix) -> bool:
    """det(g) = 1 and tg J g = J, both exact."""
    n = g.size
    a = g.lists()
    if mat_det(a) != 1:
        return False
    # (tg J g)[i][j] = sum_t a[t][i] * a[n-1-t][j]
    for i in range(n):
        for j in range(n):
            s = sum(a[t][i] * a[n - 1 - t][j] for t in range(n))
            if s != (F1 if i + j == n - 1 else F0):
                return False
    return True


# ---------------------------------------------------------------------------
# named elements


def _ell_of_size(n):
    if n % 2 == 0:
        raise BadDimension("expected odd size")
    return (n - 1) // 2


def g_chi_so(ell: int, prime: int) -> GroupMatrix:
    """The normalizer of I+ attached to the affine generic character: the
    antidiagonal-corner element with pi^(-1), -1 block, pi; squares to 1."""
    n = 2 * ell + 1
    rows = [[F0] * n for _ in range(n)]
    rows[0][n - 1] = Fraction(1, prime)
    rows[n - 1][0] = Fraction(prime)
    for i in range(1, n - 1):
        rows[i][i] = Fraction(-1)
    return GroupMatrix.make(rows, prime, "SO_odd")


def g_chi_gl(n: int, prime: int) -> GroupMatrix:
    """Superdiagonal ones with pi in the lower-left corner."""
    rows = [[F0] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i][i + 1] = F1
    rows[n - 1][0] = Fraction(prime)
    return GroupMatrix.make(rows, prime, "GL")


def delta_o(ell: int, prime: int) -> GroupMatrix:
    """diag(I_l, -1, I_l); det = -1 so tagged GL."""
    n = 2 * ell + 1
    rows = mat_identity(n)
    rows[ell][ell] = Fraction(-1)
    return GroupMatrix.make(rows, prime, "GL")


def c_hat(n: int, ell: int, prime: int) -> GroupMatrix:
    """diag(I_n, -I_(l-n), 1, -I_(l-n), I_n) in SO_(2l+1)."""
    if n > ell:
        raise BadDimension("need n <= l")
    size = 2 * ell + 1
    rows = mat_identity(size)
    for i in list(range(n, ell)) + list(range(ell + 1, 2 * ell + 1 - n)):
        rows[i][i] = Fraction(-1)
    return GroupMatrix.make(rows, prime, "SO_odd")


def omega_prime(n: int, ell: int, prime: int) -> GroupMatrix:
    """The permutation swapping slots n and 2l+2-n (identity elsewhere)."""
    if n > ell:
        raise BadDimension("need n <= l")
    size = 2 * ell + 1
    rows = mat_identity(size)
    i, j = n - 1, size - n
    rows[i][i] = rows[j][j] = F0
    rows[i][j] = rows[j][i] = F1
    return GroupMatrix.make(rows, prime, "GL")


def omega_swap(n: int, prime: int) -> GroupMatrix:
    """The 2n x 2n permutation swapping the two middle slots."""
    size = 2 * n
    rows = mat_identity(size)
    i, j = n - 1, n
    rows[i][i] = rows[j][j] = F0
    rows[i][j] = rows[j][i] = F1
    return GroupMatrix.make(rows, prime, "GL")


def w_element(n: int, prime: int) -> GroupMatrix:
    """Product of the two block antidiagonal involutions in SO_2n (n odd)."""
    if n % 2 == 0:
        raise BadDimension("defined for odd n")
    size = 2 * n
    a = [[F0] * size for _ in range(size)]
    for i in range(n):
        a[i][n + i] = F1
        a[n + i][i] = F1
    b = mat_identity(size)
    b[0][0] = b[size - 1][size - 1] = F0
    b[0][size - 1] = b[size - 1][0] = F1
    return GroupMatrix.make(mat_mul(a, b), prime, "SO_even")


def b_element(n: int, prime: int) -> GroupMatrix:
    """diag(1, -1, ..., -1, 1) in GL_n; the n = 1 degenerate case is (-1),
    which is what the dual integral's section slot actually requires."""
    if n == 1:
        return GroupMatrix.make([[Fraction(-1)]], prime, "GL")
    rows = mat_identity(n)
    for i in range(1, n - 1):
        rows[i][i] = Fraction(-1)
    return GroupMatrix.make(rows, prime, "GL")


def torus_so2(a, prime: int) -> GroupMatrix:
    a = Fraction(a.value if isinstance(a, PAdicNumber) else a)
    if a == 0:
        raise NotInGroup("torus parameter must be nonzero")
    return GroupMatrix.make([[a, F0], [F0, 1 / a]], prime, "SO_even")


def w_long(n: int, prime: int) -> GroupMatrix:
    rows = [[F1 if i + j == n - 1 else F0 for j in range(n)] for i in range(n)]
    return GroupMatrix.make(rows, prime, "GL")


NAMED = {
    "g_chi_so": g_chi_so,
    "g_chi_gl": g_chi_gl,
    "delta_o": delta_o,
    "c_hat": c_hat,
    "omega_prime": omega_prime,
    "omega": omega_swap,
    "w_n": w_element,
    "b_n": b_element,
    "torus_so2": torus_so2,
}


def named_element(name: str, prime: int, **params) -> GroupMatrix:
    if name not in NAMED:
        raise ValueError(f"unknown named element {name!r}")
    return NAMED[name](prime=prime, **params)


def embed_j(h: GroupMatrix, ell: int) -> GroupMatrix:
    """Block embedding SO_2n -> SO_(2l+1): corners around a middle identity."""
    if h.size % 2:
        raise BadDimension("expected an even-size matrix")
    n = h.size // 2
    if n > ell:
        raise BadDimension("need n <= l")
    size = 2 * ell + 1
    mid = 2 * (ell - n) + 1
    rows = [[F0] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            rows[i][j] = h.rows[i][j]
            rows[i][n + mid + j] = h.rows[i][n + j]
            rows[n + mid + i][j] = h.rows[n + i][j]
            rows[n + mid + i][n + mid + j] = h.rows[n + i][n + j]
    for i in range(n, n + mid):
        rows[i][i] = F1
    return GroupMatrix.make(rows, h.prime, "SO_odd", verify=False)


def xbar(y, ell: int, prime: int, verify: bool = False) -> GroupMatrix:
    """The unipotent of SO_(2l+1) with column y below the (1,1) entry:
    rows 2..l of column 1 carry y, and the bottom row carries the
    form-forced partner y'_k = -y_(l-k) in columns l+2..2l."""
    y = [Fraction(v.value if isinstance(v, PAdicNumber) else v) for v in y]
    if len(y) != ell - 1:
        raise BadDimension(f"need {ell - 1} coordinates")
    size = 2 * ell + 1
    rows = mat_identity(size)
    for i, c in enumerate(y):
        rows[1 + i][0] = c
    for k in range(1, ell):
        rows[size - 1][ell + 1 + k - 1] = -y[ell - k - 1]
    return GroupMatrix.make(rows, prime, "SO_odd", verify=verify)


# ---------------------------------------------------------------------------
# Iwahori filtration predicates


def _val(x: Fraction, p: int):
    return rational_valuation(x, p)


def iwahori_test(g: GroupMatrix, level: str) -> bool:
    """Entry-valuation test for I, I+ or I++ (odd size; l from the size)."""
    n = g.size
    p = g.prime
    a = g.rows
    for i in range(n):
        for j in range(n):
            v = _val(a[i][j], p)
            if v < 0:
                return False
            if i > j and v < 1:
                return False
        dv = _val(a[i][i] - 1, p)
        if level in ("I+", "I++"):
            if dv < 1:
                return False
        else:
            if _val(a[i][i], p) != 0:
                return False
    if level == "I++":
        ell = _ell_of_size(n)
        for i in range(ell):
            if _val(a[i][i + 1], p) < 1:
                return False
        if _val(a[2 * ell - 1][0], p) < 2:
            return False
    return True


def iwahori_test_gl(g: GroupMatrix) -> bool:
    """The I+ predicate for GL_n (integral, unipotent upper mod p)."""
    n, p, a = g.size, g.prime, g.rows
    for i in range(n):
        if _val(a[i][i] - 1, p) < 1:
            return False
        for j in range(n):
            v = _val(a[i][j], p)
            if v < 0 or (i > j and v < 1):
                return False
    return True


# ---------------------------------------------------------------------------
# the U * I+ elimination


def _in_iplus_row(row, r, p):
    """Row r of an I+ candidate: p below the diagonal, unit 1+p on it, o above."""
    for j, x in enumerate(row):
        v = _val(x, p)
        if v < 0:
            return False
        if j < r and v < 1:
            return False
        if j == r and _val(x - 1, p) < 1:
            return False
    return True


def _solve_row(bmat, v):
    """Solve c . B = v exactly (B invertible over o by construction)."""
    n = len(bmat)
    # transpose to a standard linear solve B^T c^T = v^T
    m = [[bmat[r][c] for r in range(n)] + [v[c]] for c in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise SingularMatrix("elimination block unexpectedly singular")
        m[col], m[piv] = m[piv], m[col]
        inv = F1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def eliminate_u_iplus(m_rows, p):
    """Decide m in U * I+ inside GL_N(F).

    Processes rows bottom-up; for each row the unique admissible choice
    clears the trailing columns to zero using the already-fixed rows
    below (their trailing block is invertible over o), after which the
    remaining entries must sit in the I+ box.  Returns (u, k) as Fraction
    row-lists with m = u k, u unit upper triangular, k in I+; or None.
    """
    n = len(m_rows)
    k = [list(r) for r in m_rows]
    for r in range(n - 1, -1, -1):
        if r < n - 1:
            right = k[r][r + 1 :]
            if any(right):
                b = [k[t][r + 1 :] for t in range(r + 1, n)]
                c = _solve_row(b, [-x for x in right])
                for t, coef in enumerate(c):
                    if coef:
                        src = k[r + 1 + t]
                        k[r] = [x + coef * y for x, y in zip(k[r], src)]
        if not _in_iplus_row(k[r], r, p):
            return None
    u = mat_mul([list(r) for r in m_rows], mat_inv(k))
    return u, k


def unipotent_sqrt(w_rows):
    """Exact square root of a unipotent matrix via the binomial series
    (denominators are powers of 2 only, so integrality survives for p odd)."""
    n = len(w_rows)
    t = [[w_rows[i][j] - (F1 if i == j else F0) for j in range(n)] for i in range(n)]
    out = mat_identity(n)
    power = mat_identity(n)
    coef = F1
    for kk in range(1, n):
        power = mat_mul(power, t)
        coef = coef * (Fraction(1, 2) - (kk - 1)) / kk
        if all(all(x == 0 for x in row) for row in power):
            break
        for i in range(n):
            for j in range(n):
                out[i][j] += coef * power[i][j]
    return out


def _sigma(rows):
    """The outer form involution g -> J tg^(-1) J on GL_N."""
    n = len(rows)
    ti = mat_inv(mat_transpose(rows))
    return [[ti[n - 1 - i][n - 1 - j] for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class CosetWitness:
    u: GroupMatrix
    i: int
    k: GroupMatrix

    def recompose(self, g_chi: GroupMatrix) -> GroupMatrix:
        out = self.u
        if self.i:
            out = out * g_chi
        return out * self.k


def coset_decompose(g: GroupMatrix, ell: int = None) -> CosetWitness | None:
    """Decompose g in SO_(2l+1) as u * g_chi^i * k with u upper unipotent
    in SO, i in {0,1}, k in I+; None when g is outside the double coset.

    Since g_chi normalizes I+, membership in U g_chi^i I+ is equivalent to
    g g_chi^(-i) in U I+, decided by eliminate_u_iplus.  The GL witness is
    then symmetrized into SO by the square-root twist u -> u w^(1/2),
    w = u^(-1) sigma(u), which lands u in U_SO and keeps k in I+.
    """
    p = g.prime
    if ell is None:
        ell = _ell_of_size(g.size)
    gchi = g_chi_so(ell, p)
    fast = iwahori_test(g, "I+")
    for i in (0, 1):
        m = g.lists() if i == 0 else mat_mul(g.lists(), mat_inv(gchi.lists()))
        if i == 0 and fast:
            res = (mat_identity(g.size), m)
        else:
            res = eliminate_u_iplus(m, p)
        if res is None:
            continue
        u, kp = res
        sig = _sigma(u)
        if sig != u:
            w = mat_mul(mat_inv(u), sig)
            x = unipotent_sqrt(w)
            u = mat_mul(u, x)
            kp = mat_mul(mat_inv(x), kp)
        if i:
            # g = u kp g_chi, rewrite with k = g_chi^(-1) kp g_chi in I+
            k = mat_mul(mat_inv(gchi.lists()), mat_mul(kp, gchi.lists()))
        else:
            k = kp
        um = GroupMatrix.make(u, p, "SO_odd", verify=False)
        km = GroupMatrix.make(k, p, "SO_odd", verify=False)
        if not iwahori_test(km, "I+"):
            return None
        return CosetWitness(um, i, km)
    return None


@dataclass(frozen=True)
class GLCosetWitness:
    u: GroupMatrix
    j: int
    z: PAdicNumber
    k: GroupMatrix


def coset_decompose_gl(g: GroupMatrix) -> GLCosetWitness | None:
    """Decompose g in GL_n as u * g_chi^j * z * k (u upper unipotent,
    j in 0..n-1, z central, k in I+), or None."""
    n, p = g.size, g.prime
    gchi = g_chi_gl(n, p)
    gchi_inv = mat_inv(gchi.lists())
    m = g.lists()
    for j in range(n):
        d = m[n - 1][n - 1]
        if d:
            z = d
            scaled = [[x / z for x in row] for row in m]
            res = eliminate_u_iplus(scaled, p)
            if res is not None:
                u, kp = res
                # g = u z kp g_chi^j; pull g_chi^j through
                k = kp
                for _ in range(j):
                    k = mat_mul(gchi_inv, mat_mul(k, gchi.lists()))
                um = GroupMatrix.make(u, p, "GL", verify=False)
                km = GroupMatrix.make(k, p, "GL", verify=False)
                return GLCosetWitness(um, j, PAdicNumber(z, p), km)
        m = mat_mul(m, gchi_inv)
    return None


# ---------------------------------------------------------------------------
# root-group elements for sampling


def so_root_element(ell: int, prime: int, a: int, b: int, c) -> GroupMatrix:
    """One-parameter unipotent of SO_(2l+1) supported at (a, b) (0-indexed,
    a != b, (a, b) not a form-dual fixed pair): I + c(E_ab - E_b'a') with
    the short-root quadratic correction when b is the middle index."""
    size = 2 * ell + 1
    c = Fraction(c.value if isinstance(c, PAdicNumber) else c)
    ad, bd = size - 1 - a, size - 1 - b
    if a == b or (a, b) == (bd, ad):
        raise BadDimension("unsupported root position")
    rows = mat_identity(size)
    rows[a][b] += c
    rows[bd][ad] -= c
    # short roots: X = E_ab - E_b'a' has X^2 = -E_aa' (b middle) or -E_b'b (a middle)
    if bd == b:
        rows[a][ad] -= c * c / 2
    elif ad == a:
        rows[bd][b] -= c * c / 2
    return GroupMatrix.make(rows, prime, "SO_odd")


def random_so_unipotent(rng, ell: int, prime: int, integral: bool = True) -> GroupMatrix:
    """Random element of U_SO (integral entries when integral=True)."""
    size = 2 * ell + 1
    out = GroupMatrix.make(mat_identity(size), prime, "SO_odd", verify=False)
    for a in range(size - 1):
        for b in range(a + 1, size):
            if (a, b) == (size - 1 - b, size - 1 - a):
                continue
            if size - 1 - b < a:
                continue  # dual partner already handled
            c = Fraction(rng.randint(-2 * prime, 2 * prime))
            if not integral:
                c = c / prime ** rng.randint(0, 1)
            out = out * so_root_element(ell, prime, a, b, c)
    return out


def random_so_iplus(rng, ell: int, prime: int) -> GroupMatrix:
    """Random element of I+ in SO_(2l+1): a 1+p torus element times upper
    root elements with integral parameters and lower ones with parameters
    in p (corner positions get an extra power to stay in the predicate)."""
    size = 2 * ell + 1
    p = prime
    diag = mat_identity(size)
    for i in range(ell):
        d = 1 + p * Fraction(rng.randint(0, p - 1))
        diag[i][i] = d
        diag[size - 1 - i][size - 1 - i] = 1 / d
    out = GroupMatrix.make(diag, p, "SO_odd")
    for a in range(size):
        for b in range(size):
            if a == b or (a, b) == (size - 1 - b, size - 1 - a):
                continue
            if a < b and size - 1 - b < a:
                continue
            if a > b and not (size - 1 - b > a):
                continue
            c = Fraction(rng.randint(-p, p))
            if a > b:
                c *= p
            try:
                out = out * so_root_element(ell, p, a, b, c)
            except BadDimension:
                continue
    if not iwahori_test(out, "I+"):
        raise MatrixError("sampler left I+; adjust parameters")
    return out


def random_gl_iplus(rng, n: int, prime: int) -> GroupMatrix:
    rows = mat_identity(n)
    p = prime
    for i in range(n):
        rows[i][i] = 1 + p * Fraction(rng.randint(0, p - 1))
        for j in range(n):
            if i < j:
                rows[i][j] = Fraction(rng.randint(-p, p))
            elif i > j:
                rows[i][j] = p * Fraction(rng.randint(-p, p))
    g = GroupMatrix.make(rows, prime, "GL")
    if not iwahori_test_gl(g):
        raise MatrixError("GL I+ sampler failed")
    return g
