"""Exact local zeta integrals and gamma factors.

Both sides of the functional equation are finite sums once the Whittaker
support is accounted for, so every value here is an ExactScalar: a
Laurent polynomial in q^(1/2) and q^(-s) with cyclotomic coefficients.

Two evaluation modes:
  * support-aware: sum only over the known support (fast path);
  * brute-force: enumerate a truncated window of the full domain with a
    padding shell; any nonzero term on the padding shell raises
    BoundaryNonvanishing instead of silently truncating.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction

from .cyclotomic import CyclotomicNumber
from .scalars import ExactScalar, ZeroDivisor
from .padic import rational_valuation
from .matrices import (
    GroupMatrix,
    mat_identity,
    mat_mul,
    mat_inv,
    mat_transpose,
    coset_decompose,
    coset_decompose_gl,
    g_chi_so,
    g_chi_gl,
    c_hat,
    delta_o,
    omega_prime,
    w_element,
    b_element,
    torus_so2,
    w_long,
    embed_j,
    xbar,
)
from .characters import TameCharacter, tame_eval, psi_eval, affine_chi

F0 = Fraction(0)
F1 = Fraction(1)


class IntegralError(Exception):
    pass


class BoundaryNonvanishing(IntegralError):
    """A nonzero integrand term appeared on the truncation padding shell."""


class ZeroDenominator(IntegralError):
    pass


class BadRoot(IntegralError):
    pass


class Unsupported(IntegralError):
    pass


# ---------------------------------------------------------------------------
# sections and the (trivial at n = 1) intertwining operator


@dataclass(frozen=True)
class SectionSpec:
    """f_s(h, a) = |det h|^(s-1/2) tau(a h) on SO_2, reading the scalar
    slot z = h[0][0]."""

    tau: TameCharacter

    def __call__(self, h, a) -> ExactScalar:
        return section_eval(self, h, a)


def section_eval(sec: SectionSpec, h, a) -> ExactScalar:
    p = sec.tau.prime
    z = h.rows[0][0] if isinstance(h, GroupMatrix) else Fraction(h)
    a = Fraction(a.value if hasattr(a, "value") else a)
    v = rational_valuation(z, p)
    # |z|^(s-1/2) = q^(v/2) (q^-s)^v
    norm = ExactScalar.from_coeff(p, F1, q_half=v, s_power=v)
    return norm * tame_eval(sec.tau, a * z)


def intertwine_M(sec: SectionSpec, h, a, n: int = 1) -> ExactScalar:
    """M(tau, s) f_s at n = 1: the unipotent radical is trivial and the
    Weyl element w_1 multiplies out to the identity of SO_2, so the
    operator is f_s(w_1^(-1) h, a) = f_s(h, a)."""
    if n != 1:
        raise Unsupported("the intertwining operator is implemented at n = 1 only")
    p = sec.tau.prime
    w1 = w_element(1, p)
    if not w1.is_identity():  # the two displayed factors must cancel
        raise IntegralError("w_1 failed to reduce to the identity")
    hh = h if isinstance(h, GroupMatrix) else torus_so2(h, p)
    return section_eval(sec, w1.inv() * hh, a)


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class IntegralConfig:
    prime: int
    ell: int
    zeta: CyclotomicNumber
    tau: TameCharacter
    level: int = 3  # N
    cutoff: int = 1  # V
    mode: str = "support-aware"
    t: tuple = None
    measure_scale: Fraction = Fraction(1)

    def __post_init__(self):
        if self.level < 2 or self.cutoff < 1:
            raise IntegralError("need N >= 2 and V >= 1")
        if self.mode not in ("support-aware", "brute-force"):
            raise IntegralError("mode must be support-aware or brute-force")
        if self.t is None:
            object.__setattr__(self, "t", tuple(Fraction(1) for _ in range(self.ell + 1)))
        else:
            object.__setattr__(self, "t", tuple(Fraction(x) for x in self.t))


@dataclass(frozen=True)
class GammaResult:
    computed: ExactScalar
    predicted: ExactScalar
    matches: bool
    metadata: dict = field(default_factory=dict, compare=False)


# ---------------------------------------------------------------------------
# fast structured Whittaker evaluation
#
# The integrand matrices have a rigid shape, so instead of generic matrix
# products we build them entrywise and first try the cheap membership
# boxes (g in I+, or g g_chi^(-1) in I+); the generic double-coset solver
# is the fallback that settles everything else (mostly vanishing points).


def _iplus_box(rows, p):
    n = len(rows)
    for i in range(n):
        ri = rows[i]
        for j in range(n):
            v = rational_valuation(ri[j], p)
            if v < 0 or (i > j and v < 1):
                return False
        if rational_valuation(ri[i] - 1, p) < 1:
            return False
    return True


def _nonident_positions(rows):
    """(off-diagonal, diagonal) index sets where rows differs from I.

    The integrand builders fill each position with a fixed monomial in
    (z, y), so positions computed from generic values are exhaustive."""
    n = len(rows)
    off = [(i, j) for i in range(n) for j in range(n) if i != j and rows[i][j] != 0]
    diag = [i for i in range(n) if rows[i][i] != 1]
    return off, diag


def _iplus_box_sparse(rows, p, pos):
    off, diag = pos
    for i, j in off:
        v = rational_valuation(rows[i][j], p)
        if v < 0 or (i > j and v < 1):
            return False
    for i in diag:
        if rational_valuation(rows[i][i] - 1, p) < 1:
            return False
    return True


def _chi_of_rows(rows, t, p):
    """affine_chi without the GroupMatrix wrapper (rows already boxed)."""
    n = len(rows)
    ell = (n - 1) // 2
    s = sum(t[a] * rows[a][a + 1] for a in range(ell))
    s += t[ell] * rows[n - 2][0] / p
    return psi_eval(s, p)


def _gchi_colmap(rows, p):
    """Right multiplication by g_chi^(-1) = g_chi: col 1 <- p * col N,
    col N <- col 1 / p, middle columns negated."""
    n = len(rows)
    return [
        [p * r[n - 1]] + [-r[j] for j in range(1, n - 1)] + [r[0] / p]
        for r in rows
    ]


def _chi_from_m(m, t, p):
    """chi(g_chi m g_chi) read off m directly (middle-row sign and the
    outer row/column swaps folded in)."""
    n = len(m)
    ell = (n - 1) // 2
    s = -t[0] * m[n - 1][1] / p
    s += sum(t[a] * m[a][a + 1] for a in range(1, ell))
    s += -t[ell] * m[n - 2][n - 1]
    return psi_eval(s, p)


def _so_whittaker_parts(rows, p, ell, t, pos=None):
    """(i, psi_U(u) * chi(k)) for g in the Whittaker double coset, else None.

    The zeta-power i is kept separate so one enumeration serves every
    central sign.  pos optionally carries precomputed sparsity patterns
    (for g and for g g_chi) so the membership boxes skip known zeros.
    """
    n = 2 * ell + 1
    if pos is not None:
        if _iplus_box_sparse(rows, p, pos[0]):
            return 0, _chi_of_rows(rows, t, p)
        m = _gchi_colmap(rows, p)
        if _iplus_box_sparse(m, p, pos[1]):
            return 1, _chi_from_m(m, t, p)
    else:
        if _iplus_box(rows, p):
            return 0, _chi_of_rows(rows, t, p)
        m = _gchi_colmap(rows, p)
        if _iplus_box(m, p):
            return 1, _chi_from_m(m, t, p)
    g = GroupMatrix(tuple(tuple(r) for r in rows), p, "SO_odd")
    wit = coset_decompose(g, ell)
    if wit is None:
        return None
    pu = psi_eval(sum(t[a] * wit.u.rows[a][a + 1] for a in range(ell)), p)
    return wit.i, pu * _chi_of_rows([list(r) for r in wit.k.rows], t, p)


@lru_cache(maxsize=None)
def _side_positions(side: str, ell: int):
    """Sparsity patterns of the integrand matrix and its g_chi column map."""
    z = Fraction(7, 5)
    y = tuple(Fraction(3 * (i + 2), 11) for i in range(ell - 1))
    build = _phi_matrix if side == "phi" else _phi_star_matrix
    rows = build(z, y, ell)
    return _nonident_positions(rows), _nonident_positions(_gchi_colmap(rows, 2))


def _conj_by_gchi(m, p):
    """g_chi m g_chi for the SO corner element (an involution).

    Row map: row 0 <- row N-1 / p, row N-1 <- row 0 * p, middle negated;
    then the same column map as in _so_whittaker_parts."""
    n = len(m)
    rows = [None] * n
    rows[0] = [x / p for x in m[n - 1]]
    rows[n - 1] = [x * p for x in m[0]]
    for i in range(1, n - 1):
        rows[i] = [-x for x in m[i]]
    return [
        [p * r[n - 1]] + [-r[j] for j in range(1, n - 1)] + [r[0] / p]
        for r in rows
    ]


def _phi_matrix(z, y, ell):
    """x_bar(y) j(h(z)) as raw rows: column 1 scaled by z, last by 1/z."""
    n = 2 * ell + 1
    rows = mat_identity(n)
    rows[0][0] = z
    rows[n - 1][n - 1] = 1 / z
    for i, c in enumerate(y):
        rows[1 + i][0] = c * z
    for kk in range(1, ell):
        rows[n - 1][ell + kk] = -y[ell - kk - 1]
    return rows


def _phi_star_matrix(z, y, ell):
    """c_hat x_bar(y) j(h(z)) delta_o omega' as raw rows."""
    n = 2 * ell + 1
    rows = _phi_matrix(z, y, ell)
    for i in list(range(1, ell)) + list(range(ell + 1, n - 1)):
        rows[i] = [-x for x in rows[i]]  # c_hat on the left
    for r in rows:
        r[ell] = -r[ell]  # delta_o on the right
        r[0], r[n - 1] = r[n - 1], r[0]  # omega' swaps the outer columns
    return rows


# ---------------------------------------------------------------------------
# domain enumeration and bucket cache
#
# Buckets collect, per (zeta-power i, z-class), the full y-sum of
# measure-weighted psi_U(u) chi(k) values.  They are independent of zeta
# and tau, so one enumeration serves the whole (zeta, tau) grid.

_SO_BUCKETS: dict = {}


def _y_windows(ell, p, level, cutoff, mode):
    """Per-coordinate (reps, weight, is_padding) lists for the y domain."""
    if mode == "support-aware":
        # p mod p^N: weight vol(p) / count
        reps = [Fraction(p * a) for a in range(p ** (level - 1))]
        weight = ExactScalar.from_coeff(p, Fraction(1, p ** (level - 1)), q_half=-1)
        return [(r, weight, False) for r in reps]
    out = []
    # p^-V o mod p^N, plus the p^-(V+1) padding shell
    den = p**cutoff
    count = p ** (level + cutoff)
    weight = ExactScalar.from_coeff(
        p, Fraction(1, count), q_half=1 + 2 * cutoff
    )
    for a in range(count):
        out.append((Fraction(a, den), weight, False))
    pad_w = ExactScalar.from_coeff(
        p, Fraction(1, p ** (level + cutoff + 1)), q_half=1 + 2 * (cutoff + 1)
    )
    for a in range(p ** (level + cutoff + 1)):
        if a % p:  # valuation exactly -(V+1)
            out.append((Fraction(a, den * p), pad_w, True))
    return out


def _z_windows(p, level, cutoff, mode, side):
    """(z rep, weight, is_padding) for the multiplicative domain."""
    out = []
    if mode == "support-aware":
        w = ExactScalar.from_coeff(p, Fraction(1, (p - 1) * p ** (level - 1)))
        for a in range(p ** (level - 1)):
            z = 1 + p * Fraction(a)
            if side == "phi_star":
                z = Fraction(1, p) * z  # z^(-1) in pi (1+p)
            out.append((z, w, False))
        return out
    w = ExactScalar.from_coeff(p, Fraction(1, (p - 1) * p ** (level - 1)))
    for v in range(-cutoff - 1, cutoff + 2):
        pad = abs(v) > cutoff
        for a in range(p**level):
            if a % p:
                out.append((Fraction(p) ** v * a, w, pad))
    return out


def _so_buckets(cfg: IntegralConfig, side: str):
    p, ell = cfg.prime, cfg.ell
    key = (p, ell, cfg.level, cfg.cutoff, cfg.mode, side, cfg.t)
    hit = _SO_BUCKETS.get(key)
    if hit is not None:
        if isinstance(hit, BoundaryNonvanishing):
            raise hit
        return hit
    build = _phi_matrix if side == "phi" else _phi_star_matrix
    pos = _side_positions(side, ell)
    ys = _y_windows(ell, p, cfg.level, cfg.cutoff, cfg.mode)
    zs = _z_windows(p, cfg.level, cfg.cutoff, cfg.mode, side)
    buckets: dict = {}
    one = ExactScalar.one(p)
    try:
        for z, zw, zpad in zs:
            for y, yw, ypad in _iter_y(ys, ell, p):
                rows = build(z, y, ell)
                parts = _so_whittaker_parts(rows, p, ell, cfg.t, pos)
                if parts is None:
                    continue
                i, val = parts
                if zpad or ypad:
                    raise BoundaryNonvanishing(
                        f"nonzero {side} integrand at the padding shell: z={z}, y={y}"
                    )
                w = zw * yw if yw is not None else zw
                term = w * ExactScalar.from_coeff(p, val)
                acc = buckets.get((i, z))
                buckets[(i, z)] = term if acc is None else acc + term
    except BoundaryNonvanishing as e:
        _SO_BUCKETS[key] = e
        raise
    _SO_BUCKETS[key] = buckets
    return buckets


def _iter_y(ys, ell, p):
    import itertools

    count = ell - 1
    if count == 0:
        yield (), None, False
        return
    for combo in itertools.product(ys, repeat=count):
        reps = tuple(c[0] for c in combo)
        w = combo[0][1]
        for c in combo[1:]:
            w = w * c[1]
        yield reps, w, any(c[2] for c in combo)


def _fs_phi(cfg: IntegralConfig, z: Fraction) -> ExactScalar:
    """f_s(h, 1) = |z|^(s-1/2) tau(z)."""
    p = cfg.prime
    v = rational_valuation(z, p)
    return ExactScalar.from_coeff(p, F1, q_half=v, s_power=v) * tame_eval(cfg.tau, z)


def _fs_phi_star(cfg: IntegralConfig, z: Fraction) -> ExactScalar:
    """M(tau,s) f_s(h^(-1), b_1^*) = |z^(-1)|^(s-1/2) tau(b_1^* z^(-1))."""
    p = cfg.prime
    b = b_element(1, p).star().rows[0][0]
    v = rational_valuation(1 / z, p)
    return ExactScalar.from_coeff(p, F1, q_half=v, s_power=v) * tame_eval(cfg.tau, b / z)


def _assemble(cfg: IntegralConfig, side: str) -> ExactScalar:
    buckets = _so_buckets(cfg, side)
    fs = _fs_phi if side == "phi" else _fs_phi_star
    total = ExactScalar.zero(cfg.prime)
    for (i, z), part in sorted(buckets.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        total = total + part * ExactScalar.from_coeff(cfg.prime, cfg.zeta**i) * fs(cfg, z)
    scale = cfg.measure_scale**cfg.ell  # l - 1 additive coords + one F^x factor
    return total * ExactScalar.from_coeff(cfg.prime, scale)


def phi_eval(cfg: IntegralConfig) -> ExactScalar:
    """Phi(W, f_s) as an exact finite sum."""
    return _assemble(cfg, "phi")


def phi_star_eval(cfg: IntegralConfig) -> ExactScalar:
    """Phi*(W, f_s); the second-exterior-power gamma prefactor is 1 here."""
    return _assemble(cfg, "phi_star")


def predicted_gamma_so(cfg: IntegralConfig) -> ExactScalar:
    p = cfg.prime
    return (
        ExactScalar.from_coeff(p, cfg.zeta)
        * tame_eval(cfg.tau, -p)
        * ExactScalar.from_coeff(p, F1, q_half=1, s_power=1)
    )


def gamma_so(cfg: IntegralConfig) -> GammaResult:
    num = phi_star_eval(cfg)
    den = phi_eval(cfg)
    if den.is_zero():
        raise ZeroDenominator("Phi vanished; support or measure bug")
    try:
        computed = num / den
    except ZeroDivisor:  # pragma: no cover - den checked above
        raise ZeroDenominator("Phi vanished; support or measure bug")
    predicted = predicted_gamma_so(cfg)
    meta = {
        "p": cfg.prime,
        "ell": cfg.ell,
        "level": cfg.level,
        "cutoff": cfg.cutoff,
        "mode": cfg.mode,
    }
    return GammaResult(computed, predicted, computed == predicted, meta)


# ---------------------------------------------------------------------------
# GL side


def gamma_gl_closed(n: int, tau: TameCharacter, zeta: CyclotomicNumber) -> ExactScalar:
    """tau(-1)^(n-1) tau(pi) zeta q^(1/2-s) (trivial central character)."""
    if zeta**n != CyclotomicNumber.one():
        raise BadRoot("zeta must satisfy zeta^n = 1")
    p = tau.prime
    return (
        tame_eval(tau, -1) ** (n - 1)
        * tau.value_at_uniformizer
        * ExactScalar.from_coeff(p, zeta, q_half=1, s_power=1)
    )


_GL_BUCKETS: dict = {}


def _gl_whittaker_parts(rows, p, n):
    """(j, psi_U(u) chi(k)) for GL, zeta-free; central character trivial."""
    g = GroupMatrix(tuple(tuple(r) for r in rows), p, "GL")
    wit = coset_decompose_gl(g)
    if wit is None:
        return None
    pu = psi_eval(sum(wit.u.rows[a][a + 1] for a in range(n - 1)), p)
    val = pu * affine_chi(wit.k, flavor="GL")
    return wit.j, val


def _gl_buckets(n: int, p: int, level: int, cutoff: int):
    """For both JPSS sides: (side, j, a-class) -> x-summed weighted values."""
    key = (n, p, level, cutoff)
    hit = _GL_BUCKETS.get(key)
    if hit is not None:
        if isinstance(hit, BoundaryNonvanishing):
            raise hit
        return hit
    wl = w_long(n, p).lists()
    wn1 = mat_identity(n)
    if n >= 3:  # diag(1, w_(n-1))
        for i in range(1, n):
            wn1[i] = [F0] * n
            wn1[i][n + 1 - i - 1] = F1
    aw = Fraction(1, (p - 1) * p ** (level - 1))
    xs = [(Fraction(a), Fraction(1, p**level), False) for a in range(p**level)]
    xs += [
        (Fraction(a, p), Fraction(1, p ** (level + 1)), True)
        for a in range(p ** (level + 1))
        if a % p
    ]
    # additive weight carries vol(o) = q^(1/2) per coordinate
    buckets: dict = {}

    def add(side, j, a, term):
        acc = buckets.get((side, j, a))
        buckets[(side, j, a)] = term if acc is None else acc + term

    try:
        for v in range(-cutoff - 1, cutoff + 2):
            pad_a = abs(v) > cutoff
            for ua in range(p**level):
                if ua % p == 0:
                    continue
                a = Fraction(p) ** v * ua
                # plain side: W(diag(a, I_(n-1)))
                rows = mat_identity(n)
                rows[0][0] = a
                parts = _gl_whittaker_parts(rows, p, n)
                if parts is not None:
                    if pad_a:
                        raise BoundaryNonvanishing(f"JPSS plain side at shell: a={a}")
                    j, val = parts
                    add("plain", j, a, ExactScalar.from_coeff(p, aw * val))
                # dual side: W(w_long t(g)^(-1) w_(n,1)) over the x column
                for xcombo, xw, pad_x in _iter_x(xs, n):
                    m = mat_identity(n)
                    m[0][0] = a
                    for r, xv in enumerate(xcombo):
                        m[1 + r][0] = xv
                    arg = mat_mul(mat_mul(wl, mat_inv(mat_transpose(m))), wn1)
                    parts = _gl_whittaker_parts(arg, p, n)
                    if parts is None:
                        continue
                    if pad_a or pad_x:
                        raise BoundaryNonvanishing(
                            f"JPSS dual side at shell: a={a}, x={xcombo}"
                        )
                    j, val = parts
                    # each x coordinate carries vol(o) = q^(1/2)
                    wgt = ExactScalar.from_coeff(p, aw * xw * val, q_half=n - 2)
                    add("dual", j, a, wgt)
    except BoundaryNonvanishing as e:
        _GL_BUCKETS[key] = e
        raise
    _GL_BUCKETS[key] = buckets
    return buckets


def _iter_x(xs, n):
    import itertools

    if n <= 2:
        yield (), Fraction(1), False
        return
    for combo in itertools.product(xs, repeat=n - 2):
        w = Fraction(1)
        for c in combo:
            w *= c[1]
        yield tuple(c[0] for c in combo), w, any(c[2] for c in combo)


def jpss_gl_gamma(
    n: int,
    tau: TameCharacter,
    zeta: CyclotomicNumber,
    level: int = 3,
    cutoff: int = 1,
) -> GammaResult:
    """Independent GL_n x GL_1 gamma: dual zeta integral over plain one,
    times tau(-1)^(n-1); compared against the closed form."""
    if n < 2:
        raise Unsupported("need n >= 2")
    if zeta**n != CyclotomicNumber.one():
        raise BadRoot("zeta must satisfy zeta^n = 1")
    p = tau.prime
    buckets = _gl_buckets(n, p, level, cutoff)
    tau_inv = tau.inverse()
    plain = ExactScalar.zero(p)
    dual = ExactScalar.zero(p)
    for (side, j, a), part in sorted(
        buckets.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2])
    ):
        v = rational_valuation(a, p)
        zj = ExactScalar.from_coeff(p, zeta**j)
        if side == "plain":
            # tau(a) |a|^(s - (n-1)/2)
            norm = ExactScalar.from_coeff(p, F1, q_half=v * (n - 1), s_power=v)
            plain = plain + part * zj * tame_eval(tau, a) * norm
        else:
            # tau^(-1)(a) |a|^((1-s) - (n-1)/2)
            norm = ExactScalar.from_coeff(p, F1, q_half=v * (n - 1) - 2 * v, s_power=-v)
            dual = dual + part * zj * tame_eval(tau_inv, a) * norm
    if plain.is_zero():
        raise ZeroDenominator("JPSS plain integral vanished")
    computed = tame_eval(tau, -1) ** (n - 1) * dual / plain
    predicted = gamma_gl_closed(n, tau, zeta)
    meta = {"p": p, "n": n, "level": level, "cutoff": cutoff}
    return GammaResult(computed, predicted, computed == predicted, meta)


def match_so_gl(ell: int, tau: TameCharacter, zeta: CyclotomicNumber, cfg: IntegralConfig = None) -> bool:
    """The SO_(2l+1) gamma equals the GL_(2l) gamma (closed forms always;
    computed pipelines when a config is supplied)."""
    if zeta * zeta != CyclotomicNumber.one():
        raise BadRoot("the orthogonal side needs zeta^2 = 1")
    so_pred = (
        ExactScalar.from_coeff(tau.prime, zeta)
        * tame_eval(tau, -tau.prime)
        * ExactScalar.from_coeff(tau.prime, F1, q_half=1, s_power=1)
    )
    gl_pred = gamma_gl_closed(2 * ell, tau, zeta)
    if so_pred != gl_pred:
        return False
    if cfg is not None:
        so = gamma_so(cfg)
        gl = jpss_gl_gamma(2 * ell, tau, zeta, level=cfg.level, cutoff=cfg.cutoff)
        return so.computed == gl.computed
    return True


# ---------------------------------------------------------------------------
# support scans


@dataclass(frozen=True)
class SupportPoint:
    z: Fraction
    y: tuple
    nonzero: bool
    predicted: bool


def _phi_predicate(z, y, p):
    return rational_valuation(z - 1, p) >= 1 and all(
        rational_valuation(c, p) >= 1 for c in y
    )


def _phi_star_predicate(z, y, p):
    return rational_valuation(1 / z - p, p) >= 2 and all(
        rational_valuation(c, p) >= 1 for c in y
    )


def scan_support(
    p: int,
    ell: int,
    side: str,
    level: int = 2,
    cutoff: int = 1,
    t: tuple = None,
    predicate=None,
) -> tuple:
    """Brute-force enumeration of the integrand support versus the lemma
    predicate.  Returns (points, verdict); verdict is True when the
    nonvanishing set matches the predicate exactly."""
    if t is None:
        t = tuple(Fraction(1) for _ in range(ell + 1))
    if predicate is None:
        predicate = _phi_predicate if side == "phi" else _phi_star_predicate
    build = _phi_matrix if side == "phi" else _phi_star_matrix
    pos = _side_positions(side, ell)
    ys = _y_windows(ell, p, level, cutoff, "brute-force")
    zs = _z_windows(p, level, cutoff, "brute-force", side)
    points = []
    verdict = True
    for z, _, _ in zs:
        for y, _, _ in _iter_y(ys, ell, p):
            parts = _so_whittaker_parts(build(z, y, ell), p, ell, t, pos)
            nonzero = parts is not None and not parts[1].is_zero()
            pred = predicate(z, y, p)
            if nonzero != pred:
                verdict = False
            points.append(SupportPoint(z, y, nonzero, pred))
    return points, verdict
