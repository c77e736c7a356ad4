"""Numeric spectra (batched Jacobi for symmetric matrices, exact polynomial plus
Aberth roots otherwise) and the spectral-radius bound checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, sqrt
from typing import Sequence

import mpmath
import numpy as np

from .distances import DistanceInfo, all_pairs_distances
from .exact_poly import ExactPolynomial, char_poly_exact, squarefree_decomposition
from .graphs import Digraph, Graph
from .matrices import ALL_VARIANTS, MatrixVariant, RationalMatrix, variant_float, variant_matrix
from .surds import Surd


class NoConvergence(RuntimeError):
    pass


def cluster_radius(norm_inf: float) -> float:
    return 1e-7 * max(1.0, norm_inf)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted by (real, imag), with clustered multiplicities."""
    values: tuple[complex, ...]
    radius: float = 1e-7
    exact: bool = False
    clusters_override: tuple[tuple[complex, int], ...] | None = field(default=None, repr=False)

    @classmethod
    def from_values(cls, vals, radius: float = 1e-7, exact: bool = False) -> "Spectrum":
        vs = sorted((complex(v) for v in vals), key=lambda z: (z.real, z.imag))
        return cls(tuple(vs), radius, exact)

    @property
    def n(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def real(self) -> np.ndarray:
        return np.array([z.real for z in self.values])

    def is_real(self, tol: float = 1e-9) -> bool:
        return all(abs(z.imag) <= tol for z in self.values)

    @property
    def spectral_radius(self) -> float:
        return max(abs(z) for z in self.values)

    @property
    def largest_real(self) -> float:
        return max(z.real for z in self.values)

    def clusters(self) -> list[tuple[complex, int]]:
        if self.clusters_override is not None:
            return list(self.clusters_override)
        out: list[list] = []
        for z in self.values:
            for c in out:
                if abs(c[0] - z) <= self.radius:
                    c[1].append(z)
                    break
            else:
                out.append([z, [z]])
        res = [(complex(np.mean(m)), len(m)) for _, m in out]
        return sorted(res, key=lambda p: (round(p[0].real, 9), round(p[0].imag, 9)))

    def multiplicities(self) -> list[int]:
        return [m for _, m in self.clusters()]

    def matches(self, other, tol: float = 1e-9) -> bool:
        """Same multiset up to tol (other may be any iterable of numbers)."""
        a = list(self.values)
        b = sorted((complex(v) for v in other), key=lambda z: (z.real, z.imag))
        if len(a) != len(b):
            return False
        remaining = list(b)
        for z in a:
            k = min(range(len(remaining)), key=lambda i: abs(remaining[i] - z))
            if abs(remaining[k] - z) > tol * max(1.0, abs(z)):
                return False
            remaining.pop(k)
        return True

    def to_json(self) -> list[dict]:
        return [{"re": float(z.real), "im": float(z.imag), "multiplicity": m}
                for z, m in self.clusters()]


# --- symmetric route: batched cyclic Jacobi -------------------------------------------

def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """n-1 rounds (n padded to even) of disjoint index pairs covering every pair once."""
    m = n + (n % 2)
    idx = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for k in range(m // 2):
            a, b = idx[k], idx[m - 1 - k]
            if a < n and b < n:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        idx = [idx[0], idx[-1]] + idx[1:-1]
    return rounds


def jacobi_eigh(a: np.ndarray, tol: float = 1e-14, max_sweeps: int = 60,
                vectors: bool = False):
    """Eigen-decomposition of a stack of symmetric matrices, shape (B, n, n) or (n, n).

    Each round rotates a full set of disjoint pairs at once, so the whole stack
    advances together.  Returns ascending eigenvalues (and column eigenvectors).
    """
    single = a.ndim == 2
    A = np.array(a, dtype=float, copy=True)
    if single:
        A = A[None]
    B, n, _ = A.shape
    V = np.broadcast_to(np.eye(n), (B, n, n)).copy() if vectors else None
    if n > 1:
        rounds = _round_robin(n)
        scale = np.sqrt(np.einsum("bij,bij->b", A, A))
        scale[scale == 0] = 1.0
        iu = np.triu_indices(n, 1)
        for _ in range(max_sweeps):
            off = np.sqrt(2 * np.sum(A[:, iu[0], iu[1]] ** 2, axis=1))
            if np.all(off <= tol * scale):
                break
            for P, Q in rounds:
                apq = A[:, P, Q]
                app = A[:, P, P]
                aqq = A[:, Q, Q]
                live = np.abs(apq) > 1e-300
                theta = np.where(live, (aqq - app) / (2 * np.where(live, apq, 1.0)), 0.0)
                sgn = np.where(theta >= 0, 1.0, -1.0)
                t = np.where(live, sgn / (np.abs(theta) + np.hypot(theta, 1.0)), 0.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                cr, sr = c[:, :, None], s[:, :, None]
                rp, rq = A[:, P, :], A[:, Q, :]
                A[:, P, :] = cr * rp - sr * rq
                A[:, Q, :] = sr * rp + cr * rq
                cp, cq = A[:, :, P], A[:, :, Q]
                cc, sc = c[:, None, :], s[:, None, :]
                A[:, :, P] = cc * cp - sc * cq
                A[:, :, Q] = sc * cp + cc * cq
                if vectors:
                    vp, vq = V[:, :, P], V[:, :, Q]
                    V[:, :, P] = cc * vp - sc * vq
                    V[:, :, Q] = sc * vp + cc * vq
        else:
            raise NoConvergence("Jacobi sweeps exhausted")
    w = np.diagonal(A, axis1=1, axis2=2).copy()
    order = np.argsort(w, axis=1)
    w = np.take_along_axis(w, order, axis=1)
    if vectors:
        V = np.take_along_axis(V, order[:, None, :], axis=2)
        return (w[0], V[0]) if single else (w, V)
    return w[0] if single else w


# --- general route: exact polynomial, square-free split, Aberth -----------------------

def aberth_roots(coeffs_high_first: Sequence[complex], tol: float = 1e-13,
                 max_iter: int = 500) -> np.ndarray:
    """All roots of a polynomial by the Aberth-Ehrlich simultaneous iteration."""
    c = np.asarray(coeffs_high_first, dtype=complex)
    c = c / c[0]
    deg = len(c) - 1
    if deg == 0:
        return np.zeros(0, dtype=complex)
    if deg == 1:
        return np.array([-c[1]])
    dc = c[:-1] * np.arange(deg, 0, -1)
    bound = 1 + np.max(np.abs(c[1:]))
    r0 = min(bound, 2 * np.max(np.abs(c[1:]) ** (1.0 / np.arange(1, deg + 1))))
    if r0 == 0:  # x^deg: every start point would coincide
        r0 = 1.0
    z = r0 * np.exp(1j * (2 * np.pi * np.arange(deg) / deg + 0.4))
    best, stale = np.inf, 0
    for _ in range(max_iter):
        pv = np.polyval(c, z)
        dv = np.polyval(dc, z)
        ratio = np.where(dv != 0, pv / np.where(dv != 0, dv, 1), pv)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1)
        inv = 1 / diff
        np.fill_diagonal(inv, 0)
        s = inv.sum(axis=1)
        w = ratio / (1 - ratio * s)
        z = z - w
        err = float(np.max(np.abs(w) / (1 + np.abs(z))))
        if err <= tol:
            return z
        # near clustered roots the correction settles into rounding noise
        if err < best * 0.5:
            best, stale = err, 0
        else:
            stale += 1
            if stale >= 8 and best <= 1e-6:
                return z
    raise NoConvergence("Aberth iteration did not converge")


def _polish(p: ExactPolynomial, z: complex, steps: int = 8) -> complex:
    """Newton steps at 50 digits, so clustered roots keep full double accuracy."""
    with mpmath.workdps(50):
        c = [mpmath.mpf(x.numerator) / x.denominator for x in reversed(p.coeffs)]
        dc = [k * a for k, a in zip(range(len(c) - 1, 0, -1), c[:-1])]
        w = mpmath.mpc(z.real, z.imag)
        for _ in range(steps):
            d = mpmath.polyval(dc, w)
            if d == 0:
                break
            step = mpmath.polyval(c, w) / d
            w -= step
            if abs(step) <= mpmath.mpf(10) ** -30 * (1 + abs(w)):
                break
        return complex(w)


def _snap(f: ExactPolynomial, z: complex) -> complex:
    """Make near-real roots real, and exact when a nearby small rational is a root."""
    if abs(z.imag) > 1e-12 * (1 + abs(z)):
        return z
    q = Fraction(z.real).limit_denominator(10 ** 6)
    if f(q) == 0:
        return complex(float(q))
    return complex(z.real)


def roots_with_multiplicity(p: ExactPolynomial) -> list[tuple[complex, int]]:
    """Roots of an exact polynomial; multiplicities come from the square-free split."""
    out = []
    for f, mult in squarefree_decomposition(p):
        if f.coeffs[0] == 0:
            out.append((0j, mult))
            f = ExactPolynomial(f.coeffs[1:])
        c = f.coeffs
        if f.degree < 1:
            continue
        if f.degree == 1:
            roots = [complex(float(-c[0] / c[1]))]
        elif f.degree == 2:
            a, b, cc = c[2], c[1], c[0]
            disc = b * b - 4 * a * cc
            sq = np.sqrt(complex(float(disc)))
            roots = [(-float(b) + sq) / (2 * float(a)), (-float(b) - sq) / (2 * float(a))]
            if disc >= 0:
                roots = [complex(r.real) for r in roots]
        else:
            z = aberth_roots([complex(float(x)) for x in reversed(c)])
            roots = [_snap(f, _polish(f, r)) for r in z]
        out.extend((r, mult) for r in roots)
    return out


def eigenvalues(m: RationalMatrix | np.ndarray, symmetric: bool) -> Spectrum:
    """Spectrum of M: Jacobi when symmetric, exact polynomial roots otherwise."""
    if symmetric:
        a = m.to_float() if isinstance(m, RationalMatrix) else np.asarray(m, dtype=float)
        if not np.allclose(a, a.T, atol=0, rtol=0):
            raise ValueError("matrix is not symmetric")
        w = jacobi_eigh(a)
        return Spectrum.from_values(w, cluster_radius(float(np.abs(a).sum(axis=1).max(initial=0))))
    if not isinstance(m, RationalMatrix):
        m = RationalMatrix.from_fractions(np.asarray(m).tolist())
    pairs = roots_with_multiplicity(char_poly_exact(m))
    vals = [z for z, k in pairs for _ in range(k)]
    radius = cluster_radius(float(m.to_float().__abs__().sum(axis=1).max(initial=0)))
    groups = tuple(sorted(((z, k) for z, k in pairs), key=lambda p: (p[0].real, p[0].imag)))
    spec = Spectrum.from_values(vals, radius)
    return Spectrum(spec.values, radius, False, groups)


def residuals(a: np.ndarray, w: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Per-pair ||Av - wv|| for column eigenvectors."""
    return np.linalg.norm(a @ v - v * w[None, :], axis=0)


def variant_spectrum(x: Graph | Digraph | DistanceInfo, v: MatrixVariant) -> Spectrum:
    info = x if isinstance(x, DistanceInfo) else all_pairs_distances(x)
    if not info.directed:
        return eigenvalues(variant_float(info, v), symmetric=True)
    return eigenvalues(variant_matrix(info, v), symmetric=False)


def all_spectra(x: Graph | Digraph | DistanceInfo) -> dict[MatrixVariant, Spectrum]:
    info = x if isinstance(x, DistanceInfo) else all_pairs_distances(x)
    return {v: variant_spectrum(info, v) for v in ALL_VARIANTS}


def batch_graph_spectra(infos: Sequence[DistanceInfo], v: MatrixVariant) -> np.ndarray:
    """Ascending eigenvalues for many same-order graphs in one Jacobi stack."""
    if not infos:
        return np.zeros((0, 0))
    stack = np.stack([variant_float(i, v) for i in infos])
    return jacobi_eigh(stack)


def batch_all_spectra(infos: Sequence[DistanceInfo]) -> list[dict[MatrixVariant, Spectrum]]:
    """all_spectra for many same-order graphs, one Jacobi stack per variant."""
    out: list[dict[MatrixVariant, Spectrum]] = [{} for _ in infos]
    for v in ALL_VARIANTS:
        mats = [variant_float(i, v) for i in infos]
        for spectra, a, w in zip(out, mats, batch_graph_spectra(infos, v)):
            spectra[v] = Spectrum.from_values(w, cluster_radius(float(np.abs(a).sum(axis=1).max())))
    return out


# --- bounds ------------------------------------------------------------------------

SLACK = 1e-8


@dataclass(frozen=True)
class BoundRecord:
    name: str
    lhs: float
    rhs: float
    holds: bool
    tight: bool
    equality_condition: bool | None = None   # structural condition for equality, when known

    @property
    def consistent(self) -> bool:
        """Tightness agrees with the structural equality condition."""
        return self.equality_condition is None or self.tight == self.equality_condition


@dataclass(frozen=True)
class BoundsReport:
    records: tuple[BoundRecord, ...]

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.records)

    @property
    def all_consistent(self) -> bool:
        return all(r.consistent for r in self.records)

    def failures(self) -> list[BoundRecord]:
        return [r for r in self.records if not (r.holds and r.consistent)]

    def __getitem__(self, name: str) -> BoundRecord:
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_json(self) -> list[dict]:
        return [{"name": r.name, "lhs": r.lhs, "rhs": r.rhs, "holds": r.holds,
                 "tight": r.tight, "equality_condition": r.equality_condition}
                for r in self.records]


def _le(name: str, lhs: float, rhs: float, cond: bool | None = None) -> BoundRecord:
    return BoundRecord(name, float(lhs), float(rhs), lhs <= rhs + SLACK,
                       abs(lhs - rhs) <= SLACK, cond)


def _is_complete(g: Graph | Digraph) -> bool:
    n = g.n
    return (g.num_edges if isinstance(g, Graph) else g.num_arcs) == (
        n * (n - 1) // 2 if isinstance(g, Graph) else n * (n - 1))


def _is_dicycle(d: Digraph) -> bool:
    return d.num_arcs == d.n and d.is_strongly_connected() and all(x == 1 for x in d.out_degrees())


def verify_bounds(g: Graph | Digraph, info: DistanceInfo | None = None,
                  spectra: dict[MatrixVariant, Spectrum] | None = None) -> BoundsReport:
    info = info or all_pairs_distances(g)
    spectra = spectra or all_spectra(info)
    n = info.n
    t = sorted(info.transmissions)
    tr = info.transmission_regular
    complete = _is_complete(g)
    rho = {v: spectra[v].spectral_radius for v in ALL_VARIANTS}
    recs: list[BoundRecord] = []
    # Gershgorin on T - D, T + D, and the similar T^-1 (T - D)
    recs.append(_le("rho(DL) <= 2 t_max", rho[MatrixVariant.DL], 2 * t[-1]))
    recs.append(_le("rho(DQ) <= 2 t_max", rho[MatrixVariant.DQ], 2 * t[-1], tr))
    recs.append(_le("2 t_min <= rho(DQ)", 2 * t[0], rho[MatrixVariant.DQ], tr))
    recs.append(_le("rho(DNL) <= 2", rho[MatrixVariant.DNL], 2))
    recs.append(_le("t_min <= rho(D)", t[0], rho[MatrixVariant.D], tr))
    recs.append(_le("rho(D) <= t_max", rho[MatrixVariant.D], t[-1], tr))
    for v in (MatrixVariant.DQ, MatrixVariant.DL, MatrixVariant.DNL):
        recs.append(_le(f"0 <= min Re spec({v.value})", -1e-9,
                        min(z.real for z in spectra[v].values)))
    if not info.directed:
        tbar = info.t_mean
        recs.append(_le("t_min <= t_mean", t[0], tbar, tr))
        recs.append(_le("t_mean <= rho(D)", tbar, rho[MatrixVariant.D], tr))
        recs.append(_le("2 t_mean <= rho(DQ)", 2 * tbar, rho[MatrixVariant.DQ], tr))
        if n >= 2:
            recs.append(_le("n-1 <= rho(D)", n - 1, rho[MatrixVariant.D], complete))
            recs.append(_le("2n-2 <= rho(DQ)", 2 * n - 2, rho[MatrixVariant.DQ], complete))
            recs.append(_le("n <= rho(DL)", n, rho[MatrixVariant.DL], complete))
            # equality here forces cospectrality with K_n, not K_n itself
            recs.append(_le("n/(n-1) <= rho(DNL)", n / (n - 1), rho[MatrixVariant.DNL]))
        if n >= 3:
            r = rho[MatrixVariant.DNL]
            recs.append(BoundRecord("rho(DNL) < 2", r, 2.0, r < 2 - 1e-12, False))
        for v in (MatrixVariant.D, MatrixVariant.DQ, MatrixVariant.DL, MatrixVariant.DNL):
            recs.append(_le(f"max |Im spec({v.value})|", max(abs(z.imag) for z in spectra[v].values), 1e-9))
    else:
        rd, rq = rho[MatrixVariant.D], rho[MatrixVariant.DQ]
        recs.append(_le("sqrt(t1 t2) <= rho(D)", sqrt(t[0] * t[1]), rd))
        recs.append(_le("rho(D) <= sqrt(t_{n-1} t_n)", rd, sqrt(t[-2] * t[-1])))
        recs.append(_le("t1 + t2 <= rho(DQ)", t[0] + t[1], rq))
        recs.append(_le("rho(DQ) <= t_{n-1} + t_n", rq, t[-2] + t[-1]))
        recs.append(_le("n-1 <= rho(D)", n - 1, rd, complete))
        recs.append(_le("2(n-1) <= rho(DQ)", 2 * (n - 1), rq, complete))
        cyc = _is_dicycle(g)
        recs.append(_le("rho(D) <= n(n-1)/2", rd, n * (n - 1) / 2, cyc))
        recs.append(_le("rho(DQ) <= n(n-1)", rq, n * (n - 1), cyc))
        # Perron root is real and dominant
        recs.append(_le("rho(D) - largest real eig", rd - spectra[MatrixVariant.D].largest_real, 0))
    return BoundsReport(tuple(recs))


# --- perturbations -----------------------------------------------------------------

@dataclass(frozen=True)
class MonotonicityReport:
    variant_ok: dict[str, bool]             # per-index weak decrease held
    rho_before: dict[str, float]
    rho_after: dict[str, float]
    strict: dict[str, bool]                 # rho strictly decreased

    @property
    def holds(self) -> bool:
        return all(self.variant_ok.values())


def edge_addition_monotonicity(g: Graph | Digraph, e: tuple[int, int],
                               tol: float = 1e-8) -> MonotonicityReport:
    """Compare spectra of G and G + e.

    For graphs the per-index comparison covers D, DQ and DL.  For digraphs it
    compares spectral radii only (the D^L case is an open question; a False in
    ``variant_ok['DL']`` marks a counterexample candidate).
    """
    u, v = e
    if isinstance(g, Graph):
        if g.has_edge(u, v) or u == v:
            raise ValueError("not a non-edge")
        h = g.add_edge(u, v)
    else:
        if g.has_arc(u, v) or u == v:
            raise ValueError("not a non-arc")
        h = g.add_arc(u, v)
    s0, s1 = all_spectra(g), all_spectra(h)
    names = [MatrixVariant.D, MatrixVariant.DQ, MatrixVariant.DL]
    ok, before, after, strict = {}, {}, {}, {}
    for var in names + [MatrixVariant.DNL]:
        before[var.value] = s0[var].spectral_radius
        after[var.value] = s1[var].spectral_radius
        strict[var.value] = after[var.value] < before[var.value] - tol
    for var in names:
        if isinstance(g, Graph):
            a, b = s0[var].real, s1[var].real
            ok[var.value] = bool(np.all(b <= a + tol))
        else:
            ok[var.value] = after[var.value] <= before[var.value] + tol
    return MonotonicityReport(ok, before, after, strict)


def interlacing_check(g: Graph, v: int, tol: float = 1e-8) -> bool:
    """Eigenvalues of D(G) with row and column v deleted interlace those of D(G)."""
    d = variant_float(g, MatrixVariant.D)
    keep = [i for i in range(g.n) if i != v]
    lam = jacobi_eigh(d)
    mu = jacobi_eigh(d[np.ix_(keep, keep)])
    return all(lam[i] <= mu[i] + tol and mu[i] <= lam[i + 1] + tol for i in range(len(mu)))


def rational_spectrum(p: ExactPolynomial) -> list[Fraction] | None:
    """All roots as exact rationals (with multiplicity), or None if some root is irrational."""
    out: list[Fraction] = []
    for f, mult in squarefree_decomposition(p):
        for z, _ in roots_with_multiplicity(f):
            if abs(z.imag) > 1e-9:
                return None
            q = Fraction(z.real).limit_denominator(10 ** 9)
            if f(q) != 0:
                return None
            out.extend([q] * mult)
    return sorted(out)


def exact_eigenvalues(p: ExactPolynomial) -> list[tuple[object, int]]:
    """(value, multiplicity) with rational roots as Fraction, real quadratic pairs as
    Surd, and anything else as a polished complex float."""
    out: list[tuple[object, int]] = []
    for f, mult in squarefree_decomposition(p):
        rest = f
        for z, _ in roots_with_multiplicity(f):
            if abs(z.imag) > 1e-9:
                continue
            q = Fraction(z.real).limit_denominator(10 ** 9)
            if f(q) == 0:
                out.append((q, mult))
                rest = rest // ExactPolynomial([-q, 1])
        if rest.degree == 2:
            c, b, a = rest.coeffs
            disc = b * b - 4 * a * c
            if disc >= 0:
                r = Surd.sqrt(disc)
                out += [((-b - r) / (2 * a), mult), ((-b + r) / (2 * a), mult)]
                continue
        if rest.degree >= 1:
            out += [(z, mult) for z, _ in roots_with_multiplicity(rest)]
    return sorted(out, key=lambda p_: (round(complex(p_[0]).real, 9), round(complex(p_[0]).imag, 9)))
