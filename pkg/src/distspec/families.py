"""Named graph and digraph families with closed-form spectrum oracles."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import isqrt

from .distances import all_pairs_distances
from .exact_poly import inertia_exact, squarefree_decomposition, variant_char_poly
from .graphs import Digraph, Graph
from .matrices import MatrixVariant, transform_tr_spectrum
from .surds import Surd

V = MatrixVariant


class NoClosedForm(ValueError):
    """No closed-form spectrum is available for this family and variant."""


class Unrealizable(ValueError):
    """Parameters are invalid or no construction ships for them."""


def _exact(x):
    """Collapse rational surds to Fraction."""
    return x.a if isinstance(x, Surd) and x.is_rational() else x


# --- finite fields for Paley graphs --------------------------------------------------

def prime_power(q: int) -> tuple[int, int] | None:
    if q < 2:
        return None
    p = next(f for f in range(2, q + 1) if q % f == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    return (p, k) if r == 1 else None


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    a = a[:]
    while len(a) >= len(m):
        c = a[-1]
        if c:
            for i in range(len(m)):
                a[len(a) - len(m) + i] = (a[len(a) - len(m) + i] - c * m[i]) % p
        a.pop()
    return a


def _irreducible(p: int, k: int) -> list[int]:
    """Monic irreducible of degree k over GF(p), coefficients constant first."""
    for tail in product(range(p), repeat=k):
        m = list(tail) + [1]
        if m[0] == 0 and k > 1:
            continue
        if all(any(_polymod(m, list(t) + [1], p))
               for d in range(1, k // 2 + 1) for t in product(range(p), repeat=d)):
            return m
    raise AssertionError("no irreducible polynomial found")


def _field_squares(q: int) -> tuple[list[int], set[int], callable]:
    """Elements 0..q-1 (base-p digits), the nonzero squares, and subtraction."""
    p, k = prime_power(q)
    m = _irreducible(p, k) if k > 1 else [0, 1]

    def digits(x: int) -> list[int]:
        return [(x // p ** i) % p for i in range(k)]

    def num(d: list[int]) -> int:
        return sum(c * p ** i for i, c in enumerate(d))

    def mul(x: int, y: int) -> int:
        a, b = digits(x), digits(y)
        prod_ = [0] * (2 * k - 1)
        for i, u in enumerate(a):
            for j, w in enumerate(b):
                prod_[i + j] = (prod_[i + j] + u * w) % p
        r = _polymod(prod_, m, p) if k > 1 else [prod_[0] % p]
        return num(r + [0] * (k - len(r)))

    def sub(x: int, y: int) -> int:
        return num([(u - w) % p for u, w in zip(digits(x), digits(y))])

    squares = {mul(x, x) for x in range(1, q)}
    return list(range(q)), squares, sub


# --- family specifications -----------------------------------------------------------

_ARITY = {
    "complete": 1, "complete_bipartite": 2, "complete_multipartite": None, "path": 1,
    "cycle": 1, "star": 1, "star_plus_edge": 1, "kn_minus_e": 1, "hamming": 2,
    "hypercube": 1, "cocktail_party": 1, "kpk": 3, "petersen": 0, "heawood": 0,
    "paley": 1, "srg": 4, "dicycle": 1, "complete_digraph": 1, "dsrg": 5,
}
FAMILIES = tuple(_ARITY)

# DSRG(8,4,3,1,3): Cayley digraph on the dihedral group of order 8.
DSRG_8_4_3_1_3_ARCS = (
    (0, 1), (0, 2), (0, 4), (0, 5), (1, 2), (1, 3), (1, 5), (1, 6),
    (2, 0), (2, 3), (2, 6), (2, 7), (3, 0), (3, 1), (3, 4), (3, 7),
    (4, 0), (4, 3), (4, 6), (4, 7), (5, 0), (5, 1), (5, 4), (5, 7),
    (6, 1), (6, 2), (6, 4), (6, 5), (7, 2), (7, 3), (7, 5), (7, 6),
)


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in _ARITY:
            raise Unrealizable(f"unknown family {self.kind!r}")
        want = _ARITY[self.kind]
        object.__setattr__(self, "params", tuple(int(x) for x in self.params))
        if want is not None and len(self.params) != want:
            raise Unrealizable(f"{self.kind} takes {want} parameter(s)")
        self._validate()

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """'hamming:2,3', 'petersen', 'complete_multipartite:2,2,3'."""
        kind, _, rest = text.partition(":")
        params = tuple(int(x) for x in rest.split(",") if x.strip()) if rest else ()
        return cls(kind.strip().lower().replace("-", "_"), params)

    def _validate(self) -> None:
        k, p = self.kind, self.params
        need = {
            "complete": lambda: p[0] >= 1,
            "complete_bipartite": lambda: min(p) >= 1,
            "complete_multipartite": lambda: len(p) >= 2 and min(p) >= 1,
            "path": lambda: p[0] >= 1,
            "cycle": lambda: p[0] >= 3,
            "star": lambda: p[0] >= 2,
            "star_plus_edge": lambda: p[0] >= 4,
            "kn_minus_e": lambda: p[0] >= 3,
            "hamming": lambda: p[0] >= 1 and p[1] >= 2,
            "hypercube": lambda: p[0] >= 1,
            "cocktail_party": lambda: p[0] >= 2,
            "kpk": lambda: p[0] >= 1 and p[2] >= 1 and p[1] >= 2,
            "paley": lambda: prime_power(p[0]) is not None and p[0] % 4 == 1,
            "srg": lambda: 0 < p[1] < p[0] - 1 and p[2] >= 0 and p[3] >= 1,
            "dicycle": lambda: p[0] >= 2,
            "complete_digraph": lambda: p[0] >= 1,
            "dsrg": lambda: 0 < p[1] < p[0] - 1 and 0 <= p[2] <= p[1],
        }.get(k, lambda: True)
        if not need():
            raise Unrealizable(f"invalid parameters for {k}: {p}")

    @property
    def directed(self) -> bool:
        return self.kind in ("dicycle", "complete_digraph", "dsrg")

    def __str__(self) -> str:
        return self.kind + (":" + ",".join(map(str, self.params)) if self.params else "")


# --- constructors --------------------------------------------------------------------

def _complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def _multipartite(parts) -> Graph:
    owner = [i for i, s in enumerate(parts) for _ in range(s)]
    n = len(owner)
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if owner[u] != owner[v]])


def _hamming(d: int, r: int) -> Graph:
    words = list(product(range(r), repeat=d))
    return Graph.from_edges(len(words), [(i, j) for (i, a), (j, b) in combinations(enumerate(words), 2)
                                         if sum(x != y for x, y in zip(a, b)) == 1])


def _paley(q: int) -> Graph:
    elems, squares, sub = _field_squares(q)
    return Graph.from_edges(q, [(x, y) for x, y in combinations(elems, 2) if sub(x, y) in squares])


def _petersen() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)]
    edges += [(i + 5, (i + 2) % 5 + 5) for i in range(5)]
    return Graph.from_edges(10, edges)


def _heawood() -> Graph:
    return Graph.from_edges(14, [(i, 7 + (i + s) % 7) for i in range(7) for s in (0, 1, 3)])


def _kpk(n1: int, n2: int, n3: int) -> Graph:
    n = n1 + n2 + n3 - 2
    left = list(range(n1))
    path = list(range(n1 - 1, n1 + n2 - 1))
    right = list(range(n1 + n2 - 2, n))
    edges = set(combinations(left, 2)) | set(zip(path, path[1:])) | set(combinations(right, 2))
    return Graph.from_edges(n, edges)


def _srg_instance(n: int, k: int, a: int, c: int) -> Graph:
    if (n, k, a, c) == (10, 3, 0, 1):
        return _petersen()
    if 4 * k == 2 * (n - 1) and 4 * a == n - 5 and 4 * c == n - 1 and prime_power(n):
        return _paley(n)
    for s in range(2, n):
        m, rem = divmod(n, s)
        if not rem and m >= 2 and (k, a, c) == ((m - 1) * s, (m - 2) * s, (m - 1) * s):
            return _multipartite([s] * m)
    r = isqrt(n)
    if r >= 3 and r * r == n and (k, a, c) == (2 * (r - 1), r - 2, 2):
        return _hamming(2, r)
    raise Unrealizable(f"no shipped construction for SRG{(n, k, a, c)}")


def build(spec: FamilySpec) -> Graph | Digraph:
    k, p = spec.kind, spec.params
    if k == "complete":
        return _complete(p[0])
    if k == "complete_bipartite":
        return _multipartite(p)
    if k == "complete_multipartite":
        return _multipartite(p)
    if k == "path":
        return Graph.from_edges(p[0], [(i, i + 1) for i in range(p[0] - 1)])
    if k == "cycle":
        return Graph.from_edges(p[0], [(i, (i + 1) % p[0]) for i in range(p[0])])
    if k == "star":
        return Graph.from_edges(p[0], [(0, i) for i in range(1, p[0])])
    if k == "star_plus_edge":
        return Graph.from_edges(p[0], [(0, i) for i in range(1, p[0])] + [(1, 2)])
    if k == "kn_minus_e":
        return _complete(p[0]).remove_edge(0, 1)
    if k == "hamming":
        return _hamming(*p)
    if k == "hypercube":
        return _hamming(p[0], 2)
    if k == "cocktail_party":
        return _multipartite([2] * p[0])
    if k == "kpk":
        return _kpk(*p)
    if k == "petersen":
        return _petersen()
    if k == "heawood":
        return _heawood()
    if k == "paley":
        return _paley(p[0])
    if k == "srg":
        return _srg_instance(*p)
    if k == "dicycle":
        return Digraph.from_arcs(p[0], [(i, (i + 1) % p[0]) for i in range(p[0])])
    if k == "complete_digraph":
        return _complete(p[0]).to_digraph()
    if k == "dsrg":
        if p == (8, 4, 3, 1, 3):
            return Digraph.from_arcs(8, DSRG_8_4_3_1_3_ARCS)
        raise Unrealizable(f"no shipped construction for DSRG{p}")
    raise Unrealizable(k)


# --- closed-form oracles -------------------------------------------------------------

def _expand(pairs) -> list:
    out = []
    for value, mult in pairs:
        if mult < 0:
            raise Unrealizable("negative multiplicity")
        out += [_exact(value)] * mult
    return sorted(out, key=lambda x: (float(complex(x).real), float(complex(x).imag)))


def srg_multiplicities(n: int, k: int, a: int, c: int) -> tuple[int, int]:
    """(m_tau, m_theta) for the adjacency eigenvalues tau < theta."""
    disc = (a - c) ** 2 + 4 * (k - c)
    top = 2 * k + (n - 1) * (a - c)
    r = isqrt(disc)
    if r * r == disc:
        if (top % r) or ((n - 1 + top // r) % 2):
            raise Unrealizable("non-integral SRG multiplicities")
        shift = top // r
    elif top == 0:
        if (n - 1) % 2:
            raise Unrealizable("non-integral SRG multiplicities")
        shift = 0
    else:
        raise Unrealizable("non-integral SRG multiplicities")
    m_tau, m_theta = (n - 1 + shift) // 2, (n - 1 - shift) // 2
    if m_tau < 0 or m_theta < 0:
        raise Unrealizable("negative SRG multiplicities")
    return m_tau, m_theta


def srg_spectrum(n: int, k: int, a: int, c: int, variant: MatrixVariant) -> list:
    """All four variants from (n, k, a, c); sqrt term is sqrt((a-c)^2 + 4(k-c))."""
    m_tau, m_theta = srg_multiplicities(n, k, a, c)
    root = Surd.sqrt((a - c) ** 2 + 4 * (k - c))
    t = 2 * n - 2 - k
    if variant is V.D:
        lo, hi, top = (-4 - a + c - root) / 2, (-4 - a + c + root) / 2, Surd(t)
    elif variant is V.DQ:
        lo, hi, top = (4 * n - 2 * k - 8 - a + c - root) / 2, (4 * n - 2 * k - 8 - a + c + root) / 2, Surd(2 * t)
    elif variant is V.DL:
        # signs follow the D values: theta_D = lo maps to the largest DL value
        hi, lo, top = (4 * n - 2 * k + a - c + root) / 2, (4 * n - 2 * k + a - c - root) / 2, Surd(0)
        return _expand([(top, 1), (hi, m_theta), (lo, m_tau)])
    else:
        hi = (4 * n - 2 * k + a - c + root) / (2 * t)
        lo = (4 * n - 2 * k + a - c - root) / (2 * t)
        return _expand([(Surd(0), 1), (hi, m_theta), (lo, m_tau)])
    return _expand([(top, 1), (lo, m_theta), (hi, m_tau)])


def conference_spectrum(n: int, variant: MatrixVariant) -> list:
    s = Surd.sqrt(n)
    half = (n - 1) // 2
    if variant is V.D:
        vals = [(Surd(Fraction(3 * (n - 1), 2)), 1), ((-3 - s) / 2, half), ((-3 + s) / 2, half)]
    elif variant is V.DQ:
        vals = [(Surd(3 * (n - 1)), 1), ((3 * n - s - 6) / 2, half), ((3 * n + s - 6) / 2, half)]
    elif variant is V.DL:
        vals = [(Surd(0), 1), ((3 * n - s) / 2, half), ((3 * n + s) / 2, half)]
    else:
        vals = [(Surd(0), 1), ((3 * n - s) / (3 * (n - 1)), half), ((3 * n + s) / (3 * (n - 1)), half)]
    return _expand(vals)


def _complete_spectrum(n: int, v: MatrixVariant) -> list:
    if v is V.D:
        return _expand([(Fraction(-1), n - 1), (Fraction(n - 1), 1)])
    if v is V.DQ:
        return _expand([(Fraction(n - 2), n - 1), (Fraction(2 * n - 2), 1)])
    if v is V.DL:
        return _expand([(Fraction(0), 1), (Fraction(n), n - 1)])
    return _expand([(Fraction(0), 1), (Fraction(n, n - 1), n - 1)])


def _bipartite_spectrum(a: int, b: int, v: MatrixVariant) -> list:
    n = a + b
    if v is V.D:
        r = Surd.sqrt(a * a - a * b + b * b)
        return _expand([(Fraction(-2), n - 2), (a + b - 2 - r, 1), (a + b - 2 + r, 1)])
    if v is V.DQ:
        r = Surd.sqrt(9 * a * a - 14 * a * b + 9 * b * b)
        return _expand([((5 * a + 5 * b - 8 - r) / 2, 1), ((5 * a + 5 * b - 8 + r) / 2, 1),
                        (Fraction(2 * a + b - 4), a - 1), (Fraction(2 * b + a - 4), b - 1)])
    if v is V.DL:
        return _expand([(Fraction(0), 1), (Fraction(n), 1),
                        (Fraction(2 * a + b), a - 1), (Fraction(2 * b + a), b - 1)])
    mid = Fraction(2 * (a * a + a * (b - 1) + (b - 1) * b), (2 * a + b - 2) * (a + 2 * b - 2))
    return _expand([(Fraction(0), 1), (mid, 1), (Fraction(2 * b + a, 2 * b + a - 2), b - 1),
                    (Fraction(2 * a + b, 2 * a + b - 2), a - 1)])


def _hamming_spectrum(d: int, r: int, v: MatrixVariant) -> list:
    t = d * r ** (d - 1) * (r - 1)
    m1, m0 = d * (r - 1), r ** d - d * (r - 1) - 1
    g = r ** (d - 1)
    if v is V.D:
        return _expand([(Fraction(-g), m1), (Fraction(0), m0), (Fraction(t), 1)])
    if v is V.DQ:
        return _expand([(Fraction(t - g), m1), (Fraction(t), m0), (Fraction(2 * t), 1)])
    if v is V.DL:
        return _expand([(Fraction(0), 1), (Fraction(t), m0), (Fraction(t + g), m1)])
    return _expand([(Fraction(0), 1), (Fraction(1), m0), (Fraction(t + g, t), m1)])


def _cycle_distance_spectrum(n: int) -> list[float]:
    p = n // 2
    if n % 2 == 0:
        vals = [float(p * p)] + [0.0] * (p - 1)
        vals += [-1 / math.sin(math.pi * (2 * j - 1) / (2 * p)) ** 2 for j in range(1, p + 1)]
    else:
        vals = [float(p * p + p)]
        for j in range(1, p + 1):
            vals.append(-0.25 / math.cos(math.pi * j / (2 * p + 1)) ** 2)
            vals.append(-0.25 / math.sin(math.pi * (2 * j - 1) / (2 * (2 * p + 1))) ** 2)
    return sorted(vals)


def _kn_minus_e_spectrum(n: int, v: MatrixVariant) -> list:
    if v is V.D:
        r = Surd.sqrt(n * n - 2 * n + 9)
        return _expand([(Fraction(-2), 1), (Fraction(-1), n - 3), ((n - 1 - r) / 2, 1), ((n - 1 + r) / 2, 1)])
    if v is V.DL:
        return _expand([(Fraction(0), 1), (Fraction(n), n - 2), (Fraction(n + 2), 1)])
    if v is V.DQ:
        r = Surd.sqrt(n * n - 4 * n + 20)
        return _expand([(Fraction(n - 2), n - 2), ((3 * n - 2 - r) / 2, 1), ((3 * n - 2 + r) / 2, 1)])
    return _expand([(Fraction(n + 2, n), 1), (Fraction(n, n - 1), n - 3), (Fraction(0), 1),
                    (Fraction(n * n - n + 2, (n - 1) * n), 1)])


def _star_plus_edge_spectrum(n: int, v: MatrixVariant) -> list:
    if v is V.DL:
        return _expand([(Fraction(0), 1), (Fraction(n), 1), (Fraction(2 * n - 3), 1),
                        (Fraction(2 * n - 1), n - 3)])
    if v is V.DNL:
        if n < 5:
            raise NoClosedForm("closed form needs n >= 5")
        b = Fraction(-8 * n * n + 20 * n - 7, 2 * (n - 2) * (2 * n - 3))
        c = Fraction(2 * n * n - n, (n - 1) * (2 * n - 3))
        r = Surd.sqrt(b * b - 4 * c)
        return _expand([(Fraction(2 * n - 3, 2 * n - 4), 1), (Fraction(2 * n - 1, 2 * n - 3), n - 4),
                        (Fraction(0), 1), ((-b - r) / 2, 1), ((-b + r) / 2, 1)])
    raise NoClosedForm(f"star_plus_edge has no closed form for {v.name}")


def _dsrg_spectrum(n: int, k: int, s: int, a: int, c: int) -> list:
    disc = (c - a) ** 2 + 4 * (s - c)
    if disc < 0:
        raise Unrealizable("complex DSRG eigenvalues")
    root = Surd.sqrt(disc)
    top = 2 * k + (n - 1) * (a - c)
    r = isqrt(disc)
    if r * r == disc and r:
        if top % r or (n - 1 + top // r) % 2:
            raise Unrealizable("non-integral DSRG multiplicities")
        shift = top // r
    elif top == 0:
        shift = 0
    else:
        raise Unrealizable("non-integral DSRG multiplicities")
    m_tau, m_theta = (n - 1 + shift) // 2, (n - 1 - shift) // 2
    tau_d = -2 - (a - c - root) / 2
    theta_d = -2 - (a - c + root) / 2
    return _expand([(tau_d, m_tau), (theta_d, m_theta), (Surd(2 * n - 2 - k), 1)])


def _dicycle_distance_spectrum(n: int) -> list[complex]:
    """Circulant with first row 0, 1, ..., n-1: eigenvalues n/(w^k - 1), k >= 1."""
    vals = [complex(n * (n - 1) / 2)]
    for k in range(1, n):
        w = complex(math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n))
        vals.append(n / (w - 1))
    return sorted(vals, key=lambda z: (round(z.real, 12), round(z.imag, 12)))


def oracle_spectrum(spec: FamilySpec, variant: MatrixVariant) -> list:
    """Closed-form spectrum as a sorted list (Fraction, Surd, float or complex entries)."""
    k, p = spec.kind, spec.params
    if k in ("complete", "complete_digraph"):
        return _complete_spectrum(p[0], variant)
    if k == "complete_bipartite" or (k == "complete_multipartite" and len(p) == 2):
        a, b = sorted(p)
        return _bipartite_spectrum(a, b, variant)
    if k == "star":
        if variant is V.DL:
            n = p[0]
            return _expand([(Fraction(0), 1), (Fraction(n), 1), (Fraction(2 * n - 1), n - 2)])
        return _bipartite_spectrum(1, p[0] - 1, variant)
    if k == "complete_multipartite":
        if len(set(p)) == 1:
            m, s = len(p), p[0]
            if s == 1:
                return _complete_spectrum(m, variant)
            return srg_spectrum(m * s, (m - 1) * s, (m - 2) * s, (m - 1) * s, variant)
        raise NoClosedForm("complete multipartite graphs need equal parts")
    if k == "cocktail_party":
        m = p[0]
        return srg_spectrum(2 * m, 2 * m - 2, 2 * m - 4, 2 * m - 2, variant)
    if k in ("hamming", "hypercube"):
        d, r = (p[0], p[1]) if k == "hamming" else (p[0], 2)
        return _hamming_spectrum(d, r, variant)
    if k == "cycle":
        n, half = p[0], p[0] // 2
        t = half * half if n % 2 == 0 else half * half + half
        return transform_tr_spectrum(_cycle_distance_spectrum(n), t, variant)
    if k == "kn_minus_e":
        if p[0] < 4:
            raise NoClosedForm("closed form needs n >= 4")
        return _kn_minus_e_spectrum(p[0], variant)
    if k == "star_plus_edge":
        return _star_plus_edge_spectrum(p[0], variant)
    if k == "petersen":
        return srg_spectrum(10, 3, 0, 1, variant)
    if k == "paley":
        return conference_spectrum(p[0], variant)
    if k == "srg":
        return srg_spectrum(*p, variant)
    if k == "dsrg":
        return transform_tr_spectrum(_dsrg_spectrum(*p), 2 * p[0] - 2 - p[1], variant)
    if k == "dicycle":
        n = p[0]
        return transform_tr_spectrum(_dicycle_distance_spectrum(n), n * (n - 1) // 2, variant)
    raise NoClosedForm(f"{k} has no closed-form spectrum")


# --- classification ------------------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    transmission_regular: bool
    optimistic: bool
    one_positive_D_eigenvalue: bool
    distinct_D_eigenvalues: int
    diameter: int
    distinct_within_diameter_bound: bool
    variant_counts: dict | None = None       # sorting-point counts for transmission-regular graphs
    equivalences_hold: bool | None = None

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _above_below(p, point) -> tuple[int, int]:
    inert = inertia_exact(p.shift(point))
    return inert.n_plus, inert.n_minus


def classify(g: Graph, spectra=None) -> Classification:
    """Sign and multiplicity flags of the distance spectrum, from exact inertia.

    `spectra` is accepted for API symmetry but the flags never depend on
    floating-point eigenvalues.
    """
    info = all_pairs_distances(g)
    pd = variant_char_poly(info, V.D)
    inert = inertia_exact(pd)
    distinct = sum(f.degree for f, _ in squarefree_decomposition(pd))
    optimistic = inert.n_plus > inert.n_minus
    one_pos = inert.n_plus == 1
    counts = equiv = None
    if info.transmission_regular:
        t = info.t_min
        q_above, q_below = _above_below(variant_char_poly(info, V.DQ), t)
        l_above, l_below = _above_below(variant_char_poly(info, V.DL), t)
        n_above, n_below = _above_below(variant_char_poly(info, V.DNL), 1)
        counts = {"DQ_above_t": q_above, "DQ_below_t": q_below,
                  "DL_above_t": l_above, "DL_below_t": l_below,
                  "DNL_above_1": n_above, "DNL_below_1": n_below}
        equiv = (optimistic == (q_above > q_below) == (l_below > l_above) == (n_below > n_above)
                 and one_pos == (q_above == 1) == (l_below == 1) == (n_below == 1))
    return Classification(info.transmission_regular, optimistic, one_pos, distinct,
                          info.diameter, distinct <= info.diameter + 1, counts, equiv)
