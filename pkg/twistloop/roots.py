# twistloop/roots.py
"""Simply-laced root systems, their diagram automorphisms and the folded
(twisted) root data.

Indices are 0-based throughout; simple root ``i`` is the unit vector e_i and a
root is a tuple of integer coordinates in the simple-root basis. Folded roots
are integer tuples over the orbit basis a_1 .. a_l (orbit ``p`` at position
``p - 1``).
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from twistloop.errors import RootError, SignAdjustmentError, UnsupportedCaseError
from twistloop.report import Report

logger = logging.getLogger(__name__)

R1, R2, R3, R4 = "R-1", "R-2", "R-3", "R-4"
ROOT_TYPES = (R1, R2, R3, R4)

SUPPORTED_CASES = (
    "A_N (N>=1) r=1, A_N (N>=2) r=2, D_N (N>=4) r=1|2, D_4 r=3, E_6 r=1|2"
)

# Members of the order-3 orbits picked by the correspondence in (D_4, 3).
_D4_R4_REPS = frozenset({
    (1, 0, 0, 0), (-1, 0, 0, 0),
    (1, 1, 0, 0), (-1, -1, 0, 0),
    (0, 1, 1, 1), (0, -1, -1, -1),
})


def lex_key(root):
    """Sort key of the lexicographic order defined by the simple roots.

    Coordinates are compared starting from the last simple root; this is the
    convention under which alpha_1+alpha_2+alpha_3 <= alpha_2+alpha_3+alpha_4 in A_4.
    """
    return tuple(reversed(root))


def height(root):
    return sum(root)


def neg(root):
    return tuple(-c for c in root)


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def scale(k, a):
    return tuple(k * x for x in a)


def is_positive(root):
    return any(c > 0 for c in root)


def cartan_matrix(series, rank):
    """Cartan matrix of A_N, D_N or E_6 in the labelling used throughout the package."""
    if series == "A" and rank >= 1:
        edges = [(i, i + 1) for i in range(rank - 1)]
    elif series == "D" and rank >= 4:
        # chain 0 .. N-2, node N-1 hangs off N-3
        edges = [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    elif series == "E" and rank == 6:
        # chain 0-1-2-4-5 with 3 attached to 2
        edges = [(0, 1), (1, 2), (2, 4), (4, 5), (2, 3)]
    else:
        raise UnsupportedCaseError(f"Unsupported root system {series}_{rank}; supported: A_N, D_N (N>=4), E_6")
    A = 2 * np.eye(rank, dtype=int)
    for i, j in edges:
        A[i, j] = -1
        A[j, i] = -1
    return A


@dataclass(frozen=True, eq=False)
class RootSystem:
    series: str
    rank: int
    cartan: np.ndarray
    positive: tuple
    roots: tuple
    _index: dict = field(repr=False)

    @property
    def label(self):
        return f"{self.series}{self.rank}"

    def simple(self, i):
        return tuple(int(i == j) for j in range(self.rank))

    def inner(self, a, b):
        """Normalized invariant form, (alpha, alpha) = 2 on roots."""
        return int(np.asarray(a) @ self.cartan @ np.asarray(b))

    def pairing(self, beta, alpha):
        """beta(H_alpha) = (beta, alpha^vee)."""
        return 2 * self.inner(beta, alpha) // self.inner(alpha, alpha)

    def is_root(self, v):
        return tuple(v) in self._index

    def index(self, root):
        try:
            return self._index[tuple(root)]
        except KeyError:
            raise RootError(f"{tuple(root)} is not a root of {self.label}") from None

    def highest_root(self):
        return self.positive[-1]

    def coroot_decomp(self, alpha):
        """Coordinates n_i of H_alpha = sum n_i H_{alpha_i}; the root coordinates when simply laced."""
        self.index(alpha)
        return tuple(alpha)

    @property
    def dim(self):
        return len(self.roots) + self.rank


def build_root_system(series, rank):
    series = series.upper()
    A = cartan_matrix(series, rank)
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]

    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(rank):
                # beta + alpha_i is a root iff (beta, alpha_i) = -1 in the simply-laced case
                if int(np.asarray(beta) @ A[:, i]) == -1:
                    gamma = add(beta, simple[i])
                    if gamma not in found:
                        found.add(gamma)
                        nxt.append(gamma)
        frontier = nxt

    positive = tuple(sorted(found, key=lambda v: (height(v), lex_key(v))))
    roots = positive + tuple(neg(v) for v in positive)
    index = {v: k for k, v in enumerate(roots)}
    logger.debug("Roots: built %s%d with %d positive roots", series, rank, len(positive))
    return RootSystem(series, rank, A, positive, roots, index)


# --- Diagram automorphisms ---

@dataclass(frozen=True)
class DiagramAut:
    perm: tuple
    order: int
    omega: tuple = None

    def act(self, root, perm=None):
        perm = self.perm if perm is None else perm
        out = [0] * len(root)
        for i, c in enumerate(root):
            out[perm[i]] += c
        return tuple(out)

    def act_omega(self, root):
        if self.omega is None:
            return tuple(root)
        return self.act(root, self.omega)

    def power(self, root, k):
        for _ in range(k % self.order):
            root = self.act(root)
        return root

    def orbit(self, root):
        out = [tuple(root)]
        nxt = self.act(root)
        while nxt != out[0]:
            out.append(nxt)
            nxt = self.act(nxt)
        return out

    @property
    def is_identity(self):
        return self.order == 1


def diagram_aut(series, rank, r):
    series = series.upper()
    cartan = cartan_matrix(series, rank)
    omega = None
    if r == 1:
        perm = tuple(range(rank))
    elif r == 2 and series == "A" and rank >= 2:
        perm = tuple(rank - 1 - i for i in range(rank))
    elif r == 2 and series == "D" and rank >= 4:
        perm = tuple(range(rank - 2)) + (rank - 1, rank - 2)
    elif r == 2 and series == "E" and rank == 6:
        perm = (5, 4, 2, 3, 1, 0)
    elif r == 3 and series == "D" and rank == 4:
        perm = (2, 1, 3, 0)
        omega = (0, 1, 3, 2)
    else:
        raise UnsupportedCaseError(
            f"No diagram automorphism of order {r} on {series}_{rank}; supported: {SUPPORTED_CASES}"
        )
    for p in (perm,) + ((omega,) if omega else ()):
        if not np.array_equal(cartan[np.ix_(p, p)], cartan):
            raise UnsupportedCaseError(f"Permutation {p} does not preserve the Cartan matrix")
    return DiagramAut(perm, r, omega)


def _orbit_classes(series, rank, r):
    """Simple-root orbits ordered as a_1 .. a_l."""
    if r == 1:
        return tuple((i,) for i in range(rank))
    if series == "A":
        return tuple(tuple(sorted({p - 1, rank - p})) for p in range(1, (rank + 1) // 2 + 1))
    if series == "D" and r == 2:
        return tuple((i,) for i in range(rank - 2)) + ((rank - 2, rank - 1),)
    if series == "E":
        return ((0, 5), (1, 4), (2,), (3,))
    if series == "D" and r == 3:
        return ((1,), (0, 2, 3))
    raise UnsupportedCaseError(f"No orbit labelling for {series}_{rank}, r={r}")


# --- Folding ---

@dataclass(frozen=True, eq=False)
class FoldedSystem:
    rs: RootSystem
    aut: DiagramAut
    orbits: tuple
    images: dict
    fibers: dict
    tags: dict
    lengths: dict
    delta_sigma: frozenset
    label: str

    @property
    def r(self):
        return self.aut.order

    @property
    def ell(self):
        return len(self.orbits)

    @property
    def is_a_even(self):
        """(A_{2l}, 2): the only case with doubled roots."""
        return self.r == 2 and self.rs.series == "A" and self.rs.rank % 2 == 0

    @property
    def case(self):
        base = self.rs.label
        return base if self.r == 1 else f"{base}^({self.r})"

    def project(self, root):
        return tuple(sum(root[i] for i in orbit) for orbit in self.orbits)

    def lift(self, folded):
        """Rational vector in the simple-root basis projecting onto ``folded``."""
        out = [Fraction(0)] * self.rs.rank
        for c, orbit in zip(folded, self.orbits):
            for i in orbit:
                out[i] += Fraction(c, len(orbit))
        return out

    def inner(self, a, b):
        la, lb = self.lift(a), self.lift(b)
        C = self.rs.cartan
        n = self.rs.rank
        return sum(la[i] * int(C[i, j]) * lb[j] for i in range(n) for j in range(n))

    def norm_sq(self, a):
        return self.inner(a, a)

    def tag(self, a):
        try:
            return self.tags[tuple(a)]
        except KeyError:
            raise RootError(f"{tuple(a)} is not in pi(Delta) for {self.case}") from None

    def is_doubled(self, a):
        a = tuple(a)
        if not self.is_a_even or any(c % 2 for c in a):
            return False
        return tuple(c // 2 for c in a) in self.tags

    def simple(self, p):
        return tuple(int(p == q) for q in range(self.ell))

    def positive_images(self):
        return sorted((a for a in self.tags if is_positive(a)), key=lambda v: (height(v), lex_key(v)))

    def to_json(self):
        return {
            "case": self.case,
            "folded_type": self.label,
            "orbits": [[i + 1 for i in o] for o in self.orbits],
            "roots": [
                {
                    "image": list(a),
                    "type": self.tags[a],
                    "length": self.lengths[a],
                    "in_delta_sigma": a in self.delta_sigma,
                    "correspondent": list(correspondent(self, a)),
                    "fiber": [list(b) for b in self.fibers[a]],
                }
                for a in sorted(self.tags, key=lambda v: (not is_positive(v), abs(height(v)), lex_key(v)))
            ],
        }


def _classify(rs, aut, alpha):
    s_alpha = aut.act(alpha)
    if s_alpha == alpha:
        return R1
    if aut.order == 3:
        return R4
    return R3 if rs.is_root(add(alpha, s_alpha)) else R2


def _folded_label(series, rank, r):
    if r == 1:
        return f"{series}{rank}"
    if series == "A":
        ell = (rank + 1) // 2
        return f"C{ell}" if rank % 2 else f"B{ell}"
    if series == "D" and r == 2:
        return f"B{rank - 1}"
    if series == "E":
        return "F4"
    return "G2"


def fold(rs, aut):
    if len(aut.perm) != rs.rank:
        raise UnsupportedCaseError("Automorphism does not belong to this root system")
    orbits = _orbit_classes(rs.series, rs.rank, aut.order)

    images, fibers, tags = {}, {}, {}
    for alpha in rs.roots:
        a = tuple(sum(alpha[i] for i in orbit) for orbit in orbits)
        images[alpha] = a
        fibers.setdefault(a, []).append(alpha)
        tag = _classify(rs, aut, alpha)
        if tags.setdefault(a, tag) != tag:
            raise RootError(f"Fiber over {a} mixes root types {tags[a]} and {tag}")

    a_even = aut.order == 2 and rs.series == "A" and rs.rank % 2 == 0
    lengths = {}
    for a, tag in tags.items():
        if aut.order == 1:
            lengths[a] = "long"
        elif a_even:
            lengths[a] = {R1: "extra-long", R2: "long", R3: "short"}[tag]
        else:
            lengths[a] = "long" if tag == R1 else "short"

    if a_even:
        delta_sigma = frozenset(
            a for a in tags
            if not (all(c % 2 == 0 for c in a) and tuple(c // 2 for c in a) in tags)
        )
    else:
        delta_sigma = frozenset(tags)

    fs = FoldedSystem(
        rs=rs,
        aut=aut,
        orbits=orbits,
        images=images,
        fibers={a: tuple(sorted(v, key=lex_key)) for a, v in fibers.items()},
        tags=tags,
        lengths=lengths,
        delta_sigma=delta_sigma,
        label=_folded_label(rs.series, rs.rank, aut.order),
    )
    logger.debug("Roots: folded %s into %s (%d images)", rs.label, fs.label, len(tags))
    return fs


def correspondent(fs, a):
    """The root alpha with a <-> alpha."""
    a = tuple(a)
    tag = fs.tag(a)
    fiber = fs.fibers[a]
    if tag == R1 or fs.r == 1:
        return fiber[0]
    if tag == R4:
        for alpha in fiber:
            if alpha in _D4_R4_REPS:
                return alpha
        raise RootError(f"No listed representative over {a}")
    return min(fiber, key=lex_key)


def folded_cartan(fs):
    """(a_q(H_p))_{p,q} = 2 (a_q, a_p) / (a_p, a_p) over the simple folded roots."""
    ell = fs.ell
    A = np.zeros((ell, ell), dtype=int)
    for p in range(ell):
        ap = fs.simple(p)
        for q in range(ell):
            v = 2 * fs.inner(fs.simple(q), ap) / fs.norm_sq(ap)
            if v.denominator != 1:
                raise RootError(f"Non-integral folded Cartan entry {v} at ({p}, {q})")
            A[p, q] = int(v)
    return A


def folded_type_cartan(label):
    """Cartan matrix of B_l, C_l, F_4 or G_2 in the chain labelling a_1 .. a_l.

    Entry (p, q) is a_q(H_p), so the row of a short root carries the -2 (or -3)
    toward its long neighbour.
    """
    kind, ell = label[0], int(label[1:])
    if kind == "G" and ell == 2:
        return np.array([[2, -1], [-3, 2]])
    if kind == "F" and ell == 4:
        return np.array([[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]])
    if kind not in ("B", "C") or ell < 1:
        raise UnsupportedCaseError(f"No folded type {label}")
    A = cartan_matrix("A", ell)
    if ell >= 2:
        if kind == "B":
            A[ell - 1, ell - 2] = -2
        else:
            A[ell - 2, ell - 1] = -2
    return A


def folded_reflect(fs, a, b):
    """s_a(b) = b - 2 (b, a) / (a, a) a on folded vectors."""
    k = 2 * fs.inner(b, a) / fs.norm_sq(a)
    if k.denominator != 1:
        raise RootError(f"Non-integral reflection coefficient {k}")
    return tuple(y - int(k) * x for x, y in zip(a, b))


def weyl_reflect(rs, alpha, beta):
    return sub(beta, scale(rs.pairing(beta, alpha), alpha))


def pairing(rs, beta, alpha):
    return rs.pairing(beta, alpha)


def coroot_decomp(tbl, alpha):
    return tbl.rs.coroot_decomp(alpha)


# --- The -a_0 table ---

@dataclass(frozen=True)
class HighestA0:
    neg_a0: tuple
    alpha: tuple
    tag: str
    coeffs: tuple

    @property
    def a0(self):
        return neg(self.neg_a0)


def highest_a0(fs):
    rs = fs.rs
    n, ell = rs.rank, fs.ell
    if fs.r == 1:
        theta = rs.highest_root()
        return HighestA0(theta, theta, R1, theta)
    if rs.series == "A" and n % 2 == 0:
        coeffs = (2,) * ell
        alpha = (1,) * n
    elif rs.series == "A":
        coeffs = (1,) + (2,) * (ell - 2) + (1,)
        alpha = tuple(1 if i < 2 * ell - 2 else 0 for i in range(n))
    elif rs.series == "D" and fs.r == 2:
        coeffs = (1,) * ell
        alpha = tuple(1 if i < ell else 0 for i in range(n))
    elif rs.series == "E":
        coeffs = (2, 3, 2, 1)
        alpha = (1, 2, 2, 1, 1, 1)
    else:
        coeffs = (1, 2)
        alpha = (1, 1, 1, 0)
    if not rs.is_root(alpha) or fs.project(alpha) != coeffs:
        raise RootError(f"-a_0 table row for {fs.case} is inconsistent")
    return HighestA0(coeffs, alpha, fs.tag(coeffs), coeffs)


# --- Real affine roots ---

def in_omega(fs, a, n):
    a = tuple(a)
    if a not in fs.tags:
        return False
    if fs.r == 1:
        return True
    if fs.is_a_even:
        return n % 2 == 1 if fs.is_doubled(a) else True
    if fs.tags[a] == R1:
        return n % fs.r == 0
    return True


def real_roots(fs, nmax):
    """Every (a', n) in Omega with |n| <= nmax."""
    out = []
    images = sorted(fs.tags, key=lambda v: (not is_positive(v), abs(height(v)), lex_key(v)))
    for n in range(-nmax, nmax + 1):
        for a in images:
            if in_omega(fs, a, n):
                out.append((a, n))
    return out


# --- Chevalley structure constants and automorphism signs ---

@dataclass(eq=False)
class ChevTable:
    rs: RootSystem
    aut: DiagramAut
    N: dict
    k: dict
    k_omega: dict

    def n(self, alpha, beta):
        return self.N.get((tuple(alpha), tuple(beta)), 0)

    def coroot(self, alpha):
        return self.rs.coroot_decomp(alpha)

    def to_json(self):
        return {
            "type": self.rs.series,
            "rank": self.rs.rank,
            "r": self.aut.order,
            "N": [{"alpha": list(a), "beta": list(b), "value": v} for (a, b), v in sorted(self.N.items())],
            "k": [{"alpha": list(a), "value": v} for a, v in sorted(self.k.items())],
            "k_omega": [{"alpha": list(a), "value": v} for a, v in sorted(self.k_omega.items())],
        }


def _cocycle_sign(rs, alpha, beta):
    """Bimultiplicative sign with eps(alpha, alpha) = -1 on roots."""
    n = rs.rank
    parity = sum(alpha[i] * beta[i] for i in range(n))
    for i in range(n):
        for j in range(i + 1, n):
            if rs.cartan[i, j] == -1:
                parity += alpha[i] * beta[j]
    return -1 if parity % 2 else 1


def _raw_constants(rs):
    sgn = {alpha: (1 if is_positive(alpha) else -1) for alpha in rs.roots}
    N = {}
    for alpha in rs.roots:
        for beta in rs.roots:
            gamma = add(alpha, beta)
            if rs.is_root(gamma):
                N[(alpha, beta)] = _cocycle_sign(rs, alpha, beta) * sgn[alpha] * sgn[beta] * sgn[gamma]
    return N


def extraspecial_pairs(rs):
    """gamma -> (alpha, beta) for each non-simple positive root, alpha the first positive root
    in (height, lex) order with gamma - alpha positive."""
    pairs = {}
    for gamma in rs.positive:
        for alpha in rs.positive:
            beta = sub(gamma, alpha)
            if rs.is_root(beta) and is_positive(beta):
                pairs[gamma] = (alpha, beta)
                break
    return pairs


def _extraspecial_constants(rs):
    """Cocycle constants with X_gamma and X_{-gamma} flipped together until N = +1 on every extraspecial pair."""
    N = _raw_constants(rs)
    pairs = extraspecial_pairs(rs)
    c = {}
    for gamma in rs.positive:
        pair = pairs.get(gamma)
        c[gamma] = 1 if pair is None else c[pair[0]] * c[pair[1]] * N[pair]
        c[neg(gamma)] = c[gamma]
    return {(a, b): c[a] * c[b] * c[add(a, b)] * v for (a, b), v in N.items()}


def _signs_for(rs, N, perm):
    """k_alpha of the Lie automorphism sending X_{+-alpha_i} to X_{+-perm(alpha_i)}."""
    def act(v):
        out = [0] * len(v)
        for i, c in enumerate(v):
            out[perm[i]] += c
        return tuple(out)

    k = {}
    for i in range(rs.rank):
        k[rs.simple(i)] = 1
    for gamma in rs.positive:
        if gamma in k:
            continue
        for i in range(rs.rank):
            beta = sub(gamma, rs.simple(i))
            if beta in k:
                ai = rs.simple(i)
                k[gamma] = k[beta] * N[(act(beta), act(ai))] * N[(beta, ai)]
                break
        else:
            raise SignAdjustmentError(f"No decomposition found for {gamma}")
    for gamma in rs.positive:
        k[neg(gamma)] = k[gamma]
    return k


def _group_elements(rs, N, aut):
    """All elements of <sigma, omega> as (perm, k) pairs in breadth-first order."""
    gens = [aut.perm] + ([aut.omega] if aut.omega else [])
    gen_signs = [(g, _signs_for(rs, N, g)) for g in gens]
    identity = tuple(range(rs.rank))
    elements = [(identity, {alpha: 1 for alpha in rs.roots})]
    seen = {identity}
    queue = list(elements)
    while queue:
        perm, k = queue.pop(0)
        for s, ks in gen_signs:
            new_perm = tuple(s[perm[i]] for i in range(rs.rank))
            if new_perm in seen:
                continue
            act_g = DiagramAut(perm, 1).act
            new_k = {alpha: k[alpha] * ks[act_g(alpha)] for alpha in rs.roots}
            seen.add(new_perm)
            elements.append((new_perm, new_k))
            queue.append((new_perm, new_k))
    return elements


def twisted_sum_roots(rs, aut):
    """Roots of the form beta + sigma(beta)."""
    out = set()
    for beta in rs.roots:
        gamma = add(beta, aut.act(beta))
        if aut.act(beta) != beta and rs.is_root(gamma):
            out.add(gamma)
    return out


def chevalley_constants(rs, aut):
    N = _extraspecial_constants(rs)
    if aut.is_identity:
        k = {alpha: 1 for alpha in rs.roots}
        return ChevTable(rs, aut, N, k, dict(k))

    elements = _group_elements(rs, N, aut)

    # rescale X_alpha by eta_alpha along each orbit of <sigma, omega>
    eta = {}
    for alpha0 in sorted(rs.positive, key=lex_key):
        if alpha0 in eta:
            continue
        for perm, k in elements:
            beta = DiagramAut(perm, 1).act(alpha0)
            if beta not in eta:
                eta[beta] = k[alpha0]
    for alpha in rs.positive:
        eta[neg(alpha)] = eta[alpha]

    N = {(a, b): eta[a] * eta[b] * eta[add(a, b)] * v for (a, b), v in N.items()}
    k = _signs_for(rs, N, aut.perm)
    k_omega = _signs_for(rs, N, aut.omega) if aut.omega else {alpha: 1 for alpha in rs.roots}

    tbl = ChevTable(rs, aut, N, k, k_omega)
    _check_sign_rule(tbl)
    logger.debug("Roots: sign normalization reached for %s, r=%d", rs.label, aut.order)
    return tbl


def _check_sign_rule(tbl):
    rs, aut = tbl.rs, tbl.aut
    minus = twisted_sum_roots(rs, aut)
    for alpha in rs.roots:
        if tbl.k[alpha] != tbl.k[aut.act(alpha)]:
            raise SignAdjustmentError(f"k differs along the orbit of {alpha}")
        if (tbl.k[alpha] == -1) != (alpha in minus):
            raise SignAdjustmentError(f"k_{alpha} = {tbl.k[alpha]} breaks the sign rule")
        if tbl.k_omega[alpha] != 1:
            raise SignAdjustmentError(f"omega sign at {alpha} is {tbl.k_omega[alpha]}")


def verify_sign_identities(tbl, aut=None):
    """Scan N_{s a, s b} = k_{a+b} k_a k_b N_{a,b} and N_{w a, w b} = N_{a,b} over composable pairs."""
    aut = aut or tbl.aut
    report = Report("sign-identities")
    for (alpha, beta), value in sorted(tbl.N.items()):
        gamma = add(alpha, beta)
        lhs = tbl.n(aut.act(alpha), aut.act(beta))
        rhs = tbl.k[gamma] * tbl.k[alpha] * tbl.k[beta] * value
        report.check(lhs == rhs, "sigma", alpha, beta, lhs, rhs)
        if aut.omega:
            lhs = tbl.n(aut.act_omega(alpha), aut.act_omega(beta))
            report.check(lhs == value, "omega", alpha, beta, lhs, value)
    return report
