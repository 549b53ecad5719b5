# twistloop/loopalg.py
"""The twisted loop algebra L(g; Gamma) with its central element c and
derivation d.

Elements are ``LieElt`` values: a map from Chevalley basis keys of g to Laurent
coefficients, plus scalar c and d coefficients. Basis keys are ``("X", root)``
and ``("H", i)``. All structure comes from a ``LoopAlgebra`` bound to one
folded system and its sign-normalized ``ChevTable``.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from twistloop import roots as rt
from twistloop.errors import OmegaError, RootError
from twistloop.report import Report
from twistloop.scalars import Cyc, Laurent

logger = logging.getLogger(__name__)


def X(alpha):
    return ("X", tuple(alpha))


def H(i):
    return ("H", i)


def _key_order(key):
    kind, v = key
    return (0, rt.lex_key(v)) if kind == "X" else (1, (v,))


class LieElt:
    """sum_k B_k (x) s_k + c_coeff * c + d_coeff * d."""

    __slots__ = ("r", "terms", "c", "d")

    def __init__(self, r, terms=None, c=0, d=0):
        clean = {}
        for key, s in (terms or {}).items():
            if not isinstance(s, Laurent):
                s = Laurent.const(r, s)
            if s:
                clean[key] = s
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "c", c if isinstance(c, Cyc) else Cyc(r, c))
        object.__setattr__(self, "d", d if isinstance(d, Cyc) else Cyc(r, d))

    def __setattr__(self, name, value):
        raise AttributeError("LieElt is immutable")

    @classmethod
    def zero(cls, r):
        return cls(r)

    @classmethod
    def basis(cls, r, key, s=1):
        return cls(r, {key: s})

    @classmethod
    def central(cls, r, c=1):
        return cls(r, c=c)

    @classmethod
    def derivation(cls, r, d=1):
        return cls(r, d=d)

    def __add__(self, other):
        if not isinstance(other, LieElt):
            return NotImplemented
        terms = dict(self.terms)
        for key, s in other.terms.items():
            terms[key] = terms[key] + s if key in terms else s
        return LieElt(self.r, terms, self.c + other.c, self.d + other.d)

    def __neg__(self):
        return LieElt(self.r, {k: -s for k, s in self.terms.items()}, -self.c, -self.d)

    def __sub__(self, other):
        if not isinstance(other, LieElt):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        """Scalar multiple. A Laurent scalar must be constant unless c = d = 0."""
        if isinstance(scalar, Laurent):
            if scalar.is_constant():
                scalar = scalar.constant_value()
            elif self.c or self.d:
                raise ValueError("Only the loop part can be multiplied by a non-constant Laurent")
            else:
                return LieElt(self.r, {k: s * scalar for k, s in self.terms.items()})
        if not isinstance(scalar, (int, Fraction, Cyc)):
            return NotImplemented
        return LieElt(self.r, {k: s * scalar for k, s in self.terms.items()}, self.c * scalar, self.d * scalar)

    __rmul__ = __mul__

    def is_zero(self):
        return not self.terms and not self.c and not self.d

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, LieElt):
            return NotImplemented
        return self.r == other.r and self.terms == other.terms and self.c == other.c and self.d == other.d

    def __hash__(self):
        return hash((self.r, tuple(sorted(self.terms.items(), key=lambda kv: _key_order(kv[0]))), self.c, self.d))

    def coeff(self, key):
        return self.terms.get(key, Laurent.zero(self.r))

    def degrees(self):
        return sorted({n for s in self.terms.values() for n in s.terms})

    def strip_degree(self):
        """The element of g obtained by dropping z from a homogeneous loop element."""
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError("strip_degree needs a homogeneous element")
        return LieElt(self.r, {k: s.constant_value() if not degs else s.coeff(degs[0]) for k, s in self.terms.items()})

    def __repr__(self):
        parts = [f"{k[0]}{list(k[1]) if k[0] == 'X' else k[1]}*({s})"
                 for k, s in sorted(self.terms.items(), key=lambda kv: _key_order(kv[0]))]
        if self.c:
            parts.append(f"({self.c})c")
        if self.d:
            parts.append(f"({self.d})d")
        return "LieElt(" + (" + ".join(parts) or "0") + ")"


def _derive(s):
    """s -> sum n s_n z^(n/r): the action of d."""
    return Laurent(s.r, {n: c * n for n, c in s.terms.items()})


def _residue_pairing(s, t):
    """sum_n n s_n t_{-n}: the central-term coefficient of s (x) t."""
    total = Cyc(s.r)
    for n, c in s.terms.items():
        if n and -n in t.terms:
            total = total + c * t.terms[-n] * n
    return total


def xi_a(r, a):
    """xi_a: 1 on positive roots, xi on negative ones, so that xi_a xi_{-a} = xi."""
    return Cyc(r, 1) if rt.is_positive(a) else Cyc.xi(r)


def epsilon_a(a):
    return 1 if rt.is_positive(a) else 2


def prefactor(fs, a, n):
    """Scalar turning x_tilde(a, n) into the image of the affine Chevalley generator."""
    tag = fs.tag(a)
    if tag == rt.R2:
        return xi_a(fs.r, a) ** (-n)
    if tag == rt.R3:
        return xi_a(fs.r, a) ** (-n) * epsilon_a(a)
    return Cyc(fs.r, 1)


@dataclass(frozen=True, eq=False)
class AffineGCM:
    matrix: np.ndarray
    roots: tuple
    H: tuple
    E: tuple
    F: tuple
    Hhat: tuple
    Ehat: tuple
    Fhat: tuple


class LoopAlgebra:
    def __init__(self, fs, tbl):
        self.fs = fs
        self.tbl = tbl
        self.rs = fs.rs
        self.aut = fs.aut
        self.r = fs.r
        # alpha(H_i) for every root
        self._weights = {alpha: tuple(int(v) for v in self.rs.cartan @ np.asarray(alpha)) for alpha in self.rs.roots}

    # --- Structure of g ---

    def basis_keys(self):
        return [X(a) for a in self.rs.roots] + [H(i) for i in range(self.rs.rank)]

    def basis_bracket(self, k1, k2):
        """[B_1, B_2] in g as {key: int}."""
        (t1, v1), (t2, v2) = k1, k2
        if t1 == "X" and t2 == "X":
            gamma = rt.add(v1, v2)
            if not any(gamma):
                return {H(i): c for i, c in enumerate(self.tbl.coroot(v1)) if c}
            n = self.tbl.n(v1, v2)
            return {X(gamma): n} if n else {}
        if t1 == "H" and t2 == "X":
            w = self._weights[v2][v1]
            return {X(v2): w} if w else {}
        if t1 == "X" and t2 == "H":
            w = self._weights[v1][v2]
            return {X(v1): -w} if w else {}
        return {}

    def kappa(self, k1, k2):
        (t1, v1), (t2, v2) = k1, k2
        if t1 == "X" and t2 == "X":
            return 1 if not any(rt.add(v1, v2)) else 0
        if t1 == "H" and t2 == "H":
            return int(self.rs.cartan[v1, v2])
        return 0

    # --- Bracket ---

    def bracket(self, x, y):
        r = self.r
        terms = {}
        c = Cyc(r)

        def put(key, s):
            terms[key] = terms[key] + s if key in terms else s

        for k1, s in x.terms.items():
            for k2, t in y.terms.items():
                prod = None
                for key, coeff in self.basis_bracket(k1, k2).items():
                    prod = s * t if prod is None else prod
                    put(key, prod * coeff)
                kap = self.kappa(k1, k2)
                if kap:
                    c = c + _residue_pairing(s, t) * kap
        if y.d:
            for key, s in x.terms.items():
                put(key, _derive(s) * (-y.d))
        if x.d:
            for key, t in y.terms.items():
                put(key, _derive(t) * x.d)
        return LieElt(r, terms, c)

    def ad_power(self, x, y, m):
        for _ in range(m):
            y = self.bracket(x, y)
        return y

    # --- Gamma action ---

    def sigma(self, x):
        terms = {}
        for (kind, v), s in x.terms.items():
            if kind == "X":
                terms[X(self.aut.act(v))] = s.sigma_prime() * self.tbl.k[v]
            else:
                terms[H(self.aut.perm[v])] = s.sigma_prime()
        return LieElt(self.r, terms, x.c, x.d)

    def omega(self, x):
        if self.aut.omega is None:
            return LieElt(self.r, {k: s.omega_prime() for k, s in x.terms.items()}, x.c, x.d)
        terms = {}
        for (kind, v), s in x.terms.items():
            if kind == "X":
                terms[X(self.aut.act_omega(v))] = s.omega_prime() * self.tbl.k_omega[v]
            else:
                terms[H(self.aut.omega[v])] = s.omega_prime()
        return LieElt(self.r, terms, x.c, x.d)

    def gamma_action(self, which, x):
        if which == "sigma":
            return self.sigma(x)
        if which == "omega":
            return self.omega(x)
        raise ValueError(f"Unknown Galois generator '{which}'")

    def is_fixed(self, x):
        return self.sigma(x) == x and self.omega(x) == x

    # --- Real root vectors ---

    def coroot_elt(self, alpha, s=1):
        return LieElt(self.r, {H(i): Laurent.const(self.r, c) * s for i, c in enumerate(self.tbl.coroot(alpha)) if c})

    def x_tilde(self, a, n):
        a = tuple(a)
        if not rt.in_omega(self.fs, a, n):
            raise OmegaError(f"({a}, {n}) is not a real affine root of {self.fs.case}")
        alpha = rt.correspondent(self.fs, a)
        orbit = [alpha] if self.fs.tag(a) == rt.R1 else self.aut.orbit(alpha)
        terms = {}
        for j, beta in enumerate(orbit):
            terms[X(beta)] = Laurent.monomial(self.r, n, Cyc.xi_power(self.r, -j * n))
        return LieElt(self.r, terms)

    def norm_sq(self, a):
        return self.fs.norm_sq(tuple(a))

    def prefactor(self, a, n):
        return prefactor(self.fs, a, n)

    def h_part(self, a):
        """Coroot part of h_hat: H_alpha, H_alpha + H_sigma(alpha), 2(...) or the three-term sum."""
        a = tuple(a)
        alpha = rt.correspondent(self.fs, a)
        tag = self.fs.tag(a)
        if tag == rt.R1:
            return self.coroot_elt(alpha)
        out = LieElt.zero(self.r)
        for beta in self.aut.orbit(alpha):
            out = out + self.coroot_elt(beta)
        return out * 2 if tag == rt.R3 else out

    def h_hat(self, a, n):
        c = Fraction(2 * n) / self.norm_sq(a)
        return self.h_part(a) + LieElt.central(self.r, c)

    def chevalley_pair(self, a, n):
        a = tuple(a)
        minus = rt.neg(a)
        return (
            self.x_tilde(a, n) * self.prefactor(a, n),
            self.x_tilde(minus, -n) * self.prefactor(minus, -n),
        )

    # --- Affine Chevalley generators ---

    def affine_roots(self):
        """(a_p, n_p) for p = 0 .. l: (a_0, 1) followed by the simple folded roots at degree 0."""
        a0 = rt.highest_a0(self.fs).a0
        return ((a0, 1),) + tuple((self.fs.simple(p), 0) for p in range(self.fs.ell))

    def chev_generators(self):
        aroots = self.affine_roots()
        Hhat, Ehat, Fhat = [], [], []
        for a, n in aroots:
            e, f = self.chevalley_pair(a, n)
            Ehat.append(e)
            Fhat.append(f)
            Hhat.append(self.h_hat(a, n))
        E = tuple(e.strip_degree() for e in Ehat)
        F = tuple(f.strip_degree() for f in Fhat)
        Hs = tuple(self.h_part(a) for a, _ in aroots)

        size = len(aroots)
        A = np.zeros((size, size), dtype=int)
        for p in range(size):
            for q in range(size):
                A[p, q] = _eigenvalue(self.bracket(Hhat[p], Ehat[q]), Ehat[q])
        logger.debug("LoopAlgebra: affine GCM for %s is %s", self.fs.case, A.tolist())
        return AffineGCM(A, aroots, Hs, E, F, tuple(Hhat), tuple(Ehat), tuple(Fhat))

    def verify_serre(self, bound=5):
        """Check the affine GCM relations on (H_hat, E_hat, F_hat).

        Serre relations needing more than ``bound`` nested brackets are counted
        as skipped.
        """
        gcm = self.chev_generators()
        A = gcm.matrix
        size = len(gcm.roots)
        report = Report(f"serre[{self.fs.case}]")
        zero = LieElt.zero(self.r)
        for p in range(size):
            for q in range(size):
                report.check(self.bracket(gcm.Hhat[p], gcm.Hhat[q]) == zero, "[H,H]", p, q)
                report.check(self.bracket(gcm.Hhat[p], gcm.Ehat[q]) == gcm.Ehat[q] * int(A[p, q]), "[H,E]", p, q)
                report.check(self.bracket(gcm.Hhat[p], gcm.Fhat[q]) == gcm.Fhat[q] * int(-A[p, q]), "[H,F]", p, q)
                expected = gcm.Hhat[p] if p == q else zero
                report.check(self.bracket(gcm.Ehat[p], gcm.Fhat[q]) == expected, "[E,F]", p, q)
                if p == q:
                    continue
                m = 1 - int(A[p, q])
                if m > bound:
                    report.skip("serre", p, q, m)
                    continue
                report.check(self.ad_power(gcm.Ehat[p], gcm.Ehat[q], m) == zero, "serre-E", p, q)
                report.check(self.ad_power(gcm.Fhat[p], gcm.Fhat[q], m) == zero, "serre-F", p, q)
        return report

    def verify_chevalley_pairs(self, nmax):
        report = Report(f"chevalley-pairs[{self.fs.case}]")
        for a, n in rt.real_roots(self.fs, nmax):
            x, y = self.chevalley_pair(a, n)
            report.check(self.bracket(x, y) == self.h_hat(a, n), "bracket", a, n)
            report.check(self.is_fixed(x) and self.is_fixed(y), "fixed", a, n)
            if self.fs.tag(a) == rt.R1:
                c = self.bracket(self.x_tilde(a, n), self.x_tilde(rt.neg(a), -n)).c
                report.check(c.is_zero() == (n == 0), "central-term", a, n)
        return report

    def random_fixed(self, rng, nmax=2, terms=3, with_cd=True):
        """Random Gamma-fixed element: rational combination of x_tilde letters and coroot parts."""
        real = rt.real_roots(self.fs, nmax)
        out = LieElt.zero(self.r)
        for _ in range(terms):
            a, n = real[int(rng.integers(0, len(real)))]
            q = Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4)))
            out = out + self.x_tilde(a, n) * q
        a, _ = real[int(rng.integers(0, len(real)))]
        out = out + self.h_part(a) * int(rng.integers(-2, 3))
        if with_cd:
            out = out + LieElt(self.r, c=int(rng.integers(-2, 3)), d=int(rng.integers(-1, 2)))
        return out

    def verify_bracket_laws(self, rng, samples=10, nmax=2):
        """Antisymmetry, Jacobi, closure of fixed points and sigma/omega compatibility of the bracket."""
        report = Report(f"bracket-laws[{self.fs.case}]")
        zero = LieElt.zero(self.r)
        gens = ["sigma", "omega"]
        for _ in range(samples):
            x, y, w = (self.random_fixed(rng, nmax) for _ in range(3))
            xy = self.bracket(x, y)
            report.check(xy + self.bracket(y, x) == zero, "antisymmetry")
            jacobi = (self.bracket(x, self.bracket(y, w))
                      + self.bracket(y, self.bracket(w, x))
                      + self.bracket(w, self.bracket(x, y)))
            report.check(jacobi == zero, "jacobi")
            report.check(self.is_fixed(xy), "closure")
            # sigma and omega on arbitrary (non-fixed) loop elements
            u = self.random_fixed(rng, nmax, with_cd=False) * Laurent.monomial(self.r, 1)
            v = self.random_fixed(rng, nmax, with_cd=False)
            for which in gens:
                lhs = self.gamma_action(which, self.bracket(u, v))
                rhs = self.bracket(self.gamma_action(which, u), self.gamma_action(which, v))
                report.check(lhs == rhs, which)
        return report

    def verify_grading(self, nmax=None):
        """graded_dim(n) = imaginary_multiplicity(n) + #{(a, n) in Omega}, and one period sums to dim g."""
        nmax = self.r * 2 if nmax is None else nmax
        report = Report(f"graded[{self.fs.case}]")
        images = list(self.fs.tags)
        for n in range(-nmax, nmax + 1):
            if n == 0:
                continue
            real = sum(1 for a in images if rt.in_omega(self.fs, a, n))
            report.check(self.graded_dim(n) == self.imaginary_multiplicity(n) + real, "split", n)
        total = sum(self.graded_dim(n) for n in range(self.r))
        report.check(total == self.rs.dim, "period", total)
        return report

    # --- Grading ---

    def _cycles(self):
        """(length, sign) of each cycle of sigma on the Chevalley basis, split into root and Cartan parts."""
        seen, root_cycles = set(), []
        for alpha in self.rs.roots:
            if alpha in seen:
                continue
            orbit = self.aut.orbit(alpha)
            seen.update(orbit)
            sign = 1
            for beta in orbit:
                sign *= self.tbl.k[beta]
            root_cycles.append((len(orbit), sign))
        seen, cartan_cycles = set(), []
        for i in range(self.rs.rank):
            if i in seen:
                continue
            j, length = i, 0
            while True:
                seen.add(j)
                length += 1
                j = self.aut.perm[j]
                if j == i:
                    break
            cartan_cycles.append((length, 1))
        return root_cycles, cartan_cycles

    def _eigen_count(self, cycles, n):
        """Number of cycles carrying the sigma-eigenvalue xi^n."""
        return sum(1 for length, sign in cycles if Cyc.xi_power(self.r, n * length) == sign)

    def graded_dim(self, n):
        """Dimension of the z^(n/r) component: the xi^n-eigenspace of sigma on g."""
        root_cycles, cartan_cycles = self._cycles()
        return self._eigen_count(root_cycles, n) + self._eigen_count(cartan_cycles, n)

    def imaginary_multiplicity(self, n):
        _, cartan_cycles = self._cycles()
        return self._eigen_count(cartan_cycles, n)


def _eigenvalue(image, vector):
    """The integer lambda with image = lambda * vector."""
    key = next(iter(vector.terms))
    s, t = image.coeff(key), vector.terms[key]
    n, c = t.top()
    lam = s.coeff(n) / c
    if not lam.is_rational() or lam.a.denominator != 1 or image != vector * lam:
        raise RootError(f"Not an integral eigenvector: {image} vs {vector}")
    return int(lam.a)


def affine_cartan_from_form(fs):
    """2 (a_q, a_p) / (a_p, a_p) over a_0 .. a_l computed from folded-root geometry."""
    a0 = rt.highest_a0(fs).a0
    aroots = [a0] + [fs.simple(p) for p in range(fs.ell)]
    size = len(aroots)
    A = np.zeros((size, size), dtype=int)
    for p, ap in enumerate(aroots):
        for q, aq in enumerate(aroots):
            v = Fraction(2 * fs.inner(aq, ap)) / fs.norm_sq(ap)
            if v.denominator != 1:
                raise RootError(f"{fs.case}: affine Cartan entry ({p}, {q}) is {v}, not an integer")
            A[p, q] = int(v)
    return A


def left_null_vector(A):
    """Smallest positive integer vector v with v A = 0 (the affine GCM has corank 1)."""
    size = A.shape[0]
    # drop column 0; solve v[1:] from v[0] = 1 by elimination over Fraction
    M = [[Fraction(int(A[p, q])) for p in range(1, size)] for q in range(1, size)]
    rhs = [Fraction(-int(A[0, q])) for q in range(1, size)]
    k = size - 1
    for col in range(k):
        pivot = next(i for i in range(col, k) if M[i][col] != 0)
        M[col], M[pivot] = M[pivot], M[col]
        rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        for i in range(k):
            if i != col and M[i][col] != 0:
                f = M[i][col] / M[col][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[col])]
                rhs[i] -= f * rhs[col]
    sol = [Fraction(1)] + [rhs[i] / M[i][i] for i in range(k)]
    denom = math.lcm(*(v.denominator for v in sol))
    ints = [int(v * denom) for v in sol]
    g = math.gcd(*ints)
    return tuple(v // g for v in ints)
