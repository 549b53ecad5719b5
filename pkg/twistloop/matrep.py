# twistloop/matrep.py
"""Faithful matrix models of G(S) and the identity checks run through them.

Two models share one interface:

* ``NaturalModel``: the defining representation of SL_{N+1} for type A_N;
  sigma acts by C -> J (sigma'(C)^T)^-1 J^-1 with J = antidiag((-1)^k).
* ``AdjointModel``: Ad on g in the Chevalley basis (sorted X_alpha, then
  H_i); sigma acts by conjugation with the signed permutation of the basis.

Matrices are ``MatS`` values, numpy object arrays of ``Laurent`` entries.
"""
import logging
from functools import cached_property
from math import factorial

import numpy as np

from twistloop import roots as rt
from twistloop.errors import ModelError, ScalarError
from twistloop.groupwords import (
    KMAtom,
    TwistedGroup,
    a_neg,
    a_plus,
    h_atom,
    w_atom,
)
from twistloop.loopalg import LoopAlgebra, _key_order
from twistloop.report import Report
from twistloop.scalars import Laurent, as_laurent

logger = logging.getLogger(__name__)


class MatS:
    """Square matrix over S = Q(xi)[z^(+-1/r)]."""

    __slots__ = ("r", "a")

    def __init__(self, r, entries):
        rows = np.asarray(entries, dtype=object)
        if rows.ndim != 2 or rows.shape[0] != rows.shape[1]:
            raise ModelError(f"MatS needs a square 2-d array, got shape {rows.shape}")
        arr = np.empty(rows.shape, dtype=object)
        for idx, v in np.ndenumerate(rows):
            arr[idx] = as_laurent(r, v)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "a", arr)

    def __setattr__(self, name, value):
        raise AttributeError("MatS is immutable")

    @classmethod
    def identity(cls, r, dim):
        return cls(r, np.eye(dim, dtype=int))

    @property
    def dim(self):
        return self.a.shape[0]

    def __getitem__(self, ij):
        return self.a[ij]

    def __matmul__(self, other):
        if self.r != other.r or self.dim != other.dim:
            raise ModelError("Matrix product of incompatible MatS")
        n = self.dim
        # entries are mostly zero in the adjoint model
        other_rows = [[(j, b) for j, b in enumerate(row) if b] for row in other.a]
        out = np.empty((n, n), dtype=object)
        zero = Laurent.zero(self.r)
        for i in range(n):
            acc = {}
            for k, a in enumerate(self.a[i]):
                if not a:
                    continue
                for j, b in other_rows[k]:
                    acc[j] = acc[j] + a * b if j in acc else a * b
            for j in range(n):
                out[i, j] = acc.get(j, zero)
        return MatS(self.r, out)

    def __eq__(self, other):
        if not isinstance(other, MatS):
            return NotImplemented
        if self.r != other.r or self.dim != other.dim:
            return False
        return all(x == y for x, y in zip(self.a.flat, other.a.flat))

    __hash__ = None

    def map(self, fn):
        out = np.empty(self.a.shape, dtype=object)
        for idx, v in np.ndenumerate(self.a):
            out[idx] = fn(v)
        return MatS(self.r, out)

    def sigma_prime(self):
        return self.map(Laurent.sigma_prime)

    def omega_prime(self):
        return self.map(Laurent.omega_prime)

    def transpose(self):
        return MatS(self.r, self.a.T)

    def is_identity(self):
        return self == MatS.identity(self.r, self.dim)

    # --- Determinant and inverse by cofactors ---

    def _det(self, rows, cols):
        if len(rows) == 1:
            return self.a[rows[0], cols[0]]
        total = Laurent.zero(self.r)
        head, rest = rows[0], rows[1:]
        for pos, c in enumerate(cols):
            entry = self.a[head, c]
            if not entry:
                continue
            minor = self._det(rest, cols[:pos] + cols[pos + 1:])
            total = total + entry * minor if pos % 2 == 0 else total - entry * minor
        return total

    def det(self):
        idx = tuple(range(self.dim))
        return self._det(idx, idx)

    def inverse(self):
        """Adjugate over the determinant; the determinant must be a unit of S."""
        n = self.dim
        d = self.det()
        try:
            d_inv = d.inv_unit()
        except ScalarError as e:
            raise ModelError(f"Matrix is not invertible over S: det = {d}") from e
        if n == 1:
            return MatS(self.r, [[d_inv]])
        out = np.empty((n, n), dtype=object)
        full = tuple(range(n))
        for i in range(n):
            for j in range(n):
                rows = full[:j] + full[j + 1:]
                cols = full[:i] + full[i + 1:]
                cof = self._det(rows, cols)
                out[i, j] = cof * d_inv if (i + j) % 2 == 0 else -cof * d_inv
        return MatS(self.r, out)

    # --- JSON ---

    def to_json(self):
        return {
            "r": self.r,
            "dim": self.dim,
            "entries": [[v.to_json() for v in row] for row in self.a],
        }

    @classmethod
    def from_json(cls, data):
        try:
            r, dim = int(data["r"]), int(data["dim"])
            rows = [[Laurent.from_json(v) for v in row] for row in data["entries"]]
        except (KeyError, TypeError, ValueError) as e:
            raise ModelError(f"Malformed matrix JSON: {e}") from e
        if len(rows) != dim or any(len(row) != dim for row in rows):
            raise ModelError(f"Matrix JSON does not match dim={dim}")
        return cls(r, rows)

    def __repr__(self):
        return "MatS(" + "; ".join(", ".join(str(v) for v in row) for row in self.a) + ")"


def _int_to_mats(r, arr):
    out = np.empty(arr.shape, dtype=object)
    zero = Laurent.zero(r)
    out.fill(zero)
    for i, j in zip(*np.nonzero(arr)):
        out[i, j] = Laurent.const(r, int(arr[i, j]))
    return MatS(r, out)


class MatrixModel:
    """Common part of the matrix models; subclasses provide X matrices and sigma."""

    kind = "abstract"

    def __init__(self, fs, tbl):
        self.fs = fs
        self.tbl = tbl
        self.rs = fs.rs
        self.aut = fs.aut
        self.r = fs.r
        self.group = TwistedGroup(fs, tbl)

    @property
    def dim(self):
        raise NotImplementedError

    def x_matrix(self, alpha):
        """Integer matrix of X_alpha in this representation."""
        raise NotImplementedError

    def h_matrix(self, i):
        raise NotImplementedError

    @cached_property
    def _nil_powers(self):
        """alpha -> [(m, X^m / m!)] for the nonzero divided powers with m >= 1."""
        out = {}
        for alpha in self.rs.roots:
            X = self.x_matrix(alpha)
            powers, P, m = [], X, 1
            while P.any():
                D = P // factorial(m)
                if not np.array_equal(D * factorial(m), P):
                    raise ModelError(f"Divided power X^{m}/{m}! is not integral at {alpha}")
                powers.append((m, D))
                P = P @ X
                m += 1
            out[alpha] = powers
        return out

    def int_unip(self, alpha, t):
        """exp(t X_alpha) for an integer t, as an integer matrix."""
        out = np.eye(self.dim, dtype=np.int64)
        for m, D in self._nil_powers[tuple(alpha)]:
            out = out + D * t ** m
        return out

    def unip(self, alpha, s):
        """x_alpha(s) = exp(s X_alpha)."""
        s = as_laurent(self.r, s)
        C = MatS.identity(self.r, self.dim)
        if not s:
            return C
        entries = C.a.copy()
        for m, D in self._nil_powers[tuple(alpha)]:
            sm = s ** m
            for i, j in zip(*np.nonzero(D)):
                entries[i, j] = entries[i, j] + sm * int(D[i, j])
        return MatS(self.r, entries)

    def eval_word(self, word):
        """Product of the letters in order; w, h and twisted letters are expanded first."""
        C = MatS.identity(self.r, self.dim)
        for atom in self.group.expand_word(word):
            try:
                C = C @ self.unip(atom.root, atom.payload)
            except KeyError:
                raise ModelError(f"{atom.root} is not a root of {self.rs.label}") from None
        return C

    def sigma_mat(self, C):
        raise NotImplementedError

    def omega_mat(self, C):
        raise NotImplementedError

    def is_twisted_point(self, C):
        return self.sigma_mat(C) == C and self.omega_mat(C) == C

    def torus_matrix(self, t):
        return self.eval_word([h_atom(self.rs.simple(i), u) for i, u in enumerate(t.coords) if u != 1])


class NaturalModel(MatrixModel):
    kind = "natural"

    def __init__(self, fs, tbl):
        if fs.rs.series != "A":
            raise ModelError(f"The natural model exists only for type A, not {fs.rs.label}")
        super().__init__(fs, tbl)
        n = self.dim
        X = {}
        for i in range(fs.rs.rank):
            up = np.zeros((n, n), dtype=np.int64)
            up[i, i + 1] = 1
            X[self.rs.simple(i)] = up
            X[rt.neg(self.rs.simple(i))] = up.T.copy()
        # X_gamma = [X_beta, X_{+-alpha_i}] / N_{beta, +-alpha_i}
        for sign in (1, -1):
            for gamma in self.rs.positive:
                gamma = rt.scale(sign, gamma)
                if gamma in X:
                    continue
                for i in range(fs.rs.rank):
                    ai = rt.scale(sign, self.rs.simple(i))
                    beta = rt.sub(gamma, ai)
                    if beta in X:
                        comm = X[beta] @ X[ai] - X[ai] @ X[beta]
                        X[gamma] = comm * tbl.n(beta, ai)
                        break
        self._X = X
        J = np.zeros((n, n), dtype=np.int64)
        for k in range(n):
            J[k, n - 1 - k] = (-1) ** k
        self._J = _int_to_mats(self.r, J)
        self._J_inv = _int_to_mats(self.r, J.T.copy())

    @property
    def dim(self):
        return self.rs.rank + 1

    def x_matrix(self, alpha):
        return self._X[tuple(alpha)]

    def h_matrix(self, i):
        H = np.zeros((self.dim, self.dim), dtype=np.int64)
        H[i, i], H[i + 1, i + 1] = 1, -1
        return H

    def sigma_mat(self, C):
        if self.aut.is_identity:
            return C.sigma_prime()
        return self._J @ C.sigma_prime().transpose().inverse() @ self._J_inv

    def omega_mat(self, C):
        return C.omega_prime()


class AdjointModel(MatrixModel):
    kind = "adjoint"

    def __init__(self, fs, tbl):
        super().__init__(fs, tbl)
        self.lie = LoopAlgebra(fs, tbl)
        self.basis = sorted(self.lie.basis_keys(), key=_key_order)
        self._pos = {key: i for i, key in enumerate(self.basis)}
        self._w_int = {}

    @property
    def dim(self):
        return len(self.basis)

    def ad_matrix(self, key):
        M = np.zeros((self.dim, self.dim), dtype=np.int64)
        for j, other in enumerate(self.basis):
            for out, c in self.lie.basis_bracket(key, other).items():
                M[self._pos[out], j] = c
        return M

    @cached_property
    def _ad(self):
        return {key: self.ad_matrix(key) for key in self.basis}

    def x_matrix(self, alpha):
        return self._ad[("X", tuple(alpha))]

    def h_matrix(self, i):
        return self._ad[("H", i)]

    def _signed_perm(self, perm, k):
        """(target index, sign) for every basis vector under the automorphism."""
        out = []
        for kind, v in self.basis:
            if kind == "X":
                image = ("X", rt.DiagramAut(perm, 1).act(v))
                out.append((self._pos[image], k[v]))
            else:
                out.append((self._pos[("H", perm[v])], 1))
        return out

    def _conjugate(self, C, moves):
        n = self.dim
        out = np.empty((n, n), dtype=object)
        for i, (pi, si) in enumerate(moves):
            for j, (pj, sj) in enumerate(moves):
                v = C.a[i, j]
                out[pi, pj] = v if si * sj == 1 else -v
        return MatS(self.r, out)

    @cached_property
    def _sigma_moves(self):
        return self._signed_perm(self.aut.perm, self.tbl.k)

    @cached_property
    def _omega_moves(self):
        perm = self.aut.omega or tuple(range(self.rs.rank))
        return self._signed_perm(perm, self.tbl.k_omega)

    def sigma_mat(self, C):
        return self._conjugate(C.sigma_prime(), self._sigma_moves)

    def omega_mat(self, C):
        return self._conjugate(C.omega_prime(), self._omega_moves)

    def w_int(self, alpha):
        """Ad(w_alpha(1)) as an integer matrix."""
        alpha = tuple(alpha)
        if alpha not in self._w_int:
            self._w_int[alpha] = (self.int_unip(alpha, 1) @ self.int_unip(rt.neg(alpha), -1)
                                  @ self.int_unip(alpha, 1))
        return self._w_int[alpha]

    def eta(self, alpha, beta):
        """eta_{alpha,beta} with w_alpha(1) . X_beta = eta_{alpha,beta} X_{s_alpha beta}."""
        alpha, beta = tuple(alpha), tuple(beta)
        image = rt.weyl_reflect(self.rs, alpha, beta)
        col = self.w_int(alpha)[:, self._pos[("X", beta)]]
        value = int(col[self._pos[("X", image)]])
        if value not in (1, -1) or np.count_nonzero(col) != 1:
            raise ModelError(f"w_{alpha}(1) does not send X_{beta} to +-X_{image}")
        return value


def build_model(kind, fs, tbl):
    if kind == "natural":
        return NaturalModel(fs, tbl)
    if kind == "adjoint":
        return AdjointModel(fs, tbl)
    raise ModelError(f"Unknown matrix model '{kind}'")


def default_model(fs, tbl):
    """Natural model for type A, adjoint otherwise."""
    return NaturalModel(fs, tbl) if fs.rs.series == "A" else AdjointModel(fs, tbl)


# --- Structure checks ---

def verify_structure(model):
    """[X_alpha, X_beta] = N_{alpha,beta} X_{alpha+beta} and [X_alpha, X_-alpha] = H_alpha."""
    rs, tbl = model.rs, model.tbl
    report = Report(f"structure-{model.kind}")
    for alpha in rs.roots:
        Xa = model.x_matrix(alpha)
        for beta in rs.roots:
            Xb = model.x_matrix(beta)
            comm = Xa @ Xb - Xb @ Xa
            gamma = rt.add(alpha, beta)
            if not any(gamma):
                expected = sum(c * model.h_matrix(i) for i, c in enumerate(tbl.coroot(alpha)) if c)
            elif rs.is_root(gamma):
                expected = tbl.n(alpha, beta) * model.x_matrix(gamma)
            else:
                expected = np.zeros_like(comm)
            report.check(np.array_equal(comm, expected), alpha, beta)
    return report


def commutator_table(model):
    """c^{11}_{alpha,beta} read off x_a(1) x_b(1) x_a(-1) x_b(-1) = x_{a+b}(c)."""
    table = {}
    for alpha in model.rs.roots:
        for beta in model.rs.roots:
            gamma = rt.add(alpha, beta)
            if not model.rs.is_root(gamma):
                continue
            comm = (model.int_unip(alpha, 1) @ model.int_unip(beta, 1)
                    @ model.int_unip(alpha, -1) @ model.int_unip(beta, -1))
            for c in (1, -1):
                if np.array_equal(comm, model.int_unip(gamma, c)):
                    table[(alpha, beta)] = c
                    break
            else:
                raise ModelError(f"Commutator of x_{alpha} and x_{beta} is not a root element")
    return table


def commutator_check(model, alpha, beta, nu, mu, table=None):
    """[x_alpha(nu), x_beta(mu)] equals the Chevalley commutator product."""
    table = table if table is not None else commutator_table(model)
    nu, mu = as_laurent(model.r, nu), as_laurent(model.r, mu)
    lhs = model.unip(alpha, nu) @ model.unip(beta, mu) @ model.unip(alpha, -nu) @ model.unip(beta, -mu)
    gamma = rt.add(tuple(alpha), tuple(beta))
    if model.rs.is_root(gamma):
        rhs = model.unip(gamma, nu * mu * table[(tuple(alpha), tuple(beta))])
    else:
        rhs = MatS.identity(model.r, model.dim)
    return lhs == rhs


def eta_check(model, alpha, beta):
    if not isinstance(model, AdjointModel):
        raise ModelError("eta is read off the adjoint model")
    return model.eta(alpha, beta)


def verify_eta(model):
    """eta over every root pair: a sign, -1 on beta = +-alpha, 1 when beta is
    orthogonal to alpha, and eta_{alpha,beta} = eta_{alpha,-beta}."""
    report = Report(f"eta-{model.kind}")
    roots = model.rs.roots
    for alpha in roots:
        for beta in roots:
            try:
                value = eta_check(model, alpha, beta)
                partner = eta_check(model, alpha, rt.neg(beta))
            except ModelError as e:
                report.check(False, "sign", alpha, beta, str(e))
                continue
            report.check(value in (1, -1), "sign", alpha, beta, value)
            report.check(value == partner, "negation", alpha, beta)
            if beta in (alpha, rt.neg(alpha)):
                report.check(value == -1, "self", alpha, beta, value)
            elif rt.pairing(model.rs, beta, alpha) == 0:
                report.check(value == 1, "orthogonal", alpha, beta, value)
    return report


# --- Twisted-group identities ---

def _product_form(group, kind, a, p):
    """Untwisted letters equal to w~_a(p) or h~_a(p) by the product formulas."""
    alpha = rt.correspondent(group.fs, a)
    tag = group.fs.tag(a)
    make = w_atom if kind == "wt" else h_atom
    if tag == rt.R3:
        return None
    return [make(beta, s) for beta, s in group._orbit_payloads(alpha, p)]


def verify_lemma(model, which, samples=2, rng=None, roots=None):
    """Check x~, w~ or h~ on random payloads: Gamma-fixedness, product formulas, inverses.

    ``which`` is one of xsx, wsw, hsh. ``roots`` restricts the folded roots scanned.
    """
    group = model.group
    rng = rng if rng is not None else np.random.default_rng(0)
    report = Report(f"lemma-{which}")
    images = roots or sorted(group.fs.tags, key=lambda v: (not rt.is_positive(v), abs(rt.height(v)), rt.lex_key(v)))
    ident = MatS.identity(model.r, model.dim)
    for a in images:
        a = tuple(a)
        tag = group.fs.tag(a)
        for _ in range(samples):
            if which == "xsx":
                p = group.random_payload("xt", a, rng)
                q = group.random_payload("xt", a, rng)
                X = model.eval_word([group.xt(a, p)])
                report.check(model.is_twisted_point(X), "fixed", a, str(p))
                total = a_plus(p, q) if tag == rt.R3 else p + q
                inv = a_neg(p) if tag == rt.R3 else -p
                both = model.eval_word([group.xt(a, p), group.xt(a, q)])
                report.check(both == model.eval_word([group.xt(a, total)]), "additive", a, str(p), str(q))
                report.check((X @ model.eval_word([group.xt(a, inv)])).is_identity(), "inverse", a, str(p))
            elif which == "wsw":
                p = group.random_payload("wt", a, rng)
                W = model.eval_word([group.wt(a, p)])
                report.check(model.is_twisted_point(W), "fixed", a, str(p))
                form = _product_form(group, "wt", a, p)
                if form is not None:
                    report.check(W == model.eval_word(form), "product", a, str(p))
                inv = a_neg(p) if tag == rt.R3 else -p
                report.check(W @ model.eval_word([group.wt(a, inv)]) == ident, "inverse", a, str(p))
            elif which == "hsh":
                p = group.random_payload("ht", a, rng)
                atom = group.ht(a, p)
                Hm = model.eval_word([atom])
                report.check(model.is_twisted_point(Hm), "fixed", a)
                report.check(Hm == model.torus_matrix(group.torus_of([atom])), "torus", a)
                if tag != rt.R3:
                    form = _product_form(group, "ht", a, p)
                    report.check(Hm == model.eval_word(form), "product", a, str(p))
                    report.check(Hm @ model.eval_word([group.ht(a, p.inv_unit())]) == ident, "inverse", a)
            else:
                raise ValueError(f"Unknown lemma check '{which}'")
    logger.debug("Roots: %s on %s (%s model): %s", which, group.fs.case, model.kind, report.summary())
    return report


def verify_diagram(model, samples=4, nmax=2, rng=None):
    """Phi = Psi o Theta on x, w, h letters, and Psi(gamma^ y) = gamma(Psi(y)) on untwisted letters.

    ``samples`` real roots are drawn per root type.
    """
    group = model.group
    rng = rng if rng is not None else np.random.default_rng(0)
    report = Report("diagram")
    by_tag = {}
    for a, n in rt.real_roots(group.fs, nmax):
        by_tag.setdefault(group.fs.tag(a), []).append((a, n))
    r = model.r
    for tag in sorted(by_tag):
        pool = by_tag[tag]
        for _ in range(samples):
            a, n = pool[int(rng.integers(0, len(pool)))]
            nu = group._random_scalar(rng, 3)
            for kind in ("x", "w", "h"):
                atom = KMAtom(kind, a, n, nu)
                lhs = model.eval_word([group.phi(atom)])
                rhs = model.eval_word(group.psi_word(group.theta(atom)))
                report.check(lhs == rhs, "phi-theta", tag, kind, a, n, str(nu))

    for _ in range(samples):
        alpha = group.rs.roots[int(rng.integers(0, len(group.rs.roots)))]
        m = int(rng.integers(-nmax * r, nmax * r + 1))
        value = group._random_scalar(rng, 3, rational=False)
        gens = ["sigma"] + (["omega"] if group.aut.omega else [])
        for kind in ("x", "w"):
            y = KMAtom(kind, alpha, m, value)
            C = model.eval_word(group.psi(y))
            for which in gens:
                image = model.eval_word(group.psi(group.gamma_on_km(which, y)))
                moved = model.sigma_mat(C) if which == "sigma" else model.omega_mat(C)
                report.check(image == moved, which, kind, alpha, m, str(value))
    return report


def verify_kernel(model, tau=2):
    """Z_K maps into the kernel: Phi(Z_K) evaluates to the identity."""
    group = model.group
    report = Report("kernel")
    word = group.phi_word(group.zk_element(tau))
    report.check(group.kernel_test(word), "torus", str(tau))
    report.check(model.eval_word(word).is_identity(), "matrix", str(tau))
    return report

