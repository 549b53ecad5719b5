# twistloop/su3.py
"""SU3(S) over S = Q[z^(+-1/2)] and its reduction to generators.

SU3(S) = {C in SL_3(S) : C^T J sigma'(C) = J} with J = antidiag(-1, 1, -1).
This is the twisted loop group of (A_2, 2), written with explicit 3x3
generators:

    x~_{a1}(chi), x~_{-a1}(chi)   chi in A
    x~'_{+-a1}(t)                 t = tau z^(m/2), m odd
    w~'_{a1}(zeta)                zeta in A*
    h~'_{a1}(u)                   u = tau z^(n/2)

``decompose`` writes any C in SU3(S) as a word in these letters. Every step
multiplies C on the left by generators, keeping it in SU3(S), until the first
column is (s, 0, 0); an upper-triangular element is then h~'(s) x~_{a1}(chi).
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from twistloop.errors import DecompositionError, PayloadError, ScalarError
from twistloop.groupwords import AElt, a_neg, chi_hat
from twistloop.matrep import MatS
from twistloop.report import Report
from twistloop.scalars import Laurent, as_laurent

logger = logging.getLogger(__name__)

R = 2
HALF = Fraction(1, 2)
ATOM_KINDS = ("x", "xp", "wp", "hp")


def _antidiag(r13, r22, r31):
    zero = Laurent.zero(R)
    return MatS(R, [[zero, zero, r13], [zero, r22, zero], [r31, zero, zero]])


J = _antidiag(Laurent.const(R, -1), Laurent.const(R, 1), Laurent.const(R, -1))
SWAP = _antidiag(Laurent.const(R, 1), Laurent.const(R, -1), Laurent.const(R, 1))


def _laurent(value):
    try:
        return as_laurent(R, value)
    except ScalarError as e:
        raise PayloadError(f"Not a Laurent polynomial over r=2: {value!r}") from e


def _monomial_exponent(u):
    if not u.is_unit():
        raise PayloadError(f"{u} is not a unit tau z^(n/2)")
    (n, _), = u.terms.items()
    return n


@dataclass(frozen=True)
class SU3Atom:
    kind: str
    sign: int
    payload: object

    def __post_init__(self):
        if self.kind not in ATOM_KINDS:
            raise PayloadError(f"Unknown SU3 generator '{self.kind}'")
        if self.sign not in (1, -1):
            raise PayloadError("sign must be +1 (a1) or -1 (-a1)")
        if self.kind == "x" and not isinstance(self.payload, AElt):
            raise PayloadError("x~ needs an AElt payload")
        if self.kind == "xp" and _monomial_exponent(self.payload) % 2 == 0:
            raise PayloadError("x~' needs tau z^(m/2) with m odd")
        if self.kind == "wp" and not (isinstance(self.payload, AElt) and self.payload.is_unit()):
            raise PayloadError("w~' needs a payload in A*")
        if self.kind == "hp":
            _monomial_exponent(self.payload)

    def to_json(self):
        payload = self.payload.to_json()
        return {"kind": self.kind, "sign": self.sign, "payload": payload}

    @classmethod
    def from_json(cls, data):
        try:
            kind = data["kind"]
            raw = data["payload"]
            payload = AElt.from_json(raw) if kind in ("x", "wp") else Laurent.from_json(raw)
            return cls(kind, int(data.get("sign", 1)), payload)
        except (KeyError, TypeError, ValueError) as e:
            raise PayloadError(f"Malformed SU3 atom JSON: {e}") from e

    def __str__(self):
        names = {"x": "x~", "xp": "x~'", "wp": "w~'", "hp": "h~'"}
        root = "a1" if self.sign == 1 else "-a1"
        return f"{names[self.kind]}_{root}({self.payload})"


def x_gen(chi, sign=1):
    return SU3Atom("x", sign, chi)


def xp_gen(t, sign=1):
    return SU3Atom("xp", sign, _laurent(t))


def wp_gen(zeta):
    return SU3Atom("wp", 1, zeta)


def hp_gen(u):
    return SU3Atom("hp", 1, _laurent(u))


def swap_ops():
    """w~'((1, 1/2)) then h~'(1/2): together they multiply by SWAP."""
    return [wp_gen(AElt.of(R, 1, HALF)), hp_gen(HALF)]


# --- Matrices ---

def _w_matrix(eta):
    s2 = eta.chi2.sigma_prime()
    return _antidiag(s2, -eta.chi2 * s2.inv_unit(), eta.chi2.inv_unit())


def gen_matrix(atom):
    one, zero = Laurent.const(R, 1), Laurent.zero(R)
    if atom.kind in ("x", "xp"):
        chi = atom.payload if atom.kind == "x" else AElt(zero, -atom.payload)
        c1, c2 = chi.chi1, chi.chi2
        if atom.sign == 1:
            return MatS(R, [[one, c1, c2.sigma_prime()], [zero, one, c1.sigma_prime()], [zero, zero, one]])
        return MatS(R, [[one, zero, zero], [c1.sigma_prime(), one, zero], [c2.sigma_prime(), c1, one]])
    if atom.kind == "wp":
        zeta = atom.payload
        inv2 = zeta.chi2.inv_unit()
        return _w_matrix(AElt(zeta.chi1 * inv2, inv2))
    u = atom.payload
    n = _monomial_exponent(u)
    sign = Laurent.const(R, (-1) ** (n % 2))
    return MatS(R, [[u, zero, zero], [zero, sign, zero], [zero, zero, sign * u.inv_unit()]])


def eval_su3_word(word):
    C = MatS.identity(R, 3)
    for atom in word:
        C = C @ gen_matrix(atom)
    return C


def inverse_atom(atom):
    if atom.kind == "x":
        return SU3Atom("x", atom.sign, a_neg(atom.payload))
    if atom.kind == "xp":
        return SU3Atom("xp", atom.sign, -atom.payload)
    if atom.kind == "hp":
        return SU3Atom("hp", 1, atom.payload.inv_unit())
    zeta = atom.payload
    s2 = zeta.chi2.sigma_prime()
    return SU3Atom("wp", 1, AElt(-zeta.chi1 * s2 * zeta.chi2.inv_unit(), s2))


def inverse_word(word):
    return [inverse_atom(atom) for atom in reversed(word)]


def is_su3(C):
    if C.r != R or C.dim != 3:
        raise DecompositionError(f"SU3 membership needs a 3x3 matrix over r={R}, got {C.dim}x{C.dim} with r={C.r}")
    return C.det() == 1 and C.transpose() @ J @ C.sigma_prime() == J


# --- Reduction steps ---
#
# Each step returns (ops, C') with C' = ops[-1] ... ops[0] C: ops are listed in
# the order they were applied.

def _span(s):
    """k of a Laurent entry; -1 for zero."""
    return s.deg_stats()[2] if s else -1


def _apply(ops, C):
    for atom in ops:
        C = gen_matrix(atom) @ C
    return C


def undo(ops):
    """Word for the inverse of applying ``ops`` in order."""
    return [inverse_atom(atom) for atom in ops]


def swap_reduce(C):
    """Move the entry of smaller degree span into position (1, 1)."""
    a, c = C[0, 0], C[2, 0]
    if a and _span(c) <= _span(a):
        return [], C
    ops = swap_ops()
    return ops, _apply(ops, C)


def align_tops(C):
    """Equalize the top exponents of C_11 and C_31, or lower k(C_11) outright.

    Requires both entries nonzero and k(C_31) <= k(C_11). When the top exponents
    differ by an even amount a single h~' aligns them; otherwise h~' brings the
    difference to -1 and x~'_{a1} cancels the top term of C_11.
    """
    a, c = C[0, 0], C[2, 0]
    if not a or not c:
        raise DecompositionError("align_tops needs nonzero C_11 and C_31")
    diff = c.deg_stats()[0] - a.deg_stats()[0]
    if diff % 2 == 0:
        if diff == 0:
            return [], C
        ops = [hp_gen(Laurent.monomial(R, diff // 2))]
        return ops, _apply(ops, C)
    shift = (diff + 1) // 2
    ops = [hp_gen(Laurent.monomial(R, shift))] if shift else []
    C1 = _apply(ops, C)
    (_, nu), (_, mu) = C1[0, 0].top(), C1[2, 0].top()
    ops.append(xp_gen(Laurent.monomial(R, 1, -nu / mu)))
    return ops, _apply(ops[-1:], C1)


def euclid_step(C):
    """Cancel the common top term of C_11 with x~_{a1}((-2 nu/iota, 2 nu^2/iota^2)).

    nu, iota, mu are the top coefficients of C_11, C_21, C_31, all at the same
    exponent; membership in SU3 forces iota^2 = 2 nu mu.
    """
    a, b, c = C[0, 0], C[1, 0], C[2, 0]
    top = a.deg_stats()[0]
    if not (a and b and c) or {b.deg_stats()[0], c.deg_stats()[0]} != {top}:
        raise DecompositionError("euclid_step needs aligned top exponents in the first column")
    nu, iota, mu = a.top()[1], b.top()[1], c.top()[1]
    if iota * iota != nu * mu * 2:
        raise DecompositionError(f"Top coefficients violate iota^2 = 2 nu mu: {iota}, {nu}, {mu}")
    ratio = nu / iota
    ops = [x_gen(AElt.of(R, ratio * -2, ratio * ratio * 2))]
    C1 = _apply(ops, C)
    if C1[0, 0] and _span(C1[0, 0]) >= _span(a):
        raise DecompositionError("euclid_step did not lower the degree span of C_11")
    return ops, C1


def terminal_decompose(C):
    """Word for C once its first column has a single nonzero entry at (1, 1) or (3, 1)."""
    ops = []
    if C[1, 0] or C[2, 0]:
        if C[0, 0] or C[1, 0]:
            raise DecompositionError("terminal_decompose needs first column (s, 0, 0) or (0, 0, s)")
        ops = swap_ops()
        C = _apply(ops, C)
    u = C[0, 0]
    if not u.is_unit():
        raise DecompositionError(f"Diagonal entry {u} is not a unit")
    U = gen_matrix(hp_gen(u.inv_unit())) @ C
    try:
        chi = AElt(U[0, 1], U[0, 2].sigma_prime())
    except PayloadError as e:
        raise DecompositionError(f"Upper-triangular part is not an x~_a1 element: {e}") from e
    if gen_matrix(x_gen(chi)) != U:
        raise DecompositionError("Upper-triangular part is not an x~_a1 element")
    tail = []
    if u != 1:
        tail.append(hp_gen(u))
    if not chi.is_zero():
        tail.append(x_gen(chi))
    return undo(ops) + tail


@dataclass
class TraceStep:
    kind: str
    atoms: list
    k_before: int
    k_after: int

    def to_json(self):
        return {"kind": self.kind, "atoms": [a.to_json() for a in self.atoms],
                "k_before": self.k_before, "k_after": self.k_after}


@dataclass
class DecompTrace:
    """Reduction steps in order. swap/align/euclid steps hold the letters applied
    to the left; the closing terminal step holds the word of the state it ends on."""

    steps: list = field(default_factory=list)
    states: list = field(default_factory=list)

    def record(self, kind, atoms, before, after):
        if atoms:
            self.steps.append(TraceStep(kind, list(atoms), _span(before[0, 0]), _span(after[0, 0])))
            self.states.append(after)

    def euclid_descends(self):
        return all(s.k_after < s.k_before for s in self.steps if s.kind == "euclid")

    def to_json(self):
        return [s.to_json() for s in self.steps]


def decompose(C):
    """(word, trace) with eval_su3_word(word) == C."""
    if not is_su3(C):
        raise DecompositionError("Matrix is not in SU3(S)")
    cap = max(_span(C[0, 0]), 0) + max(_span(C[2, 0]), 0) + 2
    applied, trace = [], DecompTrace()
    cur = C
    for _ in range(cap):
        if not cur[0, 0] or not cur[2, 0]:
            break
        ops, nxt = swap_reduce(cur)
        trace.record("swap", ops, cur, nxt)
        applied += ops
        cur = nxt

        even = (cur[2, 0].deg_stats()[0] - cur[0, 0].deg_stats()[0]) % 2 == 0
        ops, nxt = align_tops(cur)
        trace.record("align-I" if even else "align-II", ops, cur, nxt)
        applied += ops
        cur = nxt

        if even:
            ops, nxt = euclid_step(cur)
            trace.record("euclid", ops, cur, nxt)
            applied += ops
            cur = nxt
    else:
        raise DecompositionError(f"No terminal state after {cap} iterations")

    tail = terminal_decompose(cur)
    trace.record("terminal", tail, cur, MatS.identity(R, 3))
    word = undo(applied) + tail
    logger.debug("SU3: decomposed into %d letters over %d steps", len(word), len(trace.steps))
    return word, trace


def verify_decompose(rng, samples=200, max_length=12, coeff_bound=3, exp_bound=4):
    """Random words are rebuilt exactly; euclid steps descend; every state stays in SU3(S)."""
    report = Report("su3-decompose")
    for _ in range(samples):
        length = int(rng.integers(0, max_length + 1))
        C = eval_su3_word(random_word(rng, length, coeff_bound, exp_bound))
        report.check(is_su3(C), "input", length)
        try:
            word, trace = decompose(C)
        except DecompositionError as e:
            report.check(False, "decompose", str(e))
            continue
        report.check(eval_su3_word(word) == C, "rebuild", length)
        report.check(trace.euclid_descends(), "descent", length)
        report.check(all(is_su3(S) for S in trace.states), "states", length)
    return report

# --- Sampling ---

def _rand_coeff(rng, bound):
    num = int(rng.integers(1, bound + 1)) * (1 if rng.integers(0, 2) else -1)
    return Fraction(num, int(rng.integers(1, bound + 1)))


def _rand_laurent(rng, exps, bound, terms):
    picked = rng.choice(len(exps), size=min(terms, len(exps)), replace=False)
    return Laurent(R, {exps[int(i)]: _rand_coeff(rng, bound) for i in picked})


def random_aelt(rng, coeff_bound=3, exp_bound=2):
    exps = list(range(-2 * exp_bound, 2 * exp_bound + 1))
    odd = [n for n in exps if n % 2]
    chi1 = _rand_laurent(rng, exps, coeff_bound, 2)
    t = _rand_laurent(rng, odd, coeff_bound, 1)
    return AElt(chi1, chi1 * chi1.sigma_prime() * HALF + t)


def random_a_unit(rng, coeff_bound=3, exp_bound=2):
    n = int(rng.integers(-2 * exp_bound, 2 * exp_bound + 1))
    c = _rand_coeff(rng, coeff_bound)
    if rng.integers(0, 2):
        return chi_hat(Laurent.monomial(R, n, c))
    return AElt(Laurent.zero(R), Laurent.monomial(R, n if n % 2 else n + 1, c))


def random_word(rng=None, length=4, coeff_bound=3, exp_bound=2):
    """Random word in the SU3 generators; its product is a random element of SU3(S)."""
    rng = rng if rng is not None else np.random.default_rng()
    word = []
    for _ in range(length):
        kind = ATOM_KINDS[int(rng.integers(0, len(ATOM_KINDS)))]
        sign = 1 if rng.integers(0, 2) else -1
        if kind == "x":
            word.append(x_gen(random_aelt(rng, coeff_bound, exp_bound), sign))
        elif kind == "xp":
            m = 2 * int(rng.integers(-exp_bound, exp_bound)) + 1
            word.append(xp_gen(Laurent.monomial(R, m, _rand_coeff(rng, coeff_bound)), sign))
        elif kind == "wp":
            word.append(wp_gen(random_a_unit(rng, coeff_bound, exp_bound)))
        else:
            n = int(rng.integers(-2 * exp_bound, 2 * exp_bound + 1))
            word.append(hp_gen(Laurent.monomial(R, n, _rand_coeff(rng, coeff_bound))))
    return word
