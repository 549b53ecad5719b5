# twistloop/suites/checks.py
"""One function per verification suite.

Each takes a ``SuiteConfig``, builds its case and returns report records
``{"suite", "case", "status", "detail"}``. Library errors propagate to the
engine, which records them as ``error``.
"""
import logging
import zlib
from fractions import Fraction
from functools import lru_cache

import numpy as np

from twistloop import groupwords as gw
from twistloop import matrep as mr
from twistloop import roots as rt
from twistloop import su3
from twistloop.loopalg import LoopAlgebra, affine_cartan_from_form, left_null_vector
from twistloop.report import Report
from twistloop.scalars import Cyc

logger = logging.getLogger(__name__)

NORM_TABLE = {rt.R1: Fraction(2), rt.R2: Fraction(1), rt.R3: Fraction(1, 2), rt.R4: Fraction(2, 3)}


# --- Case construction ---

@lru_cache(maxsize=None)
def build_case(series, rank, r):
    """(FoldedSystem, ChevTable) for one supported case."""
    rs = rt.build_root_system(series, rank)
    aut = rt.diagram_aut(series, rank, r)
    return rt.fold(rs, aut), rt.chevalley_constants(rs, aut)


def _case(cfg):
    return build_case(cfg.type, cfg.rank, cfg.r)


def suite_rng(cfg):
    """Generator seeded from (seed, suite, case) only."""
    tag = zlib.crc32(f"{cfg.seed}:{cfg.suite}:{cfg.case}".encode("utf-8"))
    return np.random.default_rng([cfg.seed, tag])


def _record(cfg, status, detail):
    return {"suite": cfg.suite, "case": cfg.case, "status": status, "detail": detail}


def records_from(cfg, *reports):
    out = []
    for report in reports:
        status = "pass" if report.ok else "fail"
        out.append(_record(cfg, status, f"{report.name}: {report.summary()}"))
    return out


def skip(cfg, reason):
    logger.info("Checks: %s skipped on %s: %s", cfg.suite, cfg.case, reason)
    return [_record(cfg, "skip", reason)]


def _slow_blocked(cfg):
    return cfg.type == "E" and not cfg.slow


def _models(cfg, fs, tbl):
    """Matrix models to scan; None when the case is behind --slow."""
    if cfg.model:
        kinds = [cfg.model]
    elif fs.rs.series == "A":
        kinds = ["natural", "adjoint"]
    else:
        kinds = ["adjoint"]
    if _slow_blocked(cfg) and "adjoint" in kinds:
        kinds.remove("adjoint")
    if not kinds:
        return None
    return [mr.build_model(kind, fs, tbl) for kind in kinds]


# --- Suites ---

def check_signs(cfg):
    fs, tbl = _case(cfg)
    return records_from(cfg, rt.verify_sign_identities(tbl))


def check_chevalley_pairs(cfg):
    if _slow_blocked(cfg):
        return skip(cfg, "E6 loop algebra scans need --slow")
    fs, tbl = _case(cfg)
    return records_from(cfg, LoopAlgebra(fs, tbl).verify_chevalley_pairs(cfg.nmax))


def _gcm_report(A, expected):
    report = Report("affine-gcm")
    size = A.shape[0]
    report.check(np.array_equal(A, expected), "form", A.tolist())
    for p in range(size):
        report.check(A[p, p] == 2, "diagonal", p)
        for q in range(size):
            if p != q:
                report.check(A[p, q] <= 0, "sign", p, q)
                report.check((A[p, q] == 0) == (A[q, p] == 0), "zero-pattern", p, q)
    v = left_null_vector(A)
    report.check(all(c > 0 for c in v) and not (np.asarray(v) @ A).any(), "null-vector", v)
    return report


def check_serre(cfg):
    if _slow_blocked(cfg):
        return skip(cfg, "E6 loop algebra scans need --slow")
    fs, tbl = _case(cfg)
    lie = LoopAlgebra(fs, tbl)
    gcm = lie.chev_generators()
    return records_from(cfg, _gcm_report(gcm.matrix, affine_cartan_from_form(fs)), lie.verify_serre())


def check_graded(cfg):
    fs, tbl = _case(cfg)
    lie = LoopAlgebra(fs, tbl)
    reports = [lie.verify_grading()]
    if _slow_blocked(cfg):
        logger.info("Checks: bracket laws on %s need --slow", cfg.case)
    else:
        reports.append(lie.verify_bracket_laws(suite_rng(cfg), cfg.samples, cfg.nmax))
    return records_from(cfg, *reports)


def check_folded_cartan(cfg):
    fs, tbl = _case(cfg)
    report = Report("folded-cartan")
    A = rt.folded_cartan(fs)
    affine = affine_cartan_from_form(fs)
    report.check(np.array_equal(A, affine[1:, 1:]), "affine-block")
    if cfg.r == 1:
        report.check(np.array_equal(A, rt.cartan_matrix(cfg.type, cfg.rank)), "untwisted")
    else:
        report.check(np.array_equal(A, rt.folded_type_cartan(fs.label)), "folded-type", fs.label, A.tolist())
    images = list(fs.tags)
    for a in images:
        report.check(fs.norm_sq(a) == NORM_TABLE[fs.tag(a)], "norm", a)
        for b in images:
            report.check(rt.folded_reflect(fs, a, b) in fs.tags, "reflect", a, b)
    return records_from(cfg, report)


def _random_taus(group, rng, count):
    """``count`` random scalars other than +-1."""
    signs = (Cyc(group.r, 1), Cyc(group.r, -1))
    taus = []
    while len(taus) < count:
        tau = group._random_scalar(rng, 5)
        if tau not in signs:
            taus.append(tau)
    return taus


def _kernel_reports(cfg, fs, tbl, rng, models):
    group = gw.TwistedGroup(fs, tbl)
    torus = Report("kernel-torus")
    exps = group.zk_exponents()
    for tau in _random_taus(group, rng, cfg.samples):
        word = group.phi_word(group.zk_element(tau))
        torus.check(group.kernel_test(word), "zk", str(tau))
        p = int(rng.integers(0, len(exps)))
        bumped = list(exps)
        bumped[p] += int(rng.choice([-1, 1]))
        word = group.phi_word(group.zk_element(tau, bumped))
        torus.check(not group.kernel_test(word), "perturbed", str(tau), p)
    reports = [torus]
    for model in models or []:
        report = mr.verify_kernel(model, tau=2)
        report.name = f"kernel-{model.kind}"
        reports.append(report)
    return reports


def check_kernel(cfg):
    fs, tbl = _case(cfg)
    return records_from(cfg, *_kernel_reports(cfg, fs, tbl, suite_rng(cfg), _models(cfg, fs, tbl)))


def check_center(cfg):
    fs, tbl = _case(cfg)
    group = gw.TwistedGroup(fs, tbl)
    rng = suite_rng(cfg)
    report = Report("center")
    exps = group.zk_exponents()
    report.check(tuple(exps) == tuple(left_null_vector(affine_cartan_from_form(fs))), "null-vector", exps)
    for tau in _random_taus(group, rng, cfg.samples):
        report.check(group.is_central([tau ** v for v in exps]), "zk", str(tau))
        p = int(rng.integers(0, len(exps)))
        bumped = [tau ** v for v in exps]
        bumped[p] = bumped[p] * tau
        report.check(not group.is_central(bumped), "perturbed", str(tau), p)
    return records_from(cfg, report)


def check_gal_act(cfg):
    if _slow_blocked(cfg):
        return skip(cfg, "E6 adjoint model needs --slow")
    fs, tbl = _case(cfg)
    group = gw.TwistedGroup(fs, tbl)
    model = mr.AdjointModel(fs, tbl)
    return records_from(cfg, gw.verify_gal_act(group, model),
                        gw.verify_km_action(group, suite_rng(cfg), cfg.samples, cfg.nmax))


def check_diagram(cfg):
    fs, tbl = _case(cfg)
    models = _models(cfg, fs, tbl)
    if models is None:
        return skip(cfg, "E6 adjoint model needs --slow")
    rng = suite_rng(cfg)
    reports = []
    for model in models:
        report = mr.verify_diagram(model, cfg.samples, cfg.nmax, rng)
        report.name = f"diagram-{model.kind}"
        reports.append(report)
    return records_from(cfg, *reports)


def check_matrep(cfg):
    fs, tbl = _case(cfg)
    models = _models(cfg, fs, tbl)
    if models is None:
        return skip(cfg, "E6 adjoint model needs --slow")
    rng = suite_rng(cfg)
    reports = []
    for model in models:
        reports.append(mr.verify_structure(model))
        table = mr.commutator_table(model)
        comm = Report(f"commutator-{model.kind}")
        for alpha, beta in sorted(table):
            nu = model.group.random_laurent(rng, range(-2, 3))
            mu = model.group.random_laurent(rng, range(-2, 3))
            comm.check(mr.commutator_check(model, alpha, beta, nu, mu, table), alpha, beta, str(nu), str(mu))
        reports.append(comm)
        if model.kind == "adjoint":
            reports.append(mr.verify_eta(model))
        for which in ("xsx", "wsw", "hsh"):
            lemma = mr.verify_lemma(model, which, cfg.samples, rng)
            lemma.name = f"{lemma.name}-{model.kind}"
            reports.append(lemma)
    if len(models) == 2:
        reports.append(_agreement(models))
    return records_from(cfg, *reports)


def _agreement(models):
    """Both models see the same commutator constants and both map Z_K to the identity."""
    report = Report("model-agreement")
    tables = [mr.commutator_table(m) for m in models]
    report.check(tables[0] == tables[1], "commutator-table")
    verdicts = [mr.verify_kernel(m, tau=3).ok for m in models]
    report.check(all(verdicts), "kernel", verdicts)
    return report


def check_alaws(cfg):
    fs, tbl = _case(cfg)
    if not fs.is_a_even:
        return skip(cfg, "no R-3 roots outside (A_2l, 2)")
    group = gw.TwistedGroup(fs, tbl)
    rng = suite_rng(cfg)
    return records_from(cfg, gw.verify_a_laws(group, rng, cfg.samples), gw.verify_mult_h(group, limit=60))


def check_su3(cfg):
    if (cfg.type, cfg.rank, cfg.r) != ("A", 2, 2):
        return skip(cfg, "SU3 decomposition applies to (A2, 2) only")
    return records_from(cfg, su3.verify_decompose(suite_rng(cfg), cfg.samples))
