"""Per-theorem verification suites over generated instances.

A suite has two halves: ``make`` turns (trial seed, size, entry bound) into
named matrices, and ``check`` maps those matrices to named booleans. The
split lets a failure dump be replayed from its matrices alone through
:func:`replay`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .anti_triangular import (
    anti_triangular,
    cor34_chain,
    cor37_derive,
    lem35_chain,
    lem35_converse,
    lemma32_extract,
    power_check_lemma31,
    thm33_chain,
    thm33_converse,
    thm36_converse,
    thm36_split,
)
from .decompositions import (
    corner_characterize,
    cor23_scaler,
    euw_decompose,
    invariant_splitting,
    quasipolar,
    strongly_drazin_check,
    thm22_refine,
    thm22_witness_check,
    two_units,
)
from .drazin import additive_pq_zero, cline_transfer, commuting_product_drazin, drazin, verify_drazin_axioms
from .errors import CertificateError, HypothesisError
from .instance_gen import GenSpec, derive_seed, generate
from .matrix import Matrix, identity, is_nilpotent

__all__ = ["THEOREM_IDS", "TheoremReport", "run_suite", "run_fuzz", "replay", "check_instance"]


@dataclass
class TheoremReport:
    theorem_id: str
    trials: int
    passes: int
    failures: list[dict] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def ok(self) -> bool:
        return self.passes == self.trials

    def to_json_obj(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "trials": self.trials,
            "passes": self.passes,
            "failures": self.failures,
            "elapsed_ms": self.elapsed_ms,
        }


@dataclass(frozen=True)
class _Suite:
    kind: str
    make: Callable[[GenSpec], dict[str, Matrix]]
    check: Callable[[dict[str, Matrix]], dict[str, bool]]


def _gen(spec: GenSpec) -> dict[str, Matrix]:
    out = generate(spec)
    if isinstance(out, dict):
        return out
    if isinstance(out, tuple):
        return {"a": out[0], "x": out[1]}
    return {"a": out}


# -- decomposition suites ---------------------------------------------------


def _check_lem21(inst):
    a = inst["a"]
    a_d = drazin(a)
    e = a @ a_d
    sd = e + a @ (identity(a.n_rows) - e)
    got = strongly_drazin_check(a)
    built = strongly_drazin_check(sd)
    checks = {
        "verdict matches a-a^2 nilpotent": bool(got) == bool(is_nilpotent(a - a @ a)),
        "e + w is strongly Drazin": bool(built),
    }
    if got:
        checks.update({f"a: {k}": v for k, v in got.checks.items()})
    if built:
        checks.update({f"e+w: {k}": v for k, v in built.checks.items()})
        checks["e+w: idempotent = e"] = built.e == (sd @ drazin(sd))
    return checks


def _make_thm22(spec):
    inst = _gen(spec)
    a, x = inst["a"], inst["x"]
    a_d = drazin(a)
    # a^d + a^pi x still commutes with a and leaves a - a^2 x' nilpotent
    inst["x"] = a_d + (identity(a.n_rows) - a @ a_d) @ x
    return inst


def _check_thm22(inst):
    a, x = inst["a"], inst["x"]
    checks = {"witness accepted": thm22_witness_check(a, x)}
    ref = thm22_refine(a, x)
    checks.update(ref.checks)
    checks["a_d = drazin(a)"] = ref.a_d == drazin(a)
    return checks


def _check_cor23(inst):
    return dict(cor23_scaler(inst["a"]).checks)


def _make_cor24(spec):
    inst = _gen(spec)
    a, x = inst["a"], inst["x"]
    a_pi = identity(a.n_rows) - a @ drazin(a)
    # a^pi plus a commuting nilpotent: still a valid, generally non-idempotent p
    inst["x"] = a_pi + a @ a_pi @ x
    return inst


def _check_cor24(inst):
    a, p = inst["a"], inst["x"]
    a_d = drazin(a)
    fwd = quasipolar(a)
    given = quasipolar(a, p)
    checks = {f"forward: {k}": v for k, v in fwd.checks.items()}
    checks["forward: b = a^d"] = fwd.b == a_d
    checks.update({f"given p: {k}": v for k, v in given.checks.items()})
    checks["given p: b is a witness"] = thm22_witness_check(a, given.b)
    if given.p @ given.p == given.p:
        checks["given p: b = a^d"] = given.b == a_d
    return checks


def _check_thm25(inst):
    return dict(euw_decompose(inst["a"]).checks)


def _check_cor26(inst):
    return dict(two_units(inst["a"]).checks)


def _check_thm27(inst):
    a = inst["a"]
    a_d = drazin(a)
    fwd = corner_characterize(a)
    given = corner_characterize(a, a @ a_d)
    checks = {f"forward: {k}": v for k, v in fwd.checks.items()}
    checks.update({f"given e: {k}": v for k, v in given.checks.items()})
    checks["a_d = drazin(a)"] = fwd.a_d == a_d and given.a_d == a_d
    return checks


def _check_cor28(inst):
    return dict(invariant_splitting(inst["a"]).checks)


# -- block-matrix suites ----------------------------------------------------


def _check_lem31(inst):
    a = inst["a"]
    checks = {}
    for n in range(1, 13):
        checks.update({f"n={n}: {k}": v for k, v in power_check_lemma31(a, n).checks.items()})
    return checks


def _check_lem32(inst):
    a = inst["a"]
    return dict(lemma32_extract(a).checks)


def _m_d(inst):
    return drazin(anti_triangular(inst["a"], inst["b"], inst["c"]))


def _check_thm33(inst):
    a, b, c = inst["a"], inst["b"], inst["c"]
    return {
        "chain M^d = direct": thm33_chain(a, b, c) == _m_d(inst),
        "converse (bc)^d = direct": thm33_converse(a, b, c) == drazin(b @ c),
    }


def _check_cor34(inst):
    a, c = inst["a"], inst["c"]
    return {"chain M^d = direct": cor34_chain(a, c) == drazin(anti_triangular(a, a, c))}


def _check_lem35(inst):
    a, b, c = inst["a"], inst["b"], inst["c"]
    return {
        "chain M^d = direct": lem35_chain(a, b, c) == _m_d(inst),
        "converse (bc)^d = direct": lem35_converse(a, b, c) == drazin(b @ c),
    }


def _check_thm36(inst):
    a, b, c = inst["a"], inst["b"], inst["c"]
    return {
        "split M^d = direct": thm36_split(a, b, c) == _m_d(inst),
        "converse (bc)^d = direct": thm36_converse(a, b, c) == drazin(b @ c),
    }


def _check_cor37(inst):
    return {"derived M^d = direct": cor37_derive(inst["a"], inst["b"], inst["c"]) == _m_d(inst)}


# -- transfer rules ----------------------------------------------------------


def _make_cline(spec):
    a = _gen(spec)["a"]
    b = _gen(GenSpec(derive_seed(spec.seed, 1), spec.size, spec.entry_bound, spec.kind))["a"]
    return {"a": a, "b": b}


def _check_cline(inst):
    a, b = inst["a"], inst["b"]
    ba_d = cline_transfer(a, b)
    return {
        "b((ab)^d)^2a = (ba)^d": ba_d == drazin(b @ a),
        "axioms": verify_drazin_axioms(b @ a, ba_d).ok,
    }


def _check_pq(inst):
    p, q = inst["p"], inst["q"]
    return {"additive = direct": additive_pq_zero(p, q) == drazin(p + q)}


def _check_commuting(inst):
    a, x = inst["a"], inst["x"]
    return {"a^d x^d = (ax)^d": commuting_product_drazin(a, x) == drazin(a @ x)}


_SUITES: dict[str, _Suite] = {
    "lem2.1": _Suite("drazin_structured", _gen, _check_lem21),
    "thm2.2": _Suite("commuting_witness", _make_thm22, _check_thm22),
    "cor2.3": _Suite("drazin_structured", _gen, _check_cor23),
    "cor2.4": _Suite("commuting_witness", _make_cor24, _check_cor24),
    "thm2.5": _Suite("drazin_structured", _gen, _check_thm25),
    "cor2.6": _Suite("drazin_structured", _gen, _check_cor26),
    "thm2.7": _Suite("drazin_structured", _gen, _check_thm27),
    "cor2.8": _Suite("drazin_structured", _gen, _check_cor28),
    "lem3.1": _Suite("drazin_structured", _gen, _check_lem31),
    "lem3.2": _Suite("drazin_structured", _gen, _check_lem32),
    "thm3.3": _Suite("thm33", _gen, _check_thm33),
    "cor3.4": _Suite("thm33", _gen, _check_cor34),
    "lem3.5": _Suite("lem35", _gen, _check_lem35),
    "thm3.6": _Suite("thm36", _gen, _check_thm36),
    "cor3.7": _Suite("cor37", _gen, _check_cor37),
    "cline": _Suite("drazin_structured", _make_cline, _check_cline),
    "pq-additive": _Suite("pq_zero", _gen, _check_pq),
    "commuting-product": _Suite("commuting_witness", _gen, _check_commuting),
}

THEOREM_IDS = tuple(_SUITES)


def check_instance(theorem_id: str, inst: dict[str, Matrix]) -> list[str]:
    """Names of failed certificates for one instance (empty when it passes)."""
    suite = _SUITES[theorem_id]
    try:
        checks = suite.check(inst)
    except CertificateError as exc:
        return list(exc.failed)
    except HypothesisError as exc:
        return [f"hypothesis: {exc.condition}"]
    except Exception as exc:  # a crash is a failed trial, not a crashed run
        return [f"error: {type(exc).__name__}: {exc}"]
    return [k for k, ok in checks.items() if not ok]


def replay(theorem_id: str, dump: dict) -> list[str]:
    """Re-run a failure record's check on its dumped matrices."""
    inst = {k: Matrix.from_json_obj(v) for k, v in dump["instance"].items()}
    return check_instance(theorem_id, inst)


def run_suite(
    theorem_id: str,
    trials: int,
    seed: int,
    sizes: list[int] | tuple[int, ...],
    entry_bound: int = 3,
) -> TheoremReport:
    """Run ``trials`` instances; trial ``i`` has size ``sizes[i % len(sizes)]``."""
    if theorem_id not in _SUITES:
        raise KeyError(theorem_id)
    suite = _SUITES[theorem_id]
    start = time.perf_counter()
    report = TheoremReport(theorem_id, trials, 0)
    for i in range(trials):
        spec = GenSpec(derive_seed(seed, i), sizes[i % len(sizes)], entry_bound, suite.kind)
        inst = suite.make(spec)
        failed = check_instance(theorem_id, inst)
        if failed:
            report.failures.append({
                "trial": i,
                "trial_seed": spec.seed,
                "gen_spec": spec.to_json_obj(),
                "instance": {k: m.to_json_obj() for k, m in inst.items()},
                "failed": failed,
            })
        else:
            report.passes += 1
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


def run_fuzz(trials: int, seed: int, sizes, entry_bound: int = 3) -> list[TheoremReport]:
    return [run_suite(tid, trials, seed, sizes, entry_bound) for tid in THEOREM_IDS]
