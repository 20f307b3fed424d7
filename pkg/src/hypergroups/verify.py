"""Executable theorem checks and open-question counterexample searches.

A check reports ``hypotheses_satisfied`` and ``conclusion_holds``; the latter
is ``None`` when the hypotheses fail (not applicable). A result with the
hypotheses satisfied and the conclusion false carries a counterexample
payload; for the proved statements that must never happen.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import prod
from pathlib import Path
from typing import Callable, Iterable

from .arith import (
    all_rt_chains,
    closed_valency,
    is_p_hypergroup,
    is_p_valenced,
    is_rt,
    is_solvable,
    o_p,
    primes_up_to,
    sylow_p_subsets,
    valency,
)
from .bits import is_subset, members
from .core import Hypergroup, is_thin, restrict
from .enumeration import canonical_form, enumerate_hypergroups
from .errors import BudgetExceeded, HypothesisViolation
from .hgt import format_hgt
from .quotient import quotient, strongly_normal_correspondence
from .series import (
    center,
    central_series,
    hypercenter,
    is_weakly_nilpotent,
    upper_center_series,
)
from .subsets import (
    _normal_in,
    _strongly_normal_in,
    all_closed_subsets,
    is_subnormal,
    subnormal_chain,
    thin_residue,
)


@dataclass
class TheoremCheckResult:
    theorem_id: str
    hypergroup_id: str
    hypotheses_satisfied: bool
    conclusion_holds: bool | None
    instances: int = 0
    p: int | None = None
    counterexample: dict | None = None

    def __post_init__(self):
        if not self.hypotheses_satisfied:
            self.conclusion_holds = None
        failed = self.hypotheses_satisfied and self.conclusion_holds is False
        if failed and self.counterexample is None:
            self.counterexample = {}
        if not failed:
            self.counterexample = None

    @property
    def failed(self) -> bool:
        return self.hypotheses_satisfied and self.conclusion_holds is False

    @property
    def vacuous(self) -> bool:
        return self.hypotheses_satisfied and self.instances == 0


def _result(tid, hid, hyp, failures: list, instances: int, p=None) -> TheoremCheckResult:
    if not hyp:
        return TheoremCheckResult(tid, hid, False, None, 0, p)
    cx = {"witnesses": failures[:5]} if failures else None
    return TheoremCheckResult(tid, hid, True, not failures, instances, p, cx)


def _s(m: int) -> list[int]:
    return list(members(m))


def _wn(H: Hypergroup) -> bool:
    return is_weakly_nilpotent(H)[0]


def _primes(H: Hypergroup) -> list[int]:
    """Primes used by per-prime checks: up to the valency (at least 2)."""
    n = valency(H).n_H if is_rt(H) else 2
    return primes_up_to(max(2, n))


# ----------------------------------------------------------- main theorems


def check_thm_sub(H: Hypergroup, hid: str = "") -> TheoremCheckResult:
    """Closed subsets of a weakly nilpotent hypergroup are weakly nilpotent."""
    if not _wn(H):
        return _result("closed-subsets-wn", hid, False, [], 0)
    subs = all_closed_subsets(H).subsets
    bad = [_s(F) for F in subs if not _wn(restrict(H, F))]
    return _result("closed-subsets-wn", hid, True, bad, len(subs))


def check_thm_qu(H: Hypergroup, hid: str = "") -> TheoremCheckResult:
    """Quotients of a weakly nilpotent hypergroup are weakly nilpotent."""
    if not _wn(H):
        return _result("quotients-wn", hid, False, [], 0)
    subs = all_closed_subsets(H).subsets
    bad = [_s(T) for T in subs if not _wn(quotient(H, T).quotient)]
    return _result("quotients-wn", hid, True, bad, len(subs))


def check_thm_subnormal(H: Hypergroup, hid: str = "") -> TheoremCheckResult:
    """In a weakly nilpotent H every closed subset is strongly subnormal and
    every maximal closed subset is strongly normal."""
    if not _wn(H):
        return _result("strongly-subnormal", hid, False, [], 0)
    L = all_closed_subsets(H)
    bad = []
    for F in L.subsets:
        if subnormal_chain(H, F, "strongly-normal") is None:
            bad.append({"not_strongly_subnormal": _s(F)})
    for M in L.maximal:
        if M not in L.strongly_normal:
            bad.append({"maximal_not_strongly_normal": _s(M)})
    return _result("strongly-subnormal", hid, True, bad, len(L.subsets) + len(L.maximal))


def _solv_sylow_hypotheses(H: Hypergroup, p: int, strict: bool) -> bool:
    if not (_wn(H) and is_rt(H)):
        return False
    if valency(H).n_H % p:
        return False
    return bool(is_p_valenced(H, p, strict))


def check_thm_solvable(H: Hypergroup, p: int, hid: str = "", strict: bool = True) -> TheoremCheckResult:
    """Weakly nilpotent, RT, p-valenced with p | n_H implies solvable."""
    if not _solv_sylow_hypotheses(H, p, strict):
        return _result("wn-solvable", hid, False, [], 0, p)
    ok, _ = is_solvable(H)
    return _result("wn-solvable", hid, True, [] if ok else [{"not_solvable": True}], 1, p)


def check_thm_sylow(H: Hypergroup, p: int, hid: str = "", strict: bool = True) -> TheoremCheckResult:
    """Under the same hypotheses every Sylow p-subset is strongly normal."""
    if not _solv_sylow_hypotheses(H, p, strict):
        return _result("sylow-strongly-normal", hid, False, [], 0, p)
    syl = sylow_p_subsets(H, p)
    L = all_closed_subsets(H)
    bad = [_s(P) for P in syl if P not in L.strongly_normal]
    return _result("sylow-strongly-normal", hid, True, bad, len(syl), p)


# --------------------------------------------------- lemmas and propositions


def _lem_sn_thin(H, hid):
    L = all_closed_subsets(H)
    bad = [
        _s(F) for F in L.subsets
        if (F in L.strongly_normal) != is_thin(quotient(H, F).quotient)
    ]
    return _result("sn-iff-thin-quotient", hid, True, bad, len(L.subsets))


def _lem_pvalenced_inherited(H, hid, p, strict):
    if not is_rt(H) or not is_p_valenced(H, p, strict):
        return _result("pvalenced-inherited", hid, False, [], 0, p)
    L = all_closed_subsets(H)
    bad = []
    count = 0
    for F in L.strongly_normal:
        count += 1
        sub = restrict(H, F)
        if not is_rt(sub) or not is_p_valenced(sub, p, strict):
            bad.append(_s(F))
    return _result("pvalenced-inherited", hid, True, sorted(bad), count, p)


def _lem_center_series_normal(H, hid):
    terms = upper_center_series(H).terms
    bad = [_s(Z) for Z in terms if not _normal_in(H, Z, H.full)]
    return _result("center-series-normal", hid, True, bad, len(terms))


def _lem_central_image(H, hid):
    Z = center(H)
    subs = all_closed_subsets(H).subsets
    bad = []
    for T in subs:
        qm = quotient(H, T)
        if not is_subset(qm.image(Z), center(qm.quotient)):
            bad.append(_s(T))
    return _result("central-image", hid, True, bad, len(subs))


def _lem_central_bound(H, hid):
    ucs = upper_center_series(H)
    bad = []
    series = central_series(H)
    for ch in series:
        asc = list(reversed(ch))
        for i, T in enumerate(asc):
            if not is_subset(T, ucs.term(i)):
                bad.append({"chain": [_s(c) for c in asc], "index": i})
                break
    return _result("central-series-bound", hid, True, bad, len(series))


def _cor_central_iff_wn(H, hid):
    has = bool(central_series(H))
    return _result("central-series-iff-wn", hid, True, [] if has == _wn(H) else [{"has_central_series": has}], 1)


def _lem_nontrivial_center(H, hid):
    hyp = _wn(H) and H.order > 1
    if not hyp:
        return _result("nontrivial-center", hid, False, [], 0)
    return _result("nontrivial-center", hid, True, [] if center(H) != 1 else [{"center": [0]}], 1)


def _lem_p_hypergroup_solvable(H, hid, p):
    if not is_p_hypergroup(H, p):
        return _result("p-hypergroup-solvable", hid, False, [], 0, p)
    ok, _ = is_solvable(H)
    return _result("p-hypergroup-solvable", hid, True, [] if ok else [{"not_solvable": True}], 1, p)


def _lem_op_in_sylow(H, hid, p, strict):
    if not is_rt(H) or not is_p_valenced(H, p, strict):
        return _result("op-in-sylow", hid, False, [], 0, p)
    try:
        O = o_p(H, p, strict)
    except HypothesisViolation as e:
        return _result("op-in-sylow", hid, True, [{"o_p": str(e), **e.report}], 1, p)
    syl = sylow_p_subsets(H, p)
    bad = [_s(P) for P in syl if not is_subset(O, P)]
    return _result("op-in-sylow", hid, True, bad, len(syl) + 1, p)


def _prop_center_quotient(H, hid):
    lhs = _wn(quotient(H, center(H)).quotient)
    return _result("center-quotient-wn", hid, True, [] if lhs == _wn(H) else [{"quotient_wn": lhs}], 1)


def _prop_hypercenter_quotient(H, hid):
    lhs = _wn(quotient(H, hypercenter(H)).quotient)
    return _result("hypercenter-quotient-wn", hid, True, [] if lhs == _wn(H) else [{"quotient_wn": lhs}], 1)


def _sn_correspondence(H, hid):
    L = all_closed_subsets(H)
    bad = []
    count = 0
    for N in L.normal:
        for F in L.subsets:
            if is_subset(N, F):
                count += 1
                if not strongly_normal_correspondence(H, N, F).agree:
                    bad.append({"N": _s(N), "F": _s(F)})
    return _result("sn-correspondence", hid, True, sorted(bad, key=str), count)


def _thin_residue_sn(H, hid):
    R = thin_residue(H)
    ok = _strongly_normal_in(H, R, H.full) and is_thin(quotient(H, R).quotient)
    ok = ok and ((R == 1) == is_thin(H))
    return _result("thin-residue-strongly-normal", hid, True, [] if ok else [_s(R)], 1)


def _valency_well_defined(H, hid):
    if not is_rt(H):
        return _result("valency-well-defined", hid, False, [], 0)
    chains = all_rt_chains(H)
    vals = sorted({prod(c.quotient_orders) for c in chains})
    return _result("valency-well-defined", hid, True, [] if len(vals) == 1 else [{"valencies": vals}], len(chains))


def _valency_multiplicative(H, hid):
    if not is_rt(H):
        return _result("valency-multiplicative", hid, False, [], 0)
    n_H = valency(H, check=False).n_H
    bad = []
    count = 0
    for F in all_closed_subsets(H).strongly_normal:
        n_F = closed_valency(H, F)
        Q = quotient(H, F).quotient
        if n_F is None or not is_rt(Q):
            continue
        count += 1
        if n_F * valency(Q).n_H != n_H:
            bad.append({"F": _s(F), "n_F": n_F, "n_Q": valency(Q).n_H})
    return _result("valency-multiplicative", hid, True, bad, count)


def _quotient_well_formed(H, hid):
    # quotient() raises on partition or representative failures; reaching the
    # end means every quotient validated.
    subs = all_closed_subsets(H).subsets
    bad = []
    for F in subs:
        qm = quotient(H, F)
        if qm.quotient.order > H.order or sorted(c for c in qm.classes) != sorted(set(qm.classes)):
            bad.append(_s(F))
    return _result("quotient-well-formed", hid, True, bad, len(subs))


def check_lemmas_props(H: Hypergroup, hid: str = "", strict: bool = True) -> list[TheoremCheckResult]:
    out = [
        _lem_sn_thin(H, hid),
        _lem_center_series_normal(H, hid),
        _lem_central_image(H, hid),
        _lem_central_bound(H, hid),
        _cor_central_iff_wn(H, hid),
        _lem_nontrivial_center(H, hid),
        _prop_center_quotient(H, hid),
        _prop_hypercenter_quotient(H, hid),
    ]
    for p in _primes(H):
        out.append(_lem_pvalenced_inherited(H, hid, p, strict))
        out.append(_lem_p_hypergroup_solvable(H, hid, p))
        out.append(_lem_op_in_sylow(H, hid, p, strict))
    return out


def check_structural(H: Hypergroup, hid: str = "") -> list[TheoremCheckResult]:
    return [
        _sn_correspondence(H, hid),
        _thin_residue_sn(H, hid),
        _valency_well_defined(H, hid),
        _valency_multiplicative(H, hid),
        _quotient_well_formed(H, hid),
    ]


def check_all(H: Hypergroup, hid: str = "", strict: bool = True) -> list[TheoremCheckResult]:
    out = [check_thm_sub(H, hid), check_thm_qu(H, hid), check_thm_subnormal(H, hid)]
    for p in _primes(H):
        out.append(check_thm_solvable(H, p, hid, strict))
        out.append(check_thm_sylow(H, p, hid, strict))
    out.extend(check_lemmas_props(H, hid, strict))
    out.extend(check_structural(H, hid))
    return out


THEOREM_IDS = (
    "closed-subsets-wn",
    "quotients-wn",
    "strongly-subnormal",
    "wn-solvable",
    "sylow-strongly-normal",
    "sn-iff-thin-quotient",
    "pvalenced-inherited",
    "center-series-normal",
    "central-image",
    "central-series-bound",
    "central-series-iff-wn",
    "nontrivial-center",
    "p-hypergroup-solvable",
    "op-in-sylow",
    "center-quotient-wn",
    "hypercenter-quotient-wn",
    "sn-correspondence",
    "thin-residue-strongly-normal",
    "valency-well-defined",
    "valency-multiplicative",
    "quotient-well-formed",
)


# ------------------------------------------------------------ catalog sweep


@dataclass
class TheoremSummary:
    theorem_id: str
    checked: int = 0
    applicable: int = 0
    nonvacuous: int = 0
    failures: list = field(default_factory=list)


def _check_one(args):
    hid, H, strict = args
    return [asdict(r) for r in check_all(H, hid, strict)]


def verify_catalog(
    items: Iterable[tuple[str, Hypergroup]],
    theorems: Iterable[str] | None = None,
    workers: int = 1,
    strict: bool = True,
) -> dict:
    """Run every check over named hypergroups; aggregate deterministically."""
    wanted = set(THEOREM_IDS if theorems is None else theorems)
    unknown = wanted - set(THEOREM_IDS)
    if unknown:
        raise ValueError(f"unknown theorem ids: {sorted(unknown)}")
    jobs = [(hid, H, strict) for hid, H in items]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            per = list(ex.map(_check_one, jobs, chunksize=4))
    else:
        per = [_check_one(j) for j in jobs]
    summaries = {tid: TheoremSummary(tid) for tid in THEOREM_IDS if tid in wanted}
    for results in per:
        for r in results:
            s = summaries.get(r["theorem_id"])
            if s is None:
                continue
            s.checked += 1
            if r["hypotheses_satisfied"]:
                s.applicable += 1
                if r["instances"]:
                    s.nonvacuous += 1
                if r["conclusion_holds"] is False:
                    s.failures.append(
                        {"hypergroup": r["hypergroup_id"], "p": r["p"], "counterexample": r["counterexample"]}
                    )
    return {
        "hypergroups": len(jobs),
        "p_valenced_reading": "subset" if strict else "membership",
        "theorems": [asdict(s) for s in summaries.values()],
        "total_failures": sum(len(s.failures) for s in summaries.values()),
    }


def format_summary(summary: dict) -> str:
    lines = [f"hypergroups checked: {summary['hypergroups']} (p-valenced reading: {summary['p_valenced_reading']})"]
    lines.append(f"{'theorem':32} {'checked':>8} {'applic.':>8} {'nonvac.':>8} {'fail':>5}")
    for s in summary["theorems"]:
        lines.append(
            f"{s['theorem_id']:32} {s['checked']:>8} {s['applicable']:>8} {s['nonvacuous']:>8} {len(s['failures']):>5}"
        )
    lines.append(f"total failures: {summary['total_failures']}")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------ open-question search

QUESTIONS = ("q56", "q57", "sylow-no-pvalenced")


def _q56(H: Hypergroup, strict: bool):
    subs = all_closed_subsets(H).subsets
    if all(is_subnormal(H, F) for F in subs) and not _wn(H):
        return {"all_closed_subnormal": True, "weakly_nilpotent": False}
    return None


def _q57(H: Hypergroup, strict: bool):
    if not _wn(H) or not is_rt(H):
        return None
    n = valency(H).n_H
    L = all_closed_subsets(H)
    sylows = {}
    for p in primes_up_to(n):
        if n % p == 0:
            syl = sylow_p_subsets(H, p)
            if any(P not in L.normal for P in syl):
                return None
            sylows[p] = [_s(P) for P in syl]
    R = thin_residue(H)
    if R == 1:
        return None
    return {"weakly_nilpotent": True, "sylow_subsets_normal": sylows, "thin_residue": _s(R)}


def _sylow_no_pvalenced(H: Hypergroup, strict: bool):
    if not _wn(H) or not is_rt(H):
        return None
    n = valency(H).n_H
    L = all_closed_subsets(H)
    for p in primes_up_to(n):
        if n % p or is_p_valenced(H, p, strict):
            continue
        bad = [P for P in sylow_p_subsets(H, p) if P not in L.strongly_normal]
        if bad:
            return {"p": p, "p_valenced": False, "sylow_not_strongly_normal": [_s(P) for P in bad]}
    return None


_SEARCHES: dict[str, Callable] = {"q56": _q56, "q57": _q57, "sylow-no-pvalenced": _sylow_no_pvalenced}


def _oracle_confirms(question: str, H: Hypergroup, finding: dict, strict: bool) -> bool:
    """Re-derive the finding from scratch with the naive oracle."""
    from .oracle import Naive

    rows = [[members(H.table[i][j]) for j in range(H.order)] for i in range(H.order)]
    N = Naive.from_rows(rows)
    if not N.is_valid():
        return False
    closed = N.closed_subsets()
    if question == "q56":
        return all(N.is_subnormal(F) for F in closed) and not N.is_weakly_nilpotent()
    if not (N.is_weakly_nilpotent() and N.is_rt()):
        return False
    n = N.valency()
    if question == "q57":
        for p in primes_up_to(n):
            if n % p == 0 and not all(N.normal_in(P, N.elems) for P in N.sylow(p)):
                return False
        return N.thin_residue() != frozenset({0})
    p = finding["p"]
    return (
        n % p == 0
        and not N.is_p_valenced(p, strict)
        and any(not N.strongly_normal_in(P, N.elems) for P in N.sylow(p))
    )


@dataclass
class SearchOutcome:
    question: str
    max_order: int
    status: str  # "finding" | "exhausted"
    searched: dict
    finding: dict | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


def search_counterexample(
    question: str,
    max_order: int,
    strict: bool = True,
    budget: float | None = None,
    workers: int = 1,
) -> SearchOutcome:
    """First hypergroup (by order, then canonical order) answering the question."""
    if question not in _SEARCHES:
        raise ValueError(f"unknown question {question!r}; choose from {QUESTIONS}")
    if max_order > 5:
        raise BudgetExceeded("open-question searches are limited to order 5")
    deadline = None if budget is None else time.monotonic() + budget
    test = _SEARCHES[question]
    searched = {}
    for n in range(1, max_order + 1):
        remaining = None if deadline is None else max(0.0, deadline - time.monotonic())
        hs = enumerate_hypergroups(n, budget=remaining, workers=workers)
        searched[str(n)] = len(hs)
        for seq, H in enumerate(hs, start=1):
            if deadline is not None and time.monotonic() > deadline:
                raise BudgetExceeded("search budget exhausted")
            found = test(H, strict)
            if found is None:
                continue
            if not _oracle_confirms(question, H, found, strict):
                raise AssertionError(f"oracle rejected finding for {question} at h{n}_{seq:03d}")
            finding = {
                "id": f"h{n}_{seq:03d}",
                "order": n,
                "canonical_hash": canonical_form(H).digest(),
                "explanation": found,
                "oracle_confirmed": True,
                "p_valenced_reading": "subset" if strict else "membership",
                "hgt": format_hgt(H),
            }
            return SearchOutcome(question, max_order, "finding", searched, finding)
    return SearchOutcome(question, max_order, "exhausted", searched, None)


def write_outcome(outcome: SearchOutcome, out_dir) -> list[Path]:
    d = Path(out_dir)
    d.mkdir(parents=True, exist_ok=True)
    stem = f"{outcome.question}_order{outcome.max_order}"
    paths = [d / f"{stem}.json"]
    paths[0].write_text(outcome.to_json())
    if outcome.finding:
        p = d / f"{stem}.hgt"
        p.write_text(outcome.finding["hgt"])
        paths.append(p)
    return paths
