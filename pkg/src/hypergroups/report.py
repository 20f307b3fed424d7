"""Per-hypergroup analysis report (JSON record plus a text view of it)."""

from __future__ import annotations

import json

from .arith import (
    is_p_valenced,
    is_rt,
    is_solvable,
    o_p,
    primes_up_to,
    rt_chain,
    sylow_p_subsets,
    valency,
)
from .bits import members
from .core import Hypergroup, is_commutative, is_thin, thin_elements
from .enumeration import canonical_form
from .errors import HypothesisViolation, UndefinedForNonRT
from .series import center, is_nilpotent_group, upper_center_series
from .subsets import all_closed_subsets, lattice_summary, thin_residue
from .verify import check_all

REPORT_VERSION = 1


def _s(m: int) -> list[int]:
    return list(members(m))


def analyze(H: Hypergroup, source: str | None = None, primes: list[int] | None = None, strict: bool = True) -> dict:
    """Every decided property of ``H`` as a JSON-ready dict."""
    rt = is_rt(H)
    n_H = valency(H).n_H if rt else None
    if primes is None:
        primes = primes_up_to(n_H) if rt else []
    ucs = upper_center_series(H)
    chain = rt_chain(H)
    solvable, schain = is_solvable(H)

    per_prime = []
    for p in primes:
        entry: dict = {"p": p}
        try:
            entry["sylow"] = [_s(P) for P in sylow_p_subsets(H, p)]
            entry["p_valenced"] = bool(is_p_valenced(H, p, strict))
            try:
                entry["o_p"] = _s(o_p(H, p, strict))
            except HypothesisViolation as e:
                entry["o_p"] = None
                entry["o_p_note"] = str(e)
        except UndefinedForNonRT as e:
            entry["error"] = str(e)
        per_prime.append(entry)

    checks = check_all(H, source or "", strict)
    digest = {
        "failures": sorted({r.theorem_id for r in checks if r.failed}),
        "applicable": sorted({r.theorem_id for r in checks if r.hypotheses_satisfied}),
        "not_applicable": sorted(
            {r.theorem_id for r in checks} - {r.theorem_id for r in checks if r.hypotheses_satisfied}
        ),
    }
    return {
        "report_version": REPORT_VERSION,
        "source": source,
        "order": H.order,
        "canonical_hash": canonical_form(H).digest(),
        "star": list(H.star),
        "commutative": is_commutative(H),
        "thin": is_thin(H),
        "thin_elements": _s(thin_elements(H)),
        "closed_subsets": lattice_summary(all_closed_subsets(H)),
        "center": _s(center(H)),
        "upper_center_series": [_s(Z) for Z in ucs.terms],
        "weakly_nilpotent": ucs.is_exhaustive,
        "nilpotency_class": ucs.stabilized_at if ucs.is_exhaustive else None,
        "hypercenter": _s(ucs.hypercenter),
        "thin_residue": _s(thin_residue(H)),
        "nilpotent_group": is_nilpotent_group(H),
        "rt": rt,
        "rt_chain": None if chain is None else [_s(F) for F in chain.links],
        "rt_step_orders": None if chain is None else list(chain.quotient_orders),
        "valency": n_H,
        "p_valenced_reading": "subset" if strict else "membership",
        "primes": per_prime,
        "solvable": solvable,
        "solvable_chain": None if schain is None else [_s(F) for F in schain.links],
        "solvable_step_orders": None if schain is None else list(schain.quotient_orders),
        "theorem_checks": digest,
    }


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list) and v and isinstance(v[0], list):
        return " < ".join("{" + ",".join(map(str, s)) + "}" for s in v)
    if isinstance(v, list):
        return "{" + ",".join(map(str, v)) + "}"
    return str(v)


def to_text(report: dict) -> str:
    r = report
    lines = [
        f"source:              {r['source'] or '-'}",
        f"order:               {r['order']}",
        f"canonical hash:      {r['canonical_hash']}",
        f"star:                {' '.join(map(str, r['star']))}",
        f"commutative:         {_fmt(r['commutative'])}",
        f"thin:                {_fmt(r['thin'])}",
        f"thin elements:       {_fmt(r['thin_elements'])}",
        f"closed subsets:      {len(r['closed_subsets'])}",
    ]
    for row in r["closed_subsets"]:
        tags = [t for t in ("normal", "strongly_normal", "maximal") if row[t]]
        lines.append(f"  {_fmt(row['set']):18} {' '.join(tags)}")
    lines += [
        f"center:              {_fmt(r['center'])}",
        f"upper center series: {_fmt(r['upper_center_series'])}",
        f"weakly nilpotent:    {_fmt(r['weakly_nilpotent'])} (class {_fmt(r['nilpotency_class'])})",
        f"hypercenter:         {_fmt(r['hypercenter'])}",
        f"thin residue:        {_fmt(r['thin_residue'])}",
        f"nilpotent group:     {_fmt(r['nilpotent_group'])}",
        f"residually thin:     {_fmt(r['rt'])}",
        f"RT chain:            {_fmt(r['rt_chain'])} orders {_fmt(r['rt_step_orders'])}",
        f"valency:             {_fmt(r['valency'])}",
        f"solvable:            {_fmt(r['solvable'])}",
        f"solvable chain:      {_fmt(r['solvable_chain'])} orders {_fmt(r['solvable_step_orders'])}",
        f"p-valenced reading:  {r['p_valenced_reading']}",
    ]
    for e in r["primes"]:
        if "error" in e:
            lines.append(f"  p={e['p']}: {e['error']}")
            continue
        lines.append(
            f"  p={e['p']}: sylow {', '.join(_fmt(P) for P in e['sylow']) or '-'}; "
            f"p-valenced {_fmt(e['p_valenced'])}; O_p {_fmt(e['o_p'])}"
        )
    d = r["theorem_checks"]
    lines.append(f"theorem checks:      {len(d['applicable'])} applicable, {len(d['failures'])} failing")
    for t in d["failures"]:
        lines.append(f"  FAILED {t}")
    return "\n".join(lines) + "\n"
