"""Named verification suites; each returns a SuiteReport with counts and the first
counterexample, if any."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import oracle
from .bounds import B, C, Cap, CapExceeded, nu, omega_alg, typical_dim_bound, upsilon_alg
from .lattice import (
    LatticeSet,
    coefficient_sums,
    connectivity_check,
    hilbert_samuel,
    is_compressed,
    kolchin_polynomial,
    order_weight,
)
from .mu import build_concatenated, build_mu, m_frak, omega_mu_prefix, vol_mu
from .numeric import macaulay_bracket


@dataclass
class SuiteReport:
    suite: str
    checked: int = 0
    violations: int = 0
    first: object = None
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def record(self, holds: bool, witness) -> None:
        self.checked += 1
        if not holds:
            self.violations += 1
            if self.first is None:
                self.first = witness

    def absorb(self, part) -> None:
        """Fold in a LemmaReport or another SuiteReport."""
        self.checked += part.checked
        self.violations += part.violations
        if self.first is None and part.first is not None:
            self.first = part.first

    def to_doc(self) -> dict:
        return {
            "suite": self.suite,
            "checked": self.checked,
            "violations": self.violations,
            "first_counterexample": _plain(self.first),
            "notes": _plain(self.notes),
            "status": "pass" if self.ok else "fail",
        }


def _plain(x):
    """Turn tuples and nested containers into JSON-friendly lists and dicts."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, LatticeSet):
        return x.to_doc()
    return x


def random_sets(seeds: int, seed: int, max_m: int, max_order: int, max_points: int):
    """The random sets used by the property suites: m cycles through 1..max_m."""
    for i in range(seeds):
        yield oracle.random_lattice_set(1 + i % max_m, max_order, max_points, seed + i)


def dual_route(E: LatticeSet, rep: SuiteReport) -> None:
    """Recursion against fit-from-volumes; discrepancies count as violations."""
    fit = oracle.fit_from_volumes(E)
    _dual_tally(rep, fit.polynomial == kolchin_polynomial(E), {"check": "dual route", "set": E})
    if fit.stabilization_level > sum(E.corner()) + 1:
        rep.notes.setdefault("late_stabilization", []).append(E)


def _dual_tally(rep: SuiteReport, same: bool, witness) -> None:
    rep.record(same, witness)
    rep.notes["dual_route_checked"] = rep.notes.get("dual_route_checked", 0) + 1
    rep.notes["dual_route_discrepancies"] = rep.notes.get("dual_route_discrepancies", 0) + (not same)


def _mu_prefix_walk(r0: int, m: int, extra: int = 10):
    """Yield (length, prefix elements, scanner) over every prefix of build_mu(r0, m).

    The scanner covers orders up to ord(mu_L) + m + extra so that fits and the
    bracket checks have room above every prefix.
    """
    seq = build_mu(r0, m)
    scan = oracle.PrefixScanner(m, sum(seq.last) + m + extra)
    for ell, g in enumerate(seq.elems, 1):
        scan.add(g)
        yield seq, ell, scan


# ---------------------------------------------------------------------------


def suite_macaulay(seeds: int = 200, seed: int = 0, mu_r: int = 6, mu_m: int = 3) -> SuiteReport:
    rep = SuiteReport("macaulay")
    for E in random_sets(seeds, seed, 4, 6, 5):
        H = [hilbert_samuel(E, d) for d in range(12)]
        compressed = is_compressed(E)
        for d in range(1, 11):
            bracket = macaulay_bracket(H[d], d)
            rep.record(H[d + 1] <= bracket, {"clause": "inequality", "set": E, "d": d})
            if compressed and E.max_order() <= d:
                rep.record(H[d + 1] == bracket, {"clause": "equality", "set": E, "d": d})
        dual_route(E, rep)
    prefixes = 0
    for r0 in range(1, mu_r + 1):
        for m in range(1, mu_m + 1):
            for seq, ell, scan in _mu_prefix_walk(r0, m):
                prefixes += 1
                H = scan.hilbert()
                top_order = max(sum(g) for g in seq.elems[:ell])
                rep.record(scan.compressed(), {"clause": "prefix compressed", "r0": r0, "m": m, "ell": ell})
                for d in range(max(1, top_order), min(top_order + 10, scan.top - 1) + 1):
                    rep.record(H[d + 1] == macaulay_bracket(H[d], d),
                               {"clause": "equality on prefix", "r0": r0, "m": m, "ell": ell, "d": d})
                fit = oracle.fit_numerical_polynomial(scan.volumes(), m)
                _dual_tally(rep, fit.polynomial == kolchin_polynomial(LatticeSet.of(m, seq.elems[:ell])),
                            {"check": "dual route", "r0": r0, "m": m, "ell": ell})
    rep.notes["mu_prefixes"] = prefixes
    return rep


def suite_gotzmann(seeds: int = 200, seed: int = 0, horizon: int = 10) -> SuiteReport:
    rep = SuiteReport("gotzmann")
    triggered = 0
    for E in random_sets(seeds, seed, 4, 6, 5):
        base = max(1, E.max_order())
        H = [hilbert_samuel(E, d) for d in range(base + horizon + 4)]
        for d in (base, base + 1, base + 2):
            if H[d + 1] != macaulay_bracket(H[d], d):
                continue
            triggered += 1
            for s in range(d, d + horizon + 1):
                rep.record(H[s + 1] == macaulay_bracket(H[s], s), {"set": E, "d": d, "s": s})
    rep.notes["equality_starts"] = triggered
    return rep


def suite_hs_connectivity(seeds: int = 200, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("hs-connectivity")
    disconnected = 0
    for E in random_sets(seeds, seed, 4, 6, 5):
        for d in range(2, E.max_order() + 3):
            if connectivity_check(E, d).connected:
                continue
            disconnected += 1
            H_prev, H_d = hilbert_samuel(E, d - 1), hilbert_samuel(E, d)
            rep.record(H_d < macaulay_bracket(H_prev, d - 1), {"set": E, "d": d})
    rep.notes["disconnected_cases"] = disconnected
    return rep


def suite_lemma_rep(a_max: int = 200, d_max: int = 4, m_max: int = 5) -> SuiteReport:
    rep = SuiteReport("lemma-rep")
    part1 = oracle.exhaustive_lemma_check("superadditive", a_max=a_max, d_max=d_max)
    part2 = oracle.exhaustive_lemma_check("full-block-split", m_max=m_max, d_max=d_max)
    rep.absorb(part1)
    rep.absorb(part2)
    rep.notes = {"superadditive": part1.checked, "full-block-split": part2.checked}
    return rep


def suite_lemma_technical(t_max: int = 4, s_max: int = 4, m_max: int = 3, d_max: int = 3) -> SuiteReport:
    rep = SuiteReport("lemma-technical")
    rep.absorb(oracle.exhaustive_lemma_check("block-domination", t_max=t_max, s_max=s_max,
                                             m_max=m_max, d_max=d_max))
    return rep


def suite_techcon(t_max: int = 4, s_max: int = 4, m_max: int = 3, d_max: int = 3) -> SuiteReport:
    rep = SuiteReport("techcon")
    rep.absorb(oracle.exhaustive_lemma_check("block-rigidity", t_max=t_max, s_max=s_max,
                                             m_max=m_max, d_max=d_max))
    return rep


def suite_ontheco(seeds: int = 200, seed: int = 0) -> SuiteReport:
    """Coefficient sums against powers of the summed minimal orders.

    The random generator never returns the empty set; there the sums are all 1
    while D^j = 0 for j >= 1, which is noted rather than counted.
    """
    rep = SuiteReport("ontheco")
    for E in random_sets(seeds, seed, 4, 5, 5):
        p = kolchin_polynomial(E)
        D = order_weight(E)
        for j, S in enumerate(coefficient_sums(p, E.m)):
            rep.record(S <= D**j, {"set": E, "j": j, "S": S, "D": D})
        dual_route(E, rep)
    rep.notes["empty_set"] = "S_j = 1 for all j while D = 0; the bound holds only for j = 0"
    return rep


def suite_mu_consistency(r_max: int = 6, ms=(2, 3), cap: Cap | None = None) -> SuiteReport:
    rep = SuiteReport("mu-consistency")
    conventions = {f"{k}/{z}": True for k in ("plain", "plus-one") for z in ("literal", "alt")}
    lower_terms_differ = 0
    prefixes = 0
    for m in ms:
        for r0 in range(1, r_max + 1):
            seq = build_mu(r0, m)
            if r0 <= 4:
                rep.record(list(seq.elems) == oracle.mu_by_definition(r0, m),
                           {"check": "rules vs definition", "r0": r0, "m": m})
            rep.record(sum(seq.last) + 1 == C(r0, m, 1, cap), {"check": "terminal order", "r0": r0, "m": m})
            vol = vol_mu(seq)
            rep.record(vol == upsilon_alg(r0, m, cap), {"check": "vol vs upsilon", "r0": r0, "m": m})
            for key in conventions:
                k, z = key.split("/")
                conventions[key] &= nu(m, r0, cap, reading=k, zero_one=z) == vol
            for _, ell, scan in _mu_prefix_walk(r0, m, extra=2):
                prefixes += 1
                exact = kolchin_polynomial(seq.as_set(ell))
                closed = omega_mu_prefix(seq, ell)
                rep.record((exact.degree, exact.leading) == (closed.degree, closed.leading),
                           {"check": "prefix leading term", "r0": r0, "m": m, "ell": ell})
                lower_terms_differ += exact != closed
            rep.record(scan.compressed(), {"check": "compressed", "r0": r0, "m": m})
            rep.record(scan.hilbert()[sum(seq.last)] == 0, {"check": "saturation", "r0": r0, "m": m})
            rep.record(exact == closed, {"check": "full sequence closed form", "r0": r0, "m": m})
            _dual_tally(rep, oracle.fit_numerical_polynomial(scan.volumes(), m).polynomial == exact,
                        {"check": "dual route", "r0": r0, "m": m})
    winners = sorted(k for k, v in conventions.items() if v)
    rep.record(bool(winners), {"check": "some nu convention matches vol"})
    rep.notes.update({
        "nu_conventions_matching_vol": winners,
        "nu_convention_used": "plain/literal",
        "prefixes": prefixes,
        "prefixes_where_closed_form_lower_terms_differ": lower_terms_differ,
    })
    return rep


def suite_bounds_agreement(r_max: int = 5, ms=(2, 3), n_max: int = 2, cap: Cap | None = None) -> SuiteReport:
    rep = SuiteReport("bounds-agreement")
    # the grid's staircases are either tiny (<= 1525 elements) or millions long,
    # so a 10^5 step budget only shortens the refusals
    cap = cap or Cap(steps=10**5)
    skipped = 0
    minus_one_mismatch = 0
    for m in ms:
        for n in range(1, n_max + 1):
            for r in range(1, r_max + 1):
                for tau in range(m):
                    try:
                        value, _ = m_frak(r, m, n, tau, cap)
                        omega = omega_alg(r, m, n, tau, cap)
                        b = B(r, m, n, m - tau, cap)
                    except CapExceeded:
                        skipped += 1
                        continue
                    rep.record(value == omega == b, {"r": r, "m": m, "n": n, "tau": tau,
                                                     "M": value, "Omega": omega, "B": b})
                    if m - tau >= 3:
                        minus_one_mismatch += B(r, m, n, m - tau, cap, reading="minus-one") != value
                try:
                    blocks = build_concatenated(r, m, n, cap)
                except CapExceeded:
                    skipped += 1
                    continue
                bound = typical_dim_bound(r, m, n, 0, cap)
                rep.record(bound.value == blocks.vol(), {"check": "a_0 bound vs volumes", "r": r, "m": m, "n": n})
    for r in range(1, r_max + 2):
        rep.record(typical_dim_bound(r, 3, 1, 1, cap).value == 3 * 2 ** (r - 1) - 2, {"check": "m=3 tau=1", "r": r})
        closed = sum(9 * (4**i - 2**i) for i in range(r)) + 2 * r
        rep.record(typical_dim_bound(r, 3, 1, 0, cap).value == closed, {"check": "m=3 tau=0", "r": r})
    rep.notes = {"skipped_over_cap": skipped, "B_reading": "minus-two",
                 "minus_one_reading_mismatches": minus_one_mismatch}
    return rep


SUITES = {
    "macaulay": suite_macaulay,
    "gotzmann": suite_gotzmann,
    "hs-connectivity": suite_hs_connectivity,
    "lemma-rep": suite_lemma_rep,
    "lemma-technical": suite_lemma_technical,
    "techcon": suite_techcon,
    "ontheco": suite_ontheco,
    "mu-consistency": suite_mu_consistency,
    "bounds-agreement": suite_bounds_agreement,
}

SEEDED = {"macaulay", "gotzmann", "hs-connectivity", "ontheco"}


def run_suite(name: str, seed: int = 0, seeds: int = 200) -> SuiteReport:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    if name in SEEDED:
        return fn(seeds=seeds, seed=seed)
    return fn()
