"""The trust/confidence/implication iteration.

One epoch runs three stages over an immutable state snapshot and produces
a new snapshot:

1. every website's trust is updated (first epoch: mean correctness of its
   facts against the knowledge base; afterwards: mean adjusted confidence
   of its facts),
2. every fact's confidence is computed from its providers' trusts,
3. every fact's confidence is adjusted by the implication of sibling facts
   on the same object, damped back into [0, 1].

Iteration order is ascending website/fact id everywhere, so results are
bit-identical run to run.
"""

from __future__ import annotations

import copy
import math
from collections import defaultdict
from dataclasses import dataclass, replace
from time import perf_counter
from typing import Iterable, Mapping

from .corpus import FactRecord, TrustState, Website
from .similarity import fact_pcf

# Absolute tolerance for detecting the delta == epsilon implication case.
CASE2_TOL = 1e-9


@dataclass(frozen=True)
class ImplicationTerm:
    """One sibling fact's contribution to a target fact's adjusted confidence."""

    source_fact: int
    target_fact: int
    delta: float
    factor: float
    contribution: float


@dataclass(frozen=True)
class EpochReport:
    epoch: int
    max_trust_delta: float
    converged: bool
    trust_seconds: float
    confidence_seconds: float
    implication_seconds: float


def assign_pcf(state: TrustState) -> TrustState:
    """Score every fact's probability of correctness against the KB.

    Facts for objects missing from the knowledge base are flagged and get
    probability 0. The scores depend only on the KB, so they stay fixed
    across epochs.
    """
    nxt = copy.deepcopy(state)
    for fact_id in sorted(nxt.facts):
        fact = nxt.facts[fact_id]
        truth = nxt.kb.get(fact.object)
        fact.unknown_object = truth is None
        fact.pcf = fact_pcf(fact.authors, truth.authors) if truth else 0.0
    return nxt


def _update_trust_inplace(state: TrustState) -> float:
    """Stage 1: recompute every website's trust; returns the max |delta|.

    A website still at trust zero takes the initial branch: the mean stored
    probability of its facts on known objects (equal to its claim-to-truth
    similarity). Otherwise trust is the mean adjusted confidence of all its
    facts from the previous epoch. Websites with no facts keep trust 0.
    """
    max_delta = 0.0
    for site in sorted(state.websites.values(), key=lambda w: w.id):
        own = [state.facts[fid] for fid in sorted(site.fact_ids)]
        old = site.trust
        if not own:
            new = old
        elif old == 0.0:
            known = [f.pcf for f in own if not f.unknown_object]
            new = sum(known) / len(known) if known else 0.0
        else:
            new = sum(f.adjusted_confidence for f in own) / len(own)
        site.trust = new
        max_delta = max(max_delta, abs(new - old))
    return max_delta


def update_trust(state: TrustState) -> TrustState:
    """Run stage 1 alone on a copy of the state."""
    nxt = copy.deepcopy(state)
    _update_trust_inplace(nxt)
    return nxt


def fact_confidence(
    fact: FactRecord, websites_by_id: Mapping[int, Website], clamp: float = 1e-10
) -> float:
    """Confidence that a fact is correct given its providers' trusts.

    s(f) = 1 - prod(1 - t(w)) over providers, clamped to 1 - ``clamp`` so
    a fully trusted provider still yields a finite log score.
    """
    product = 1.0
    for provider_id in sorted(fact.providers):
        product *= 1.0 - websites_by_id[provider_id].trust
    return min(1.0 - product, 1.0 - clamp)


def confidence_score(s: float) -> float:
    """Log-domain confidence: -ln(1 - s), strictly increasing in s."""
    if not 0.0 <= s < 1.0:
        raise ValueError(f"confidence must lie in [0, 1) after clamping, got {s}")
    return -math.log(1.0 - s)


def implication_factor(p1: float, p2: float, epsilon: float) -> float:
    """Influence of a fact with probability ``p2`` on one with ``p1``.

    The factor measures how far the probability difference deviates from
    the allowed threshold: |epsilon - (p1 - p2)|, except that a positive
    difference equal to the threshold (within CASE2_TOL) yields exactly
    epsilon. The positivity guard keeps the negative-difference branch a
    pure affine function of epsilon.
    """
    delta = p1 - p2
    if delta > 0 and abs(delta - epsilon) < CASE2_TOL:
        return epsilon
    return abs(epsilon - delta)


def implication_terms(
    fact: FactRecord, same_object_facts: Iterable[FactRecord], epsilon: float
) -> list[ImplicationTerm]:
    """Contributions of sibling facts to ``fact``, in ascending sibling id."""
    terms = []
    for sibling in sorted(same_object_facts, key=lambda f: f.fact_id):
        if sibling.fact_id == fact.fact_id or sibling.object != fact.object:
            continue
        factor = implication_factor(fact.pcf, sibling.pcf, epsilon)
        terms.append(
            ImplicationTerm(
                source_fact=sibling.fact_id,
                target_fact=fact.fact_id,
                delta=fact.pcf - sibling.pcf,
                factor=factor,
                contribution=factor * sibling.confidence,
            )
        )
    return terms


def adjust_confidence(
    fact: FactRecord, same_object_facts: Iterable[FactRecord], epsilon: float
) -> float:
    """Confidence plus accumulated sibling implication, damped into [0, 1]."""
    total = fact.confidence
    for term in implication_terms(fact, same_object_facts, epsilon):
        total += term.contribution
    return damp(total)


def damp(s_prime: float) -> float:
    """Scale by the smallest power of ten bringing the value to at most 1.

    Identity for inputs already in [0, 1]; idempotent.
    """
    if s_prime < 0:
        raise ValueError(f"adjusted confidence must be non-negative, got {s_prime}")
    value = s_prime
    alpha = 0
    while value > 1.0:
        alpha += 1
        value = s_prime * 10.0**-alpha
    return value


def adjusted_score(s_prime: float) -> float:
    """Log-domain adjusted confidence: -ln(1 - s')."""
    if not 0.0 <= s_prime < 1.0:
        raise ValueError(
            f"adjusted confidence must lie in [0, 1) after clamping, got {s_prime}"
        )
    return -math.log(1.0 - s_prime)


def run_epoch(state: TrustState) -> tuple[TrustState, EpochReport]:
    """Execute one full three-stage pass, returning the successor snapshot."""
    nxt = copy.deepcopy(state)
    cfg = nxt.config
    by_id = {w.id: w for w in nxt.websites.values()}
    ordered_facts = [nxt.facts[fid] for fid in sorted(nxt.facts)]

    t0 = perf_counter()
    max_delta = _update_trust_inplace(nxt)
    t1 = perf_counter()

    for fact in ordered_facts:
        fact.confidence = fact_confidence(fact, by_id, cfg.confidence_clamp)
        fact.confidence_score = confidence_score(fact.confidence)
    t2 = perf_counter()

    groups: dict[str, list[FactRecord]] = defaultdict(list)
    for fact in ordered_facts:
        groups[fact.object].append(fact)
    for fact in ordered_facts:
        siblings = [f for f in groups[fact.object] if f.fact_id != fact.fact_id]
        s_prime = adjust_confidence(fact, siblings, cfg.epsilon)
        fact.adjusted_confidence = min(s_prime, 1.0 - cfg.confidence_clamp)
        fact.adjusted_score = adjusted_score(fact.adjusted_confidence)
    t3 = perf_counter()

    nxt.epoch += 1
    report = EpochReport(
        epoch=nxt.epoch,
        max_trust_delta=max_delta,
        converged=max_delta < cfg.convergence_tol,
        trust_seconds=t1 - t0,
        confidence_seconds=t2 - t1,
        implication_seconds=t3 - t2,
    )
    return nxt, report


def run(
    state: TrustState,
    max_epochs: int | None = None,
    tol: float | None = None,
) -> tuple[TrustState, list[EpochReport]]:
    """Repeat epochs until the largest trust change drops below ``tol``.

    ``max_epochs``/``tol`` default to the state's config and, when given,
    are recorded into the successor's config snapshot. A tolerance of 0
    runs exactly ``max_epochs`` epochs.
    """
    epochs = state.config.max_epochs if max_epochs is None else max_epochs
    tolerance = state.config.convergence_tol if tol is None else tol
    if epochs < 1:
        raise ValueError(f"max_epochs must be at least 1, got {epochs}")
    current = copy.deepcopy(state)
    current.config = replace(
        current.config, max_epochs=epochs, convergence_tol=tolerance
    )
    reports: list[EpochReport] = []
    for _ in range(epochs):
        current, report = run_epoch(current)
        reports.append(report)
        if report.max_trust_delta < tolerance:
            break
    return current, reports
