"""Name-similarity scoring.

Two scorers live here. The primary one treats a claimed author name as
correct to the degree that it is a contiguous substring of a true author
name, scored by the character-length ratio. The second is a weighted
first/middle/last name matcher (weights 2:1:3) used by the comparison
baseline.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .corpus import FactRecord, ObjectId, TrueFact, Website

FIRST_WEIGHT = 2.0
MIDDLE_WEIGHT = 1.0
LAST_WEIGHT = 3.0

_PART_WEIGHTS = {"first": FIRST_WEIGHT, "middle": MIDDLE_WEIGHT, "last": LAST_WEIGHT}


@dataclass(frozen=True)
class NameMatch:
    """Best containing true author for one claimed name, with its ratio."""

    claim_name: str
    matched_true_name: str | None
    ratio: float


def char_length(name: str) -> int:
    """Character count of a normalized name, internal spaces included."""
    return len(name)


def best_name_match(claim_name: str, true_authors: Iterable[str]) -> NameMatch:
    """Find the true author containing ``claim_name`` with the highest ratio.

    The ratio is len(claim)/len(true); ties break toward the
    lexicographically smallest true name. No containment anywhere gives
    ratio 0 and no match; an empty claim never matches.
    """
    if not claim_name:
        return NameMatch(claim_name, None, 0.0)
    matched: str | None = None
    best = 0.0
    for true_name in true_authors:
        if not true_name or claim_name not in true_name:
            continue
        ratio = char_length(claim_name) / char_length(true_name)
        if ratio > best or (ratio == best and matched is not None and true_name < matched):
            matched, best = true_name, ratio
    return NameMatch(claim_name, matched, best)


def name_pcf(claim_name: str, true_authors: Iterable[str]) -> float:
    """Probability that one claimed name is correct, in [0, 1].

    1.0 exactly when the claim equals a true author; 0 when no true author
    contains it as a contiguous substring.
    """
    return best_name_match(claim_name, true_authors).ratio


def fact_pcf(claim_authors: list[str], true_authors: list[str]) -> float:
    """Mean per-name correctness over a claim's author list."""
    if not claim_authors:
        return 0.0
    return sum(name_pcf(name, true_authors) for name in claim_authors) / len(
        claim_authors
    )


def website_sim(
    website: Website,
    facts: Iterable[FactRecord],
    kb: Mapping[ObjectId, TrueFact],
) -> float:
    """Mean claim-to-truth similarity over a website's facts.

    Facts whose objects are missing from the knowledge base do not enter
    the average; a website with no scorable facts gets 0.
    """
    scores = [
        fact_pcf(fact.authors, kb[fact.object].authors)
        for fact in facts
        if fact.fact_id in website.fact_ids and fact.object in kb
    ]
    if not scores:
        return 0.0
    return sum(scores) / len(scores)


def levenshtein(a: str, b: str) -> int:
    """Edit distance via the classic two-row dynamic program."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(
                min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + (ca != cb))
            )
        previous = current
    return previous[-1]


def split_name_parts(name: str) -> dict[str, str]:
    """Split a normalized name into first/middle/last parts.

    One token is a bare last name; two tokens are first+last; with three or
    more, everything interior joins into the middle part.
    """
    tokens = name.split()
    if not tokens:
        return {}
    if len(tokens) == 1:
        return {"last": tokens[0]}
    if len(tokens) == 2:
        return {"first": tokens[0], "last": tokens[1]}
    return {"first": tokens[0], "middle": " ".join(tokens[1:-1]), "last": tokens[-1]}


def _part_credit(claim_part: str | None, true_part: str) -> float:
    # Full credit on exact match; half credit on a near miss (substring
    # either way, or within two edits); otherwise nothing.
    if not claim_part:
        return 0.0
    if claim_part == true_part:
        return 1.0
    if claim_part in true_part or true_part in claim_part:
        return 0.5
    if levenshtein(claim_part, true_part) <= 2:
        return 0.5
    return 0.0


def _weighted_name_score(claim_name: str, true_name: str) -> float:
    true_parts = split_name_parts(true_name)
    if not true_parts:
        return 0.0
    claim_parts = split_name_parts(claim_name)
    total = sum(_PART_WEIGHTS[part] for part in true_parts)
    granted = sum(
        _PART_WEIGHTS[part] * _part_credit(claim_parts.get(part), value)
        for part, value in true_parts.items()
    )
    return granted / total


def tf_name_score(claim_authors: list[str], true_authors: list[str]) -> float:
    """Weighted first/middle/last matching score in [0, 1].

    Each claim author is paired with the true author giving it the highest
    part-weighted score (first 2, middle 1, last 3), then scores average
    over the claim's authors.
    """
    if not claim_authors or not true_authors:
        return 0.0
    total = 0.0
    for claim_name in claim_authors:
        total += max(_weighted_name_score(claim_name, t) for t in true_authors)
    return total / len(claim_authors)
