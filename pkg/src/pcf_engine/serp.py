"""Trust-ordered result listings for ISBN and title queries."""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import TrustState, normalize_name


class StaleMethodError(Exception):
    """The requested ranking method has not been computed on this state."""


@dataclass(frozen=True)
class SerpRow:
    rank: int
    url: str
    trust: float
    object: str
    claimed_authors: tuple[str, ...]
    confidence: float


def rank_websites(state: TrustState, method: str = "pcf") -> list[tuple[str, float]]:
    """All websites ordered by trust descending, url ascending on ties."""
    trusts = state.method_trusts.get(method)
    if trusts is None:
        raise StaleMethodError(
            f"method {method!r} has not been run on this state"
        )
    return sorted(trusts.items(), key=lambda item: (-item[1], item[0]))


def query(
    state: TrustState, needle: str, method: str = "pcf", top_k: int = 10
) -> list[SerpRow]:
    """Rank the providers of objects matching an ISBN or title substring.

    An object matches when its ISBN equals the needle or its normalized
    title contains the normalized needle. One row is emitted per
    (website, fact) pair on a matched object, in ranking order, truncated
    to ``top_k``. No matching object yields an empty list.
    """
    needle = needle.strip()
    needle_norm = normalize_name(needle)
    matched = set()
    for isbn, truth in state.kb.items():
        if isbn == needle or (needle_norm and needle_norm in normalize_name(truth.title)):
            matched.add(isbn)
    for fact in state.facts.values():
        if fact.object == needle:
            matched.add(fact.object)
    if not matched:
        return []

    rows: list[SerpRow] = []
    for url, trust in rank_websites(state, method):
        site = state.websites.get(url)
        if site is None:
            continue
        for fact_id in sorted(site.fact_ids):
            fact = state.facts[fact_id]
            if fact.object not in matched:
                continue
            rows.append(
                SerpRow(
                    rank=len(rows) + 1,
                    url=url,
                    trust=trust,
                    object=fact.object,
                    claimed_authors=tuple(fact.authors),
                    confidence=fact.adjusted_confidence,
                )
            )
            if len(rows) >= top_k:
                return rows
    return rows


def serp_tsv(rows: list[SerpRow]) -> str:
    """Tab-separated listing: rank, url, trust, isbn, authors, confidence."""
    lines = [
        "{}\t{}\t{:.6f}\t{}\t{}\t{:.6f}".format(
            row.rank,
            row.url,
            row.trust,
            row.object,
            ";".join(row.claimed_authors),
            row.confidence,
        )
        for row in rows
    ]
    if not lines:
        return ""
    return "\n".join(lines) + "\n"
