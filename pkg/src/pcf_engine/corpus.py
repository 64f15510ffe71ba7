"""Domain types, corpus ingestion, and state persistence.

The corpus is a ground-truth knowledge base (one true author list per ISBN)
plus a table of claims made by websites. Claims that agree on the same
object and the same canonical author list are merged into a single fact
with several providers.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass, field
from pathlib import Path

STATE_SCHEMA_VERSION = 1

CLAIMS_HEADER = ["website_url", "isbn", "authors", "publisher", "price", "quantity"]

# An object is identified by its ISBN string.
ObjectId = str


class CorpusError(Exception):
    """An input file violates the knowledge-base or claims format."""


class StateError(Exception):
    """A state file is unreadable, corrupt, or has the wrong schema version."""


_DROPPED_PUNCT = str.maketrans("", "", ".,")
_WHITESPACE = re.compile(r"\s+")


def normalize_name(raw: str) -> str:
    """Lowercase, drop periods and commas, collapse whitespace runs."""
    return _WHITESPACE.sub(" ", raw.lower().translate(_DROPPED_PUNCT)).strip()


@dataclass
class TrueFact:
    """Ground-truth attribute values for one object."""

    object: ObjectId
    authors: list[str]
    title: str = ""
    publisher: str = ""
    price: float = 0.0


@dataclass
class Claim:
    """One website's asserted author list for one object."""

    website: str
    object: ObjectId
    authors: list[str]
    publisher: str | None = None
    price: float | None = None
    quantity: int | None = None


@dataclass
class FactRecord:
    """A deduplicated distinct fact: object plus canonical author list.

    ``authors`` is the canonical key form (normalized names, sorted), and
    ``providers`` holds the ids of every website asserting this fact.
    """

    fact_id: int
    object: ObjectId
    authors: list[str]
    providers: set[int] = field(default_factory=set)
    unknown_object: bool = False
    pcf: float = 0.0
    confidence: float = 0.0
    adjusted_confidence: float = 0.0
    confidence_score: float = 0.0
    adjusted_score: float = 0.0


@dataclass
class Website:
    id: int
    url: str
    trust: float = 0.0
    fact_ids: set[int] = field(default_factory=set)


@dataclass
class EngineConfig:
    epsilon: float = 0.4
    convergence_tol: float = 1e-6
    max_epochs: int = 10
    confidence_clamp: float = 1e-10
    seed: int = 0


@dataclass
class TrustState:
    """Full engine state: immutable snapshot between epochs."""

    websites: dict[str, Website] = field(default_factory=dict)
    facts: dict[int, FactRecord] = field(default_factory=dict)
    kb: dict[ObjectId, TrueFact] = field(default_factory=dict)
    epoch: int = 0
    config: EngineConfig = field(default_factory=EngineConfig)
    # Per-method url->trust tables recorded by engine/baseline runs; queries
    # against a method that has no entry here fail as stale.
    method_trusts: dict[str, dict[str, float]] = field(default_factory=dict)


def canonical_authors(authors: list[str]) -> tuple[str, ...]:
    """Canonical fact key: normalized author names sorted lexicographically."""
    return tuple(sorted(authors))


def load_knowledge_base(path: str | Path) -> dict[ObjectId, TrueFact]:
    """Read a JSON-Lines knowledge base, one object per line.

    Author names are normalized on load. Duplicate ISBNs, empty author
    lists, and duplicate author names within a record are rejected.
    """
    kb: dict[ObjectId, TrueFact] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{path}: line {lineno}: invalid JSON ({exc.msg})")
            if not isinstance(record, dict):
                raise CorpusError(f"{path}: line {lineno}: expected a JSON object")
            isbn = record.get("isbn")
            if not isinstance(isbn, str) or not isbn.strip():
                raise CorpusError(f"{path}: line {lineno}: missing or empty isbn")
            isbn = isbn.strip()
            if isbn in kb:
                raise CorpusError(f"{path}: line {lineno}: duplicate isbn {isbn}")
            raw_authors = record.get("authors")
            if not isinstance(raw_authors, list) or not raw_authors:
                raise CorpusError(f"{path}: line {lineno}: empty author list")
            authors = []
            for raw in raw_authors:
                name = normalize_name(str(raw))
                if not name:
                    raise CorpusError(f"{path}: line {lineno}: blank author name")
                if name in authors:
                    raise CorpusError(
                        f"{path}: line {lineno}: duplicate author name {name!r}"
                    )
                authors.append(name)
            price = record.get("price", 0.0)
            if not isinstance(price, (int, float)) or price < 0:
                raise CorpusError(f"{path}: line {lineno}: price must be non-negative")
            kb[isbn] = TrueFact(
                object=isbn,
                authors=authors,
                title=str(record.get("title", "")),
                publisher=str(record.get("publisher", "")),
                price=float(price),
            )
    return kb


def load_claims(path: str | Path) -> list[Claim]:
    """Read a claims CSV (header ``website_url,isbn,authors,...``).

    The authors column is semicolon-separated; names are normalized and
    rows whose author list comes out empty are rejected with their row
    number.
    """
    claims: list[Claim] = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            return []
        if [h.strip() for h in header] != CLAIMS_HEADER:
            raise CorpusError(
                f"{path}: bad header; expected {','.join(CLAIMS_HEADER)}"
            )
        for row_num, row in enumerate(reader, start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(CLAIMS_HEADER):
                raise CorpusError(
                    f"{path}: row {row_num}: expected {len(CLAIMS_HEADER)} columns, got {len(row)}"
                )
            website, isbn, authors_field, publisher, price_field, quantity_field = row
            website = website.strip()
            isbn = isbn.strip()
            if not website:
                raise CorpusError(f"{path}: row {row_num}: empty website_url")
            if not isbn:
                raise CorpusError(f"{path}: row {row_num}: empty isbn")
            authors = [
                name
                for name in (normalize_name(part) for part in authors_field.split(";"))
                if name
            ]
            if not authors:
                raise CorpusError(f"{path}: row {row_num}: empty author list")
            try:
                price = float(price_field) if price_field.strip() else None
            except ValueError:
                raise CorpusError(f"{path}: row {row_num}: bad price {price_field!r}")
            try:
                quantity = int(quantity_field) if quantity_field.strip() else None
            except ValueError:
                raise CorpusError(
                    f"{path}: row {row_num}: bad quantity {quantity_field!r}"
                )
            claims.append(
                Claim(
                    website=website,
                    object=isbn,
                    authors=authors,
                    publisher=publisher.strip() or None,
                    price=price,
                    quantity=quantity,
                )
            )
    return claims


def build_fact_table(
    claims: list[Claim],
) -> tuple[dict[str, Website], dict[int, FactRecord]]:
    """Merge claims into distinct facts and provider websites.

    Claims with the same (object, canonical author list) collapse into one
    fact; exact duplicate claims from the same website collapse silently.
    Website and fact ids follow first appearance order, so the table is
    deterministic for a given claims list.
    """
    websites: dict[str, Website] = {}
    facts: dict[int, FactRecord] = {}
    by_key: dict[tuple[ObjectId, tuple[str, ...]], FactRecord] = {}
    for claim in claims:
        site = websites.get(claim.website)
        if site is None:
            site = Website(id=len(websites) + 1, url=claim.website)
            websites[claim.website] = site
        key = (claim.object, canonical_authors(claim.authors))
        fact = by_key.get(key)
        if fact is None:
            fact = FactRecord(
                fact_id=len(facts) + 1, object=claim.object, authors=list(key[1])
            )
            facts[fact.fact_id] = fact
            by_key[key] = fact
        fact.providers.add(site.id)
        site.fact_ids.add(fact.fact_id)
    return websites, facts


def build_state(
    kb: dict[ObjectId, TrueFact],
    claims: list[Claim],
    config: EngineConfig | None = None,
) -> TrustState:
    """Assemble a fresh state with all trust and confidence fields at zero."""
    websites, facts = build_fact_table(claims)
    for fact in facts.values():
        fact.unknown_object = fact.object not in kb
    return TrustState(
        websites=websites, facts=facts, kb=kb, config=config or EngineConfig()
    )


def _state_document(state: TrustState) -> dict:
    return {
        "pcf_state_version": STATE_SCHEMA_VERSION,
        "epoch": state.epoch,
        "config": {
            "epsilon": state.config.epsilon,
            "convergence_tol": state.config.convergence_tol,
            "max_epochs": state.config.max_epochs,
            "confidence_clamp": state.config.confidence_clamp,
            "seed": state.config.seed,
        },
        "kb": [
            {
                "isbn": tf.object,
                "title": tf.title,
                "authors": tf.authors,
                "publisher": tf.publisher,
                "price": tf.price,
            }
            for tf in (state.kb[k] for k in sorted(state.kb))
        ],
        "websites": [
            {
                "id": w.id,
                "url": w.url,
                "trust": w.trust,
                "fact_ids": sorted(w.fact_ids),
            }
            for w in sorted(state.websites.values(), key=lambda w: w.id)
        ],
        "facts": [
            {
                "fact_id": f.fact_id,
                "isbn": f.object,
                "authors": f.authors,
                "providers": sorted(f.providers),
                "unknown_object": f.unknown_object,
                "pcf": f.pcf,
                "confidence": f.confidence,
                "adjusted_confidence": f.adjusted_confidence,
                "confidence_score": f.confidence_score,
                "adjusted_score": f.adjusted_score,
            }
            for f in (state.facts[k] for k in sorted(state.facts))
        ],
        "method_trusts": {
            method: dict(sorted(trusts.items()))
            for method, trusts in sorted(state.method_trusts.items())
        },
    }


def save_state(state: TrustState, path: str | Path) -> None:
    """Serialize the state to a canonical JSON document.

    Keys and id-ordered lists are sorted so saving the same state twice
    yields byte-identical files; floats keep full round-trip precision.
    """
    text = json.dumps(_state_document(state), sort_keys=True, indent=2)
    Path(path).write_text(text + "\n", encoding="utf-8")


def load_state(path: str | Path) -> TrustState:
    """Rebuild a TrustState from a file written by :func:`save_state`."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise StateError(f"{path}: not valid JSON ({exc.msg})")
    if not isinstance(doc, dict):
        raise StateError(f"{path}: not a state document")
    version = doc.get("pcf_state_version")
    if version != STATE_SCHEMA_VERSION:
        raise StateError(
            f"{path}: schema version {version!r}, expected {STATE_SCHEMA_VERSION}"
        )
    try:
        cfg = doc["config"]
        config = EngineConfig(
            epsilon=float(cfg["epsilon"]),
            convergence_tol=float(cfg["convergence_tol"]),
            max_epochs=int(cfg["max_epochs"]),
            confidence_clamp=float(cfg["confidence_clamp"]),
            seed=int(cfg["seed"]),
        )
        kb = {
            rec["isbn"]: TrueFact(
                object=rec["isbn"],
                authors=list(rec["authors"]),
                title=rec["title"],
                publisher=rec["publisher"],
                price=float(rec["price"]),
            )
            for rec in doc["kb"]
        }
        websites = {
            rec["url"]: Website(
                id=int(rec["id"]),
                url=rec["url"],
                trust=float(rec["trust"]),
                fact_ids=set(rec["fact_ids"]),
            )
            for rec in doc["websites"]
        }
        facts = {
            int(rec["fact_id"]): FactRecord(
                fact_id=int(rec["fact_id"]),
                object=rec["isbn"],
                authors=list(rec["authors"]),
                providers=set(rec["providers"]),
                unknown_object=bool(rec["unknown_object"]),
                pcf=float(rec["pcf"]),
                confidence=float(rec["confidence"]),
                adjusted_confidence=float(rec["adjusted_confidence"]),
                confidence_score=float(rec["confidence_score"]),
                adjusted_score=float(rec["adjusted_score"]),
            )
            for rec in doc["facts"]
        }
        method_trusts = {
            method: {url: float(t) for url, t in trusts.items()}
            for method, trusts in doc.get("method_trusts", {}).items()
        }
    except (KeyError, TypeError, ValueError) as exc:
        raise StateError(f"{path}: malformed state document ({exc})")
    return TrustState(
        websites=websites,
        facts=facts,
        kb=kb,
        epoch=int(doc["epoch"]),
        config=config,
        method_trusts=method_trusts,
    )
