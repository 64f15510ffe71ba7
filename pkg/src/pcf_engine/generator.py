"""Seeded synthetic corpus generation with controllable corruption.

Stands in for a live bookseller crawl: emits a knowledge base of invented
books and a claims table where each website copies the true author lists,
corrupting each claim independently with a configurable probability.
"""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass
from pathlib import Path

from .corpus import Claim, TrueFact

FIRST_NAMES = [
    "alice", "bruno", "carla", "deepak", "elena", "farid", "grace", "henrik",
    "irene", "jorge", "kavya", "liam", "meera", "nadia", "oscar", "priya",
    "quentin", "rosa", "stefan", "tomas", "uma", "viktor", "wendy", "yusuf",
]
MIDDLE_NAMES = ["b", "c", "d", "g", "j", "k", "l", "m", "n", "p", "r", "s", "t", "v"]
LAST_NAMES = [
    "almeida", "bergstrom", "chatterjee", "dimitrov", "eriksson", "fontaine",
    "gallagher", "hashimoto", "ivanova", "jankowski", "kaufmann", "lindqvist",
    "moreau", "nakamura", "okafor", "petrov", "quispe", "rosenberg",
    "santana", "takahashi", "urbanski", "vasquez", "whitfield", "zimmerman",
]
TITLE_WORDS = [
    "applied", "complete", "essential", "modern", "practical", "advanced",
    "algorithms", "networks", "databases", "compilers", "statistics",
    "optimization", "systems", "analysis", "programming", "foundations",
    "handbook", "introduction", "principles", "patterns",
]
PUBLISHERS = [
    "north star press", "meridian books", "orchard house", "blue harbor",
    "summit academic", "lantern row",
]


@dataclass(frozen=True)
class GenSpec:
    """Parameters for one reproducible synthetic corpus."""

    n_websites: int
    n_objects: int
    claims_per_site: int
    corruption_rate: float
    seed: int = 0

    def validate(self) -> None:
        if self.n_websites < 1:
            raise ValueError("n_websites must be at least 1")
        if self.n_objects < 1:
            raise ValueError("n_objects must be at least 1")
        if self.claims_per_site < 1:
            raise ValueError("claims_per_site must be at least 1")
        if not 0.0 <= self.corruption_rate <= 1.0:
            raise ValueError("corruption_rate must lie in [0, 1]")


def random_author(rng: random.Random) -> str:
    parts = [rng.choice(FIRST_NAMES)]
    if rng.random() < 0.5:
        parts.append(rng.choice(MIDDLE_NAMES))
    parts.append(rng.choice(LAST_NAMES))
    return " ".join(parts)


def generate_kb(spec: GenSpec) -> list[TrueFact]:
    """Invent ``n_objects`` books with one to three distinct authors each."""
    spec.validate()
    rng = random.Random(spec.seed)
    books = []
    for i in range(spec.n_objects):
        authors: list[str] = []
        for _ in range(rng.randint(1, 3)):
            name = random_author(rng)
            while name in authors:
                name = random_author(rng)
            authors.append(name)
        title = " ".join(
            rng.choice(TITLE_WORDS) for _ in range(rng.randint(2, 4))
        ) + f" vol {i + 1}"
        books.append(
            TrueFact(
                object=str(9780000000000 + i),
                authors=authors,
                title=title,
                publisher=rng.choice(PUBLISHERS),
                price=round(rng.uniform(8.0, 150.0), 2),
            )
        )
    return books


def _truncate_tail(rng: random.Random, authors: list[str]) -> None:
    # Keeps the claim a prefix of the true name, so containment survives.
    idx = rng.randrange(len(authors))
    name = authors[idx]
    cut = rng.randint(1, 4)
    kept = name[: max(1, len(name) - cut)].rstrip()
    authors[idx] = kept or name[:1]


def _drop_middle_token(rng: random.Random, authors: list[str]) -> None:
    candidates = [i for i, name in enumerate(authors) if len(name.split()) >= 3]
    if not candidates:
        _truncate_tail(rng, authors)
        return
    idx = rng.choice(candidates)
    tokens = authors[idx].split()
    tokens.pop(rng.randrange(1, len(tokens) - 1))
    authors[idx] = " ".join(tokens)


def _drop_author(rng: random.Random, authors: list[str]) -> None:
    if len(authors) < 2:
        _truncate_tail(rng, authors)
        return
    authors.pop(rng.randrange(len(authors)))


def _replace_author(rng: random.Random, authors: list[str]) -> None:
    idx = rng.randrange(len(authors))
    name = random_author(rng)
    while name == authors[idx]:
        name = random_author(rng)
    authors[idx] = name


CORRUPTION_OPS = [_truncate_tail, _drop_middle_token, _drop_author, _replace_author]


def corrupt_authors(
    rng: random.Random, authors: list[str], rate: float
) -> list[str]:
    """Copy an author list, applying one random corruption with probability ``rate``."""
    out = list(authors)
    if rate > 0.0 and rng.random() < rate:
        rng.choice(CORRUPTION_OPS)(rng, out)
    return out


def generate_claims(spec: GenSpec, kb: list[TrueFact]) -> list[Claim]:
    """One claims row per (website, object) pair, objects assigned round-robin.

    Round-robin assignment keeps per-object provider counts uniform: with
    fewer objects than total claims, sites wrap around and overlap.
    """
    spec.validate()
    rng = random.Random(spec.seed + 1)
    claims = []
    for site_index in range(spec.n_websites):
        url = f"http://books-{site_index + 1:03d}.example.net/store"
        for j in range(spec.claims_per_site):
            book = kb[(site_index * spec.claims_per_site + j) % spec.n_objects]
            claims.append(
                Claim(
                    website=url,
                    object=book.object,
                    authors=corrupt_authors(rng, book.authors, spec.corruption_rate),
                    publisher=book.publisher,
                    price=book.price,
                    quantity=rng.randint(1, 40),
                )
            )
    return claims


def write_kb_file(path: str | Path, books: list[TrueFact]) -> None:
    lines = [
        json.dumps(
            {
                "isbn": book.object,
                "title": book.title,
                "authors": book.authors,
                "publisher": book.publisher,
                "price": book.price,
            },
            sort_keys=True,
        )
        for book in books
    ]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_claims_file(path: str | Path, claims: list[Claim]) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["website_url", "isbn", "authors", "publisher", "price", "quantity"])
    for claim in claims:
        writer.writerow(
            [
                claim.website,
                claim.object,
                ";".join(claim.authors),
                claim.publisher or "",
                "" if claim.price is None else repr(claim.price),
                "" if claim.quantity is None else str(claim.quantity),
            ]
        )
    Path(path).write_text(buffer.getvalue(), encoding="utf-8")
