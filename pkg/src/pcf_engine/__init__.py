"""Trustworthiness ranking of fact-providing websites against a knowledge base."""

from .baselines import BaselineResult, pcf_run, truthfinder_run, voting_run
from .corpus import (
    Claim,
    CorpusError,
    EngineConfig,
    FactRecord,
    StateError,
    TrueFact,
    TrustState,
    Website,
    build_fact_table,
    build_state,
    load_claims,
    load_knowledge_base,
    load_state,
    normalize_name,
    save_state,
)
from .engine import (
    EpochReport,
    ImplicationTerm,
    adjust_confidence,
    adjusted_score,
    assign_pcf,
    confidence_score,
    damp,
    fact_confidence,
    implication_factor,
    run,
    run_epoch,
    update_trust,
)
from .generator import GenSpec, generate_claims, generate_kb
from .serp import SerpRow, StaleMethodError, query, rank_websites, serp_tsv
from .similarity import (
    NameMatch,
    best_name_match,
    char_length,
    fact_pcf,
    name_pcf,
    tf_name_score,
    website_sim,
)

__version__ = "0.1.0"
