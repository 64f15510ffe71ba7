import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pcf_engine import corpus, engine, similarity

from conftest import CORE_ISBN, CORE_TRUTH, W1, W2, make_claim

probabilities = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


def exact_copy_state(n_sites=3, kb=None):
    kb = kb or {
        "1000": corpus.TrueFact(object="1000", authors=["ann example", "bo sample"]),
        "1001": corpus.TrueFact(object="1001", authors=["cy other"]),
    }
    claims = []
    for i in range(n_sites):
        url = f"http://copy{i}.example.com"
        for isbn, truth in kb.items():
            claims.append(make_claim(url, isbn, truth.authors))
    return engine.assign_pcf(corpus.build_state(kb, claims))


class TestAssignPcf:
    def test_exact_copy_fact(self, core_java_kb):
        state = corpus.build_state(
            core_java_kb, [make_claim(W1, CORE_ISBN, CORE_TRUTH)]
        )
        state = engine.assign_pcf(state)
        assert state.facts[1].pcf == 1.0

    def test_worked_example_pair(self, core_java_state):
        state = engine.assign_pcf(core_java_state)
        by_authors = {tuple(f.authors): f.pcf for f in state.facts.values()}
        assert by_authors[("cay s horstmenn", "gary")] == pytest.approx((1 + 1 / 3) / 2)
        assert by_authors[("corne", "horstmenn")] == pytest.approx(0.5083333, abs=1e-6)

    def test_unknown_object_scores_zero(self, core_java_kb):
        state = corpus.build_state(
            core_java_kb, [make_claim(W1, "missing", ["cay s horstmenn"])]
        )
        state = engine.assign_pcf(state)
        assert state.facts[1].pcf == 0.0
        assert state.facts[1].unknown_object

    def test_pcf_unchanged_by_epochs(self, core_java_state):
        state = engine.assign_pcf(core_java_state)
        before = {fid: f.pcf for fid, f in state.facts.items()}
        state, _ = engine.run_epoch(state)
        state, _ = engine.run_epoch(state)
        assert {fid: f.pcf for fid, f in state.facts.items()} == before


class TestUpdateTrust:
    def test_fresh_exact_copy_site_reaches_one(self):
        updated = engine.update_trust(exact_copy_state())
        assert all(w.trust == 1.0 for w in updated.websites.values())

    def test_fresh_worked_example(self, core_java_state):
        state = engine.update_trust(engine.assign_pcf(core_java_state))
        assert state.websites[W2].trust == pytest.approx(0.5083333, abs=1e-6)
        assert state.websites[W1].trust == pytest.approx(2 / 3)

    def test_second_epoch_averages_adjusted_confidence(self, core_java_kb):
        state = corpus.build_state(
            core_java_kb,
            [
                make_claim(W1, CORE_ISBN, CORE_TRUTH),
                make_claim(W1, "other", ["x y"]),
            ],
        )
        state = engine.assign_pcf(state)
        site = state.websites[W1]
        site.trust = 0.9
        fact_ids = sorted(site.fact_ids)
        state.facts[fact_ids[0]].adjusted_confidence = 0.4
        state.facts[fact_ids[1]].adjusted_confidence = 0.8
        updated = engine.update_trust(state)
        assert updated.websites[W1].trust == pytest.approx(0.6)

    def test_site_without_facts_stays_zero(self, core_java_kb):
        state = corpus.build_state(core_java_kb, [make_claim(W1, CORE_ISBN, CORE_TRUTH)])
        state.websites["http://empty.example.com"] = corpus.Website(
            id=99, url="http://empty.example.com"
        )
        updated = engine.update_trust(engine.assign_pcf(state))
        assert updated.websites["http://empty.example.com"].trust == 0.0


class TestFactConfidence:
    def _fact(self, providers):
        return corpus.FactRecord(fact_id=1, object="1", authors=["a b"], providers=providers)

    def _sites(self, trusts):
        return {
            i + 1: corpus.Website(id=i + 1, url=f"http://w{i}.com", trust=t)
            for i, t in enumerate(trusts)
        }

    def test_untrusted_providers(self):
        assert engine.fact_confidence(self._fact({1, 2}), self._sites([0.0, 0.0])) == 0.0

    def test_two_half_trusted_providers(self):
        s = engine.fact_confidence(self._fact({1, 2}), self._sites([0.5, 0.5]))
        assert s == pytest.approx(0.75)

    def test_fully_trusted_provider_is_clamped(self):
        s = engine.fact_confidence(self._fact({1}), self._sites([1.0]))
        assert s == 1.0 - 1e-10

    @given(
        trusts=st.lists(probabilities, min_size=1, max_size=5),
        bump_index=st.integers(min_value=0, max_value=4),
        bump=st.floats(min_value=0.0, max_value=1.0),
    )
    def test_monotone_in_provider_trust(self, trusts, bump_index, bump):
        bump_index %= len(trusts)
        raised = list(trusts)
        raised[bump_index] = min(1.0, raised[bump_index] + bump)
        fact = self._fact(set(range(1, len(trusts) + 1)))
        assert engine.fact_confidence(fact, self._sites(raised)) >= engine.fact_confidence(
            fact, self._sites(trusts)
        )

    @given(trusts=st.lists(probabilities, min_size=1, max_size=5))
    def test_adding_a_provider_never_decreases_confidence(self, trusts):
        fact = self._fact(set(range(1, len(trusts) + 1)))
        wider = self._fact(set(range(1, len(trusts) + 2)))
        sites = self._sites(trusts + [0.5])
        assert engine.fact_confidence(wider, sites) >= engine.fact_confidence(fact, sites)


class TestConfidenceScore:
    def test_zero(self):
        assert engine.confidence_score(0.0) == 0.0

    def test_three_quarters(self):
        assert engine.confidence_score(0.75) == pytest.approx(-math.log(0.25))

    def test_near_one(self):
        assert engine.confidence_score(1 - 1e-10) == pytest.approx(23.0258509, abs=1e-6)

    def test_unclamped_input_rejected(self):
        with pytest.raises(ValueError):
            engine.confidence_score(1.0)


class TestImplicationFactor:
    def test_difference_above_threshold(self):
        assert engine.implication_factor(0.7, 0.2, 0.4) == pytest.approx(0.1, abs=1e-12)

    def test_difference_equal_to_threshold(self):
        assert engine.implication_factor(0.6, 0.2, 0.4) == pytest.approx(0.4, abs=1e-12)

    def test_negative_difference(self):
        assert engine.implication_factor(0.2, 0.7, 0.4) == pytest.approx(0.9, abs=1e-12)

    def test_equal_probabilities_give_epsilon(self):
        assert engine.implication_factor(0.5, 0.5, 0.4) == pytest.approx(0.4)

    def test_zero_epsilon_gives_absolute_difference(self):
        assert engine.implication_factor(0.2, 0.7, 0.0) == pytest.approx(0.5)
        assert engine.implication_factor(0.7, 0.2, 0.0) == pytest.approx(0.5)

    @given(p1=probabilities, p2=probabilities, eps=probabilities)
    def test_pair_sum_identity_inside_threshold(self, p1, p2, eps):
        # Holds whenever |delta| <= eps, away from the delta == eps special
        # case which deliberately returns eps instead of |eps - delta|.
        delta = p1 - p2
        if abs(delta) > eps or abs(abs(delta) - eps) < 1e-6:
            return
        total = engine.implication_factor(p1, p2, eps) + engine.implication_factor(
            p2, p1, eps
        )
        assert total == pytest.approx(2 * eps, abs=1e-12)

    @given(p1=probabilities, p2=probabilities, epsilons=st.tuples(probabilities, probabilities))
    def test_slope_one_in_epsilon_for_negative_difference(self, p1, p2, epsilons):
        if p1 >= p2:
            return
        lo, hi = sorted(epsilons)
        rise = engine.implication_factor(p1, p2, hi) - engine.implication_factor(p1, p2, lo)
        assert rise == pytest.approx(hi - lo, abs=1e-12)


class TestAdjustConfidence:
    def _fact(self, fact_id, pcf, confidence, obj="1"):
        return corpus.FactRecord(
            fact_id=fact_id,
            object=obj,
            authors=[f"name {fact_id}"],
            providers={1},
            pcf=pcf,
            confidence=confidence,
        )

    def test_no_siblings(self):
        fact = self._fact(1, 0.5, 0.5)
        assert engine.adjust_confidence(fact, [], 0.4) == 0.5

    def test_single_sibling_contribution(self):
        fact = self._fact(1, 0.7, 0.5)
        sibling = self._fact(2, 0.2, 0.4)
        assert engine.adjust_confidence(fact, [sibling], 0.4) == pytest.approx(0.54)

    def test_equal_pcf_siblings(self):
        fact = self._fact(1, 0.5, 0.3)
        siblings = [self._fact(i, 0.5, 0.3) for i in (2, 3, 4)]
        s_prime = engine.adjust_confidence(fact, siblings, 0.4)
        assert s_prime - fact.confidence == pytest.approx(0.36)

    def test_other_object_facts_are_ignored(self):
        fact = self._fact(1, 0.7, 0.5)
        stranger = self._fact(2, 0.2, 0.4, obj="2")
        assert engine.adjust_confidence(fact, [stranger], 0.4) == 0.5

    def test_implication_terms_report_contributions(self):
        fact = self._fact(1, 0.7, 0.5)
        sibling = self._fact(2, 0.2, 0.4)
        (term,) = engine.implication_terms(fact, [sibling], 0.4)
        assert term.source_fact == 2
        assert term.target_fact == 1
        assert term.delta == pytest.approx(0.5)
        assert term.contribution == pytest.approx(0.04)


class TestDamp:
    def test_identity_below_one(self):
        assert engine.damp(0.85) == 0.85

    def test_one_power(self):
        assert engine.damp(3.7) == pytest.approx(0.37)

    def test_two_powers(self):
        assert engine.damp(12.0) == pytest.approx(0.12)

    def test_smallest_alpha_oracle(self):
        # Exhaustive search over alpha must agree with the implementation.
        for value in [0.0, 0.3, 1.0, 1.0001, 5.0, 9.999, 10.0, 123.456, 4096.0]:
            expected = next(
                value * 10.0**-alpha
                for alpha in range(0, 40)
                if value * 10.0**-alpha <= 1.0
            )
            assert engine.damp(value) == expected

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            engine.damp(-0.1)

    @given(st.floats(min_value=0.0, max_value=1e12, allow_nan=False))
    def test_idempotent_and_bounded(self, value):
        damped = engine.damp(value)
        assert 0.0 <= damped <= 1.0
        assert engine.damp(damped) == damped

    @given(st.floats(min_value=0.0, max_value=1.0, allow_nan=False))
    def test_identity_on_unit_interval(self, value):
        assert engine.damp(value) == value


class TestAdjustedScore:
    def test_half(self):
        assert engine.adjusted_score(0.5) == pytest.approx(0.6931, abs=1e-4)

    def test_zero(self):
        assert engine.adjusted_score(0.0) == 0.0

    def test_point_nine(self):
        assert engine.adjusted_score(0.9) == pytest.approx(2.3026, abs=1e-4)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            engine.adjusted_score(1.0)
        with pytest.raises(ValueError):
            engine.adjusted_score(-0.01)


class TestRunEpoch:
    def test_exact_copy_epoch_one(self):
        state, report = engine.run_epoch(exact_copy_state())
        assert all(w.trust == 1.0 for w in state.websites.values())
        assert all(f.adjusted_confidence == 1 - 1e-10 for f in state.facts.values())
        assert report.epoch == 1
        assert report.max_trust_delta == 1.0

    def test_empty_corpus_is_noop(self):
        state, report = engine.run_epoch(corpus.TrustState())
        assert report.max_trust_delta == 0.0
        assert report.converged
        assert state.epoch == 1

    def test_epoch_one_trust_matches_website_sim(self, core_java_state):
        # Independent route: recompute the mean of name-length ratios by hand.
        state = engine.assign_pcf(core_java_state)
        after, _ = engine.run_epoch(state)
        for url, site in after.websites.items():
            own = [state.facts[fid] for fid in site.fact_ids]
            assert site.trust == similarity.website_sim(site, own, state.kb)
            ratios = []
            for fact in own:
                per_name = []
                for claim_name in fact.authors:
                    best = 0.0
                    for true_name in state.kb[fact.object].authors:
                        if claim_name and claim_name in true_name:
                            best = max(best, len(claim_name) / len(true_name))
                    per_name.append(best)
                ratios.append(sum(per_name) / len(per_name))
            assert site.trust == pytest.approx(sum(ratios) / len(ratios))

    def test_second_epoch_trust_is_mean_of_damped_adjusted(self, core_java_state):
        state = engine.assign_pcf(core_java_state)
        first, _ = engine.run_epoch(state)
        second, _ = engine.run_epoch(first)
        for url, site in second.websites.items():
            expected = [first.facts[fid].adjusted_confidence for fid in site.fact_ids]
            assert site.trust == pytest.approx(sum(expected) / len(expected))

    def test_input_snapshot_untouched(self, core_java_state):
        state = engine.assign_pcf(core_java_state)
        trusts = {url: w.trust for url, w in state.websites.items()}
        engine.run_epoch(state)
        assert {url: w.trust for url, w in state.websites.items()} == trusts

    def test_deterministic_successor(self, core_java_state):
        state = engine.assign_pcf(core_java_state)
        a, _ = engine.run_epoch(state)
        b, _ = engine.run_epoch(state)
        assert a == b


class TestRun:
    def test_exact_copy_converges_in_two_epochs(self):
        state, reports = engine.run(exact_copy_state(), max_epochs=10, tol=1e-6)
        assert len(reports) == 2
        assert reports[-1].converged
        assert reports[-1].max_trust_delta == pytest.approx(1e-10, rel=1e-6)

    def test_single_epoch_cap(self, core_java_state):
        _, reports = engine.run(engine.assign_pcf(core_java_state), max_epochs=1)
        assert len(reports) == 1

    def test_zero_tolerance_runs_all_epochs(self):
        _, reports = engine.run(exact_copy_state(), max_epochs=4, tol=0.0)
        assert len(reports) == 4

    def test_rejects_zero_epochs(self, core_java_state):
        with pytest.raises(ValueError):
            engine.run(core_java_state, max_epochs=0)

    def test_overrides_recorded_in_config(self, core_java_state):
        state, _ = engine.run(engine.assign_pcf(core_java_state), max_epochs=3, tol=0.5)
        assert state.config.max_epochs == 3
        assert state.config.convergence_tol == 0.5


class TestEpochBounds:
    @given(seed=st.integers(min_value=0, max_value=50))
    def test_all_quantities_stay_in_unit_interval(self, seed):
        from pcf_engine import generator

        spec = generator.GenSpec(
            n_websites=3 + seed % 3,
            n_objects=2 + seed % 2,
            claims_per_site=2,
            corruption_rate=(seed % 10) / 10.0,
            seed=seed,
        )
        kb_records = generator.generate_kb(spec)
        kb = {b.object: b for b in kb_records}
        claims = generator.generate_claims(spec, kb_records)
        state = engine.assign_pcf(corpus.build_state(kb, claims))
        state, _ = engine.run(state, max_epochs=3, tol=0.0)
        for site in state.websites.values():
            assert 0.0 <= site.trust <= 1.0
        for fact in state.facts.values():
            assert 0.0 <= fact.confidence <= 1.0
            assert 0.0 <= fact.adjusted_confidence <= 1.0
            assert fact.confidence_score >= 0.0
            assert fact.adjusted_score >= 0.0
