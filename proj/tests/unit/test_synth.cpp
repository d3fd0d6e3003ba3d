#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "citelink/error.hpp"
#include "citelink/linkage.hpp"
#include "citelink/synth.hpp"

using namespace citelink;

namespace {

Corpus citing_of(const Corpus &c) {
    Corpus out;
    for (const auto &r : c) {
        if (r.kind == RecordKind::Citing)
            out.push_back(r);
    }
    return out;
}

// GS Search citing records against Scopus citing records, blocked by the
// planted target pairing.
MatchResult match_citing(const SynthCorpora &s, const MatchOptions &base = {}) {
    std::map<RecordId, RecordId> scopus_target_of;
    for (const auto &[gs, scopus] : s.truth.target_pairs)
        scopus_target_of[gs] = scopus;
    MatchOptions options = base;
    options.block = [scopus_target_of](const BibRecord &r) {
        auto target = *r.cites_target;
        if (auto it = scopus_target_of.find(target); it != scopus_target_of.end())
            target = it->second;
        return std::to_string(target.value);
    };
    return match_merge(citing_of(s.gs_search), citing_of(s.scopus), {}, options);
}

SynthConfig noiseless(std::uint64_t seed) {
    SynthConfig c;
    c.seed = seed;
    c.n_targets = 15;
    c.gs_metrics_only_rate = 0.0;
    return c;
}

} // namespace

TEST(Synth, SameSeedSameCorpora) {
    SynthConfig c = noiseless(9);
    c.duplicate_rate = 0.1;
    c.noise.diacritics = true;
    c.noise.year_shift = 1;
    const auto a = generate(c);
    const auto b = generate(c);
    EXPECT_EQ(a.gs_search, b.gs_search);
    EXPECT_EQ(a.gs_metrics, b.gs_metrics);
    EXPECT_EQ(a.scopus, b.scopus);
    EXPECT_EQ(a.truth.citing_pairs, b.truth.citing_pairs);
    c.seed = 10;
    EXPECT_NE(generate(c).gs_search, a.gs_search);
}

TEST(Synth, OverlapFractionIsPlanted) {
    SynthConfig c = noiseless(3);
    c.n_targets = 200;
    const auto s = generate(c);
    std::set<RecordId> gs_ids;
    for (const auto *c : {&s.gs_search, &s.gs_metrics})
        for (const auto &r : *c)
            gs_ids.insert(r.id);
    std::size_t gs_citing_works = 0;
    for (const auto &[id, category] : s.truth.categories)
        gs_citing_works += gs_ids.contains(id);
    const double share = static_cast<double>(s.truth.citing_pairs.size()) / static_cast<double>(gs_citing_works);
    EXPECT_NEAR(share, 0.5, 1.0 / static_cast<double>(gs_citing_works));
}

TEST(Synth, NoiselessFullOverlapRecoveredByFullKey) {
    SynthConfig c = noiseless(4);
    c.overlap_fraction = 1.0;
    c.gs_search_only_rate = 0.0;
    const auto s = generate(c);
    const auto r = match_citing(s);
    ASSERT_EQ(r.pairs.size(), s.truth.citing_pairs.size());
    std::set<std::pair<RecordId, RecordId>> truth(s.truth.citing_pairs.begin(), s.truth.citing_pairs.end());
    for (const auto &p : r.pairs) {
        EXPECT_TRUE(truth.contains({p.left_id, p.right_id}));
        EXPECT_EQ(p.key_used, KeyKind::Full);
    }
}

TEST(Synth, YearShiftStillMatchedAsLarge) {
    SynthConfig c = noiseless(5);
    c.overlap_fraction = 1.0;
    c.gs_search_only_rate = 0.0;
    c.noise.year_shift = 2;
    const auto s = generate(c);
    const auto r = match_citing(s);
    EXPECT_EQ(r.pairs.size(), s.truth.citing_pairs.size());
    for (const auto &p : r.pairs)
        EXPECT_EQ(p.similarity, Similarity::Large);
}

TEST(Synth, GroundTruthIsConsistent) {
    SynthConfig c = noiseless(6);
    c.duplicate_rate = 0.1;
    c.cross_language_rate = 0.2;
    c.delay = DelayModel::from_quartiles(60, 120, 365);
    const auto s = generate(c);
    const auto &t = s.truth;
    for (const auto &[a, b] : t.citing_pairs) {
        EXPECT_TRUE(t.all_ids.contains(a));
        EXPECT_TRUE(t.all_ids.contains(b));
        EXPECT_EQ(t.categories.at(a), CategoryValue::Both);
        EXPECT_EQ(t.categories.at(b), CategoryValue::Both);
    }
    for (const auto &d : t.duplicates) {
        EXPECT_TRUE(t.all_ids.contains(d.original));
        EXPECT_TRUE(t.all_ids.contains(d.duplicate));
    }
    for (const auto &[a, b] : t.cross_language_pairs)
        EXPECT_NE(std::find(t.citing_pairs.begin(), t.citing_pairs.end(), std::make_pair(a, b)), t.citing_pairs.end());
    EXPECT_EQ(t.planted_median_delay_days, 60);
    EXPECT_EQ(t.planted_q3_delay_days, 120);
}

TEST(Synth, ScopusListCoversOnlyScopusSources) {
    const auto s = generate(noiseless(7));
    EXPECT_FALSE(s.scopus_source_list.empty());
    EXPECT_FALSE(s.aip_table.empty());
}

TEST(Synth, InvalidConfigRejected) {
    SynthConfig c;
    c.overlap_fraction = 1.5;
    EXPECT_THROW(generate(c), ConfigError);
    c = {};
    c.citers_min = 5;
    c.citers_max = 2;
    EXPECT_THROW(generate(c), ConfigError);
}

TEST(DelayModel, QuartilesAndInverse) {
    const auto m = DelayModel::from_quartiles(60, 120, 365);
    EXPECT_DOUBLE_EQ(m.cdf(60), 0.5);
    EXPECT_DOUBLE_EQ(m.cdf(120), 0.75);
    EXPECT_DOUBLE_EQ(m.quantile(0.5), 60.0);
    EXPECT_NEAR(m.cdf(m.quantile(0.3)), 0.3, 1e-12);
    EXPECT_THROW(DelayModel({{0, 0.2}, {10, 1}}), ConfigError);
}

TEST(DelayCohort, EveryAgeEquallyPopulated) {
    DelayCohortConfig c;
    c.delay = DelayModel::from_quartiles(60, 120, 365);
    c.docs_per_day = 10;
    const auto cohort = generate_delay_cohort(c);
    EXPECT_EQ(cohort.docs.size(), 3650u);
    EXPECT_EQ(cohort.planted_median_days, 60);
    EXPECT_EQ(cohort.planted_q3_days, 120);
}

TEST(SynthRng, UniformIntStaysInRange) {
    SynthRng rng(1);
    for (int i = 0; i < 1000; ++i) {
        const auto v = rng.uniform_int(-3, 3);
        EXPECT_GE(v, -3);
        EXPECT_LE(v, 3);
        const double u = rng.uniform01();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}
