#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "citelink/linkage.hpp"
#include "citelink/normalize.hpp"
#include "oracles/oracles.hpp"
#include "support/random_corpus.hpp"
#include "support/records.hpp"

using namespace citelink;
using Tokens = std::vector<std::string>;

namespace {

BibRecord kleinberg(std::uint64_t id, Provenance p = Provenance::GsSearch) {
    auto r = fixture::citing(id, 1, fixture::kKleinbergTitle, {"Kleinberg, J.M."}, p);
    r.year = 1999;
    r.volume = "46";
    r.start_page = "604";
    r.source_title = "Journal of the ACM";
    return r;
}

void expect_same(const MatchResult &a, const MatchResult &b) {
    EXPECT_EQ(a.pairs, b.pairs);
    EXPECT_EQ(a.unmatched_a, b.unmatched_a);
    EXPECT_EQ(a.unmatched_b, b.unmatched_b);
    EXPECT_EQ(a.matches_per_key, b.matches_per_key);
    EXPECT_EQ(a.unkeyed, b.unkeyed);
}

} // namespace

TEST(TitleOverlap, Fractions) {
    const Tokens a{"alpha", "beta", "gamma", "delta"};
    const Tokens b{"alpha", "omega"};
    const auto same = title_overlap(a, a);
    EXPECT_DOUBLE_EQ(same.in_a, 1.0);
    EXPECT_DOUBLE_EQ(same.in_b, 1.0);
    const auto o = title_overlap(a, b);
    EXPECT_DOUBLE_EQ(o.in_a, 0.25);
    EXPECT_DOUBLE_EQ(o.in_b, 0.5);
    const auto empty = title_overlap({}, b);
    EXPECT_DOUBLE_EQ(empty.in_a, 0.0);
    EXPECT_DOUBLE_EQ(empty.in_b, 0.0);
}

TEST(ClassifyPair, IdenticalRecords) {
    EXPECT_EQ(classify_pair(kleinberg(1), kleinberg(2)), Similarity::Identical);
}

TEST(ClassifyPair, ProceedingsAndJournalVersionsAreLarge) {
    auto proceedings = kleinberg(1);
    proceedings.year = 1998;
    proceedings.source_title = "Proceedings of the Ninth Annual ACM-SIAM Symposium on Discrete Algorithms";
    proceedings.volume.reset();
    proceedings.start_page = "668";
    EXPECT_EQ(classify_pair(proceedings, kleinberg(2)), Similarity::Large);
}

TEST(ClassifyPair, FewSharedWordsIsLow) {
    auto other = kleinberg(2);
    other.title = "Authoritative accounts of bibliometric practice";
    EXPECT_EQ(classify_pair(kleinberg(1), other), Similarity::Low);
}

TEST(ClassifyPair, YearGapBoundary) {
    auto a = kleinberg(1);
    auto b = kleinberg(2);
    b.volume = "47";
    b.year = 2001;
    EXPECT_EQ(classify_pair(a, b), Similarity::Large);
    b.year = 2002;
    EXPECT_EQ(classify_pair(a, b), Similarity::Low);
    b.year.reset();
    EXPECT_EQ(classify_pair(a, b), Similarity::Large);
}

TEST(ClassifyPair, NoCommonAuthorIsLow) {
    auto b = kleinberg(2);
    b.volume = "47";
    b.authors = {"Page, L."};
    EXPECT_EQ(classify_pair(kleinberg(1), b), Similarity::Low);
}

TEST(ClassifyPair, SymmetricOnRandomPairs) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        const auto a = fixture::random_record(rng, 1);
        const auto b = fixture::random_record(rng, 2);
        ASSERT_EQ(classify_pair(a, b), classify_pair(b, a));
    }
}

TEST(ClassifyPair, IdenticalImpliesLargeConditionsWithEnoughWords) {
    std::mt19937_64 rng(4);
    const Thresholds t;
    for (int i = 0; i < 3000; ++i) {
        const auto a = fixture::random_record(rng, 1);
        const auto b = fixture::random_record(rng, 2);
        if (classify_pair(a, b) != Similarity::Identical)
            continue;
        const auto ta = tokenize_title(a.title, t);
        const auto tb = tokenize_title(b.title, t);
        const std::set<std::string> da(ta.begin(), ta.end()), db(tb.begin(), tb.end());
        if (da.size() < 3 || db.size() < 3 || a.authors.empty() || b.authors.empty() || !a.volume)
            continue;
        // Identical means equal token lists and author lists here, so the
        // largely-similar test must accept the pair once the extra fields differ.
        auto shifted = b;
        shifted.volume = "999";
        EXPECT_EQ(classify_pair(a, shifted), Similarity::Large) << a.title << " / " << b.title;
    }
}

TEST(MatchMerge, PrecedenceReportsFullKey) {
    const auto r = match_merge({kleinberg(1)}, {kleinberg(2, Provenance::Scopus)});
    ASSERT_EQ(r.pairs.size(), 1u);
    EXPECT_EQ(r.pairs[0].key_used, KeyKind::Full);
    EXPECT_EQ(r.matches_per_key[0], 1u);
}

TEST(MatchMerge, DisjointSetsStayUnmatched) {
    auto other = fixture::citing(5, 1, "Completely different words entirely", {"Page, L."});
    const auto r = match_merge({kleinberg(1)}, {other});
    EXPECT_TRUE(r.pairs.empty());
    EXPECT_EQ(r.unmatched_a, std::vector<RecordId>{RecordId{1}});
    EXPECT_EQ(r.unmatched_b, std::vector<RecordId>{RecordId{5}});
}

TEST(MatchMerge, SmallestPartnerIdWinsAndRecordsPairOnce) {
    const Corpus a{kleinberg(3), kleinberg(1)};
    const Corpus b{kleinberg(20), kleinberg(10), kleinberg(30)};
    const auto r = match_merge(a, b);
    ASSERT_EQ(r.pairs.size(), 2u);
    EXPECT_EQ(r.pairs[0].left_id, RecordId{1});
    EXPECT_EQ(r.pairs[0].right_id, RecordId{10});
    EXPECT_EQ(r.pairs[1].left_id, RecordId{3});
    EXPECT_EQ(r.pairs[1].right_id, RecordId{20});
    EXPECT_EQ(r.unmatched_b, std::vector<RecordId>{RecordId{30}});
}

TEST(MatchMerge, LowCollisionsDiscardedUnlessKept) {
    auto other = kleinberg(2);
    other.title = "Authoritative views";
    other.volume.reset();
    const auto dropped = match_merge({kleinberg(1)}, {other});
    EXPECT_TRUE(dropped.pairs.empty());
    MatchOptions keep;
    keep.keep_low_similarity = true;
    const auto kept = match_merge({kleinberg(1)}, {other}, {}, keep);
    ASSERT_EQ(kept.pairs.size(), 1u);
    EXPECT_EQ(kept.pairs[0].key_used, KeyKind::Short);
    EXPECT_EQ(kept.pairs[0].similarity, Similarity::Low);
}

TEST(MatchMerge, UnkeyedRecordsReported) {
    auto bare = fixture::citing(7, 1, "A b");
    const auto r = match_merge({bare}, {kleinberg(2)});
    EXPECT_EQ(r.unkeyed, std::vector<RecordId>{RecordId{7}});
    EXPECT_EQ(r.unmatched_a, std::vector<RecordId>{RecordId{7}});
}

TEST(MatchMerge, BlocksSeparateCandidates) {
    MatchOptions options;
    options.block = [](const BibRecord &r) { return std::to_string(r.cites_target->value); };
    auto right = kleinberg(2);
    right.cites_target = RecordId{9};
    EXPECT_TRUE(match_merge({kleinberg(1)}, {right}, {}, options).pairs.empty());
}

TEST(MatchMerge, EqualsBruteForceOracle) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = fixture::random_corpus(rng, 150, 1);
        const auto b = fixture::random_corpus(rng, 150, 1000);
        MatchOptions options;
        options.keep_low_similarity = trial % 3 == 0;
        options.enabled_keys[trial % 4] = trial % 5 != 0;
        if (trial % 2)
            options.block = [](const BibRecord &r) { return std::to_string(r.cites_target->value); };
        const Thresholds t;
        expect_same(match_merge(a, b, t, options), oracle::brute_force_match(a, b, t, options));
    }
}

TEST(MatchMerge, InvariantUnderPermutationAndThreads) {
    std::mt19937_64 rng(8);
    auto a = fixture::random_corpus(rng, 200, 1);
    auto b = fixture::random_corpus(rng, 200, 1000);
    const auto base = match_merge(a, b);
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    MatchOptions threaded;
    threaded.threads = 4;
    expect_same(match_merge(a, b, {}, threaded), base);
}

TEST(Dedup, NoEqualKeysLeavesCorpusUnchanged) {
    const Corpus corpus{fixture::target(1, "Target article"), kleinberg(2),
                        fixture::citing(3, 1, "Completely different words entirely", {"Page, L."})};
    const auto r = dedup(corpus);
    EXPECT_EQ(r.kept, corpus);
    EXPECT_TRUE(r.report.removed.empty());
}

TEST(Dedup, IdenticalPairKeepsOne) {
    const auto r = dedup({fixture::target(1, "Target article"), kleinberg(2), kleinberg(3)});
    EXPECT_EQ(r.report.identical, 1u);
    EXPECT_EQ(r.report.removed, std::vector<RecordId>{RecordId{3}});
    EXPECT_EQ(r.kept.size(), 2u);
}

TEST(Dedup, DifferentTargetsBothSurvive) {
    auto b = kleinberg(3);
    b.cites_target = RecordId{9};
    b.year = 2000;
    const auto r = dedup({fixture::target(1, "Target"), fixture::target(9, "Other target"), kleinberg(2), b});
    EXPECT_TRUE(r.report.removed.empty());
    EXPECT_EQ(r.report.candidate_pairs, 0u);
}

TEST(Dedup, MostPopulatedRecordRepresentsChain) {
    auto a = kleinberg(2);
    a.source_title.reset();
    a.volume.reset();
    auto b = kleinberg(3);
    b.year = 2001; // large, not identical, with a (year 1999)
    auto c = kleinberg(4);
    c.year = 2003; // large with b only
    c.publisher = "ACM";
    const auto r = dedup({fixture::target(1, "Target"), a, b, c});
    EXPECT_EQ(r.report.removed, (std::vector<RecordId>{RecordId{2}, RecordId{3}}));
}

TEST(Dedup, TargetsNeverRemoved) {
    std::mt19937_64 rng(12);
    auto corpus = fixture::random_corpus(rng, 300, 10);
    for (std::uint64_t id = 1; id <= 3; ++id)
        corpus.push_back(fixture::target(id, fixture::kKleinbergTitle, {"Kleinberg, J."}));
    const auto r = dedup(corpus);
    for (auto id : r.report.removed)
        EXPECT_GE(id.value, 10u);
    EXPECT_EQ(r.kept.size() + r.report.removed.size(), corpus.size());
}

TEST(Dedup, CrossLanguageCandidateThroughSourceKey) {
    auto english = kleinberg(2);
    auto translated = kleinberg(3);
    translated.title = "Fuentes autorizadas entorno hipervinculado";
    const auto r = dedup({fixture::target(1, "Target"), english, translated});
    ASSERT_EQ(r.report.pairs.size(), 1u);
    EXPECT_EQ(r.report.pairs[0].key_used, KeyKind::Source);
}

TEST(Dedup, InvariantUnderPermutationAndThreads) {
    std::mt19937_64 rng(13);
    auto corpus = fixture::random_corpus(rng, 400, 10);
    const auto base = dedup(corpus);
    std::shuffle(corpus.begin(), corpus.end(), rng);
    const auto other = dedup(corpus, {}, 4);
    EXPECT_EQ(other.report.removed, base.report.removed);
    EXPECT_EQ(other.report.pairs, base.report.pairs);
}
