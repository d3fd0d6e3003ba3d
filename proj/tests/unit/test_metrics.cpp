#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "citelink/error.hpp"
#include "citelink/metrics.hpp"
#include "oracles/oracles.hpp"
#include "support/records.hpp"

using namespace citelink;
using Vec = std::vector<double>;

namespace {

TargetCitationRow row(std::int64_t gs, std::int64_t scopus) {
    TargetCitationRow r;
    r.gs_count = gs;
    r.scopus_count = scopus;
    return r;
}

BibRecord counted(std::uint64_t id, std::optional<std::int64_t> count, std::optional<int> year = 2010) {
    auto r = fixture::target(id, "Title " + std::to_string(id));
    r.citation_count = count;
    r.year = year;
    return r;
}

} // namespace

TEST(GlobalizedRatio, AllRowSums) {
    EXPECT_NEAR(globalized_ratio(std::vector{row(67785, 43732)}), 1.550, 0.001);
    EXPECT_NEAR(globalized_ratio(std::vector{row(6536, 3651)}), 1.790, 0.001);
    EXPECT_DOUBLE_EQ(globalized_ratio(std::vector{row(7, 7), row(3, 3)}), 1.0);
}

TEST(GlobalizedRatio, ZeroScopusSumIsAnError) {
    EXPECT_THROW(globalized_ratio(std::vector{row(4, 0)}), ZeroDenominatorError);
}

TEST(GlobalizedRatio, BoundedByRowRatios) {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<TargetCitationRow> rows;
        for (int i = 0, n = 1 + static_cast<int>(rng() % 10); i < n; ++i)
            rows.push_back(row(rng() % 100, 1 + rng() % 100));
        Vec ratios;
        for (const auto &r : rows)
            ratios.push_back(article_ratio(r));
        const double g = globalized_ratio(rows);
        EXPECT_LE(g, *std::max_element(ratios.begin(), ratios.end()) + 1e-12);
        EXPECT_GE(g, *std::min_element(ratios.begin(), ratios.end()) - 1e-12);
    }
}

TEST(AveragedRatio, ZeroScopusCountsAsOne) {
    EXPECT_DOUBLE_EQ(averaged_ratio(std::vector{row(10, 5), row(3, 0)}), 2.5);
    EXPECT_DOUBLE_EQ(averaged_ratio(std::vector{row(4, 4), row(9, 9)}), 1.0);
    EXPECT_DOUBLE_EQ(averaged_ratio(std::vector{row(0, 0)}), 0.0);
}

TEST(AveragedRatio, PermutationInvariant) {
    std::vector<TargetCitationRow> rows{row(10, 5), row(3, 0), row(8, 2), row(1, 9)};
    const double base = averaged_ratio(rows);
    std::reverse(rows.begin(), rows.end());
    EXPECT_NEAR(averaged_ratio(rows), base, 1e-12);
}

TEST(RatioCountCorrelation, DecreasingRatioIsNegative) {
    const std::vector rows{row(20, 2), row(24, 4), row(24, 8), row(20, 16)};
    Vec ratios, counts;
    for (const auto &r : rows) {
        ratios.push_back(article_ratio(r));
        counts.push_back(static_cast<double>(r.scopus_count));
    }
    const double c = ratio_count_correlation(rows);
    EXPECT_LT(c, 0.0);
    EXPECT_NEAR(c, oracle::pearson(ratios, counts), 1e-12);
    EXPECT_THROW(ratio_count_correlation(std::vector{row(2, 1), row(4, 2)}), ConstantInputError);
}

TEST(Correlation, PerfectAndAnti) {
    const Vec x{1, 2, 3};
    const Vec y{3, 2, 1};
    EXPECT_NEAR(pearson(x, x), 1.0, 1e-12);
    EXPECT_NEAR(spearman(x, x), 1.0, 1e-12);
    EXPECT_NEAR(pearson(x, y), -1.0, 1e-12);
    EXPECT_NEAR(spearman(x, y), -1.0, 1e-12);
}

TEST(Correlation, TiesMatchOracle) {
    const Vec x{1, 2, 2, 4};
    const Vec y{1, 3, 2, 4};
    EXPECT_NEAR(spearman(x, y), oracle::spearman(x, y), 1e-12);
    EXPECT_NEAR(pearson(x, y), oracle::pearson(x, y), 1e-12);
    EXPECT_EQ(average_ranks(x), (Vec{1.0, 2.5, 2.5, 4.0}));
}

TEST(Correlation, Errors) {
    EXPECT_THROW(pearson(Vec{1, 1, 1}, Vec{1, 2, 3}), ConstantInputError);
    EXPECT_THROW(spearman(Vec{1, 2, 3}, Vec{5, 5, 5}), ConstantInputError);
    EXPECT_THROW(pearson(Vec{1, 2}, Vec{1, 2, 3}), Error);
    EXPECT_THROW(pearson(Vec{1}, Vec{1}), Error);
}

TEST(Correlation, RandomVectorsMatchOracleAndStayInRange) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> value(0.0, 100.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 200;
        Vec x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = trial % 2 ? std::floor(value(rng) / 10) : value(rng);
            y[i] = value(rng);
        }
        if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; }))
            continue;
        const double p = pearson(x, y);
        const double s = spearman(x, y);
        EXPECT_NEAR(p, oracle::pearson(x, y), 1e-9);
        EXPECT_NEAR(s, oracle::spearman(x, y), 1e-9);
        EXPECT_LE(std::abs(p), 1.0);
        EXPECT_LE(std::abs(s), 1.0);
    }
}

TEST(AgeNormalizedRates, SingleYear) {
    const std::vector docs{counted(1, 0), counted(2, 2), counted(3, 4)};
    const auto r = age_normalized_rates(docs);
    ASSERT_EQ(r.rate.size(), 3u);
    EXPECT_DOUBLE_EQ(*r.rate[0], 0.0);
    EXPECT_DOUBLE_EQ(*r.rate[1], 1.0);
    EXPECT_DOUBLE_EQ(*r.rate[2], 2.0);
}

TEST(AgeNormalizedRates, SelfNormalizationExclusionAndZeroMean) {
    const std::vector docs{counted(1, 7, 2011), counted(2, 3, std::nullopt), counted(3, 0, 2012)};
    const auto r = age_normalized_rates(docs);
    EXPECT_DOUBLE_EQ(*r.rate[0], 1.0);
    EXPECT_FALSE(r.rate[1].has_value());
    EXPECT_EQ(r.excluded, std::vector<RecordId>{RecordId{2}});
    EXPECT_DOUBLE_EQ(*r.rate[2], 0.0);
    EXPECT_EQ(r.zero_mean_years, std::vector<int>{2012});
}

TEST(AgeNormalizedRates, WeightedMeanIsOne) {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<BibRecord> docs;
        for (std::uint64_t i = 0, n = 1 + rng() % 60; i < n; ++i)
            docs.push_back(counted(i, 1 + rng() % 50, 2008 + static_cast<int>(rng() % 6)));
        const auto r = age_normalized_rates(docs);
        double sum = 0;
        for (const auto &v : r.rate)
            sum += *v;
        EXPECT_NEAR(sum / static_cast<double>(docs.size()), 1.0, 1e-9);
    }
}

TEST(CategoryMeanRates, MeansAndPercentDifference) {
    const std::vector<std::optional<double>> rates{1.0, 1.0, 0.5, std::nullopt};
    const std::vector<CategoryValue> cats{CategoryValue::Both, CategoryValue::Both, CategoryValue::GsOnlyNoScopusSource,
                                          CategoryValue::Both};
    const auto out = category_mean_rates(rates, cats);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0].category, CategoryValue::Both);
    EXPECT_EQ(out[0].docs, 2u);
    EXPECT_DOUBLE_EQ(out[0].mean_rate, 1.0);
    EXPECT_DOUBLE_EQ(percent_difference(out[0].mean_rate, out[1].mean_rate), 50.0);
}

TEST(PercentDifference, KnownRatePairs) {
    EXPECT_NEAR(percent_difference(1.49, 0.31), 79.0, 0.5);
    EXPECT_NEAR(percent_difference(1.03, 0.14), 86.0, 0.5);
    EXPECT_THROW(percent_difference(0.0, 1.0), ZeroDenominatorError);
}

TEST(YearDistribution, HandCounted) {
    const std::vector docs{counted(1, 0, 2010), counted(2, 0, 2010), counted(3, 0, std::nullopt),
                           counted(4, 0, 2012)};
    const auto b = year_distribution(docs);
    auto find = [&](const std::string &label) {
        return std::find_if(b.begin(), b.end(), [&](const YearBucket &y) { return y.label == label; })->percent;
    };
    EXPECT_DOUBLE_EQ(find("N.A."), 25.0);
    EXPECT_DOUBLE_EQ(find("2010"), 50.0);
    EXPECT_DOUBLE_EQ(find("2012"), 25.0);
    EXPECT_DOUBLE_EQ(find("2011"), 0.0);
    double total = 0;
    for (const auto &y : b)
        total += y.percent;
    EXPECT_NEAR(total, 100.0, 1e-9);
}

TEST(YearDistribution, EarlyYearsCollapse) {
    const std::vector docs{counted(1, 0, 1999), counted(2, 0, 2007), counted(3, 0, 2008)};
    const auto b = year_distribution(docs);
    EXPECT_EQ(b[0].label, "N.A.");
    EXPECT_DOUBLE_EQ(b[0].percent, 0.0);
    EXPECT_EQ(b[1].label, "<=2007");
    EXPECT_EQ(b[1].count, 2u);
}

TEST(SelectTopCited, TiesGoToLowerId) {
    const std::vector docs{counted(4, 3), counted(1, 5), counted(2, 3), counted(3, 1)};
    const auto s = select_top_cited(docs, 2);
    ASSERT_EQ(s.records.size(), 2u);
    EXPECT_EQ(s.records[0].id, RecordId{1});
    EXPECT_EQ(s.records[1].id, RecordId{2});
    EXPECT_FALSE(s.short_input);
    const auto all = select_top_cited(docs, 10);
    EXPECT_EQ(all.records.size(), 4u);
    EXPECT_TRUE(all.short_input);
}

TEST(SelectAnalysisSet, IntersectionOfTopLists) {
    const std::vector gs{counted(1, 50), counted(2, 40), counted(3, 30)};
    const std::vector scopus{counted(11, 5), counted(12, 40), counted(13, 30)};
    const std::vector<MatchedPair> links{{RecordId{1}, RecordId{11}, KeyKind::Full, Similarity::Identical},
                                         {RecordId{2}, RecordId{12}, KeyKind::Full, Similarity::Identical},
                                         {RecordId{3}, RecordId{13}, KeyKind::Full, Similarity::Identical}};
    const auto s = select_analysis_set(gs, scopus, links, 1, 2);
    ASSERT_EQ(s.targets.size(), 1u);
    EXPECT_EQ(s.targets[0].gs_id, RecordId{2});
    EXPECT_EQ(s.targets[0].scopus_id, RecordId{12});

    const auto none = select_analysis_set(gs, scopus, {}, 1, 2);
    EXPECT_TRUE(none.targets.empty());
    EXPECT_TRUE(none.empty_warning);
}

TEST(H5, Examples) {
    using C = std::vector<std::int64_t>;
    EXPECT_EQ(h5(C{10, 9, 5, 5, 3}), 4);
    EXPECT_EQ(h5(C{}), 0);
    EXPECT_EQ(h5(C{0, 0}), 0);
    EXPECT_EQ(h5(C{1, 1, 1}), 1);
}

TEST(H5, MatchesBruteForceOnRandomInput) {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<std::int64_t> c(rng() % 20);
        for (auto &v : c)
            v = rng() % 25;
        EXPECT_EQ(h5(c), oracle::brute_force_h5(c));
    }
}

TEST(RatioDispersion, Examples) {
    EXPECT_DOUBLE_EQ(ratio_dispersion(Vec{2, 2, 2}).fraction, 0.0);
    const auto d = ratio_dispersion(Vec{1, 3});
    EXPECT_NEAR(d.fraction, 0.707, 0.001);
    EXPECT_NEAR(d.percent, 70.7, 0.1);
    EXPECT_THROW(ratio_dispersion(Vec{1}), Error);
    EXPECT_THROW(ratio_dispersion(Vec{0, 0}), ZeroDenominatorError);
}

TEST(TargetCitationRow, Consistency) {
    auto r = row(10, 8);
    r.both_count = 6;
    r.gs_only_scopus_source = 1;
    r.gs_only_no_scopus_source = 3;
    r.scopus_only_gs_source = 2;
    EXPECT_TRUE(r.consistent());
    r.scopus_only_no_gs_source = 1;
    EXPECT_FALSE(r.consistent());
}
