#include <gtest/gtest.h>

#include <random>

#include "citelink/error.hpp"
#include "citelink/timing.hpp"

using namespace citelink;

namespace {

TimedDoc doc(std::optional<int> age, CategoryValue v = CategoryValue::Both,
             std::optional<AipSplit> split = std::nullopt) {
    if (v == CategoryValue::GsOnlyScopusSource && !split)
        split = AipSplit::NotAip;
    return {age, OverlapCategory::make(v, split), true};
}

CohortBin counts(std::size_t gs_only, std::size_t both) {
    CohortBin b;
    b.count_gs_only = gs_only;
    b.count_both = both;
    return b;
}

std::vector<FoundFraction> series_from(int first_label, std::vector<double> fractions) {
    std::vector<FoundFraction> out;
    for (std::size_t i = 0; i < fractions.size(); ++i)
        out.push_back({first_label + 30 * static_cast<int>(i), fractions[i]});
    return out;
}

} // namespace

TEST(BinByEntryAge, BinBoundaries) {
    const std::vector docs{doc(45), doc(0), doc(365), doc(std::nullopt), doc(364)};
    const auto b = bin_by_entry_age(docs, 30, 365);
    ASSERT_EQ(b.bins.size(), 13u);
    EXPECT_EQ(b.bins[1].label, 30);
    EXPECT_EQ(b.bins[1].count_both, 1u);
    EXPECT_EQ(b.bins[0].count_both, 1u);
    EXPECT_EQ(b.bins[12].label, 360);
    EXPECT_EQ(b.bins[12].count_both, 1u);
    EXPECT_EQ(b.beyond_horizon, 1u);
    EXPECT_EQ(b.missing_age, 1u);
}

TEST(BinByEntryAge, TotalOverInput) {
    std::mt19937 rng(4);
    const CategoryValue cats[] = {CategoryValue::Both, CategoryValue::GsOnlyNoScopusSource,
                                  CategoryValue::GsOnlyScopusSource, CategoryValue::ScopusOnlyGsSource};
    std::vector<TimedDoc> docs;
    for (int i = 0; i < 1000; ++i) {
        std::optional<int> age;
        if (rng() % 10)
            age = static_cast<int>(rng() % 500);
        docs.push_back(doc(age, cats[rng() % 4]));
    }
    const auto b = bin_by_entry_age(docs, 30, 365);
    std::size_t binned = 0;
    for (const auto &bin : b.bins)
        binned += bin.total();
    EXPECT_EQ(binned + b.excluded(), docs.size());
}

TEST(BinByEntryAge, InvalidWidthIsConfigError) {
    EXPECT_THROW(bin_by_entry_age({}, 0, 365), ConfigError);
}

TEST(OverlapRatioSeries, GuardedDivision) {
    const std::vector bins{counts(20, 2), counts(5, 5), counts(3, 0)};
    const auto r = overlap_ratio_series(bins);
    EXPECT_DOUBLE_EQ(*r[0], 10.0);
    EXPECT_DOUBLE_EQ(*r[1], 1.0);
    EXPECT_FALSE(r[2].has_value());
}

TEST(AipBreakdownSeries, FiftyTwoTwentyNineNineteen) {
    CohortBin first;
    first.found_in_scopus = 3;
    CohortBin b;
    b.label = 30;
    b.found_in_scopus = 52;
    b.possible_aip = 29;
    b.not_aip = 19;
    CohortBin empty;
    empty.label = 60;
    CohortBin found_only;
    found_only.label = 90;
    found_only.found_in_scopus = 7;
    const std::vector bins{first, b, empty, found_only};
    const auto rows = aip_breakdown_series(bins);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].label, 30);
    EXPECT_DOUBLE_EQ(rows[0].found_pct, 52.0);
    EXPECT_DOUBLE_EQ(rows[0].possible_aip_pct, 29.0);
    EXPECT_DOUBLE_EQ(rows[0].not_aip_pct, 19.0);
    EXPECT_DOUBLE_EQ(rows[1].found_pct, 100.0);
    EXPECT_EQ(aip_breakdown_series(bins, false).size(), 3u);
}

TEST(AipBreakdownSeries, MatchesIndependentTally) {
    std::mt19937 rng(6);
    std::vector<TimedDoc> docs;
    std::size_t found = 0, aip = 0, not_aip = 0;
    for (int i = 0; i < 600; ++i) {
        const int age = 30 + static_cast<int>(rng() % 30);
        switch (rng() % 4) {
        case 0:
            docs.push_back(doc(age));
            ++found;
            break;
        case 1:
            docs.push_back(doc(age, CategoryValue::GsOnlyScopusSource, AipSplit::PossibleAip));
            ++aip;
            break;
        case 2:
            docs.push_back(doc(age, CategoryValue::GsOnlyScopusSource, AipSplit::UnknownPublisher));
            ++not_aip;
            break;
        default:
            docs.push_back(doc(age, CategoryValue::GsOnlyNoScopusSource));
        }
    }
    const auto rows = aip_breakdown_series(bin_by_entry_age(docs).bins);
    ASSERT_EQ(rows.size(), 1u);
    const double n = static_cast<double>(found + aip + not_aip);
    EXPECT_NEAR(rows[0].found_pct, 100.0 * static_cast<double>(found) / n, 1e-9);
    EXPECT_NEAR(rows[0].possible_aip_pct, 100.0 * static_cast<double>(aip) / n, 1e-9);
    EXPECT_NEAR(rows[0].found_pct + rows[0].possible_aip_pct + rows[0].not_aip_pct, 100.0, 0.1);
}

TEST(DelayQuantiles, FirstCrossingAtBinEnd) {
    const auto q = delay_quantiles(series_from(30, {0.52, 0.70, 0.76, 0.9}));
    EXPECT_EQ(q.median_months(), 2.0);
    EXPECT_EQ(q.q3_months(), 4.0);
    EXPECT_FALSE(q.non_monotone);
}

TEST(DelayQuantiles, NeverReachedIsBeyondHorizon) {
    const auto q = delay_quantiles(series_from(30, {0.1, 0.2, 0.4}));
    EXPECT_FALSE(q.median_days.has_value());
    EXPECT_FALSE(q.q3_months().has_value());
}

TEST(DelayQuantiles, NonMonotoneUsesFirstCrossing) {
    const auto q = delay_quantiles(series_from(30, {0.4, 0.55, 0.45, 0.8}));
    EXPECT_TRUE(q.non_monotone);
    EXPECT_EQ(q.median_days, 90);
    EXPECT_EQ(q.q3_days, 150);
}

TEST(FoundFractionSeries, PercentToFraction) {
    const std::vector<BreakdownRow> rows{{30, 100, 52.0, 29.0, 19.0}};
    const auto s = found_fraction_series(rows);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].label, 30);
    EXPECT_DOUBLE_EQ(s[0].fraction, 0.52);
}
