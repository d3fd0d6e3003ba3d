#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "citelink/model.hpp"

namespace citelink {

/// A GS citing document seen through its entry age and overlap category.
struct TimedDoc {
    std::optional<int> entry_age_days;
    OverlapCategory category = OverlapCategory::make(CategoryValue::Both);
    /// Counted in the AIP breakdown view (source title known).
    bool breakdown_eligible = true;
};

struct CohortBin {
    int label = 0; // bin start in days
    std::size_t count_both = 0;
    std::size_t count_gs_only = 0;
    // Breakdown view: GS documents in Scopus-covered sources.
    std::size_t found_in_scopus = 0;
    std::size_t possible_aip = 0;
    std::size_t not_aip = 0;

    std::size_t total() const { return count_both + count_gs_only; }
    std::size_t breakdown_total() const { return found_in_scopus + possible_aip + not_aip; }
};

struct Binning {
    std::vector<CohortBin> bins; // every bin from 0 up to the horizon, ascending
    std::size_t missing_age = 0;
    std::size_t beyond_horizon = 0;
    std::size_t not_google_scholar = 0; // Scopus-only categories are not binned

    std::size_t excluded() const { return missing_age + beyond_horizon + not_google_scholar; }
};

/// Age a falls into bin floor(a / width) * width; ages at or past the horizon
/// and missing ages are counted apart.
Binning bin_by_entry_age(std::span<const TimedDoc> docs, int bin_width = 30, int horizon = 365);

/// GS-only over both per bin; empty when no document of the bin is in both.
std::vector<std::optional<double>> overlap_ratio_series(std::span<const CohortBin> bins);

struct BreakdownRow {
    int label = 0;
    std::size_t total = 0;
    double found_pct = 0.0;
    double possible_aip_pct = 0.0;
    double not_aip_pct = 0.0;
};

/// Percentages found / possible AIP / not AIP per bin. Empty bins are omitted
/// and, by default, so is the first bin: the GS Metrics source titles the
/// view relies on do not exist for the most recent month.
std::vector<BreakdownRow> aip_breakdown_series(std::span<const CohortBin> bins, bool skip_first_bin = true);

struct FoundFraction {
    int label = 0;
    double fraction = 0.0;
};

std::vector<FoundFraction> found_fraction_series(std::span<const BreakdownRow> rows);

struct DelayQuantiles {
    // Upper edge (days) of the first bin reaching the quantile; empty means
    // "> horizon".
    std::optional<int> median_days;
    std::optional<int> q3_days;
    bool non_monotone = false;

    std::optional<double> median_months() const;
    std::optional<double> q3_months() const;
};

/// Bin-granular delay quantiles from a found-fraction series ordered by age.
/// The series is read as a cumulative delay distribution; when it is not
/// monotone the first crossing is used and `non_monotone` is set.
DelayQuantiles delay_quantiles(std::span<const FoundFraction> series, int bin_width = 30);

} // namespace citelink
