#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "citelink/linkage.hpp"
#include "citelink/model.hpp"

namespace citelink {

/// Citation counts of one target article in both databases, with the
/// breakdown of its citing documents over overlap categories.
struct TargetCitationRow {
    RecordId target_id;
    std::int64_t gs_count = 0;
    std::int64_t scopus_count = 0;
    std::int64_t both_count = 0;
    std::int64_t gs_only_scopus_source = 0;
    std::int64_t gs_only_no_scopus_source = 0;
    std::int64_t scopus_only_gs_source = 0;
    std::int64_t scopus_only_no_gs_source = 0;

    /// Category counts add up to gs + scopus - both.
    bool consistent() const;
};

/// Sum of GS counts over sum of Scopus counts. Throws ZeroDenominatorError
/// when the Scopus sum is zero.
double globalized_ratio(std::span<const TargetCitationRow> rows);

/// GS/Scopus ratio of a single article; a Scopus count of zero counts as one.
double article_ratio(const TargetCitationRow &row);

/// Mean of per-article ratios.
double averaged_ratio(std::span<const TargetCitationRow> rows);

/// Pearson correlation between per-article ratios and Scopus counts.
double ratio_count_correlation(std::span<const TargetCitationRow> rows);

struct Dispersion {
    double fraction = 0.0; // sample stdev / mean
    double percent = 0.0;
};

/// Coefficient of variation of per-target ratios; needs at least two values
/// and a non-zero mean.
Dispersion ratio_dispersion(std::span<const double> ratios);

/// Throws ConstantInputError when either input is constant and Error when
/// lengths differ or fewer than two observations are given.
double pearson(std::span<const double> x, std::span<const double> y);
double spearman(std::span<const double> x, std::span<const double> y);

/// Average ranks (1-based), ties sharing the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

struct AgeNormalizedRates {
    std::vector<std::optional<double>> rate; // aligned with input; empty without year or count
    std::vector<RecordId> excluded;          // records without year or citation count
    std::vector<int> zero_mean_years;        // years whose mean count is 0; their docs get rate 0
    std::map<int, double> year_mean;
};

/// Citation count over the mean count of documents from the same year. Call it
/// once per database; rates are not comparable across databases.
AgeNormalizedRates age_normalized_rates(std::span<const BibRecord> docs);

struct CategoryRate {
    CategoryValue category;
    std::size_t docs = 0;
    double mean_rate = 0.0;
};

/// Mean rate per category, in category order; empty categories are omitted.
/// Documents without a rate are skipped.
std::vector<CategoryRate> category_mean_rates(std::span<const std::optional<double>> rates,
                                              std::span<const CategoryValue> categories);

/// 100 * (a - b) / a.
double percent_difference(double a, double b);

struct YearBucket {
    std::string label; // "N.A.", "<=2007" or the year
    std::size_t count = 0;
    double percent = 0.0;
};

/// Publication years in buckets N.A., <=2007, then every year up to the latest.
std::vector<YearBucket> year_distribution(std::span<const BibRecord> docs);

struct Selection {
    std::vector<BibRecord> records;
    bool short_input = false; // fewer records than requested
};

/// The k most cited records; ties broken by smaller id, missing counts as 0.
Selection select_top_cited(std::span<const BibRecord> records, std::size_t k);

struct AnalysisTarget {
    RecordId gs_id;
    RecordId scopus_id;
};

struct AnalysisSelection {
    std::vector<AnalysisTarget> targets; // GS citation order
    bool empty_warning = false;
    bool short_gs = false;
    bool short_scopus = false;
};

/// The `k_gs` most cited GS targets among those linked to one of the
/// `k_scopus` most cited Scopus targets.
AnalysisSelection select_analysis_set(std::span<const BibRecord> gs_targets, std::span<const BibRecord> scopus_targets,
                                      const std::vector<MatchedPair> &target_links, std::size_t k_gs = 100,
                                      std::size_t k_scopus = 200);

/// Largest h such that at least h counts are >= h.
int h5(std::span<const std::int64_t> citation_counts);

} // namespace citelink
