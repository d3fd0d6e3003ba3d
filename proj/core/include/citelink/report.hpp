#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "citelink/coverage.hpp"
#include "citelink/linkage.hpp"
#include "citelink/metrics.hpp"
#include "citelink/model.hpp"
#include "citelink/normalize.hpp"
#include "citelink/timing.hpp"

namespace citelink {

inline constexpr const char *kAllJournals = "*ALL*";

struct RatioRow {
    std::string journal;
    std::size_t targets = 0;
    std::int64_t gs_sum = 0;
    std::int64_t scopus_sum = 0;
    std::optional<double> globalized;
    std::optional<double> averaged;
};

struct OverlapRow {
    std::string journal;
    std::int64_t gs = 0;
    std::int64_t scopus = 0;
    std::int64_t both = 0;
    std::int64_t unique = 0;
    std::optional<double> ratio;
    std::optional<double> gs_share_pct;     // GS cites out of unique cites
    std::optional<double> scopus_share_pct;
    std::optional<Dispersion> dispersion;
};

struct YearRow {
    std::string label;
    std::size_t gs_count = 0;
    double gs_pct = 0.0;
    std::size_t scopus_count = 0;
    double scopus_pct = 0.0;
};

struct CategoryRow {
    std::string journal;
    std::string category;
    std::string subcategory; // AIP split token, empty on category rows
    std::size_t count = 0;
    double percent = 0.0;
};

struct DistributionRow {
    std::string universe;
    std::string entity;
    DistStats stats;
};

struct RateRow {
    CategoryValue category = CategoryValue::Both;
    std::size_t gs_docs = 0;
    std::optional<double> gs_rate;
    std::size_t scopus_docs = 0;
    std::optional<double> scopus_rate;
};

struct RateDifference {
    std::string perspective;
    CategoryValue higher = CategoryValue::Both;
    CategoryValue lower = CategoryValue::Both;
    double a = 0.0;
    double b = 0.0;
    double percent = 0.0;
};

struct CorrelationRow {
    std::string journal;
    std::size_t n_search = 0;
    std::optional<double> pearson_search;
    std::optional<double> spearman_search;
    std::size_t n_metrics = 0;
    std::optional<double> pearson_metrics;
    std::optional<double> spearman_metrics;
};

struct DuplicateRow {
    Provenance corpus = Provenance::GsSearch;
    DuplicateReport report;
};

struct DeletionRow {
    Provenance corpus = Provenance::GsSearch;
    Deletion deletion;
};

struct IngestSummary {
    std::size_t gs_search_records = 0;
    std::size_t gs_metrics_records = 0;
    std::size_t scopus_records = 0;
    std::size_t search_only = 0;  // GS Search citing records without a GS Metrics partner
    std::size_t metrics_only = 0; // GS Metrics citing records without a GS Search partner
    std::size_t merged_gs_records = 0;
    std::size_t linked_targets = 0;
    std::size_t analysis_targets = 0;
    std::size_t gs_citing = 0;
    std::size_t scopus_citing = 0;
    std::size_t citing_pairs = 0;
};

/// Every table and figure series produced by one pipeline run.
struct ComparisonReport {
    IngestSummary summary;
    std::vector<RatioRow> table4; // ALL first, then journals by name
    std::optional<double> ratio_count_pearson;
    std::vector<OverlapRow> table5;
    std::vector<YearRow> table6;
    std::vector<CategoryRow> table7;
    std::vector<DistributionRow> table8;
    std::vector<RateRow> table9;
    std::vector<RateDifference> table9_differences;
    std::vector<CorrelationRow> table10;
    Binning fig5;
    std::vector<std::optional<double>> fig5_ratio;
    std::vector<BreakdownRow> fig6;
    DelayQuantiles delay;
    std::vector<DuplicateRow> duplicates;
    std::vector<DeletionRow> deletions;
    std::vector<SourcePairReview> source_pairs;
    std::vector<std::string> warnings;
};

struct ReportOptions {
    bool csv = true;
    bool markdown = true;
    bool json = true;
    bool plot = false; // SVG charts for the two figure series
};

/// Writes table4.csv ... table10.csv, fig5.csv, fig6.csv, dup_report.csv,
/// deletion_report.csv, source_pairs_review.csv, report.md and report.json.
void write_report(const ComparisonReport &report, const std::filesystem::path &out_dir,
                  const ReportOptions &options = {});

std::string table4_csv(const ComparisonReport &r);
std::string table5_csv(const ComparisonReport &r);
std::string table6_csv(const ComparisonReport &r);
std::string table7_csv(const ComparisonReport &r);
std::string table8_csv(const ComparisonReport &r);
std::string table9_csv(const ComparisonReport &r);
std::string table10_csv(const ComparisonReport &r);
std::string fig5_csv(const ComparisonReport &r);
std::string fig6_csv(const ComparisonReport &r);
std::string dup_report_csv(const ComparisonReport &r);
std::string deletion_report_csv(const ComparisonReport &r);
std::string source_pairs_csv(const ComparisonReport &r);
std::string render_markdown(const ComparisonReport &r);
std::string render_json(const ComparisonReport &r);
std::string fig5_svg(const ComparisonReport &r);
std::string fig6_svg(const ComparisonReport &r);

} // namespace citelink
