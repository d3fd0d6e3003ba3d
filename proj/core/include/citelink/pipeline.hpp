#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "citelink/coverage.hpp"
#include "citelink/linkage.hpp"
#include "citelink/metrics.hpp"
#include "citelink/model.hpp"
#include "citelink/normalize.hpp"
#include "citelink/record_io.hpp"
#include "citelink/report.hpp"

namespace citelink {

struct PipelineOptions {
    Thresholds thresholds;
    std::size_t top_gs = 100;
    std::size_t top_scopus = 200;
    std::array<bool, 4> enabled_keys{true, true, true, true}; // indexed by KeyKind
    bool keep_low_similarity = false;
    unsigned threads = 1;
};

struct PipelineInputs {
    Corpus gs_search;
    Corpus gs_metrics; // may be empty
    Corpus scopus;
    std::vector<std::string> scopus_source_list;
    std::optional<PublisherAipTable> aip_table;
    std::optional<SourcePairAllowlist> allowlist;
};

/// GS Search and GS Metrics combined into one Google Scholar set.
struct GsMerge {
    Corpus merged;
    MatchResult targets;
    MatchResult citing;
    std::set<RecordId> with_metrics_copy; // merged records backed by a GS Metrics record
    std::map<RecordId, RecordId> search_to_metrics_target;
};

/// Everything the pipeline derives; `report` is what gets written out.
struct PipelineArtifacts {
    std::array<CleanResult, 3> cleaned;  // indexed by Provenance
    std::array<DedupResult, 3> deduped;
    GsMerge gs;
    MatchResult target_links;            // merged GS targets x Scopus targets
    AnalysisSelection analysis;
    Corpus gs_citing;                    // citing documents of the analysis targets
    Corpus scopus_citing;
    MatchResult citing_links;
    SourceThesaurus thesaurus;
    std::map<RecordId, OverlapCategory> categories;
    std::map<RecordId, std::string> journal_of_target; // GS and Scopus target ids
    ComparisonReport report;
};

/// Runs every stage on in-memory corpora. Stage failures are rethrown as
/// StageError naming the stage.
PipelineArtifacts run_pipeline(PipelineInputs inputs, const PipelineOptions &options = {});

struct PipelineConfig {
    std::filesystem::path gs_search;
    std::filesystem::path gs_metrics; // optional
    std::filesystem::path scopus;
    RecordFormat gs_format = RecordFormat::Auto;
    RecordFormat scopus_format = RecordFormat::Auto;
    std::filesystem::path source_list;
    std::filesystem::path aip_table;
    std::filesystem::path allowlist;
    std::filesystem::path out_dir;
    PipelineOptions options;
    ReportOptions report;
    bool dump_intermediates = false;

    /// Throws ConfigError for invalid thresholds or unreadable inputs.
    void validate() const;
};

struct LoadedInputs {
    PipelineInputs inputs;
    std::vector<std::pair<std::string, RowError>> row_errors; // (file, error)
};

/// Reads every configured file. Failures are StageError("ingest"); records that
/// violate the schema invariants raise StageError("validate").
LoadedInputs load_inputs(const PipelineConfig &config);

/// Loads, runs, and writes the report (and intermediates when requested).
ComparisonReport run_pipeline(const PipelineConfig &config);

/// Keys, pairs, categories and cleaned corpora as files under `dir`.
void dump_intermediates(const PipelineArtifacts &artifacts, const std::filesystem::path &dir,
                        const Thresholds &thresholds = {});

} // namespace citelink
