#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "citelink/model.hpp"
#include "citelink/pipeline.hpp"
#include "citelink/synth.hpp"

namespace citelink {

using IdPair = std::pair<RecordId, RecordId>;

/// The parts of a pipeline run that can be checked against ground truth.
struct PipelineOutput {
    std::vector<IdPair> target_pairs;         // (GS, Scopus)
    std::vector<IdPair> citing_pairs;         // (GS, Scopus)
    std::vector<IdPair> search_metrics_pairs; // targets and citing records
    std::array<std::set<RecordId>, 3> removed; // dedup removals, indexed by Provenance
    std::map<RecordId, CategoryValue> categories;
    std::optional<int> median_days;
    std::optional<int> q3_days;

    static PipelineOutput from(const PipelineArtifacts &artifacts);
};

/// Reads report.json and the intermediates/ directory written by a run.
PipelineOutput read_pipeline_output(const std::filesystem::path &out_dir);

struct LinkScore {
    std::size_t predicted = 0;
    std::size_t expected = 0;
    std::size_t correct = 0;

    double precision() const; // 1 when nothing was predicted
    double recall() const;    // 1 when nothing was expected
};

struct DedupScore {
    Provenance corpus = Provenance::GsSearch;
    LinkScore removal;
    bool exact = false; // removed set equals the expected set
};

struct StageScore {
    std::string stage;
    LinkScore score;
};

struct ScoreReport {
    LinkScore targets;
    LinkScore citing;
    LinkScore search_metrics;
    std::optional<LinkScore> cross_language; // recall over planted cross-language pairs
    std::vector<DedupScore> dedup;
    std::array<std::array<std::size_t, 5>, 5> confusion{}; // [expected][predicted], CategoryValue order
    std::size_t categorized = 0;
    std::size_t category_agreement = 0;
    std::optional<int> median_error_days; // recovered - planted
    std::optional<int> q3_error_days;

    std::vector<StageScore> stages() const;
};

/// Compares a run with the generator's ground truth. Throws
/// MismatchedCorpusError when the output mentions ids the truth does not know.
ScoreReport score(const PipelineOutput &output, const GroundTruth &truth);

std::string score_csv(const ScoreReport &report);
std::string confusion_csv(const ScoreReport &report);

} // namespace citelink
