#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "citelink/linkage.hpp"
#include "citelink/model.hpp"
#include "citelink/timing.hpp"

namespace citelink {

/// Piecewise-linear cumulative distribution of the Scopus indexing delay,
/// given as (days, cumulative probability) knots.
class DelayModel {
public:
    DelayModel() = default;
    explicit DelayModel(std::vector<std::pair<double, double>> knots);

    /// Knots (0,0) (median,0.5) (q3,0.75) (max,1).
    static DelayModel from_quartiles(double median_days, double q3_days, double max_days);

    double cdf(double days) const;
    double quantile(double p) const;
    const std::vector<std::pair<double, double>> &knots() const { return knots_; }

private:
    std::vector<std::pair<double, double>> knots_{{0.0, 0.0}, {60.0, 0.5}, {120.0, 0.75}, {365.0, 1.0}};
};

struct NoiseConfig {
    bool diacritics = false;        // accents added to one copy of titles and names
    bool drop_short_tokens = false; // short filler words removed from one copy
    int year_shift = 0;             // one copy's year moved by exactly +-year_shift
    bool author_reformat = false;   // "Last, F.M." in one copy, "FM Last" in the other
    bool missing_source = false;    // source title dropped from one copy
    double rate = 1.0;              // probability that an enabled noise hits a given copy
};

struct SynthConfig {
    std::uint64_t seed = 1;
    int n_targets = 20;
    int n_journals = 1;
    int citers_min = 5; // citing documents per target and database side
    int citers_max = 15;
    double overlap_fraction = 0.5; // share of citing documents present in both databases
    double duplicate_rate = 0.0;   // share of citing records given a planted duplicate
    NoiseConfig noise;
    double cross_language_rate = 0.0;    // shared works whose GS copy carries a translated title
    double scopus_source_fraction = 0.5; // GS-only works published in Scopus-listed sources
    double aip_publisher_fraction = 0.5;
    double gs_search_only_rate = 0.03;   // GS works missing from GS Metrics
    double gs_metrics_only_rate = 0.02;  // GS works missing from GS Search
    double missing_year_rate = 0.0;      // GS citing copies without a year
    /// When set, GS works in Scopus sources reach Scopus only if their planted
    /// delay does not exceed their entry age.
    std::optional<DelayModel> delay;

    void validate() const;
};

struct PlantedDuplicate {
    Provenance corpus = Provenance::GsSearch;
    RecordId original;
    RecordId duplicate;
    Similarity expected = Similarity::Identical;
};

struct GroundTruth {
    std::vector<std::pair<RecordId, RecordId>> target_pairs; // (GS id, Scopus id)
    std::vector<std::pair<RecordId, RecordId>> citing_pairs; // (GS id, Scopus id) of citing works
    std::vector<std::pair<RecordId, RecordId>> search_metrics_pairs;
    std::vector<std::pair<RecordId, RecordId>> cross_language_pairs; // subset of citing_pairs
    std::vector<PlantedDuplicate> duplicates;
    std::map<RecordId, CategoryValue> categories; // every citing work, under its GS or Scopus id
    std::map<RecordId, int> delays_days;          // GS works in Scopus sources, when a delay model is set
    std::optional<int> planted_median_delay_days;
    std::optional<int> planted_q3_delay_days;
    std::set<RecordId> all_ids;

    /// Planted duplicates expected to be removed (identical or largely similar).
    std::set<RecordId> expected_removed() const;
};

struct SynthCorpora {
    Corpus gs_search;
    Corpus gs_metrics;
    Corpus scopus;
    std::vector<std::string> scopus_source_list;
    std::vector<std::pair<std::string, bool>> aip_table; // publisher, has AIP
    GroundTruth truth;
};

/// Deterministic in the seed: identical configs give identical corpora.
SynthCorpora generate(const SynthConfig &config);

struct DelayCohortConfig {
    DelayModel delay;
    int docs_per_day = 40;
    double scopus_source_share = 0.5; // the rest are GS-only documents in non-Scopus sources
    double aip_share = 0.5;           // share of not-yet-indexed documents whose publisher has AIP
    int horizon_days = 365;
};

struct DelayCohort {
    std::vector<TimedDoc> docs;
    int planted_median_days = 0;
    int planted_q3_days = 0;
};

/// Noise-free cohort for timing analysis: every entry age gets the same number
/// of documents and their delays sit on evenly spaced quantiles of the model.
DelayCohort generate_delay_cohort(const DelayCohortConfig &config);

/// std::mt19937_64 with integer and real helpers whose output does not depend
/// on the standard library's distribution implementations.
class SynthRng {
public:
    explicit SynthRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    double uniform01();
    /// Uniform integer in [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
    bool chance(double p) { return uniform01() < p; }

private:
    std::mt19937_64 engine_;
};

} // namespace citelink
