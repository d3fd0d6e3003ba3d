#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "citelink/linkage.hpp"
#include "citelink/model.hpp"

namespace citelink {

struct SourceCoverage {
    bool in_scopus_list = false;     // found in the Scopus active-source list
    bool inferred_in_scopus = false; // co-occurred in a matched GS/Scopus pair
    bool inferred_in_gs = false;

    friend bool operator==(const SourceCoverage &, const SourceCoverage &) = default;
};

/// Source titles keyed by their normalized form, with coverage flags.
class SourceThesaurus {
public:
    void mark_in_scopus_list(std::string_view title);
    void mark_inferred(std::string_view title);

    std::optional<SourceCoverage> lookup(std::string_view title) const;
    bool covered_by_scopus(std::string_view title) const;
    bool covered_by_gs(std::string_view title) const;

    const std::map<std::string, SourceCoverage> &entries() const { return entries_; }

private:
    std::map<std::string, SourceCoverage> entries_;
};

/// Publisher -> whether it had articles in press. Unknown publishers are
/// absent, which is not the same as false.
class PublisherAipTable {
public:
    void set(std::string_view publisher, bool has_aip);
    std::optional<bool> has_aip(std::string_view publisher) const;
    std::size_t size() const { return entries_.size(); }

private:
    std::map<std::string, bool> entries_;
};

/// A GS/Scopus source-title pair seen in matched records, for manual review.
struct SourcePairReview {
    std::string gs_source;
    std::string scopus_source;
    std::size_t pair_count = 0;

    friend bool operator==(const SourcePairReview &, const SourcePairReview &) = default;
};

/// Normalized (gs source, scopus source) pairs accepted after manual review.
using SourcePairAllowlist = std::set<std::pair<std::string, std::string>>;

/// Marks both source titles of every matched GS/Scopus pair as covered by both
/// databases. With an allowlist only listed title pairs are applied. Returns
/// the distinct title pairs seen, ordered by normalized titles.
std::vector<SourcePairReview> infer_source_pairs(const std::vector<MatchedPair> &gs_scopus_pairs, const Corpus &gs,
                                                 const Corpus &scopus, SourceThesaurus &thesaurus,
                                                 const SourcePairAllowlist *allowlist = nullptr);

AipSplit aip_status(const BibRecord &record, const PublisherAipTable &table);

/// Assigns a citing record its overlap category. GS records use both coverage
/// approaches; Scopus records only the inferred one. Without an AIP table the
/// split of GS_ONLY_SCOPUS_SOURCE records is UNKNOWN_PUBLISHER.
OverlapCategory categorize(const BibRecord &record, bool matched, const SourceThesaurus &thesaurus,
                           const PublisherAipTable *aip_table = nullptr);

struct AipCounts {
    std::size_t possible_aip = 0;
    std::size_t not_aip = 0;
    std::size_t unknown_publisher = 0;

    std::size_t total() const { return possible_aip + not_aip + unknown_publisher; }
};

AipCounts split_aip(const std::vector<BibRecord> &records, const PublisherAipTable &table);

enum class EntityKind { WebDomain, SourceTitle };

struct EntityCount {
    std::string entity;
    std::size_t count = 0;
};

struct DistStats {
    std::size_t docs = 0;
    std::size_t missing = 0;
    std::size_t entities = 0;
    std::size_t once = 0;
    double once_pct = 0.0; // share of entities appearing once, percent
    std::size_t max_appearances = 0;
    std::vector<EntityCount> top; // by count descending, then name
};

/// Distribution of documents over web domains or source titles.
DistStats entity_distribution(const std::vector<BibRecord> &records, EntityKind entity, std::size_t top_k = 20);

} // namespace citelink
