#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citelink/matchkeys.hpp"
#include "citelink/model.hpp"

namespace citelink {

enum class Similarity { Identical, Large, Low };

std::string_view to_string(Similarity s);
Similarity parse_similarity(std::string_view token);

/// A pairing of two records, the first key on which they agree and their
/// similarity class.
struct MatchedPair {
    RecordId left_id;
    RecordId right_id;
    KeyKind key_used = KeyKind::Full;
    Similarity similarity = Similarity::Low;

    friend bool operator==(const MatchedPair &, const MatchedPair &) = default;
};

struct TitleOverlap {
    double in_a = 0.0; // share of distinct words of A found in B
    double in_b = 0.0;
};

/// Both shares are 0 when either list is empty.
TitleOverlap title_overlap(std::span<const std::string> tokens_a, std::span<const std::string> tokens_b);

/// Identical when every metadata field present in both records agrees;
/// Large when titles share enough words, authors share a last name and years
/// are close; Low otherwise. Symmetric in its arguments.
Similarity classify_pair(const BibRecord &a, const BibRecord &b, const Thresholds &t = {});

struct MatchOptions {
    std::array<bool, 4> enabled_keys{true, true, true, true}; // indexed by KeyKind
    /// Keep key collisions classified Low. Off by default: only identical
    /// and largely similar records are merged across databases.
    bool keep_low_similarity = false;
    /// Records pair only within equal blocks (e.g. the linked target article).
    std::function<std::string(const BibRecord &)> block;
    unsigned threads = 1;
};

struct MatchResult {
    std::vector<MatchedPair> pairs; // ordered by left id
    std::vector<RecordId> unmatched_a;
    std::vector<RecordId> unmatched_b;
    std::array<std::size_t, 4> matches_per_key{}; // indexed by KeyKind
    std::vector<RecordId> unkeyed;                // records without any key, from both sets
};

/// Cross-set match-merge. Keys are applied in precedence order and a record
/// matched at one stage leaves the later stages. Within a stage, left records
/// are visited by ascending id and take the smallest-id eligible partner.
MatchResult match_merge(const Corpus &set_a, const Corpus &set_b, const Thresholds &t = {},
                        const MatchOptions &options = {});

struct DuplicateReport {
    std::size_t total_docs = 0;
    std::size_t candidate_pairs = 0;
    std::size_t identical = 0;
    std::size_t large = 0;
    std::size_t low = 0;
    std::array<std::size_t, 4> pairs_per_key{};
    std::vector<MatchedPair> pairs; // left id < right id, ordered
    std::vector<RecordId> removed;  // ascending
};

struct DedupResult {
    Corpus kept; // input order
    DuplicateReport report;
};

/// Intra-set duplicate removal. Candidates are citing records that cite the
/// same target and share a key; identical and largely similar candidates are
/// merged transitively and one record per group survives (most populated
/// fields, then smallest id). Targets are never removed.
DedupResult dedup(const Corpus &set, const Thresholds &t = {}, unsigned threads = 1);

} // namespace citelink
