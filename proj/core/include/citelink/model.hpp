#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace citelink {

/// Which export a record came from.
enum class Provenance { GsSearch, GsMetrics, Scopus };

enum class RecordKind { Target, Citing };

/// Source-database side of a provenance: both GS exports count as Google Scholar.
inline bool is_google_scholar(Provenance p) { return p != Provenance::Scopus; }

/// Identifier of a record. Unique within a corpus; assigned at ingestion when
/// the input does not carry one.
struct RecordId {
    std::uint64_t value = 0;

    friend auto operator<=>(const RecordId &, const RecordId &) = default;
};

struct RecordIdHash {
    std::size_t operator()(RecordId id) const noexcept { return std::hash<std::uint64_t>{}(id.value); }
};

/// One bibliographic record (a target article or a citing document) from one
/// database export.
struct BibRecord {
    RecordId id;
    Provenance provenance = Provenance::GsSearch;
    RecordKind kind = RecordKind::Target;
    std::optional<RecordId> cites_target;  // present iff kind == Citing
    std::string title;
    std::vector<std::string> authors;  // raw strings, possibly truncated
    std::optional<std::string> source_title;
    std::optional<std::string> publisher;
    std::optional<int> year;
    std::optional<std::string> volume;
    std::optional<std::string> start_page;
    std::optional<std::string> web_domain;
    std::optional<std::int64_t> citation_count;
    std::optional<int> entry_age_days;  // [0, 365]
    bool is_citation_stub = false;

    friend bool operator==(const BibRecord &, const BibRecord &) = default;
};

using Corpus = std::vector<BibRecord>;

/// Number of optional metadata fields carrying a value; title and author list
/// count when non-empty.
int populated_field_count(const BibRecord &record);

enum class AccessModality { OpenAccess, Subscription, Mixed };

struct JournalMeta {
    std::string title;
    std::string publisher;
    AccessModality access_modality = AccessModality::Subscription;
    std::optional<int> h5;
    std::optional<double> ipp;  // carried through, never computed
};

enum class CategoryValue {
    Both,
    GsOnlyScopusSource,
    GsOnlyNoScopusSource,
    ScopusOnlyGsSource,
    ScopusOnlyNoGsSource,
};

inline constexpr CategoryValue kAllCategories[] = {
    CategoryValue::Both,
    CategoryValue::GsOnlyScopusSource,
    CategoryValue::GsOnlyNoScopusSource,
    CategoryValue::ScopusOnlyGsSource,
    CategoryValue::ScopusOnlyNoGsSource,
};

/// Articles-in-press sub-split of GS-only documents in Scopus-covered sources.
/// UnknownPublisher keeps publishers missing from the AIP table apart from a
/// confirmed "no AIP".
enum class AipSplit { PossibleAip, NotAip, UnknownPublisher };

/// Overlap class of a citing document. The AIP split is present exactly when
/// the value is GsOnlyScopusSource.
class OverlapCategory {
public:
    static OverlapCategory make(CategoryValue value, std::optional<AipSplit> split = std::nullopt);

    CategoryValue value() const noexcept { return value_; }
    std::optional<AipSplit> aip_split() const noexcept { return aip_split_; }

    friend bool operator==(const OverlapCategory &, const OverlapCategory &) = default;

private:
    OverlapCategory(CategoryValue v, std::optional<AipSplit> s) : value_(v), aip_split_(s) {}

    CategoryValue value_;
    std::optional<AipSplit> aip_split_;
};

/// Tunable rule parameters. Defaults reproduce the published method.
struct Thresholds {
    int min_title_word_len = 4;
    int author_prefix_len = 6;
    int full_key_word_count = 10;
    double title_overlap_fraction = 0.5;
    int min_shared_title_words = 3;
    int max_year_gap = 2;
    int bin_width_days = 30;
    int horizon_days = 365;
    bool split_on_hyphen = true;
    /// Title overlap counts every word instead of only qualifying tokens.
    bool overlap_uses_all_words = false;

    /// Throws ConfigError when a parameter is out of range.
    void validate() const;
};

struct Violation {
    RecordId id;
    std::string rule;
    std::string detail;

    friend bool operator==(const Violation &, const Violation &) = default;
};

/// Lists every broken record invariant. An empty result means the corpus is valid.
std::vector<Violation> validate_corpus(const std::vector<BibRecord> &records);

std::string_view to_string(Provenance p);
std::string_view to_string(RecordKind k);
std::string_view to_string(CategoryValue c);
std::string_view to_string(AipSplit s);
std::string_view to_string(AccessModality m);

// Parsers reject unknown tokens with ParseError.
Provenance parse_provenance(std::string_view token);
RecordKind parse_record_kind(std::string_view token);
CategoryValue parse_category(std::string_view token);
AipSplit parse_aip_split(std::string_view token);
AccessModality parse_access_modality(std::string_view token);

} // namespace citelink
