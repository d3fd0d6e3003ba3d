#include "citelink/model.hpp"

#include <array>
#include <unordered_map>
#include <utility>

#include "citelink/error.hpp"

namespace citelink {

namespace {

template <typename Enum, std::size_t N>
Enum parse_token(std::string_view token, const std::array<std::pair<std::string_view, Enum>, N> &table,
                 std::string_view what) {
    for (const auto &[name, value] : table) {
        if (name == token)
            return value;
    }
    throw ParseError("unknown " + std::string(what) + " token '" + std::string(token) + "'");
}

template <typename Enum, std::size_t N>
std::string_view name_of(Enum value, const std::array<std::pair<std::string_view, Enum>, N> &table) {
    for (const auto &[name, v] : table) {
        if (v == value)
            return name;
    }
    return "?";
}

constexpr std::array<std::pair<std::string_view, Provenance>, 3> kProvenanceNames{{
    {"GS_SEARCH", Provenance::GsSearch},
    {"GS_METRICS", Provenance::GsMetrics},
    {"SCOPUS", Provenance::Scopus},
}};

constexpr std::array<std::pair<std::string_view, RecordKind>, 2> kKindNames{{
    {"TARGET", RecordKind::Target},
    {"CITING", RecordKind::Citing},
}};

constexpr std::array<std::pair<std::string_view, CategoryValue>, 5> kCategoryNames{{
    {"BOTH", CategoryValue::Both},
    {"GS_ONLY_SCOPUS_SOURCE", CategoryValue::GsOnlyScopusSource},
    {"GS_ONLY_NO_SCOPUS_SOURCE", CategoryValue::GsOnlyNoScopusSource},
    {"SCOPUS_ONLY_GS_SOURCE", CategoryValue::ScopusOnlyGsSource},
    {"SCOPUS_ONLY_NO_GS_SOURCE", CategoryValue::ScopusOnlyNoGsSource},
}};

constexpr std::array<std::pair<std::string_view, AipSplit>, 3> kAipNames{{
    {"POSSIBLE_AIP", AipSplit::PossibleAip},
    {"NOT_AIP", AipSplit::NotAip},
    {"UNKNOWN_PUBLISHER", AipSplit::UnknownPublisher},
}};

constexpr std::array<std::pair<std::string_view, AccessModality>, 3> kAccessNames{{
    {"OA", AccessModality::OpenAccess},
    {"SB", AccessModality::Subscription},
    {"MIXED", AccessModality::Mixed},
}};

} // namespace

int populated_field_count(const BibRecord &r) {
    int n = 0;
    n += !r.title.empty();
    n += !r.authors.empty();
    n += r.source_title.has_value();
    n += r.publisher.has_value();
    n += r.year.has_value();
    n += r.volume.has_value();
    n += r.start_page.has_value();
    n += r.web_domain.has_value();
    n += r.citation_count.has_value();
    n += r.entry_age_days.has_value();
    return n;
}

OverlapCategory OverlapCategory::make(CategoryValue value, std::optional<AipSplit> split) {
    const bool needs_split = value == CategoryValue::GsOnlyScopusSource;
    if (needs_split != split.has_value())
        throw Error("AIP split must be present exactly for GS_ONLY_SCOPUS_SOURCE");
    return OverlapCategory(value, split);
}

void Thresholds::validate() const {
    if (min_title_word_len <= 0 || author_prefix_len <= 0 || full_key_word_count <= 0 || min_shared_title_words <= 0 ||
        max_year_gap <= 0 || bin_width_days <= 0 || horizon_days <= 0)
        throw ConfigError("all thresholds must be strictly positive");
    if (!(title_overlap_fraction > 0.0 && title_overlap_fraction <= 1.0))
        throw ConfigError("title_overlap_fraction must lie in (0, 1]");
}

std::vector<Violation> validate_corpus(const std::vector<BibRecord> &records) {
    std::vector<Violation> out;
    std::unordered_map<RecordId, const BibRecord *, RecordIdHash> by_id;
    for (const auto &r : records) {
        if (!by_id.emplace(r.id, &r).second)
            out.push_back({r.id, "duplicate_id", "id " + std::to_string(r.id.value) + " appears more than once"});
    }

    for (const auto &r : records) {
        if (r.kind == RecordKind::Citing) {
            if (!r.cites_target) {
                out.push_back({r.id, "citing_without_target", "CITING record has no cites_target"});
            } else {
                auto it = by_id.find(*r.cites_target);
                if (it == by_id.end())
                    out.push_back({r.id, "unknown_target",
                                   "cites_target " + std::to_string(r.cites_target->value) + " does not exist"});
                else if (it->second->kind != RecordKind::Target)
                    out.push_back({r.id, "target_not_target",
                                   "cites_target " + std::to_string(r.cites_target->value) + " is not a TARGET"});
            }
        } else if (r.cites_target) {
            out.push_back({r.id, "target_with_cites_target", "TARGET record carries cites_target"});
        }
        if (r.entry_age_days && (*r.entry_age_days < 0 || *r.entry_age_days > 365))
            out.push_back({r.id, "entry_age_out_of_range",
                           "entry_age_days " + std::to_string(*r.entry_age_days) + " outside [0, 365]"});
        if (r.citation_count && *r.citation_count < 0)
            out.push_back({r.id, "negative_citation_count",
                           "citation_count " + std::to_string(*r.citation_count) + " is negative"});
    }
    return out;
}

std::string_view to_string(Provenance p) { return name_of(p, kProvenanceNames); }
std::string_view to_string(RecordKind k) { return name_of(k, kKindNames); }
std::string_view to_string(CategoryValue c) { return name_of(c, kCategoryNames); }
std::string_view to_string(AipSplit s) { return name_of(s, kAipNames); }
std::string_view to_string(AccessModality m) { return name_of(m, kAccessNames); }

Provenance parse_provenance(std::string_view t) { return parse_token(t, kProvenanceNames, "provenance"); }
RecordKind parse_record_kind(std::string_view t) { return parse_token(t, kKindNames, "kind"); }
CategoryValue parse_category(std::string_view t) { return parse_token(t, kCategoryNames, "category"); }
AipSplit parse_aip_split(std::string_view t) { return parse_token(t, kAipNames, "aip_split"); }
AccessModality parse_access_modality(std::string_view t) { return parse_token(t, kAccessNames, "access modality"); }

} // namespace citelink
