#include "citelink/coverage.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "citelink/normalize.hpp"

namespace citelink {

namespace {

std::optional<std::string> normalized_source(const BibRecord &r) {
    if (!r.source_title)
        return std::nullopt;
    auto label = normalize_label(*r.source_title);
    if (label.empty())
        return std::nullopt;
    return label;
}

const BibRecord *find(const std::unordered_map<RecordId, const BibRecord *, RecordIdHash> &index, RecordId id) {
    auto it = index.find(id);
    return it == index.end() ? nullptr : it->second;
}

} // namespace

void SourceThesaurus::mark_in_scopus_list(std::string_view title) {
    auto key = normalize_label(title);
    if (!key.empty())
        entries_[std::move(key)].in_scopus_list = true;
}

void SourceThesaurus::mark_inferred(std::string_view title) {
    auto key = normalize_label(title);
    if (key.empty())
        return;
    auto &flags = entries_[std::move(key)];
    flags.inferred_in_scopus = true;
    flags.inferred_in_gs = true;
}

std::optional<SourceCoverage> SourceThesaurus::lookup(std::string_view title) const {
    auto it = entries_.find(normalize_label(title));
    if (it == entries_.end())
        return std::nullopt;
    return it->second;
}

bool SourceThesaurus::covered_by_scopus(std::string_view title) const {
    const auto flags = lookup(title);
    return flags && (flags->in_scopus_list || flags->inferred_in_scopus);
}

bool SourceThesaurus::covered_by_gs(std::string_view title) const {
    const auto flags = lookup(title);
    return flags && flags->inferred_in_gs;
}

void PublisherAipTable::set(std::string_view publisher, bool has_aip) {
    auto key = normalize_label(publisher);
    if (!key.empty())
        entries_[std::move(key)] = has_aip;
}

std::optional<bool> PublisherAipTable::has_aip(std::string_view publisher) const {
    auto it = entries_.find(normalize_label(publisher));
    if (it == entries_.end())
        return std::nullopt;
    return it->second;
}

std::vector<SourcePairReview> infer_source_pairs(const std::vector<MatchedPair> &gs_scopus_pairs, const Corpus &gs,
                                                 const Corpus &scopus, SourceThesaurus &thesaurus,
                                                 const SourcePairAllowlist *allowlist) {
    std::unordered_map<RecordId, const BibRecord *, RecordIdHash> gs_index;
    std::unordered_map<RecordId, const BibRecord *, RecordIdHash> scopus_index;
    for (const auto &r : gs)
        gs_index.emplace(r.id, &r);
    for (const auto &r : scopus)
        scopus_index.emplace(r.id, &r);

    std::map<std::pair<std::string, std::string>, std::size_t> seen;
    for (const auto &pair : gs_scopus_pairs) {
        const auto *left = find(gs_index, pair.left_id);
        const auto *right = find(scopus_index, pair.right_id);
        if (!left || !right)
            continue;
        auto gs_source = normalized_source(*left);
        auto scopus_source = normalized_source(*right);
        if (!gs_source || !scopus_source)
            continue;
        auto title_pair = std::make_pair(std::move(*gs_source), std::move(*scopus_source));
        if (!allowlist || allowlist->contains(title_pair)) {
            thesaurus.mark_inferred(title_pair.first);
            thesaurus.mark_inferred(title_pair.second);
        }
        ++seen[std::move(title_pair)];
    }

    std::vector<SourcePairReview> review;
    review.reserve(seen.size());
    for (auto &[titles, count] : seen)
        review.push_back({titles.first, titles.second, count});
    return review;
}

AipSplit aip_status(const BibRecord &record, const PublisherAipTable &table) {
    if (!record.publisher)
        return AipSplit::UnknownPublisher;
    const auto has = table.has_aip(*record.publisher);
    if (!has)
        return AipSplit::UnknownPublisher;
    return *has ? AipSplit::PossibleAip : AipSplit::NotAip;
}

OverlapCategory categorize(const BibRecord &record, bool matched, const SourceThesaurus &thesaurus,
                           const PublisherAipTable *aip_table) {
    if (matched)
        return OverlapCategory::make(CategoryValue::Both);
    const auto source = record.source_title.value_or(std::string{});
    if (is_google_scholar(record.provenance)) {
        if (thesaurus.covered_by_scopus(source)) {
            const auto split = aip_table ? aip_status(record, *aip_table) : AipSplit::UnknownPublisher;
            return OverlapCategory::make(CategoryValue::GsOnlyScopusSource, split);
        }
        return OverlapCategory::make(CategoryValue::GsOnlyNoScopusSource);
    }
    return OverlapCategory::make(thesaurus.covered_by_gs(source) ? CategoryValue::ScopusOnlyGsSource
                                                                 : CategoryValue::ScopusOnlyNoGsSource);
}

AipCounts split_aip(const std::vector<BibRecord> &records, const PublisherAipTable &table) {
    AipCounts counts;
    for (const auto &r : records) {
        switch (aip_status(r, table)) {
        case AipSplit::PossibleAip:
            ++counts.possible_aip;
            break;
        case AipSplit::NotAip:
            ++counts.not_aip;
            break;
        case AipSplit::UnknownPublisher:
            ++counts.unknown_publisher;
            break;
        }
    }
    return counts;
}

DistStats entity_distribution(const std::vector<BibRecord> &records, EntityKind entity, std::size_t top_k) {
    DistStats stats;
    stats.docs = records.size();
    std::map<std::string, std::size_t> counts;
    for (const auto &r : records) {
        const auto &field = entity == EntityKind::WebDomain ? r.web_domain : r.source_title;
        std::string key = field ? normalize_label(*field) : std::string{};
        if (entity == EntityKind::WebDomain && field) {
            // Domains keep their dots; only case and surrounding blanks are normalized.
            key.clear();
            for (char c : *field) {
                if (c != ' ' && c != '\t')
                    key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            }
        }
        if (key.empty()) {
            ++stats.missing;
            continue;
        }
        ++counts[key];
    }
    stats.entities = counts.size();
    for (const auto &[name, n] : counts) {
        stats.once += n == 1;
        stats.max_appearances = std::max(stats.max_appearances, n);
        stats.top.push_back({name, n});
    }
    stats.once_pct = stats.entities == 0 ? 0.0 : 100.0 * static_cast<double>(stats.once) / static_cast<double>(stats.entities);
    std::stable_sort(stats.top.begin(), stats.top.end(),
                     [](const EntityCount &a, const EntityCount &b) { return a.count > b.count; });
    if (stats.top.size() > top_k)
        stats.top.resize(top_k);
    return stats;
}

} // namespace citelink
