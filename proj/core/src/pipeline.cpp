#include "citelink/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "citelink/csv.hpp"
#include "citelink/error.hpp"
#include "citelink/matchkeys.hpp"
#include "parallel.hpp"

namespace citelink {

namespace {

template <typename Fn>
auto stage(const char *name, Fn &&fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const StageError &) {
        throw;
    } catch (const std::exception &e) {
        throw StageError(name, e.what());
    }
}

std::size_t slot(Provenance p) { return static_cast<std::size_t>(p); }

using IdIndex = std::unordered_map<RecordId, const BibRecord *, RecordIdHash>;

IdIndex index_of(const Corpus &corpus) {
    IdIndex index;
    index.reserve(corpus.size());
    for (const auto &r : corpus)
        index.emplace(r.id, &r);
    return index;
}

// Exports number their rows per file, so ids may clash between corpora.
void make_ids_disjoint(PipelineInputs &in, std::vector<std::string> &warnings) {
    std::unordered_set<RecordId, RecordIdHash> seen;
    bool clash = false;
    for (const auto *corpus : {&in.gs_search, &in.gs_metrics, &in.scopus}) {
        std::unordered_set<RecordId, RecordIdHash> mine;
        for (const auto &r : *corpus) {
            if (seen.contains(r.id))
                clash = true;
            mine.insert(r.id);
        }
        seen.insert(mine.begin(), mine.end());
    }
    if (!clash)
        return;
    std::uint64_t offset = 0;
    for (auto *corpus : {&in.gs_search, &in.gs_metrics, &in.scopus}) {
        std::uint64_t max_id = 0;
        for (auto &r : *corpus) {
            r.id.value += offset;
            if (r.cites_target)
                r.cites_target->value += offset;
            max_id = std::max(max_id, r.id.value);
        }
        offset = std::max(offset, max_id + 1);
    }
    warnings.push_back("record ids overlap between input files; GS Metrics and Scopus ids were shifted");
}

void fill_missing(BibRecord &dst, const BibRecord &src) {
    auto fill = [](auto &to, const auto &from) {
        if (!to && from)
            to = from;
    };
    if (dst.authors.empty())
        dst.authors = src.authors;
    fill(dst.source_title, src.source_title);
    fill(dst.publisher, src.publisher);
    fill(dst.year, src.year);
    fill(dst.volume, src.volume);
    fill(dst.start_page, src.start_page);
    fill(dst.web_domain, src.web_domain);
    fill(dst.citation_count, src.citation_count);
    fill(dst.entry_age_days, src.entry_age_days);
}

MatchOptions base_match_options(const PipelineOptions &o) {
    MatchOptions m;
    m.enabled_keys = o.enabled_keys;
    m.keep_low_similarity = o.keep_low_similarity;
    m.threads = o.threads;
    return m;
}

std::string id_block(RecordId id) { return std::to_string(id.value); }

GsMerge merge_gs(const Corpus &search, const Corpus &metrics, const PipelineOptions &o) {
    GsMerge m;
    Corpus s_targets, m_targets;
    for (const auto &r : search)
        if (r.kind == RecordKind::Target)
            s_targets.push_back(r);
    for (const auto &r : metrics)
        if (r.kind == RecordKind::Target)
            m_targets.push_back(r);
    m.targets = match_merge(s_targets, m_targets, o.thresholds, base_match_options(o));

    std::map<RecordId, RecordId> metrics_to_search;
    for (const auto &p : m.targets.pairs) {
        metrics_to_search.emplace(p.right_id, p.left_id);
        m.search_to_metrics_target.emplace(p.left_id, p.right_id);
    }

    Corpus s_citing, m_citing;
    for (const auto &r : search)
        if (r.kind == RecordKind::Citing && m.search_to_metrics_target.contains(*r.cites_target))
            s_citing.push_back(r);
    for (const auto &r : metrics)
        if (r.kind == RecordKind::Citing && metrics_to_search.contains(*r.cites_target))
            m_citing.push_back(r);
    auto options = base_match_options(o);
    options.block = [&](const BibRecord &r) {
        return id_block(r.provenance == Provenance::GsMetrics ? metrics_to_search.at(*r.cites_target) : *r.cites_target);
    };
    m.citing = match_merge(s_citing, m_citing, o.thresholds, options);

    std::unordered_map<RecordId, RecordId, RecordIdHash> partner;
    for (const auto *pairs : {&m.targets.pairs, &m.citing.pairs})
        for (const auto &p : *pairs)
            partner.emplace(p.left_id, p.right_id);
    std::unordered_set<RecordId, RecordIdHash> matched_metrics;
    for (const auto &[s, mid] : partner)
        matched_metrics.insert(mid);

    const auto metrics_index = index_of(metrics);
    m.merged.reserve(search.size() + metrics.size());
    for (const auto &r : search) {
        BibRecord copy = r;
        if (auto it = partner.find(r.id); it != partner.end()) {
            fill_missing(copy, *metrics_index.at(it->second));
            m.with_metrics_copy.insert(r.id);
        }
        m.merged.push_back(std::move(copy));
    }
    for (const auto &r : metrics) {
        if (matched_metrics.contains(r.id))
            continue;
        BibRecord copy = r;
        if (copy.cites_target) {
            if (auto it = metrics_to_search.find(*copy.cites_target); it != metrics_to_search.end())
                copy.cites_target = it->second;
        }
        m.with_metrics_copy.insert(r.id);
        m.merged.push_back(std::move(copy));
    }
    return m;
}

struct Journal {
    std::string key;
    std::string name;
    std::vector<const BibRecord *> gs_targets;
    std::vector<const BibRecord *> scopus_targets;
    std::vector<AnalysisTarget> analysis;
};

std::optional<std::string> label_of(const BibRecord &r) {
    if (!r.source_title)
        return std::nullopt;
    auto label = normalize_label(*r.source_title);
    if (label.empty())
        return std::nullopt;
    return label;
}

std::vector<Journal> group_journals(const Corpus &gs, const Corpus &scopus, const MatchResult &links) {
    std::map<RecordId, RecordId> gs_to_scopus, scopus_to_gs;
    for (const auto &p : links.pairs) {
        gs_to_scopus.emplace(p.left_id, p.right_id);
        scopus_to_gs.emplace(p.right_id, p.left_id);
    }
    const auto scopus_index = index_of(scopus);

    std::map<std::string, Journal> by_key;
    std::map<RecordId, std::string> gs_key;
    std::vector<const BibRecord *> gs_targets, scopus_targets;
    for (const auto &r : gs)
        if (r.kind == RecordKind::Target)
            gs_targets.push_back(&r);
    for (const auto &r : scopus)
        if (r.kind == RecordKind::Target)
            scopus_targets.push_back(&r);
    auto by_id = [](const BibRecord *a, const BibRecord *b) { return a->id < b->id; };
    std::sort(gs_targets.begin(), gs_targets.end(), by_id);
    std::sort(scopus_targets.begin(), scopus_targets.end(), by_id);

    for (const auto *r : gs_targets) {
        auto label = label_of(*r);
        const BibRecord *named = label ? r : nullptr;
        if (!label) {
            if (auto it = gs_to_scopus.find(r->id); it != gs_to_scopus.end()) {
                named = scopus_index.at(it->second);
                label = label_of(*named);
            }
        }
        const auto key = label.value_or("");
        auto &j = by_key[key];
        if (j.name.empty()) {
            j.key = key;
            j.name = named && named->source_title ? *named->source_title : "(unknown source)";
        }
        j.gs_targets.push_back(r);
        gs_key.emplace(r->id, key);
    }
    for (const auto *r : scopus_targets) {
        std::string key;
        if (auto it = scopus_to_gs.find(r->id); it != scopus_to_gs.end())
            key = gs_key.at(it->second);
        else
            key = label_of(*r).value_or("");
        auto &j = by_key[key];
        if (j.name.empty()) {
            j.key = key;
            j.name = r->source_title ? *r->source_title : "(unknown source)";
        }
        j.scopus_targets.push_back(r);
    }

    std::vector<Journal> out;
    for (auto &[key, j] : by_key)
        out.push_back(std::move(j));
    std::sort(out.begin(), out.end(), [](const Journal &a, const Journal &b) {
        return std::tie(a.name, a.key) < std::tie(b.name, b.key);
    });
    return out;
}

std::vector<BibRecord> copies(const std::vector<const BibRecord *> &records) {
    std::vector<BibRecord> out;
    out.reserve(records.size());
    for (const auto *r : records)
        out.push_back(*r);
    return out;
}

template <typename Fn>
std::optional<double> guarded(Fn &&fn) {
    try {
        return fn();
    } catch (const Error &) {
        return std::nullopt;
    }
}

struct JournalResult {
    RatioRow ratio;
    OverlapRow overlap;
    CorrelationRow correlation;
    std::vector<TargetCitationRow> target_rows; // target citation counts
    std::vector<TargetCitationRow> citing_rows; // counts of citing documents
    std::string warning;
};

RatioRow ratio_row(const std::string &journal, std::span<const TargetCitationRow> rows) {
    RatioRow out;
    out.journal = journal;
    out.targets = rows.size();
    for (const auto &r : rows) {
        out.gs_sum += r.gs_count;
        out.scopus_sum += r.scopus_count;
    }
    if (!rows.empty()) {
        out.globalized = guarded([&] { return globalized_ratio(rows); });
        out.averaged = averaged_ratio(rows);
    }
    return out;
}

OverlapRow overlap_row(const std::string &journal, std::span<const TargetCitationRow> rows) {
    OverlapRow out;
    out.journal = journal;
    std::vector<double> ratios;
    for (const auto &r : rows) {
        out.gs += r.gs_count;
        out.scopus += r.scopus_count;
        out.both += r.both_count;
        ratios.push_back(article_ratio(r));
    }
    out.unique = out.gs + out.scopus - out.both;
    if (out.scopus > 0)
        out.ratio = static_cast<double>(out.gs) / static_cast<double>(out.scopus);
    if (out.unique > 0) {
        out.gs_share_pct = 100.0 * static_cast<double>(out.gs) / static_cast<double>(out.unique);
        out.scopus_share_pct = 100.0 * static_cast<double>(out.scopus) / static_cast<double>(out.unique);
    }
    try {
        out.dispersion = ratio_dispersion(ratios);
    } catch (const Error &) {
    }
    return out;
}

std::string year_sort_key(const std::string &label) {
    if (label == "N.A.")
        return "0";
    if (label == "<=2007")
        return "1";
    return "2" + std::string(8 - std::min<std::size_t>(8, label.size()), '0') + label;
}

std::vector<YearRow> merge_year_tables(const std::vector<YearBucket> &gs, const std::vector<YearBucket> &scopus) {
    std::map<std::string, YearRow> rows;
    for (const auto &b : gs) {
        auto &row = rows[year_sort_key(b.label)];
        row.label = b.label;
        row.gs_count = b.count;
        row.gs_pct = b.percent;
    }
    for (const auto &b : scopus) {
        auto &row = rows[year_sort_key(b.label)];
        row.label = b.label;
        row.scopus_count = b.count;
        row.scopus_pct = b.percent;
    }
    std::vector<YearRow> out;
    for (auto &[key, row] : rows)
        out.push_back(std::move(row));
    return out;
}

void append_category_rows(std::vector<CategoryRow> &out, const std::string &journal, const Corpus &gs_docs,
                          const Corpus &scopus_docs, const std::map<RecordId, OverlapCategory> &categories) {
    std::map<CategoryValue, std::size_t> counts;
    std::map<AipSplit, std::size_t> splits;
    for (const auto &r : gs_docs) {
        const auto &c = categories.at(r.id);
        ++counts[c.value()];
        if (c.aip_split())
            ++splits[*c.aip_split()];
    }
    for (const auto &r : scopus_docs) {
        const auto &c = categories.at(r.id);
        if (c.value() != CategoryValue::Both)
            ++counts[c.value()];
    }
    std::size_t total = 0;
    for (const auto &[c, n] : counts)
        total += n;
    auto pct = [&](std::size_t n) { return total ? 100.0 * static_cast<double>(n) / static_cast<double>(total) : 0.0; };
    for (auto c : kAllCategories) {
        out.push_back({journal, std::string(to_string(c)), "", counts[c], pct(counts[c])});
        if (c == CategoryValue::GsOnlyScopusSource) {
            for (auto s : {AipSplit::PossibleAip, AipSplit::NotAip, AipSplit::UnknownPublisher}) {
                if (s == AipSplit::UnknownPublisher && splits[s] == 0)
                    continue;
                out.push_back({journal, std::string(to_string(c)), std::string(to_string(s)), splits[s], pct(splits[s])});
            }
        }
    }
    out.push_back({journal, "TOTAL", "", total, total ? 100.0 : 0.0});
}

std::vector<RateRow> rate_table(const Corpus &gs_docs, const Corpus &scopus_docs,
                                const std::map<RecordId, OverlapCategory> &categories,
                                std::vector<RateDifference> &differences) {
    auto per_category = [&](const Corpus &docs) {
        const auto rates = age_normalized_rates(docs);
        std::vector<CategoryValue> cats;
        cats.reserve(docs.size());
        for (const auto &r : docs)
            cats.push_back(categories.at(r.id).value());
        std::map<CategoryValue, CategoryRate> out;
        for (const auto &row : category_mean_rates(rates.rate, cats))
            out.emplace(row.category, row);
        return out;
    };
    const auto gs = per_category(gs_docs);
    const auto scopus = per_category(scopus_docs);

    std::vector<RateRow> rows;
    for (auto c : kAllCategories) {
        RateRow row;
        row.category = c;
        if (auto it = gs.find(c); it != gs.end()) {
            row.gs_docs = it->second.docs;
            row.gs_rate = it->second.mean_rate;
        }
        if (auto it = scopus.find(c); it != scopus.end()) {
            row.scopus_docs = it->second.docs;
            row.scopus_rate = it->second.mean_rate;
        }
        rows.push_back(row);
    }

    auto diff = [&](const char *perspective, const std::map<CategoryValue, CategoryRate> &side, CategoryValue hi,
                    CategoryValue lo) {
        auto a = side.find(hi);
        auto b = side.find(lo);
        if (a == side.end() || b == side.end() || a->second.mean_rate == 0.0)
            return;
        differences.push_back({perspective, hi, lo, a->second.mean_rate, b->second.mean_rate,
                               percent_difference(a->second.mean_rate, b->second.mean_rate)});
    };
    diff("GS_SEARCH", gs, CategoryValue::Both, CategoryValue::GsOnlyNoScopusSource);
    diff("GS_SEARCH", gs, CategoryValue::GsOnlyScopusSource, CategoryValue::GsOnlyNoScopusSource);
    diff("SCOPUS", scopus, CategoryValue::Both, CategoryValue::ScopusOnlyNoGsSource);
    diff("SCOPUS", scopus, CategoryValue::ScopusOnlyGsSource, CategoryValue::ScopusOnlyNoGsSource);
    return rows;
}

std::string corpus_name(Provenance p) {
    switch (p) {
    case Provenance::GsSearch: return "gs_search";
    case Provenance::GsMetrics: return "gs_metrics";
    case Provenance::Scopus: return "scopus";
    }
    return "corpus";
}

} // namespace

PipelineArtifacts run_pipeline(PipelineInputs in, const PipelineOptions &o) {
    PipelineArtifacts a;
    auto &report = a.report;
    const auto &t = o.thresholds;

    stage("config", [&] {
        t.validate();
        if (o.top_gs == 0 || o.top_scopus == 0)
            throw ConfigError("top-k sizes must be positive");
    });
    stage("validate", [&] {
        for (const auto *corpus : {&in.gs_search, &in.gs_metrics, &in.scopus}) {
            const auto violations = validate_corpus(*corpus);
            if (!violations.empty())
                throw Error(std::to_string(violations.size()) + " invariant violation(s), first: record " +
                            std::to_string(violations.front().id.value) + " " + violations.front().rule);
        }
        make_ids_disjoint(in, report.warnings);
    });
    report.summary.gs_search_records = in.gs_search.size();
    report.summary.gs_metrics_records = in.gs_metrics.size();
    report.summary.scopus_records = in.scopus.size();

    stage("clean", [&] {
        for (auto *corpus : {&in.gs_search, &in.gs_metrics, &in.scopus}) {
            if (corpus->empty())
                continue;
            const auto p = corpus->front().provenance;
            a.cleaned[slot(p)] = clean_corpus(*corpus, t);
            for (const auto &d : a.cleaned[slot(p)].deleted)
                report.deletions.push_back({p, d});
        }
    });
    stage("dedup", [&] {
        for (auto p : {Provenance::GsSearch, Provenance::GsMetrics, Provenance::Scopus}) {
            a.deduped[slot(p)] = dedup(a.cleaned[slot(p)].kept, t, o.threads);
            report.duplicates.push_back({p, a.deduped[slot(p)].report});
        }
    });

    const auto &search = a.deduped[slot(Provenance::GsSearch)].kept;
    const auto &metrics = a.deduped[slot(Provenance::GsMetrics)].kept;
    const auto &scopus = a.deduped[slot(Provenance::Scopus)].kept;

    stage("merge_gs", [&] {
        a.gs = merge_gs(search, metrics, o);
        std::unordered_set<RecordId, RecordIdHash> matched_search, matched_metrics;
        for (const auto &p : a.gs.citing.pairs) {
            matched_search.insert(p.left_id);
            matched_metrics.insert(p.right_id);
        }
        for (const auto &r : search)
            report.summary.search_only += r.kind == RecordKind::Citing && !matched_search.contains(r.id);
        for (const auto &r : metrics)
            report.summary.metrics_only += r.kind == RecordKind::Citing && !matched_metrics.contains(r.id);
        report.summary.merged_gs_records = a.gs.merged.size();
    });

    std::vector<Journal> journals;
    stage("select", [&] {
        Corpus gs_targets, scopus_targets;
        for (const auto &r : a.gs.merged)
            if (r.kind == RecordKind::Target)
                gs_targets.push_back(r);
        for (const auto &r : scopus)
            if (r.kind == RecordKind::Target)
                scopus_targets.push_back(r);
        a.target_links = match_merge(gs_targets, scopus_targets, t, base_match_options(o));
        report.summary.linked_targets = a.target_links.pairs.size();

        journals = group_journals(a.gs.merged, scopus, a.target_links);
        for (auto &j : journals) {
            const auto gs_j = copies(j.gs_targets);
            const auto scopus_j = copies(j.scopus_targets);
            auto sel = select_analysis_set(gs_j, scopus_j, a.target_links.pairs, o.top_gs, o.top_scopus);
            if (sel.empty_warning && !gs_j.empty())
                report.warnings.push_back("journal '" + j.name + "': no GS target is among the top Scopus targets");
            else if (sel.short_gs)
                report.warnings.push_back("journal '" + j.name + "': fewer than " + std::to_string(o.top_gs) +
                                          " linked targets");
            j.analysis = sel.targets;
            for (const auto &target : sel.targets) {
                a.analysis.targets.push_back(target);
                a.journal_of_target[target.gs_id] = j.name;
                a.journal_of_target[target.scopus_id] = j.name;
            }
            a.analysis.short_gs = a.analysis.short_gs || sel.short_gs;
            a.analysis.short_scopus = a.analysis.short_scopus || sel.short_scopus;
        }
        a.analysis.empty_warning = a.analysis.targets.empty();
        if (a.analysis.empty_warning)
            report.warnings.push_back("analysis set is empty");
        report.summary.analysis_targets = a.analysis.targets.size();
    });

    std::map<RecordId, RecordId> scopus_target_to_gs;
    stage("match", [&] {
        std::set<RecordId> gs_ids;
        for (const auto &target : a.analysis.targets) {
            gs_ids.insert(target.gs_id);
            scopus_target_to_gs.emplace(target.scopus_id, target.gs_id);
        }
        for (const auto &r : a.gs.merged)
            if (r.kind == RecordKind::Citing && gs_ids.contains(*r.cites_target))
                a.gs_citing.push_back(r);
        for (const auto &r : scopus)
            if (r.kind == RecordKind::Citing && scopus_target_to_gs.contains(*r.cites_target))
                a.scopus_citing.push_back(r);
        auto options = base_match_options(o);
        options.block = [&](const BibRecord &r) {
            return id_block(r.provenance == Provenance::Scopus ? scopus_target_to_gs.at(*r.cites_target)
                                                               : *r.cites_target);
        };
        a.citing_links = match_merge(a.gs_citing, a.scopus_citing, t, options);
        report.summary.gs_citing = a.gs_citing.size();
        report.summary.scopus_citing = a.scopus_citing.size();
        report.summary.citing_pairs = a.citing_links.pairs.size();
    });

    stage("coverage", [&] {
        for (const auto &title : in.scopus_source_list)
            a.thesaurus.mark_in_scopus_list(title);
        report.source_pairs = infer_source_pairs(a.citing_links.pairs, a.gs_citing, a.scopus_citing, a.thesaurus,
                                                 in.allowlist ? &*in.allowlist : nullptr);
        std::unordered_set<RecordId, RecordIdHash> matched;
        for (const auto &p : a.citing_links.pairs) {
            matched.insert(p.left_id);
            matched.insert(p.right_id);
        }
        const auto *aip = in.aip_table ? &*in.aip_table : nullptr;
        for (const auto *docs : {&a.gs_citing, &a.scopus_citing})
            for (const auto &r : *docs)
                a.categories.emplace(r.id, categorize(r, matched.contains(r.id), a.thesaurus, aip));
        if (!aip)
            report.warnings.push_back("no AIP table given; GS-only documents in Scopus sources are not split");
    });

    stage("metrics", [&] {
        // Per-target tallies of citing documents.
        std::map<RecordId, TargetCitationRow> tally; // by GS target id
        for (const auto &target : a.analysis.targets)
            tally[target.gs_id].target_id = target.gs_id;
        std::unordered_set<RecordId, RecordIdHash> matched_gs;
        for (const auto &p : a.citing_links.pairs)
            matched_gs.insert(p.left_id);
        for (const auto &r : a.gs_citing) {
            auto &row = tally.at(*r.cites_target);
            ++row.gs_count;
            switch (a.categories.at(r.id).value()) {
            case CategoryValue::Both: ++row.both_count; break;
            case CategoryValue::GsOnlyScopusSource: ++row.gs_only_scopus_source; break;
            default: ++row.gs_only_no_scopus_source; break;
            }
        }
        for (const auto &r : a.scopus_citing) {
            auto &row = tally.at(scopus_target_to_gs.at(*r.cites_target));
            ++row.scopus_count;
            const auto c = a.categories.at(r.id).value();
            if (c == CategoryValue::ScopusOnlyGsSource)
                ++row.scopus_only_gs_source;
            else if (c == CategoryValue::ScopusOnlyNoGsSource)
                ++row.scopus_only_no_gs_source;
        }

        const auto gs_index = index_of(a.gs.merged);
        const auto scopus_index = index_of(scopus);
        const auto metrics_index = index_of(metrics);
        auto count_of = [](const BibRecord *r) { return r->citation_count.value_or(0); };

        std::vector<JournalResult> results(journals.size());
        std::vector<std::exception_ptr> failures(journals.size());
        detail::parallel_for(journals.size(), o.threads, [&](std::size_t i) {
            try {
                const auto &j = journals[i];
                auto &res = results[i];
                std::vector<double> gs_counts, scopus_counts, metrics_counts, metrics_scopus;
                std::vector<std::int64_t> journal_counts;
                for (const auto *r : j.gs_targets)
                    journal_counts.push_back(r->citation_count.value_or(0));
                const auto threshold = h5(journal_counts);
                for (const auto &target : j.analysis) {
                    const auto *g = gs_index.at(target.gs_id);
                    const auto *s = scopus_index.at(target.scopus_id);
                    TargetCitationRow row;
                    row.target_id = target.gs_id;
                    row.gs_count = count_of(g);
                    row.scopus_count = count_of(s);
                    res.target_rows.push_back(row);
                    res.citing_rows.push_back(tally.at(target.gs_id));
                    gs_counts.push_back(static_cast<double>(row.gs_count));
                    scopus_counts.push_back(static_cast<double>(row.scopus_count));

                    const BibRecord *m = nullptr;
                    if (auto it = a.gs.search_to_metrics_target.find(target.gs_id);
                        it != a.gs.search_to_metrics_target.end())
                        m = metrics_index.at(it->second);
                    else if (g->provenance == Provenance::GsMetrics)
                        m = g;
                    if (m && m->citation_count && *m->citation_count >= threshold) {
                        metrics_counts.push_back(static_cast<double>(*m->citation_count));
                        metrics_scopus.push_back(static_cast<double>(row.scopus_count));
                    }
                }
                res.ratio = ratio_row(j.name, res.target_rows);
                res.overlap = overlap_row(j.name, res.citing_rows);
                auto &c = res.correlation;
                c.journal = j.name;
                c.n_search = gs_counts.size();
                c.pearson_search = guarded([&] { return pearson(gs_counts, scopus_counts); });
                c.spearman_search = guarded([&] { return spearman(gs_counts, scopus_counts); });
                c.n_metrics = metrics_counts.size();
                c.pearson_metrics = guarded([&] { return pearson(metrics_counts, metrics_scopus); });
                c.spearman_metrics = guarded([&] { return spearman(metrics_counts, metrics_scopus); });
            } catch (...) {
                failures[i] = std::current_exception();
            }
        });
        for (const auto &f : failures)
            if (f)
                std::rethrow_exception(f);

        std::vector<TargetCitationRow> all_targets, all_citing;
        for (const auto &res : results) {
            all_targets.insert(all_targets.end(), res.target_rows.begin(), res.target_rows.end());
            all_citing.insert(all_citing.end(), res.citing_rows.begin(), res.citing_rows.end());
        }
        report.table4.push_back(ratio_row(kAllJournals, all_targets));
        report.table5.push_back(overlap_row(kAllJournals, all_citing));
        for (const auto &res : results) {
            if (res.ratio.targets == 0)
                continue;
            report.table4.push_back(res.ratio);
            report.table5.push_back(res.overlap);
            report.table10.push_back(res.correlation);
        }
        report.ratio_count_pearson = guarded([&] { return ratio_count_correlation(all_targets); });

        // Year distribution: all GS citing documents against the Scopus side of
        // the matched pairs.
        const auto scopus_citing_index = index_of(a.scopus_citing);
        Corpus scopus_both;
        for (const auto &p : a.citing_links.pairs)
            scopus_both.push_back(*scopus_citing_index.at(p.right_id));
        report.table6 = merge_year_tables(year_distribution(a.gs_citing), year_distribution(scopus_both));

        append_category_rows(report.table7, kAllJournals, a.gs_citing, a.scopus_citing, a.categories);
        for (const auto &j : journals) {
            if (j.analysis.empty())
                continue;
            Corpus gs_j, scopus_j;
            for (const auto &r : a.gs_citing)
                if (a.journal_of_target.at(*r.cites_target) == j.name)
                    gs_j.push_back(r);
            for (const auto &r : a.scopus_citing)
                if (a.journal_of_target.at(*r.cites_target) == j.name)
                    scopus_j.push_back(r);
            append_category_rows(report.table7, j.name, gs_j, scopus_j, a.categories);
        }

        Corpus gs_no_scopus, scopus_no_gs;
        for (const auto &r : a.gs_citing)
            if (a.categories.at(r.id).value() == CategoryValue::GsOnlyNoScopusSource)
                gs_no_scopus.push_back(r);
        for (const auto &r : a.scopus_citing)
            if (a.categories.at(r.id).value() == CategoryValue::ScopusOnlyNoGsSource)
                scopus_no_gs.push_back(r);
        report.table8.push_back({std::string(to_string(CategoryValue::GsOnlyNoScopusSource)), "WEB_DOMAIN",
                                 entity_distribution(gs_no_scopus, EntityKind::WebDomain)});
        report.table8.push_back({std::string(to_string(CategoryValue::GsOnlyNoScopusSource)), "SOURCE",
                                 entity_distribution(gs_no_scopus, EntityKind::SourceTitle)});
        report.table8.push_back({std::string(to_string(CategoryValue::ScopusOnlyNoGsSource)), "SOURCE",
                                 entity_distribution(scopus_no_gs, EntityKind::SourceTitle)});

        // GS perspective uses GS Search documents only.
        Corpus search_docs;
        for (const auto &r : a.gs_citing)
            if (r.provenance == Provenance::GsSearch)
                search_docs.push_back(r);
        report.table9 = rate_table(search_docs, a.scopus_citing, a.categories, report.table9_differences);
    });

    stage("timing", [&] {
        std::vector<TimedDoc> docs;
        docs.reserve(a.gs_citing.size());
        for (const auto &r : a.gs_citing) {
            TimedDoc d;
            d.entry_age_days = r.entry_age_days;
            d.category = a.categories.at(r.id);
            d.breakdown_eligible = a.gs.with_metrics_copy.contains(r.id) && label_of(r).has_value();
            docs.push_back(d);
        }
        report.fig5 = bin_by_entry_age(docs, t.bin_width_days, t.horizon_days);
        report.fig5_ratio = overlap_ratio_series(report.fig5.bins);
        report.fig6 = aip_breakdown_series(report.fig5.bins);
        report.delay = delay_quantiles(found_fraction_series(report.fig6), t.bin_width_days);
        if (report.delay.non_monotone)
            report.warnings.push_back("found-in-Scopus series is not monotone; quantiles use the first crossing");
        if (report.fig5.missing_age > 0)
            report.warnings.push_back(std::to_string(report.fig5.missing_age) +
                                      " GS citing document(s) without entry age left out of the cohort bins");
    });
    return a;
}

void PipelineConfig::validate() const {
    options.thresholds.validate();
    if (gs_search.empty())
        throw ConfigError("no GS Search input given");
    if (scopus.empty())
        throw ConfigError("no Scopus input given");
    if (out_dir.empty())
        throw ConfigError("no output directory given");
    if (options.top_gs == 0 || options.top_scopus == 0)
        throw ConfigError("top-k sizes must be positive");
}

LoadedInputs load_inputs(const PipelineConfig &config) {
    LoadedInputs loaded;
    auto read = [&](const std::filesystem::path &path, RecordFormat format, Provenance p) {
        auto result = stage("ingest", [&] { return ingest(path, format, p); });
        for (auto &e : result.errors)
            loaded.row_errors.emplace_back(path.filename().string(), std::move(e));
        if (!result.violations.empty()) {
            const auto &v = result.violations.front();
            throw StageError("validate", path.string() + ": " + std::to_string(result.violations.size()) +
                                             " invariant violation(s), first: record " + std::to_string(v.id.value) +
                                             " " + v.rule + " (" + v.detail + ")");
        }
        return std::move(result.records);
    };
    loaded.inputs.gs_search = read(config.gs_search, config.gs_format, Provenance::GsSearch);
    if (!config.gs_metrics.empty())
        loaded.inputs.gs_metrics = read(config.gs_metrics, config.gs_format, Provenance::GsMetrics);
    loaded.inputs.scopus = read(config.scopus, config.scopus_format, Provenance::Scopus);
    stage("ingest", [&] {
        if (!config.source_list.empty())
            loaded.inputs.scopus_source_list = read_source_list(config.source_list);
        if (!config.aip_table.empty())
            loaded.inputs.aip_table = read_aip_table(config.aip_table);
        if (!config.allowlist.empty())
            loaded.inputs.allowlist = read_allowlist(config.allowlist);
    });
    return loaded;
}

ComparisonReport run_pipeline(const PipelineConfig &config) {
    stage("config", [&] { config.validate(); });
    auto loaded = load_inputs(config);
    auto artifacts = run_pipeline(std::move(loaded.inputs), config.options);
    for (const auto &[file, e] : loaded.row_errors)
        artifacts.report.warnings.push_back(file + " line " + std::to_string(e.line) + ": " + e.message);
    stage("report", [&] {
        std::filesystem::create_directories(config.out_dir);
        write_report(artifacts.report, config.out_dir, config.report);
        if (config.dump_intermediates)
            dump_intermediates(artifacts, config.out_dir / "intermediates", config.options.thresholds);
    });
    return std::move(artifacts.report);
}

void dump_intermediates(const PipelineArtifacts &a, const std::filesystem::path &dir, const Thresholds &thresholds) {
    std::filesystem::create_directories(dir);
    auto open = [&](const std::string &name) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out)
            throw Error("cannot write '" + (dir / name).string() + "'");
        return out;
    };
    auto opt = [](const std::optional<std::string> &v) { return v.value_or(""); };

    for (auto p : {Provenance::GsSearch, Provenance::GsMetrics, Provenance::Scopus}) {
        const auto &kept = a.deduped[slot(p)].kept;
        {
            auto out = open("deduped_" + corpus_name(p) + ".jsonl");
            write_jsonl(out, kept);
        }
        auto out = open("keys_" + corpus_name(p) + ".csv");
        out << csv::join_row({"id", "full_key", "title_key", "short_key", "source_key"});
        for (const auto &r : kept) {
            const auto k = compute_keys(r, thresholds);
            out << csv::join_row({std::to_string(r.id.value), opt(k.full_key), opt(k.title_key), opt(k.short_key),
                                  opt(k.source_key)});
        }
        auto removed = open("removed_" + corpus_name(p) + ".csv");
        removed << csv::join_row({"id"});
        for (const auto id : a.deduped[slot(p)].report.removed)
            removed << csv::join_row({std::to_string(id.value)});
        auto dups = open("dup_pairs_" + corpus_name(p) + ".csv");
        dups << csv::join_row({"left_id", "right_id", "key", "similarity"});
        for (const auto &pair : a.deduped[slot(p)].report.pairs)
            dups << csv::join_row({std::to_string(pair.left_id.value), std::to_string(pair.right_id.value),
                                   std::string(to_string(pair.key_used)), std::string(to_string(pair.similarity))});
    }
    {
        auto out = open("merged_gs.jsonl");
        write_jsonl(out, a.gs.merged);
    }
    auto pairs = [&](const std::string &name, const MatchResult &m) {
        auto out = open(name);
        out << csv::join_row({"left_id", "right_id", "key", "similarity"});
        for (const auto &p : m.pairs)
            out << csv::join_row({std::to_string(p.left_id.value), std::to_string(p.right_id.value),
                                  std::string(to_string(p.key_used)), std::string(to_string(p.similarity))});
    };
    pairs("pairs_search_metrics_targets.csv", a.gs.targets);
    pairs("pairs_search_metrics_citing.csv", a.gs.citing);
    pairs("pairs_targets.csv", a.target_links);
    pairs("pairs_citing.csv", a.citing_links);

    auto out = open("categories.csv");
    out << csv::join_row({"id", "provenance", "journal", "category", "aip_split"});
    auto emit = [&](const Corpus &docs) {
        for (const auto &r : docs) {
            const auto &c = a.categories.at(r.id);
            out << csv::join_row({std::to_string(r.id.value), std::string(to_string(r.provenance)),
                                  a.journal_of_target.at(*r.cites_target), std::string(to_string(c.value())),
                                  c.aip_split() ? std::string(to_string(*c.aip_split())) : std::string()});
        }
    };
    emit(a.gs_citing);
    emit(a.scopus_citing);
}

} // namespace citelink
