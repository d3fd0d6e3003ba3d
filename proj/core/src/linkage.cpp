#include "citelink/linkage.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "citelink/error.hpp"
#include "citelink/normalize.hpp"
#include "parallel.hpp"

namespace citelink {

namespace {

// Per-record features used by classification, computed once.
struct Features {
    std::vector<std::string> tokens;         // qualifying title tokens
    std::vector<std::string> overlap_tokens; // tokens used for the overlap test
    std::vector<std::string> last_names;     // ordered, unparseable authors skipped
    std::optional<int> year;
    std::optional<std::string> source;
    std::optional<std::string> volume;
    std::optional<std::string> start_page;
};

Features prepare(const BibRecord &r, const Thresholds &t) {
    Features f;
    f.tokens = tokenize_title(r.title, t);
    f.overlap_tokens = t.overlap_uses_all_words ? tokenize_title(r.title, 1, t.split_on_hyphen) : f.tokens;
    for (const auto &a : r.authors) {
        if (auto name = try_normalize_author(a))
            f.last_names.push_back(std::move(name->last));
    }
    f.year = r.year;
    if (r.source_title) {
        auto label = normalize_label(*r.source_title);
        if (!label.empty())
            f.source = std::move(label);
    }
    f.volume = normalize_number_field(r.volume);
    f.start_page = normalize_number_field(r.start_page);
    return f;
}

template <typename T>
bool agrees(const std::optional<T> &a, const std::optional<T> &b) {
    return !a || !b || *a == *b;
}

template <typename T>
bool agrees(const std::vector<T> &a, const std::vector<T> &b) {
    return a.empty() || b.empty() || a == b;
}

std::size_t shared_distinct(const std::vector<std::string> &a, const std::vector<std::string> &b) {
    const std::set<std::string_view> sa(a.begin(), a.end());
    const std::set<std::string_view> sb(b.begin(), b.end());
    std::size_t n = 0;
    for (auto w : sa)
        n += sb.contains(w);
    return n;
}

Similarity classify(const Features &a, const Features &b, const Thresholds &t) {
    if (agrees(a.tokens, b.tokens) && agrees(a.last_names, b.last_names) && agrees(a.year, b.year) &&
        agrees(a.source, b.source) && agrees(a.volume, b.volume) && agrees(a.start_page, b.start_page))
        return Similarity::Identical;

    const auto shared = shared_distinct(a.overlap_tokens, b.overlap_tokens);
    if (shared < static_cast<std::size_t>(t.min_shared_title_words))
        return Similarity::Low;
    const auto overlap = title_overlap(a.overlap_tokens, b.overlap_tokens);
    if (overlap.in_a < t.title_overlap_fraction || overlap.in_b < t.title_overlap_fraction)
        return Similarity::Low;

    const std::set<std::string_view> names_a(a.last_names.begin(), a.last_names.end());
    const bool common_author = std::any_of(b.last_names.begin(), b.last_names.end(),
                                           [&](const std::string &n) { return names_a.contains(n); });
    if (!common_author)
        return Similarity::Low;

    if (a.year && b.year && std::abs(*a.year - *b.year) > t.max_year_gap)
        return Similarity::Low;
    return Similarity::Large;
}

struct Prepared {
    std::vector<std::size_t> order; // indices sorted by id
    std::vector<KeyBundle> keys;
    std::vector<Features> features;
    std::vector<std::string> blocks;
};

Prepared prepare_set(const Corpus &set, const Thresholds &t, const MatchOptions &options) {
    Prepared p;
    p.order.resize(set.size());
    std::iota(p.order.begin(), p.order.end(), std::size_t{0});
    std::sort(p.order.begin(), p.order.end(), [&](std::size_t x, std::size_t y) { return set[x].id < set[y].id; });
    p.keys.resize(set.size());
    p.features.resize(set.size());
    p.blocks.resize(set.size());
    detail::parallel_for(set.size(), options.threads, [&](std::size_t i) {
        p.keys[i] = compute_keys(set[i], t);
        p.features[i] = prepare(set[i], t);
        if (options.block)
            p.blocks[i] = options.block(set[i]);
    });
    return p;
}

bool accepted(Similarity s, const MatchOptions &options) {
    return options.keep_low_similarity || s != Similarity::Low;
}

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

} // namespace

std::string_view to_string(Similarity s) {
    switch (s) {
    case Similarity::Identical:
        return "IDENTICAL";
    case Similarity::Large:
        return "LARGE";
    case Similarity::Low:
        return "LOW";
    }
    return "?";
}

Similarity parse_similarity(std::string_view token) {
    for (auto s : {Similarity::Identical, Similarity::Large, Similarity::Low}) {
        if (to_string(s) == token)
            return s;
    }
    throw ParseError("unknown similarity token '" + std::string(token) + "'");
}

TitleOverlap title_overlap(std::span<const std::string> tokens_a, std::span<const std::string> tokens_b) {
    if (tokens_a.empty() || tokens_b.empty())
        return {};
    const std::set<std::string_view> sa(tokens_a.begin(), tokens_a.end());
    const std::set<std::string_view> sb(tokens_b.begin(), tokens_b.end());
    std::size_t shared = 0;
    for (auto w : sa)
        shared += sb.contains(w);
    return {static_cast<double>(shared) / static_cast<double>(sa.size()),
            static_cast<double>(shared) / static_cast<double>(sb.size())};
}

Similarity classify_pair(const BibRecord &a, const BibRecord &b, const Thresholds &t) {
    return classify(prepare(a, t), prepare(b, t), t);
}

MatchResult match_merge(const Corpus &set_a, const Corpus &set_b, const Thresholds &t, const MatchOptions &options) {
    const Prepared pa = prepare_set(set_a, t, options);
    const Prepared pb = prepare_set(set_b, t, options);
    std::vector<bool> matched_a(set_a.size(), false);
    std::vector<bool> matched_b(set_b.size(), false);

    MatchResult result;
    for (KeyKind kind : kKeyPrecedence) {
        const auto k = static_cast<std::size_t>(kind);
        if (!options.enabled_keys[k])
            continue;

        // (block, key) -> unmatched right records, ascending id.
        std::map<std::pair<std::string_view, std::string_view>, std::vector<std::size_t>> index;
        for (std::size_t j : pb.order) {
            const auto &key = pb.keys[j].get(kind);
            if (!matched_b[j] && key)
                index[{pb.blocks[j], *key}].push_back(j);
        }

        for (std::size_t i : pa.order) {
            const auto &key = pa.keys[i].get(kind);
            if (matched_a[i] || !key)
                continue;
            auto it = index.find({pa.blocks[i], *key});
            if (it == index.end())
                continue;
            for (std::size_t j : it->second) {
                if (matched_b[j])
                    continue;
                const auto sim = classify(pa.features[i], pb.features[j], t);
                if (!accepted(sim, options))
                    continue;
                matched_a[i] = matched_b[j] = true;
                result.pairs.push_back({set_a[i].id, set_b[j].id, kind, sim});
                ++result.matches_per_key[k];
                break;
            }
        }
    }

    std::sort(result.pairs.begin(), result.pairs.end(),
              [](const MatchedPair &x, const MatchedPair &y) { return x.left_id < y.left_id; });
    for (std::size_t i : pa.order) {
        if (!matched_a[i])
            result.unmatched_a.push_back(set_a[i].id);
        if (pa.keys[i].empty())
            result.unkeyed.push_back(set_a[i].id);
    }
    for (std::size_t j : pb.order) {
        if (!matched_b[j])
            result.unmatched_b.push_back(set_b[j].id);
        if (pb.keys[j].empty())
            result.unkeyed.push_back(set_b[j].id);
    }
    return result;
}

DedupResult dedup(const Corpus &set, const Thresholds &t, unsigned threads) {
    MatchOptions options;
    options.threads = threads;
    const Prepared p = prepare_set(set, t, options);

    // Candidate pairs (positions in id order) with the first key that formed them.
    std::vector<std::pair<std::size_t, std::size_t>> candidates;
    std::vector<KeyKind> candidate_keys;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (KeyKind kind : kKeyPrecedence) {
        std::map<std::pair<RecordId, std::string_view>, std::vector<std::size_t>> groups;
        for (std::size_t i : p.order) {
            const auto &r = set[i];
            const auto &key = p.keys[i].get(kind);
            if (r.kind == RecordKind::Citing && r.cites_target && key)
                groups[{*r.cites_target, *key}].push_back(i);
        }
        for (const auto &[group_key, members] : groups) {
            for (std::size_t x = 0; x < members.size(); ++x) {
                for (std::size_t y = x + 1; y < members.size(); ++y) {
                    const auto pair = std::make_pair(members[x], members[y]);
                    if (seen.insert(pair).second) {
                        candidates.push_back(pair);
                        candidate_keys.push_back(kind);
                    }
                }
            }
        }
    }

    std::vector<Similarity> classes(candidates.size());
    detail::parallel_for(candidates.size(), threads, [&](std::size_t c) {
        classes[c] = classify(p.features[candidates[c].first], p.features[candidates[c].second], t);
    });

    DedupResult result;
    auto &report = result.report;
    report.total_docs = set.size();
    report.candidate_pairs = candidates.size();

    DisjointSets components(set.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        const auto [x, y] = candidates[c];
        report.pairs.push_back({set[x].id, set[y].id, candidate_keys[c], classes[c]});
        ++report.pairs_per_key[static_cast<std::size_t>(candidate_keys[c])];
        switch (classes[c]) {
        case Similarity::Identical:
            ++report.identical;
            components.unite(x, y);
            break;
        case Similarity::Large:
            ++report.large;
            components.unite(x, y);
            break;
        case Similarity::Low:
            ++report.low;
            break;
        }
    }
    std::sort(report.pairs.begin(), report.pairs.end(), [](const MatchedPair &a, const MatchedPair &b) {
        return std::tie(a.left_id, a.right_id) < std::tie(b.left_id, b.right_id);
    });

    // Representative per component: most populated fields, then smallest id.
    std::unordered_map<std::size_t, std::size_t> representative;
    for (std::size_t i : p.order) {
        const auto root = components.find(i);
        auto [it, inserted] = representative.emplace(root, i);
        if (!inserted && populated_field_count(set[i]) > populated_field_count(set[it->second]))
            it->second = i;
    }

    std::vector<bool> removed(set.size(), false);
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (representative.at(components.find(i)) != i) {
            removed[i] = true;
            report.removed.push_back(set[i].id);
        }
    }
    std::sort(report.removed.begin(), report.removed.end());
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (!removed[i])
            result.kept.push_back(set[i]);
    }
    return result;
}

} // namespace citelink
