#include "oracles/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "citelink/matchkeys.hpp"

namespace oracle {

using namespace citelink;

MatchResult brute_force_match(const Corpus &a, const Corpus &b, const Thresholds &t, const MatchOptions &options) {
    Corpus left = a;
    Corpus right = b;
    auto by_id = [](const BibRecord &x, const BibRecord &y) { return x.id < y.id; };
    std::sort(left.begin(), left.end(), by_id);
    std::sort(right.begin(), right.end(), by_id);

    std::vector<KeyBundle> keys_left, keys_right;
    for (const auto &r : left)
        keys_left.push_back(compute_keys(r, t));
    for (const auto &r : right)
        keys_right.push_back(compute_keys(r, t));

    std::vector<bool> used_left(left.size(), false);
    std::vector<bool> used_right(right.size(), false);
    MatchResult result;
    for (KeyKind kind : kKeyPrecedence) {
        const auto k = static_cast<std::size_t>(kind);
        if (!options.enabled_keys[k])
            continue;
        for (std::size_t i = 0; i < left.size(); ++i) {
            if (used_left[i])
                continue;
            const auto &ka = keys_left[i].get(kind);
            if (!ka)
                continue;
            for (std::size_t j = 0; j < right.size(); ++j) {
                if (used_right[j])
                    continue;
                const auto &kb = keys_right[j].get(kind);
                if (!kb || *kb != *ka)
                    continue;
                if (options.block && options.block(left[i]) != options.block(right[j]))
                    continue;
                const auto sim = classify_pair(left[i], right[j], t);
                if (sim == Similarity::Low && !options.keep_low_similarity)
                    continue;
                used_left[i] = used_right[j] = true;
                result.pairs.push_back({left[i].id, right[j].id, kind, sim});
                ++result.matches_per_key[k];
                break;
            }
        }
    }
    std::sort(result.pairs.begin(), result.pairs.end(),
              [](const MatchedPair &x, const MatchedPair &y) { return x.left_id < y.left_id; });
    for (std::size_t i = 0; i < left.size(); ++i) {
        if (!used_left[i])
            result.unmatched_a.push_back(left[i].id);
        if (keys_left[i].empty())
            result.unkeyed.push_back(left[i].id);
    }
    for (std::size_t j = 0; j < right.size(); ++j) {
        if (!used_right[j])
            result.unmatched_b.push_back(right[j].id);
        if (keys_right[j].empty())
            result.unkeyed.push_back(right[j].id);
    }
    return result;
}

double pearson(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("pearson oracle: bad lengths");
    const auto n = static_cast<long double>(x.size());
    long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const long double xi = x[i], yi = y[i];
        sx += xi;
        sy += yi;
        sxx += xi * xi;
        syy += yi * yi;
        sxy += xi * yi;
    }
    const long double num = n * sxy - sx * sy;
    const long double den = std::sqrt(n * sxx - sx * sx) * std::sqrt(n * syy - sy * sy);
    return static_cast<double>(num / den);
}

namespace {

std::vector<double> counting_ranks(const std::vector<double> &v) {
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::size_t less = 0, equal = 0;
        for (double w : v) {
            less += w < v[i];
            equal += w == v[i];
        }
        // Positions less+1 .. less+equal share their mean.
        ranks[i] = static_cast<double>(less) + (static_cast<double>(equal) + 1.0) / 2.0;
    }
    return ranks;
}

} // namespace

double spearman(const std::vector<double> &x, const std::vector<double> &y) {
    return pearson(counting_ranks(x), counting_ranks(y));
}

int brute_force_h5(const std::vector<std::int64_t> &counts) {
    int best = 0;
    for (int h = 0; h <= static_cast<int>(counts.size()); ++h) {
        const auto at_least = std::count_if(counts.begin(), counts.end(), [h](std::int64_t c) { return c >= h; });
        if (at_least >= h)
            best = h;
    }
    return best;
}

} // namespace oracle
