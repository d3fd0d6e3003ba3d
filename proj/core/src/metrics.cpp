#include "citelink/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "citelink/error.hpp"

namespace citelink {

namespace {

double mean(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::int64_t count_of(const BibRecord &r) { return r.citation_count.value_or(0); }

std::vector<double> ratios_of(std::span<const TargetCitationRow> rows) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto &row : rows)
        out.push_back(article_ratio(row));
    return out;
}

} // namespace

bool TargetCitationRow::consistent() const {
    return both_count + gs_only_scopus_source + gs_only_no_scopus_source + scopus_only_gs_source +
               scopus_only_no_gs_source ==
           gs_count + scopus_count - both_count;
}

double globalized_ratio(std::span<const TargetCitationRow> rows) {
    std::int64_t gs = 0;
    std::int64_t scopus = 0;
    for (const auto &row : rows) {
        gs += row.gs_count;
        scopus += row.scopus_count;
    }
    if (scopus == 0)
        throw ZeroDenominatorError("sum of Scopus citation counts is zero");
    return static_cast<double>(gs) / static_cast<double>(scopus);
}

double article_ratio(const TargetCitationRow &row) {
    return static_cast<double>(row.gs_count) / static_cast<double>(std::max<std::int64_t>(row.scopus_count, 1));
}

double averaged_ratio(std::span<const TargetCitationRow> rows) {
    if (rows.empty())
        throw Error("averaged_ratio needs at least one row");
    const auto ratios = ratios_of(rows);
    return mean(ratios);
}

double ratio_count_correlation(std::span<const TargetCitationRow> rows) {
    const auto ratios = ratios_of(rows);
    std::vector<double> scopus;
    scopus.reserve(rows.size());
    for (const auto &row : rows)
        scopus.push_back(static_cast<double>(row.scopus_count));
    return pearson(ratios, scopus);
}

Dispersion ratio_dispersion(std::span<const double> ratios) {
    if (ratios.size() < 2)
        throw Error("ratio_dispersion needs at least two ratios");
    const double m = mean(ratios);
    if (m == 0.0)
        throw ZeroDenominatorError("mean ratio is zero");
    double ss = 0.0;
    for (double r : ratios)
        ss += (r - m) * (r - m);
    const double sd = std::sqrt(ss / static_cast<double>(ratios.size() - 1));
    return {sd / m, 100.0 * sd / m};
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw Error("pearson: inputs differ in length");
    if (x.size() < 2)
        throw Error("pearson: at least two observations required");
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw ConstantInputError("correlation undefined for constant input");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i + 1;
        while (j < order.size() && values[order[j]] == values[order[i]])
            ++j;
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k)
            ranks[order[k]] = rank;
        i = j;
    }
    return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw Error("spearman: inputs differ in length");
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    return pearson(rx, ry);
}

AgeNormalizedRates age_normalized_rates(std::span<const BibRecord> docs) {
    AgeNormalizedRates out;
    out.rate.resize(docs.size());
    std::map<int, std::pair<double, std::size_t>> totals;
    for (const auto &d : docs) {
        if (d.year && d.citation_count) {
            auto &[sum, n] = totals[*d.year];
            sum += static_cast<double>(*d.citation_count);
            ++n;
        } else {
            out.excluded.push_back(d.id);
        }
    }
    for (const auto &[year, t] : totals) {
        const double m = t.first / static_cast<double>(t.second);
        out.year_mean[year] = m;
        if (m == 0.0)
            out.zero_mean_years.push_back(year);
    }
    for (std::size_t i = 0; i < docs.size(); ++i) {
        const auto &d = docs[i];
        if (!d.year || !d.citation_count)
            continue;
        const double m = out.year_mean.at(*d.year);
        out.rate[i] = m == 0.0 ? 0.0 : static_cast<double>(*d.citation_count) / m;
    }
    return out;
}

std::vector<CategoryRate> category_mean_rates(std::span<const std::optional<double>> rates,
                                              std::span<const CategoryValue> categories) {
    if (rates.size() != categories.size())
        throw Error("category_mean_rates: rates and categories differ in length");
    std::map<CategoryValue, std::pair<double, std::size_t>> acc;
    for (std::size_t i = 0; i < rates.size(); ++i) {
        if (!rates[i])
            continue;
        auto &[sum, n] = acc[categories[i]];
        sum += *rates[i];
        ++n;
    }
    std::vector<CategoryRate> out;
    for (CategoryValue c : kAllCategories) {
        auto it = acc.find(c);
        if (it == acc.end())
            continue;
        out.push_back({c, it->second.second, it->second.first / static_cast<double>(it->second.second)});
    }
    return out;
}

double percent_difference(double a, double b) {
    if (a == 0.0)
        throw ZeroDenominatorError("percent difference against zero");
    return 100.0 * (a - b) / a;
}

std::vector<YearBucket> year_distribution(std::span<const BibRecord> docs) {
    std::size_t missing = 0;
    std::size_t early = 0;
    std::map<int, std::size_t> by_year;
    for (const auto &d : docs) {
        if (!d.year)
            ++missing;
        else if (*d.year <= 2007)
            ++early;
        else
            ++by_year[*d.year];
    }
    std::vector<YearBucket> out;
    out.push_back({"N.A.", missing, 0.0});
    out.push_back({"<=2007", early, 0.0});
    if (!by_year.empty()) {
        for (int y = 2008; y <= by_year.rbegin()->first; ++y) {
            auto it = by_year.find(y);
            out.push_back({std::to_string(y), it == by_year.end() ? 0 : it->second, 0.0});
        }
    }
    for (auto &b : out)
        b.percent = docs.empty() ? 0.0 : 100.0 * static_cast<double>(b.count) / static_cast<double>(docs.size());
    return out;
}

Selection select_top_cited(std::span<const BibRecord> records, std::size_t k) {
    std::vector<const BibRecord *> sorted;
    sorted.reserve(records.size());
    for (const auto &r : records)
        sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(), [](const BibRecord *a, const BibRecord *b) {
        const auto ca = count_of(*a);
        const auto cb = count_of(*b);
        return ca != cb ? ca > cb : a->id < b->id;
    });
    Selection out;
    out.short_input = records.size() < k;
    const auto n = std::min(k, sorted.size());
    for (std::size_t i = 0; i < n; ++i)
        out.records.push_back(*sorted[i]);
    return out;
}

AnalysisSelection select_analysis_set(std::span<const BibRecord> gs_targets, std::span<const BibRecord> scopus_targets,
                                      const std::vector<MatchedPair> &target_links, std::size_t k_gs,
                                      std::size_t k_scopus) {
    AnalysisSelection out;
    const auto top_scopus = select_top_cited(scopus_targets, k_scopus);
    out.short_scopus = top_scopus.short_input;
    std::unordered_map<RecordId, bool, RecordIdHash> in_top_scopus;
    for (const auto &r : top_scopus.records)
        in_top_scopus[r.id] = true;

    std::unordered_map<RecordId, RecordId, RecordIdHash> link;
    for (const auto &p : target_links) {
        if (in_top_scopus.contains(p.right_id))
            link.emplace(p.left_id, p.right_id);
    }

    std::vector<BibRecord> eligible;
    for (const auto &r : gs_targets) {
        if (link.contains(r.id))
            eligible.push_back(r);
    }
    const auto chosen = select_top_cited(eligible, k_gs);
    out.short_gs = chosen.short_input;
    for (const auto &r : chosen.records)
        out.targets.push_back({r.id, link.at(r.id)});
    out.empty_warning = out.targets.empty();
    return out;
}

int h5(std::span<const std::int64_t> citation_counts) {
    std::vector<std::int64_t> sorted(citation_counts.begin(), citation_counts.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    int h = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] >= static_cast<std::int64_t>(i + 1))
            h = static_cast<int>(i + 1);
        else
            break;
    }
    return h;
}

} // namespace citelink
