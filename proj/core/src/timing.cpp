#include "citelink/timing.hpp"

#include "citelink/error.hpp"

namespace citelink {

namespace {

std::optional<int> first_crossing(std::span<const FoundFraction> series, double level, int bin_width) {
    for (const auto &point : series) {
        if (point.fraction >= level)
            return point.label + bin_width;
    }
    return std::nullopt;
}

std::optional<double> to_months(std::optional<int> days) {
    if (!days)
        return std::nullopt;
    return static_cast<double>(*days) / 30.0;
}

} // namespace

Binning bin_by_entry_age(std::span<const TimedDoc> docs, int bin_width, int horizon) {
    if (bin_width <= 0 || horizon <= 0)
        throw ConfigError("bin width and horizon must be positive");
    Binning out;
    const int n_bins = (horizon + bin_width - 1) / bin_width;
    out.bins.resize(static_cast<std::size_t>(n_bins));
    for (int b = 0; b < n_bins; ++b)
        out.bins[static_cast<std::size_t>(b)].label = b * bin_width;

    for (const auto &doc : docs) {
        const auto value = doc.category.value();
        if (value == CategoryValue::ScopusOnlyGsSource || value == CategoryValue::ScopusOnlyNoGsSource) {
            ++out.not_google_scholar;
            continue;
        }
        if (!doc.entry_age_days || *doc.entry_age_days < 0) {
            ++out.missing_age;
            continue;
        }
        if (*doc.entry_age_days >= horizon) {
            ++out.beyond_horizon;
            continue;
        }
        auto &bin = out.bins[static_cast<std::size_t>(*doc.entry_age_days / bin_width)];
        if (value == CategoryValue::Both) {
            ++bin.count_both;
            if (doc.breakdown_eligible)
                ++bin.found_in_scopus;
            continue;
        }
        ++bin.count_gs_only;
        if (value == CategoryValue::GsOnlyScopusSource && doc.breakdown_eligible) {
            if (doc.category.aip_split() == AipSplit::PossibleAip)
                ++bin.possible_aip;
            else
                ++bin.not_aip;
        }
    }
    return out;
}

std::vector<std::optional<double>> overlap_ratio_series(std::span<const CohortBin> bins) {
    std::vector<std::optional<double>> out;
    out.reserve(bins.size());
    for (const auto &bin : bins) {
        if (bin.count_both == 0)
            out.emplace_back();
        else
            out.emplace_back(static_cast<double>(bin.count_gs_only) / static_cast<double>(bin.count_both));
    }
    return out;
}

std::vector<BreakdownRow> aip_breakdown_series(std::span<const CohortBin> bins, bool skip_first_bin) {
    std::vector<BreakdownRow> out;
    for (std::size_t i = skip_first_bin ? 1 : 0; i < bins.size(); ++i) {
        const auto &bin = bins[i];
        const auto total = bin.breakdown_total();
        if (total == 0)
            continue;
        const double n = static_cast<double>(total);
        out.push_back({bin.label, total, 100.0 * static_cast<double>(bin.found_in_scopus) / n,
                       100.0 * static_cast<double>(bin.possible_aip) / n,
                       100.0 * static_cast<double>(bin.not_aip) / n});
    }
    return out;
}

std::vector<FoundFraction> found_fraction_series(std::span<const BreakdownRow> rows) {
    std::vector<FoundFraction> out;
    out.reserve(rows.size());
    for (const auto &row : rows)
        out.push_back({row.label, row.found_pct / 100.0});
    return out;
}

std::optional<double> DelayQuantiles::median_months() const { return to_months(median_days); }
std::optional<double> DelayQuantiles::q3_months() const { return to_months(q3_days); }

DelayQuantiles delay_quantiles(std::span<const FoundFraction> series, int bin_width) {
    DelayQuantiles out;
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (series[i].fraction < series[i - 1].fraction)
            out.non_monotone = true;
    }
    out.median_days = first_crossing(series, 0.5, bin_width);
    out.q3_days = first_crossing(series, 0.75, bin_width);
    return out;
}

} // namespace citelink
