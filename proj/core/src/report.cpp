#include "citelink/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "citelink/csv.hpp"
#include "citelink/error.hpp"

namespace citelink {

using nlohmann::ordered_json;

namespace {

std::string num(std::int64_t v) { return std::to_string(v); }
std::string num(std::size_t v) { return std::to_string(v); }

std::string dec(std::optional<double> v, int decimals = 1) { return v ? csv::fixed(*v, decimals) : std::string(); }

std::string pct_of(std::size_t part, std::size_t whole) {
    return whole ? csv::fixed(100.0 * static_cast<double>(part) / static_cast<double>(whole), 1) : std::string();
}

std::string table(const std::vector<std::string> &header, const std::vector<std::vector<std::string>> &rows) {
    std::string out = csv::join_row(header);
    for (const auto &row : rows)
        out += csv::join_row(row);
    return out;
}

std::string md_table(const std::vector<std::string> &header, const std::vector<std::vector<std::string>> &rows) {
    auto line = [](const std::vector<std::string> &cells) {
        std::string out = "|";
        for (const auto &c : cells) {
            std::string cell = c;
            std::replace(cell.begin(), cell.end(), '|', '/');
            out += " " + (cell.empty() ? std::string(".") : cell) + " |";
        }
        return out + "\n";
    };
    std::string out = line(header);
    out += "|";
    for (std::size_t i = 0; i < header.size(); ++i)
        out += i == 0 ? " --- |" : " ---: |";
    out += "\n";
    for (const auto &row : rows)
        out += line(row);
    return out;
}

// Each table is kept as header + string rows so CSV and Markdown agree.
struct Grid {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

Grid grid4(const ComparisonReport &r) {
    Grid g{{"journal", "targets", "sum_cites_gs", "sum_cites_scopus", "globalized_ratio", "averaged_ratio"}, {}};
    for (const auto &row : r.table4)
        g.rows.push_back({row.journal, num(row.targets), num(row.gs_sum), num(row.scopus_sum), dec(row.globalized),
                          dec(row.averaged)});
    return g;
}

Grid grid5(const ComparisonReport &r) {
    Grid g{{"journal", "cites_gs", "cites_scopus", "cites_both", "unique_cites", "ratio_gs_scopus", "pct_gs_of_unique",
            "pct_scopus_of_unique", "stdev_mean_ratio", "stdev_mean_ratio_pct"},
           {}};
    for (const auto &row : r.table5)
        g.rows.push_back({row.journal, num(row.gs), num(row.scopus), num(row.both), num(row.unique), dec(row.ratio),
                          dec(row.gs_share_pct), dec(row.scopus_share_pct),
                          row.dispersion ? csv::fixed(row.dispersion->fraction, 3) : std::string(),
                          row.dispersion ? csv::fixed(row.dispersion->percent, 1) : std::string()});
    return g;
}

Grid grid6(const ComparisonReport &r) {
    Grid g{{"year", "gs_count", "gs_pct", "scopus_count", "scopus_pct"}, {}};
    for (const auto &row : r.table6)
        g.rows.push_back({row.label, num(row.gs_count), csv::fixed(row.gs_pct, 1), num(row.scopus_count),
                          csv::fixed(row.scopus_pct, 1)});
    return g;
}

Grid grid7(const ComparisonReport &r) {
    Grid g{{"journal", "category", "subcategory", "count", "percent"}, {}};
    for (const auto &row : r.table7)
        g.rows.push_back({row.journal, row.category, row.subcategory, num(row.count), csv::fixed(row.percent, 1)});
    return g;
}

Grid grid8(const ComparisonReport &r) {
    Grid g{{"universe", "entity", "docs", "docs_missing_entity", "docs_missing_pct", "entities", "entities_once",
            "entities_once_pct", "max_appearances"},
           {}};
    for (const auto &row : r.table8) {
        const auto &s = row.stats;
        g.rows.push_back({row.universe, row.entity, num(s.docs), num(s.missing), pct_of(s.missing, s.docs),
                          num(s.entities), num(s.once), s.entities ? csv::fixed(s.once_pct, 1) : std::string(),
                          num(s.max_appearances)});
    }
    return g;
}

Grid grid9(const ComparisonReport &r) {
    Grid g{{"category", "gs_docs", "gs_mean_rate", "scopus_docs", "scopus_mean_rate"}, {}};
    for (const auto &row : r.table9)
        g.rows.push_back({std::string(to_string(row.category)), num(row.gs_docs), dec(row.gs_rate, 2),
                          num(row.scopus_docs), dec(row.scopus_rate, 2)});
    return g;
}

Grid grid9_diff(const ComparisonReport &r) {
    Grid g{{"perspective", "higher", "lower", "rate_higher", "rate_lower", "pct_difference"}, {}};
    for (const auto &d : r.table9_differences)
        g.rows.push_back({d.perspective, std::string(to_string(d.higher)), std::string(to_string(d.lower)),
                          csv::fixed(d.a, 2), csv::fixed(d.b, 2), csv::fixed(d.percent, 0)});
    return g;
}

Grid grid10(const ComparisonReport &r) {
    Grid g{{"journal", "n_search", "pearson_search", "spearman_search", "n_metrics", "pearson_metrics",
            "spearman_metrics"},
           {}};
    for (const auto &row : r.table10)
        g.rows.push_back({row.journal, num(row.n_search), dec(row.pearson_search, 2), dec(row.spearman_search, 2),
                          num(row.n_metrics), dec(row.pearson_metrics, 2), dec(row.spearman_metrics, 2)});
    return g;
}

Grid grid_fig5(const ComparisonReport &r) {
    Grid g{{"bin_start_days", "count_both", "count_gs_only", "total", "ratio_gs_only_both"}, {}};
    for (std::size_t i = 0; i < r.fig5.bins.size(); ++i) {
        const auto &b = r.fig5.bins[i];
        g.rows.push_back({std::to_string(b.label), num(b.count_both), num(b.count_gs_only), num(b.total()),
                          i < r.fig5_ratio.size() ? dec(r.fig5_ratio[i], 2) : std::string()});
    }
    return g;
}

Grid grid_fig6(const ComparisonReport &r) {
    Grid g{{"bin_start_days", "total", "found_in_scopus_pct", "possible_aip_pct", "not_aip_pct"}, {}};
    for (const auto &row : r.fig6)
        g.rows.push_back({std::to_string(row.label), num(row.total), csv::fixed(row.found_pct, 1),
                          csv::fixed(row.possible_aip_pct, 1), csv::fixed(row.not_aip_pct, 1)});
    return g;
}

Grid grid_dup(const ComparisonReport &r) {
    Grid g{{"corpus", "total_docs", "candidate_pairs", "candidate_pair_pct", "identical", "large", "low", "pairs_full",
            "pairs_title", "pairs_short", "pairs_source", "removed"},
           {}};
    for (const auto &d : r.duplicates) {
        const auto &rep = d.report;
        g.rows.push_back({std::string(to_string(d.corpus)), num(rep.total_docs), num(rep.candidate_pairs),
                          pct_of(rep.candidate_pairs, rep.total_docs), num(rep.identical), num(rep.large),
                          num(rep.low), num(rep.pairs_per_key[0]), num(rep.pairs_per_key[1]),
                          num(rep.pairs_per_key[2]), num(rep.pairs_per_key[3]), num(rep.removed.size())});
    }
    return g;
}

Grid grid_deletions(const ComparisonReport &r) {
    Grid g{{"corpus", "id", "rule", "value"}, {}};
    for (const auto &d : r.deletions)
        g.rows.push_back({std::string(to_string(d.corpus)), std::to_string(d.deletion.id.value),
                          std::string(to_string(d.deletion.rule)), d.deletion.value});
    return g;
}

Grid grid_pairs(const ComparisonReport &r) {
    Grid g{{"gs_source", "scopus_source", "pair_count"}, {}};
    for (const auto &p : r.source_pairs)
        g.rows.push_back({p.gs_source, p.scopus_source, num(p.pair_count)});
    return g;
}

std::string csv_of(const Grid &g) { return table(g.header, g.rows); }
std::string md_of(const Grid &g) { return md_table(g.header, g.rows); }

ordered_json opt_json(std::optional<double> v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write '" + path.string() + "'");
    out << content;
}

std::string escape_xml(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

// Stacked bar chart; each bar is a list of segment heights.
std::string stacked_bars(const std::string &title, const std::vector<std::string> &labels,
                         const std::vector<std::vector<double>> &bars, const std::vector<std::string> &series,
                         double y_max) {
    static const char *kColors[] = {"#4472c4", "#ed7d31", "#a5a5a5", "#ffc000"};
    const int width = 720, height = 400, left = 60, bottom = 40, top = 40;
    const int plot_h = height - bottom - top;
    const double slot_w = bars.empty() ? 0.0 : static_cast<double>(width - left - 20) / static_cast<double>(bars.size());
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    svg << "<text x=\"" << left << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << escape_xml(title)
        << "</text>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - 20 << "\" y2=\""
        << height - bottom << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"5\" y=\"" << top + 4 << "\" font-family=\"sans-serif\" font-size=\"10\">"
        << csv::fixed(y_max, 0) << "</text>\n";
    for (std::size_t i = 0; i < bars.size(); ++i) {
        double y = height - bottom;
        const double x = left + slot_w * static_cast<double>(i) + slot_w * 0.1;
        for (std::size_t s = 0; s < bars[i].size(); ++s) {
            const double h = y_max > 0 ? bars[i][s] / y_max * plot_h : 0.0;
            y -= h;
            svg << "<rect x=\"" << csv::fixed(x, 1) << "\" y=\"" << csv::fixed(y, 1) << "\" width=\""
                << csv::fixed(slot_w * 0.8, 1) << "\" height=\"" << csv::fixed(h, 1) << "\" fill=\""
                << kColors[s % 4] << "\"/>\n";
        }
        svg << "<text x=\"" << csv::fixed(x, 1) << "\" y=\"" << height - bottom + 14
            << "\" font-family=\"sans-serif\" font-size=\"10\">" << escape_xml(labels[i]) << "</text>\n";
    }
    for (std::size_t s = 0; s < series.size(); ++s) {
        const int y = top + 14 * static_cast<int>(s);
        svg << "<rect x=\"" << width - 200 << "\" y=\"" << y - 9 << "\" width=\"10\" height=\"10\" fill=\""
            << kColors[s % 4] << "\"/>\n";
        svg << "<text x=\"" << width - 185 << "\" y=\"" << y << "\" font-family=\"sans-serif\" font-size=\"11\">"
            << escape_xml(series[s]) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string months(std::optional<double> m) { return m ? csv::fixed(*m, 0) + " months" : "> horizon"; }

} // namespace

std::string table4_csv(const ComparisonReport &r) { return csv_of(grid4(r)); }
std::string table5_csv(const ComparisonReport &r) { return csv_of(grid5(r)); }
std::string table6_csv(const ComparisonReport &r) { return csv_of(grid6(r)); }
std::string table7_csv(const ComparisonReport &r) { return csv_of(grid7(r)); }
std::string table8_csv(const ComparisonReport &r) { return csv_of(grid8(r)); }
std::string table9_csv(const ComparisonReport &r) { return csv_of(grid9(r)); }
std::string table10_csv(const ComparisonReport &r) { return csv_of(grid10(r)); }
std::string fig5_csv(const ComparisonReport &r) { return csv_of(grid_fig5(r)); }
std::string fig6_csv(const ComparisonReport &r) { return csv_of(grid_fig6(r)); }
std::string dup_report_csv(const ComparisonReport &r) { return csv_of(grid_dup(r)); }
std::string deletion_report_csv(const ComparisonReport &r) { return csv_of(grid_deletions(r)); }
std::string source_pairs_csv(const ComparisonReport &r) { return csv_of(grid_pairs(r)); }

std::string render_markdown(const ComparisonReport &r) {
    const auto &s = r.summary;
    std::ostringstream md;
    md << "# Citation comparison report\n\n";
    md << "## Inputs\n\n";
    md << md_table({"item", "value"},
                   {{"GS Search records", num(s.gs_search_records)},
                    {"GS Metrics records", num(s.gs_metrics_records)},
                    {"Scopus records", num(s.scopus_records)},
                    {"GS Search citing records not in GS Metrics", num(s.search_only)},
                    {"GS Metrics citing records not in GS Search", num(s.metrics_only)},
                    {"combined Google Scholar records", num(s.merged_gs_records)},
                    {"linked target pairs", num(s.linked_targets)},
                    {"analysis targets", num(s.analysis_targets)},
                    {"GS citing documents", num(s.gs_citing)},
                    {"Scopus citing documents", num(s.scopus_citing)},
                    {"matched citing pairs", num(s.citing_pairs)}});
    md << "\n## Table 4: GS / Scopus citation ratios\n\n" << md_of(grid4(r));
    md << "\nPearson correlation between per-article ratio and Scopus count: "
       << (r.ratio_count_pearson ? csv::fixed(*r.ratio_count_pearson, 2) : std::string("undefined")) << "\n";
    md << "\n## Table 5: overlap of citing documents\n\n" << md_of(grid5(r));
    md << "\n## Table 6: publication years of citing documents (%)\n\n" << md_of(grid6(r));
    md << "\n## Table 7: categories of citing documents\n\n" << md_of(grid7(r));
    md << "\n## Table 8: documents among sources and web domains\n\n" << md_of(grid8(r));
    md << "\n## Table 9: age-normalized citation rates\n\n" << md_of(grid9(r));
    if (!r.table9_differences.empty())
        md << "\n" << md_of(grid9_diff(r));
    md << "\n## Table 10: correlation of GS and Scopus counts per article\n\n" << md_of(grid10(r));
    md << "\n## Figure 5: citations by entry age\n\n" << md_of(grid_fig5(r));
    md << "\nExcluded from bins: " << r.fig5.missing_age << " without entry age, " << r.fig5.beyond_horizon
       << " beyond the horizon, " << r.fig5.not_google_scholar << " Scopus-only.\n";
    md << "\n## Figure 6: GS citations in Scopus sources by entry age (%)\n\n" << md_of(grid_fig6(r));
    md << "\nMedian delay: " << months(r.delay.median_months()) << "; third quartile: " << months(r.delay.q3_months())
       << "\n";
    md << "\n## Duplicates\n\n" << md_of(grid_dup(r));
    md << "\nDeleted records: " << r.deletions.size() << " (see deletion_report.csv)\n";
    md << "\nSource title pairs for review: " << r.source_pairs.size() << " (see source_pairs_review.csv)\n";
    if (!r.warnings.empty()) {
        md << "\n## Warnings\n\n";
        for (const auto &w : r.warnings)
            md << "- " << w << "\n";
    }
    return md.str();
}

std::string render_json(const ComparisonReport &r) {
    ordered_json j;
    const auto &s = r.summary;
    j["summary"] = {{"gs_search_records", s.gs_search_records},   {"gs_metrics_records", s.gs_metrics_records},
                    {"scopus_records", s.scopus_records},         {"search_only", s.search_only},
                    {"metrics_only", s.metrics_only},             {"merged_gs_records", s.merged_gs_records},
                    {"linked_targets", s.linked_targets},         {"analysis_targets", s.analysis_targets},
                    {"gs_citing", s.gs_citing},                   {"scopus_citing", s.scopus_citing},
                    {"citing_pairs", s.citing_pairs}};
    for (const auto &row : r.table4)
        j["table4"].push_back({{"journal", row.journal},
                               {"targets", row.targets},
                               {"sum_cites_gs", row.gs_sum},
                               {"sum_cites_scopus", row.scopus_sum},
                               {"globalized_ratio", opt_json(row.globalized)},
                               {"averaged_ratio", opt_json(row.averaged)}});
    j["ratio_count_pearson"] = opt_json(r.ratio_count_pearson);
    for (const auto &row : r.table5)
        j["table5"].push_back({{"journal", row.journal},
                               {"cites_gs", row.gs},
                               {"cites_scopus", row.scopus},
                               {"cites_both", row.both},
                               {"unique_cites", row.unique},
                               {"ratio_gs_scopus", opt_json(row.ratio)},
                               {"pct_gs_of_unique", opt_json(row.gs_share_pct)},
                               {"pct_scopus_of_unique", opt_json(row.scopus_share_pct)},
                               {"stdev_mean_ratio",
                                row.dispersion ? ordered_json(row.dispersion->fraction) : ordered_json(nullptr)}});
    for (const auto &row : r.table6)
        j["table6"].push_back({{"year", row.label},
                               {"gs_count", row.gs_count},
                               {"gs_pct", row.gs_pct},
                               {"scopus_count", row.scopus_count},
                               {"scopus_pct", row.scopus_pct}});
    for (const auto &row : r.table7)
        j["table7"].push_back({{"journal", row.journal},
                               {"category", row.category},
                               {"subcategory", row.subcategory},
                               {"count", row.count},
                               {"percent", row.percent}});
    for (const auto &row : r.table8) {
        ordered_json top = ordered_json::array();
        for (const auto &e : row.stats.top)
            top.push_back({{"entity", e.entity}, {"count", e.count}});
        j["table8"].push_back({{"universe", row.universe},
                               {"entity", row.entity},
                               {"docs", row.stats.docs},
                               {"docs_missing_entity", row.stats.missing},
                               {"entities", row.stats.entities},
                               {"entities_once", row.stats.once},
                               {"entities_once_pct", row.stats.once_pct},
                               {"max_appearances", row.stats.max_appearances},
                               {"top", top}});
    }
    for (const auto &row : r.table9)
        j["table9"].push_back({{"category", to_string(row.category)},
                               {"gs_docs", row.gs_docs},
                               {"gs_mean_rate", opt_json(row.gs_rate)},
                               {"scopus_docs", row.scopus_docs},
                               {"scopus_mean_rate", opt_json(row.scopus_rate)}});
    for (const auto &d : r.table9_differences)
        j["table9_differences"].push_back({{"perspective", d.perspective},
                                           {"higher", to_string(d.higher)},
                                           {"lower", to_string(d.lower)},
                                           {"rate_higher", d.a},
                                           {"rate_lower", d.b},
                                           {"pct_difference", d.percent}});
    for (const auto &row : r.table10)
        j["table10"].push_back({{"journal", row.journal},
                                {"n_search", row.n_search},
                                {"pearson_search", opt_json(row.pearson_search)},
                                {"spearman_search", opt_json(row.spearman_search)},
                                {"n_metrics", row.n_metrics},
                                {"pearson_metrics", opt_json(row.pearson_metrics)},
                                {"spearman_metrics", opt_json(row.spearman_metrics)}});
    for (std::size_t i = 0; i < r.fig5.bins.size(); ++i) {
        const auto &b = r.fig5.bins[i];
        j["fig5"].push_back({{"bin_start_days", b.label},
                             {"count_both", b.count_both},
                             {"count_gs_only", b.count_gs_only},
                             {"ratio_gs_only_both", i < r.fig5_ratio.size() ? opt_json(r.fig5_ratio[i]) : nullptr}});
    }
    j["fig5_excluded"] = {{"missing_age", r.fig5.missing_age},
                          {"beyond_horizon", r.fig5.beyond_horizon},
                          {"not_google_scholar", r.fig5.not_google_scholar}};
    for (const auto &row : r.fig6)
        j["fig6"].push_back({{"bin_start_days", row.label},
                             {"total", row.total},
                             {"found_in_scopus_pct", row.found_pct},
                             {"possible_aip_pct", row.possible_aip_pct},
                             {"not_aip_pct", row.not_aip_pct}});
    j["delay"] = {{"median_days", r.delay.median_days ? ordered_json(*r.delay.median_days) : nullptr},
                  {"q3_days", r.delay.q3_days ? ordered_json(*r.delay.q3_days) : nullptr},
                  {"median_months", opt_json(r.delay.median_months())},
                  {"q3_months", opt_json(r.delay.q3_months())},
                  {"non_monotone", r.delay.non_monotone}};
    for (const auto &d : r.duplicates)
        j["duplicates"].push_back({{"corpus", to_string(d.corpus)},
                                   {"total_docs", d.report.total_docs},
                                   {"candidate_pairs", d.report.candidate_pairs},
                                   {"identical", d.report.identical},
                                   {"large", d.report.large},
                                   {"low", d.report.low},
                                   {"removed", d.report.removed.size()}});
    j["deletions"] = r.deletions.size();
    j["source_pairs"] = r.source_pairs.size();
    j["warnings"] = r.warnings;
    return j.dump(2) + "\n";
}

std::string fig5_svg(const ComparisonReport &r) {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> bars;
    double y_max = 0.0;
    for (const auto &b : r.fig5.bins) {
        labels.push_back(std::to_string(b.label));
        bars.push_back({static_cast<double>(b.count_both), static_cast<double>(b.count_gs_only)});
        y_max = std::max(y_max, static_cast<double>(b.total()));
    }
    return stacked_bars("GS citations found and not found in Scopus by days since GS entry", labels, bars,
                        {"in GS and Scopus", "in GS only"}, y_max);
}

std::string fig6_svg(const ComparisonReport &r) {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> bars;
    for (const auto &row : r.fig6) {
        labels.push_back(std::to_string(row.label));
        bars.push_back({row.found_pct, row.possible_aip_pct, row.not_aip_pct});
    }
    return stacked_bars("GS citations in Scopus sources by days since GS entry (%)", labels, bars,
                        {"found in Scopus", "possibly AIP", "not AIP"}, 100.0);
}

void write_report(const ComparisonReport &report, const std::filesystem::path &out_dir, const ReportOptions &options) {
    std::filesystem::create_directories(out_dir);
    if (options.csv) {
        write_file(out_dir / "table4.csv", table4_csv(report));
        write_file(out_dir / "table5.csv", table5_csv(report));
        write_file(out_dir / "table6.csv", table6_csv(report));
        write_file(out_dir / "table7.csv", table7_csv(report));
        write_file(out_dir / "table8.csv", table8_csv(report));
        write_file(out_dir / "table9.csv", table9_csv(report));
        write_file(out_dir / "table9_differences.csv", csv_of(grid9_diff(report)));
        write_file(out_dir / "table10.csv", table10_csv(report));
        write_file(out_dir / "fig5.csv", fig5_csv(report));
        write_file(out_dir / "fig6.csv", fig6_csv(report));
        write_file(out_dir / "dup_report.csv", dup_report_csv(report));
        write_file(out_dir / "deletion_report.csv", deletion_report_csv(report));
        write_file(out_dir / "source_pairs_review.csv", source_pairs_csv(report));
    }
    if (options.markdown)
        write_file(out_dir / "report.md", render_markdown(report));
    if (options.json)
        write_file(out_dir / "report.json", render_json(report));
    if (options.plot) {
        write_file(out_dir / "fig5.svg", fig5_svg(report));
        write_file(out_dir / "fig6.svg", fig6_svg(report));
    }
}

} // namespace citelink
