// citelink: record linkage and citation comparison of GS and Scopus exports.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "citelink/csv.hpp"
#include "citelink/error.hpp"
#include "citelink/linkage.hpp"
#include "citelink/matchkeys.hpp"
#include "citelink/normalize.hpp"
#include "citelink/pipeline.hpp"
#include "citelink/record_io.hpp"
#include "citelink/report.hpp"
#include "citelink/score.hpp"
#include "citelink/synth.hpp"

namespace fs = std::filesystem;
using namespace citelink;

namespace {

struct Args {
    std::string gs_search, gs_metrics, scopus;
    std::string gs_format = "auto", scopus_format = "auto";
    std::string source_list, aip_table, allowlist;
    std::string out = "out";
    std::vector<std::string> formats{"csv", "md", "json"};
    int bin_width = 30;
    int horizon = 365;
    int min_word_len = 4;
    double overlap_frac = 0.5;
    int year_gap = 2;
    int author_prefix = 6;
    int full_key_words = 10;
    int min_shared_words = 3;
    bool no_hyphen_split = false;
    std::size_t top_gs = 100;
    std::size_t top_scopus = 200;
    std::vector<std::string> disable_keys;
    bool keep_low = false;
    unsigned threads = 1;
    bool plot = false;
    bool dump = false;

    // synth
    std::uint64_t seed = 1;
    int n_targets = 20;
    int n_journals = 1;
    int citers_min = 5;
    int citers_max = 15;
    double overlap = 0.5;
    double duplicate_rate = 0.0;
    double cross_language = 0.0;
    std::vector<std::string> noise;
    int year_shift = 1;
    double noise_rate = 1.0;
    double delay_median = 0.0;
    double delay_q3 = 0.0;
    std::string synth_format = "jsonl";

    // score
    std::string truth;
    std::string run;
};

Thresholds thresholds_of(const Args &a) {
    Thresholds t;
    t.min_title_word_len = a.min_word_len;
    t.author_prefix_len = a.author_prefix;
    t.full_key_word_count = a.full_key_words;
    t.title_overlap_fraction = a.overlap_frac;
    t.min_shared_title_words = a.min_shared_words;
    t.max_year_gap = a.year_gap;
    t.bin_width_days = a.bin_width;
    t.horizon_days = a.horizon;
    t.split_on_hyphen = !a.no_hyphen_split;
    t.validate();
    return t;
}

PipelineConfig config_of(const Args &a) {
    PipelineConfig c;
    c.gs_search = a.gs_search;
    c.gs_metrics = a.gs_metrics;
    c.scopus = a.scopus;
    c.gs_format = parse_record_format(a.gs_format);
    c.scopus_format = parse_record_format(a.scopus_format);
    c.source_list = a.source_list;
    c.aip_table = a.aip_table;
    c.allowlist = a.allowlist;
    c.out_dir = a.out;
    c.options.thresholds = thresholds_of(a);
    c.options.top_gs = a.top_gs;
    c.options.top_scopus = a.top_scopus;
    c.options.keep_low_similarity = a.keep_low;
    c.options.threads = a.threads;
    for (const auto &k : a.disable_keys)
        c.options.enabled_keys[static_cast<std::size_t>(parse_key_kind(k))] = false;
    c.report = ReportOptions{false, false, false, a.plot};
    for (const auto &f : a.formats) {
        if (f == "csv")
            c.report.csv = true;
        else if (f == "md")
            c.report.markdown = true;
        else if (f == "json")
            c.report.json = true;
        else
            throw ConfigError("unknown report format '" + f + "'");
    }
    c.dump_intermediates = a.dump;
    return c;
}

void write_text(const fs::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write '" + path.string() + "'");
    out << text;
}

struct Input {
    std::string name;
    fs::path path;
    RecordFormat format;
    Provenance provenance;
};

std::vector<Input> inputs_of(const Args &a) {
    std::vector<Input> in;
    if (!a.gs_search.empty())
        in.push_back({"gs_search", a.gs_search, parse_record_format(a.gs_format), Provenance::GsSearch});
    if (!a.gs_metrics.empty())
        in.push_back({"gs_metrics", a.gs_metrics, parse_record_format(a.gs_format), Provenance::GsMetrics});
    if (!a.scopus.empty())
        in.push_back({"scopus", a.scopus, parse_record_format(a.scopus_format), Provenance::Scopus});
    if (in.empty())
        throw ConfigError("give at least one of --gs-search, --gs-metrics, --scopus");
    return in;
}

Corpus load(const Input &in) {
    auto result = ingest(in.path, in.format, in.provenance);
    for (const auto &e : result.errors)
        std::cerr << in.path.string() << ":" << e.line << ": " << e.message << "\n";
    if (!result.violations.empty())
        throw StageError("validate", in.path.string() + ": " + std::to_string(result.violations.size()) +
                                        " invariant violation(s); run 'citelink validate'");
    return std::move(result.records);
}

int cmd_validate(const Args &a) {
    bool clean = true;
    for (const auto &in : inputs_of(a)) {
        const auto result = ingest(in.path, in.format, in.provenance);
        for (const auto &e : result.errors)
            std::cout << in.path.string() << ":" << e.line << ": row error: " << e.message << "\n";
        for (const auto &v : result.violations)
            std::cout << in.path.string() << ": record " << v.id.value << ": " << v.rule << ": " << v.detail << "\n";
        std::cout << in.path.string() << ": " << result.records.size() << " records, " << result.errors.size()
                  << " row errors, " << result.violations.size() << " violations\n";
        clean = clean && result.errors.empty() && result.violations.empty();
    }
    return clean ? 0 : 1;
}

int cmd_clean(const Args &a) {
    const auto t = thresholds_of(a);
    fs::create_directories(a.out);
    std::string report = csv::join_row({"corpus", "id", "rule", "value"});
    for (const auto &in : inputs_of(a)) {
        const auto result = clean_corpus(load(in), t);
        write_corpus(fs::path(a.out) / ("cleaned_" + in.name + ".jsonl"), result.kept);
        for (const auto &d : result.deleted)
            report += csv::join_row({std::string(to_string(in.provenance)), std::to_string(d.id.value),
                                     std::string(to_string(d.rule)), d.value});
        std::cout << in.name << ": kept " << result.kept.size() << ", deleted " << result.deleted.size() << "\n";
    }
    write_text(fs::path(a.out) / "deletion_report.csv", report);
    return 0;
}

int cmd_keys(const Args &a) {
    const auto t = thresholds_of(a);
    fs::create_directories(a.out);
    for (const auto &in : inputs_of(a)) {
        std::string out = csv::join_row({"id", "full_key", "title_key", "short_key", "source_key"});
        const auto records = load(in);
        for (const auto &r : records) {
            const auto k = compute_keys(r, t);
            out += csv::join_row({std::to_string(r.id.value), k.full_key.value_or(""), k.title_key.value_or(""),
                                  k.short_key.value_or(""), k.source_key.value_or("")});
        }
        write_text(fs::path(a.out) / ("keys_" + in.name + ".csv"), out);
        std::cout << in.name << ": " << records.size() << " key bundles\n";
    }
    return 0;
}

int cmd_dedup(const Args &a) {
    const auto t = thresholds_of(a);
    fs::create_directories(a.out);
    ComparisonReport summary;
    std::string pairs = csv::join_row({"corpus", "left_id", "right_id", "key", "similarity"});
    for (const auto &in : inputs_of(a)) {
        const auto result = dedup(load(in), t, a.threads);
        write_corpus(fs::path(a.out) / ("deduped_" + in.name + ".jsonl"), result.kept);
        summary.duplicates.push_back({in.provenance, result.report});
        for (const auto &p : result.report.pairs)
            pairs += csv::join_row({std::string(to_string(in.provenance)), std::to_string(p.left_id.value),
                                    std::to_string(p.right_id.value), std::string(to_string(p.key_used)),
                                    std::string(to_string(p.similarity))});
        std::cout << in.name << ": " << result.report.candidate_pairs << " candidate pairs, "
                  << result.report.removed.size() << " removed\n";
    }
    write_text(fs::path(a.out) / "dup_report.csv", dup_report_csv(summary));
    write_text(fs::path(a.out) / "dup_pairs.csv", pairs);
    return 0;
}

// Runs the whole pipeline in memory and writes only what one stage produces.
PipelineArtifacts run_in_memory(const Args &a) {
    const auto config = config_of(a);
    config.validate();
    auto loaded = load_inputs(config);
    for (const auto &[file, e] : loaded.row_errors)
        std::cerr << file << ":" << e.line << ": " << e.message << "\n";
    return run_pipeline(std::move(loaded.inputs), config.options);
}

std::string pairs_csv(const MatchResult &m) {
    std::string out = csv::join_row({"left_id", "right_id", "key", "similarity"});
    for (const auto &p : m.pairs)
        out += csv::join_row({std::to_string(p.left_id.value), std::to_string(p.right_id.value),
                              std::string(to_string(p.key_used)), std::string(to_string(p.similarity))});
    return out;
}

int cmd_match(const Args &a) {
    const auto art = run_in_memory(a);
    fs::create_directories(a.out);
    write_text(fs::path(a.out) / "pairs_search_metrics_targets.csv", pairs_csv(art.gs.targets));
    write_text(fs::path(a.out) / "pairs_search_metrics_citing.csv", pairs_csv(art.gs.citing));
    write_text(fs::path(a.out) / "pairs_targets.csv", pairs_csv(art.target_links));
    write_text(fs::path(a.out) / "pairs_citing.csv", pairs_csv(art.citing_links));
    const auto &m = art.citing_links;
    std::cout << "citing pairs: " << m.pairs.size() << " (FULL " << m.matches_per_key[0] << ", TITLE "
              << m.matches_per_key[1] << ", SHORT " << m.matches_per_key[2] << ", SOURCE " << m.matches_per_key[3]
              << "); unmatched GS " << m.unmatched_a.size() << ", unmatched Scopus " << m.unmatched_b.size() << "\n";
    return 0;
}

int cmd_coverage(const Args &a) {
    const auto art = run_in_memory(a);
    fs::create_directories(a.out);
    std::string cats = csv::join_row({"id", "provenance", "category", "aip_split"});
    for (const auto *docs : {&art.gs_citing, &art.scopus_citing}) {
        for (const auto &r : *docs) {
            const auto &c = art.categories.at(r.id);
            cats += csv::join_row({std::to_string(r.id.value), std::string(to_string(r.provenance)),
                                   std::string(to_string(c.value())),
                                   c.aip_split() ? std::string(to_string(*c.aip_split())) : std::string()});
        }
    }
    write_text(fs::path(a.out) / "categories.csv", cats);
    write_text(fs::path(a.out) / "table7.csv", table7_csv(art.report));
    write_text(fs::path(a.out) / "table8.csv", table8_csv(art.report));
    write_text(fs::path(a.out) / "source_pairs_review.csv", source_pairs_csv(art.report));
    std::cout << table7_csv(art.report);
    return 0;
}

int cmd_metrics(const Args &a) {
    const auto art = run_in_memory(a);
    fs::create_directories(a.out);
    const auto &r = art.report;
    write_text(fs::path(a.out) / "table4.csv", table4_csv(r));
    write_text(fs::path(a.out) / "table5.csv", table5_csv(r));
    write_text(fs::path(a.out) / "table6.csv", table6_csv(r));
    write_text(fs::path(a.out) / "table9.csv", table9_csv(r));
    write_text(fs::path(a.out) / "table10.csv", table10_csv(r));
    std::cout << table4_csv(r);
    return 0;
}

int cmd_timing(const Args &a) {
    const auto art = run_in_memory(a);
    fs::create_directories(a.out);
    const auto &r = art.report;
    write_text(fs::path(a.out) / "fig5.csv", fig5_csv(r));
    write_text(fs::path(a.out) / "fig6.csv", fig6_csv(r));
    if (a.plot) {
        write_text(fs::path(a.out) / "fig5.svg", fig5_svg(r));
        write_text(fs::path(a.out) / "fig6.svg", fig6_svg(r));
    }
    auto months = [](std::optional<double> m) { return m ? csv::fixed(*m, 0) : std::string("> horizon"); };
    std::cout << "median delay (months): " << months(r.delay.median_months())
              << "\nthird quartile (months): " << months(r.delay.q3_months()) << "\n";
    return 0;
}

int cmd_report(const Args &a) {
    const auto report = run_pipeline(config_of(a));
    for (const auto &w : report.warnings)
        std::cerr << "warning: " << w << "\n";
    std::cout << "report written to " << a.out << "\n";
    return 0;
}

int cmd_synth(const Args &a) {
    SynthConfig c;
    c.seed = a.seed;
    c.n_targets = a.n_targets;
    c.n_journals = a.n_journals;
    c.citers_min = a.citers_min;
    c.citers_max = a.citers_max;
    c.overlap_fraction = a.overlap;
    c.duplicate_rate = a.duplicate_rate;
    c.cross_language_rate = a.cross_language;
    c.noise.rate = a.noise_rate;
    for (const auto &n : a.noise) {
        if (n == "diacritics")
            c.noise.diacritics = true;
        else if (n == "drop-short")
            c.noise.drop_short_tokens = true;
        else if (n == "year-shift")
            c.noise.year_shift = a.year_shift;
        else if (n == "author-reformat")
            c.noise.author_reformat = true;
        else if (n == "missing-source")
            c.noise.missing_source = true;
        else
            throw ConfigError("unknown noise '" + n + "'");
    }
    if (a.delay_median > 0.0)
        c.delay = DelayModel::from_quartiles(a.delay_median, a.delay_q3 > 0.0 ? a.delay_q3 : 2.0 * a.delay_median,
                                             std::max(365.0, a.delay_q3 + 1.0));
    const auto corpora = generate(c);

    const fs::path out(a.out);
    fs::create_directories(out);
    const std::string ext = a.synth_format == "csv" ? ".csv" : ".jsonl";
    if (a.synth_format != "csv" && a.synth_format != "jsonl")
        throw ConfigError("synth format must be jsonl or csv");
    write_corpus(out / ("gs_search" + ext), corpora.gs_search);
    write_corpus(out / ("gs_metrics" + ext), corpora.gs_metrics);
    write_corpus(out / ("scopus" + ext), corpora.scopus);
    write_source_list(out / "scopus_sources.txt", corpora.scopus_source_list);
    write_aip_table(out / "aip_table.csv", corpora.aip_table);
    std::ofstream truth(out / "truth.jsonl", std::ios::binary);
    write_ground_truth(truth, corpora.truth);
    std::cout << "wrote " << corpora.gs_search.size() << " GS Search, " << corpora.gs_metrics.size()
              << " GS Metrics and " << corpora.scopus.size() << " Scopus records to " << out.string() << "\n";
    return 0;
}

int cmd_score(const Args &a) {
    if (a.truth.empty() || a.run.empty())
        throw ConfigError("score needs --truth and --run");
    const auto output = read_pipeline_output(a.run);
    const auto report = score(output, read_ground_truth(fs::path(a.truth)));
    const auto text = score_csv(report);
    std::cout << text;
    if (!a.out.empty()) {
        fs::create_directories(a.out);
        write_text(fs::path(a.out) / "score.csv", text);
        write_text(fs::path(a.out) / "confusion.csv", confusion_csv(report));
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"citelink: link GS and Scopus citation exports and compare their coverage"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key = value file; command-line flags take precedence");
    Args a;

    app.add_option("--gs-search", a.gs_search, "GS Search records (JSONL or CSV)");
    app.add_option("--gs-metrics", a.gs_metrics, "GS Metrics records");
    app.add_option("--scopus", a.scopus, "Scopus records");
    app.add_option("--input-format", a.gs_format, "GS input layout: auto, jsonl, csv, gs-export")->capture_default_str();
    app.add_option("--scopus-format", a.scopus_format, "Scopus input layout: auto, jsonl, csv, scopus-export")
        ->capture_default_str();
    app.add_option("--source-list", a.source_list, "Scopus active source titles (text or CSV)");
    app.add_option("--aip-table", a.aip_table, "publisher,has_aip CSV");
    app.add_option("--allowlist", a.allowlist, "reviewed gs_source,scopus_source pairs CSV");
    app.add_option("--out", a.out, "output directory")->capture_default_str();
    app.add_option("--format", a.formats, "report formats: csv, md, json")->delimiter(',')->capture_default_str();
    app.add_option("--bin-width", a.bin_width, "cohort bin width in days")->capture_default_str();
    app.add_option("--horizon", a.horizon, "cohort horizon in days")->capture_default_str();
    app.add_option("--min-word-len", a.min_word_len, "minimum title word length for keys")->capture_default_str();
    app.add_option("--overlap-frac", a.overlap_frac, "title overlap fraction for LARGE similarity")
        ->capture_default_str();
    app.add_option("--year-gap", a.year_gap, "maximum year difference for LARGE similarity")->capture_default_str();
    app.add_option("--author-prefix", a.author_prefix, "characters of the first author's last name")
        ->capture_default_str();
    app.add_option("--full-key-words", a.full_key_words, "title words in the full key")->capture_default_str();
    app.add_option("--min-shared-words", a.min_shared_words, "shared title words for LARGE similarity")
        ->capture_default_str();
    app.add_flag("--no-hyphen-split", a.no_hyphen_split, "keep hyphenated title words together");
    app.add_option("--top-gs", a.top_gs, "GS targets per journal in the analysis set")->capture_default_str();
    app.add_option("--top-scopus", a.top_scopus, "Scopus top list per journal")->capture_default_str();
    app.add_option("--disable-key", a.disable_keys, "match key to switch off: FULL, TITLE, SHORT, SOURCE");
    app.add_flag("--keep-low", a.keep_low, "keep LOW-similarity cross-set matches");
    app.add_option("--threads", a.threads, "worker threads")->capture_default_str();
    app.add_flag("--plot", a.plot, "also write SVG charts for the figure series");
    app.add_flag("--dump-intermediates", a.dump, "write keys, pairs and categories under OUT/intermediates");

    app.add_option("--seed", a.seed, "synth: random seed")->capture_default_str();
    app.add_option("--targets", a.n_targets, "synth: number of target articles")->capture_default_str();
    app.add_option("--journals", a.n_journals, "synth: number of target journals")->capture_default_str();
    app.add_option("--citers-min", a.citers_min, "synth: minimum citing documents per target")->capture_default_str();
    app.add_option("--citers-max", a.citers_max, "synth: maximum citing documents per target")->capture_default_str();
    app.add_option("--overlap", a.overlap, "synth: share of citing documents in both databases")
        ->capture_default_str();
    app.add_option("--duplicate-rate", a.duplicate_rate, "synth: share of records given a duplicate")
        ->capture_default_str();
    app.add_option("--cross-language-rate", a.cross_language, "synth: shared works with translated GS titles")
        ->capture_default_str();
    app.add_option("--noise", a.noise, "synth: diacritics, drop-short, year-shift, author-reformat, missing-source")
        ->delimiter(',');
    app.add_option("--year-shift", a.year_shift, "synth: years added or removed by year-shift noise")
        ->capture_default_str();
    app.add_option("--noise-rate", a.noise_rate, "synth: probability that enabled noise hits a copy")
        ->capture_default_str();
    app.add_option("--delay-median", a.delay_median, "synth: median Scopus indexing delay in days (0 = none)");
    app.add_option("--delay-q3", a.delay_q3, "synth: third quartile of the delay in days");
    app.add_option("--synth-format", a.synth_format, "synth: jsonl or csv")->capture_default_str();

    app.add_option("--truth", a.truth, "score: ground-truth JSONL from synth");
    app.add_option("--run", a.run, "score: output directory of 'report --dump-intermediates'");

    struct Sub {
        const char *name;
        const char *help;
        int (*fn)(const Args &);
    };
    const Sub subs[] = {
        {"validate", "check records against the schema invariants", cmd_validate},
        {"clean", "apply the record deletion rules", cmd_clean},
        {"keys", "compute the four match keys", cmd_keys},
        {"match", "match GS Search x GS Metrics and GS x Scopus", cmd_match},
        {"dedup", "find and remove duplicates within each file", cmd_dedup},
        {"coverage", "categorize citing documents", cmd_coverage},
        {"metrics", "citation ratios, year distributions, rates, correlations", cmd_metrics},
        {"timing", "entry-age cohorts and indexing delay", cmd_timing},
        {"report", "run the full pipeline and write every table", cmd_report},
        {"synth", "generate synthetic corpora with ground truth", cmd_synth},
        {"score", "score a pipeline run against ground truth", cmd_score},
    };
    std::map<const CLI::App *, int (*)(const Args &)> handlers;
    for (const auto &s : subs)
        handlers[app.add_subcommand(s.name, s.help)->fallthrough()] = s.fn;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    try {
        for (const auto *sub : app.get_subcommands())
            return handlers.at(sub)(a);
    } catch (const StageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
