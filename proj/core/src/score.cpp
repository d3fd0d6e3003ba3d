#include "citelink/score.hpp"

#include <fstream>

#include "json.hpp"

#include "citelink/csv.hpp"
#include "citelink/error.hpp"

namespace citelink {

namespace {

LinkScore compare(const std::vector<IdPair> &predicted, const std::vector<IdPair> &expected) {
    const std::set<IdPair> p(predicted.begin(), predicted.end());
    const std::set<IdPair> e(expected.begin(), expected.end());
    LinkScore s;
    s.predicted = p.size();
    s.expected = e.size();
    for (const auto &pair : p)
        s.correct += e.contains(pair);
    return s;
}

LinkScore compare(const std::set<RecordId> &predicted, const std::set<RecordId> &expected) {
    LinkScore s;
    s.predicted = predicted.size();
    s.expected = expected.size();
    for (const auto id : predicted)
        s.correct += expected.contains(id);
    return s;
}

double share(std::size_t num, std::size_t den) {
    return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::vector<IdPair> read_pairs(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UnreadableFileError("cannot read '" + path.string() + "'");
    csv::Reader reader(in);
    std::vector<std::string> row;
    std::vector<IdPair> out;
    reader.next(row);
    while (reader.next(row)) {
        if (row.size() < 2)
            continue;
        out.emplace_back(RecordId{std::stoull(row[0])}, RecordId{std::stoull(row[1])});
    }
    return out;
}

void check_known(const GroundTruth &truth, RecordId id, const char *where) {
    if (!truth.all_ids.contains(id))
        throw MismatchedCorpusError(std::string(where) + " mentions record " + std::to_string(id.value) +
                                    ", which the ground truth does not contain");
}

} // namespace

double LinkScore::precision() const { return share(correct, predicted); }
double LinkScore::recall() const { return share(correct, expected); }

PipelineOutput PipelineOutput::from(const PipelineArtifacts &a) {
    PipelineOutput out;
    for (const auto &p : a.target_links.pairs)
        out.target_pairs.emplace_back(p.left_id, p.right_id);
    for (const auto &p : a.citing_links.pairs)
        out.citing_pairs.emplace_back(p.left_id, p.right_id);
    for (const auto *m : {&a.gs.targets, &a.gs.citing})
        for (const auto &p : m->pairs)
            out.search_metrics_pairs.emplace_back(p.left_id, p.right_id);
    for (std::size_t i = 0; i < 3; ++i)
        out.removed[i].insert(a.deduped[i].report.removed.begin(), a.deduped[i].report.removed.end());
    for (const auto &[id, c] : a.categories)
        out.categories.emplace(id, c.value());
    out.median_days = a.report.delay.median_days;
    out.q3_days = a.report.delay.q3_days;
    return out;
}

PipelineOutput read_pipeline_output(const std::filesystem::path &out_dir) {
    const auto dir = out_dir / "intermediates";
    PipelineOutput out;
    out.target_pairs = read_pairs(dir / "pairs_targets.csv");
    out.citing_pairs = read_pairs(dir / "pairs_citing.csv");
    out.search_metrics_pairs = read_pairs(dir / "pairs_search_metrics_targets.csv");
    for (auto &p : read_pairs(dir / "pairs_search_metrics_citing.csv"))
        out.search_metrics_pairs.push_back(p);

    const char *names[] = {"gs_search", "gs_metrics", "scopus"};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto path = dir / ("removed_" + std::string(names[i]) + ".csv");
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw UnreadableFileError("cannot read '" + path.string() + "'");
        csv::Reader reader(in);
        std::vector<std::string> row;
        reader.next(row);
        while (reader.next(row))
            if (!row.empty() && !row[0].empty())
                out.removed[i].insert(RecordId{std::stoull(row[0])});
    }

    {
        const auto path = dir / "categories.csv";
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw UnreadableFileError("cannot read '" + path.string() + "'");
        csv::Reader reader(in);
        std::vector<std::string> row;
        reader.next(row);
        while (reader.next(row))
            if (row.size() >= 4)
                out.categories.emplace(RecordId{std::stoull(row[0])}, parse_category(row[3]));
    }

    const auto path = out_dir / "report.json";
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UnreadableFileError("cannot read '" + path.string() + "'");
    try {
        const auto j = nlohmann::json::parse(in);
        const auto &delay = j.at("delay");
        if (!delay.at("median_days").is_null())
            out.median_days = delay["median_days"].get<int>();
        if (!delay.at("q3_days").is_null())
            out.q3_days = delay["q3_days"].get<int>();
    } catch (const nlohmann::json::exception &e) {
        throw ParseError("'" + path.string() + "': " + e.what());
    }
    return out;
}

ScoreReport score(const PipelineOutput &output, const GroundTruth &truth) {
    for (const auto *pairs : {&output.target_pairs, &output.citing_pairs, &output.search_metrics_pairs})
        for (const auto &[a, b] : *pairs) {
            check_known(truth, a, "a matched pair");
            check_known(truth, b, "a matched pair");
        }
    for (const auto &removed : output.removed)
        for (const auto id : removed)
            check_known(truth, id, "the dedup result");
    for (const auto &[id, c] : output.categories)
        check_known(truth, id, "the category table");

    ScoreReport s;
    s.targets = compare(output.target_pairs, truth.target_pairs);
    s.citing = compare(output.citing_pairs, truth.citing_pairs);
    s.search_metrics = compare(output.search_metrics_pairs, truth.search_metrics_pairs);
    if (!truth.cross_language_pairs.empty()) {
        const std::set<IdPair> predicted(output.citing_pairs.begin(), output.citing_pairs.end());
        LinkScore cross;
        cross.expected = truth.cross_language_pairs.size();
        for (const auto &pair : truth.cross_language_pairs)
            cross.correct += predicted.contains(pair);
        cross.predicted = cross.correct;
        s.cross_language = cross;
    }

    std::array<std::set<RecordId>, 3> expected;
    for (const auto &d : truth.duplicates)
        if (d.expected != Similarity::Low)
            expected[static_cast<std::size_t>(d.corpus)].insert(d.duplicate);
    for (auto p : {Provenance::GsSearch, Provenance::GsMetrics, Provenance::Scopus}) {
        const auto i = static_cast<std::size_t>(p);
        DedupScore d;
        d.corpus = p;
        d.removal = compare(output.removed[i], expected[i]);
        d.exact = output.removed[i] == expected[i];
        s.dedup.push_back(d);
    }

    for (const auto &[id, predicted] : output.categories) {
        auto it = truth.categories.find(id);
        if (it == truth.categories.end())
            continue;
        ++s.confusion[static_cast<std::size_t>(it->second)][static_cast<std::size_t>(predicted)];
        ++s.categorized;
        s.category_agreement += it->second == predicted;
    }

    if (truth.planted_median_delay_days && output.median_days)
        s.median_error_days = *output.median_days - *truth.planted_median_delay_days;
    if (truth.planted_q3_delay_days && output.q3_days)
        s.q3_error_days = *output.q3_days - *truth.planted_q3_delay_days;
    return s;
}

std::vector<StageScore> ScoreReport::stages() const {
    std::vector<StageScore> out{{"target_linkage", targets}, {"citing_linkage", citing},
                                {"search_metrics_merge", search_metrics}};
    if (cross_language)
        out.push_back({"cross_language_recall", *cross_language});
    for (const auto &d : dedup)
        out.push_back({"dedup_" + std::string(to_string(d.corpus)), d.removal});
    LinkScore cats;
    cats.predicted = categorized;
    cats.expected = categorized;
    cats.correct = category_agreement;
    out.push_back({"categories", cats});
    return out;
}

std::string score_csv(const ScoreReport &report) {
    std::string out = csv::join_row({"stage", "predicted", "expected", "correct", "precision", "recall"});
    for (const auto &s : report.stages())
        out += csv::join_row({s.stage, std::to_string(s.score.predicted), std::to_string(s.score.expected),
                              std::to_string(s.score.correct), csv::fixed(s.score.precision(), 4),
                              csv::fixed(s.score.recall(), 4)});
    auto days = [](std::optional<int> v) { return v ? std::to_string(*v) : std::string(); };
    out += csv::join_row({"median_delay_error_days", "", "", days(report.median_error_days), "", ""});
    out += csv::join_row({"q3_delay_error_days", "", "", days(report.q3_error_days), "", ""});
    return out;
}

std::string confusion_csv(const ScoreReport &report) {
    std::vector<std::string> header{"expected\\predicted"};
    for (auto c : kAllCategories)
        header.emplace_back(to_string(c));
    std::string out = csv::join_row(header);
    for (auto e : kAllCategories) {
        std::vector<std::string> row{std::string(to_string(e))};
        for (auto p : kAllCategories)
            row.push_back(std::to_string(report.confusion[static_cast<std::size_t>(e)][static_cast<std::size_t>(p)]));
        out += csv::join_row(row);
    }
    return out;
}

} // namespace citelink
