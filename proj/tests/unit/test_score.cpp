#include <gtest/gtest.h>

#include "citelink/error.hpp"
#include "citelink/pipeline.hpp"
#include "citelink/score.hpp"
#include "citelink/synth.hpp"

using namespace citelink;

namespace {

PipelineInputs inputs_from(const SynthCorpora &s) {
    PipelineInputs in;
    in.gs_search = s.gs_search;
    in.gs_metrics = s.gs_metrics;
    in.scopus = s.scopus;
    in.scopus_source_list = s.scopus_source_list;
    PublisherAipTable aip;
    for (const auto &[publisher, has] : s.aip_table)
        aip.set(publisher, has);
    in.aip_table = aip;
    return in;
}

} // namespace

TEST(Score, NoiselessRunIsPerfect) {
    SynthConfig c;
    c.seed = 41;
    c.n_targets = 10;
    c.duplicate_rate = 0.05;
    const auto s = generate(c);
    const auto report = score(PipelineOutput::from(run_pipeline(inputs_from(s))), s.truth);
    for (const auto &stage : report.stages()) {
        EXPECT_DOUBLE_EQ(stage.score.precision(), 1.0) << stage.stage;
        EXPECT_DOUBLE_EQ(stage.score.recall(), 1.0) << stage.stage;
    }
    for (const auto &d : report.dedup)
        EXPECT_TRUE(d.exact) << to_string(d.corpus);
    EXPECT_EQ(report.category_agreement, report.categorized);
}

TEST(Score, DisablingSourceKeyLosesCrossLanguagePairs) {
    SynthConfig c;
    c.seed = 42;
    c.n_targets = 10;
    c.cross_language_rate = 0.3;
    const auto s = generate(c);
    ASSERT_FALSE(s.truth.cross_language_pairs.empty());

    PipelineOptions with_source;
    with_source.keep_low_similarity = true;
    const auto full = score(PipelineOutput::from(run_pipeline(inputs_from(s), with_source)), s.truth);
    ASSERT_TRUE(full.cross_language.has_value());
    EXPECT_DOUBLE_EQ(full.cross_language->recall(), 1.0);

    PipelineOptions without_source = with_source;
    without_source.enabled_keys[static_cast<std::size_t>(KeyKind::Source)] = false;
    const auto partial = score(PipelineOutput::from(run_pipeline(inputs_from(s), without_source)), s.truth);
    EXPECT_LT(partial.cross_language->recall(), 1.0);
}

TEST(Score, UnknownIdsAreMismatchedCorpus) {
    SynthConfig c;
    c.n_targets = 2;
    const auto s = generate(c);
    PipelineOutput out;
    out.citing_pairs.push_back({RecordId{987654321}, RecordId{1}});
    EXPECT_THROW(score(out, s.truth), MismatchedCorpusError);
}

TEST(LinkScore, EmptyDenominatorsCountAsPerfect) {
    LinkScore empty;
    EXPECT_DOUBLE_EQ(empty.precision(), 1.0);
    EXPECT_DOUBLE_EQ(empty.recall(), 1.0);
    LinkScore half{4, 8, 2};
    EXPECT_DOUBLE_EQ(half.precision(), 0.5);
    EXPECT_DOUBLE_EQ(half.recall(), 0.25);
}
