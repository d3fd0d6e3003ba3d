#include <gtest/gtest.h>

#include "citelink/error.hpp"
#include "citelink/model.hpp"
#include "support/records.hpp"

using namespace citelink;

TEST(ValidateCorpus, EmptyListHasNoViolations) { EXPECT_TRUE(validate_corpus({}).empty()); }

TEST(ValidateCorpus, CitingWithoutTargetIsOneViolation) {
    auto c = fixture::citing(2, 1, "Some title here");
    c.cites_target.reset();
    const auto v = validate_corpus({fixture::target(1, "Target title"), c});
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].id, RecordId{2});
    EXPECT_EQ(v[0].rule, "citing_without_target");
}

TEST(ValidateCorpus, EntryAgeOutOfRangeIsOneViolation) {
    auto t = fixture::target(1, "Target title");
    t.entry_age_days = 400;
    const auto v = validate_corpus({t});
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].rule, "entry_age_out_of_range");
}

TEST(ValidateCorpus, DetectsDanglingAndMisdirectedReferences) {
    Corpus corpus{fixture::target(1, "Target"), fixture::citing(2, 9, "Dangling"), fixture::citing(3, 2, "To citing")};
    const auto v = validate_corpus(corpus);
    ASSERT_EQ(v.size(), 2u);
    EXPECT_EQ(v[0].rule, "unknown_target");
    EXPECT_EQ(v[1].rule, "target_not_target");
}

TEST(ValidateCorpus, DuplicateIdAndNegativeCount) {
    auto a = fixture::target(1, "One");
    auto b = fixture::target(1, "Two");
    b.citation_count = -1;
    const auto v = validate_corpus({a, b});
    ASSERT_EQ(v.size(), 2u);
}

TEST(ValidateCorpus, IsIdempotent) {
    auto t = fixture::target(1, "Target");
    t.entry_age_days = -3;
    const Corpus corpus{t, fixture::citing(2, 5, "x")};
    EXPECT_EQ(validate_corpus(corpus), validate_corpus(corpus));
}

TEST(Enumerations, RoundTripEveryToken) {
    for (auto p : {Provenance::GsSearch, Provenance::GsMetrics, Provenance::Scopus})
        EXPECT_EQ(parse_provenance(to_string(p)), p);
    for (auto c : kAllCategories)
        EXPECT_EQ(parse_category(to_string(c)), c);
    for (auto s : {AipSplit::PossibleAip, AipSplit::NotAip, AipSplit::UnknownPublisher})
        EXPECT_EQ(parse_aip_split(to_string(s)), s);
    for (auto k : {RecordKind::Target, RecordKind::Citing})
        EXPECT_EQ(parse_record_kind(to_string(k)), k);
    for (auto m : {AccessModality::OpenAccess, AccessModality::Subscription, AccessModality::Mixed})
        EXPECT_EQ(parse_access_modality(to_string(m)), m);
}

TEST(Enumerations, UnknownTokenIsAnError) {
    EXPECT_THROW(parse_provenance("WOS"), ParseError);
    EXPECT_THROW(parse_category("both"), ParseError);
    EXPECT_THROW(parse_aip_split(""), ParseError);
}

TEST(OverlapCategory, SplitOnlyForGsOnlyScopusSource) {
    EXPECT_NO_THROW(OverlapCategory::make(CategoryValue::GsOnlyScopusSource, AipSplit::NotAip));
    EXPECT_THROW(OverlapCategory::make(CategoryValue::GsOnlyScopusSource), Error);
    EXPECT_THROW(OverlapCategory::make(CategoryValue::Both, AipSplit::PossibleAip), Error);
}

TEST(Thresholds, DefaultsAreValidAndRangesChecked) {
    Thresholds t;
    EXPECT_NO_THROW(t.validate());
    t.title_overlap_fraction = 1.5;
    EXPECT_THROW(t.validate(), ConfigError);
    t = {};
    t.bin_width_days = 0;
    EXPECT_THROW(t.validate(), ConfigError);
}

TEST(PopulatedFields, CountsPresentOptionalFields) {
    auto r = fixture::target(1, "Title", {"A"});
    const int base = populated_field_count(r);
    r.volume = "3";
    r.year = 2000;
    EXPECT_EQ(populated_field_count(r), base + 2);
}
