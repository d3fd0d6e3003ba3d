#include <gtest/gtest.h>

#include <random>

#include "citelink/error.hpp"
#include "citelink/matchkeys.hpp"
#include "support/records.hpp"

using namespace citelink;

namespace {

BibRecord kleinberg() {
    auto r = fixture::citing(10, 1, fixture::kKleinbergTitle, {"Kleinberg, J.M."});
    r.volume = "46";
    r.start_page = "604";
    r.year = 1999;
    return r;
}

} // namespace

TEST(FullKey, AuthorPrefixAndTitleWords) {
    EXPECT_EQ(full_key(kleinberg()), "kleinb|authoritative|sources|hyperlinked|environment");
    auto moed = kleinberg();
    moed.authors = {"Moed, H.F."};
    EXPECT_EQ(full_key(moed), "moed|authoritative|sources|hyperlinked|environment");
    auto anonymous = kleinberg();
    anonymous.authors.clear();
    EXPECT_FALSE(full_key(anonymous).has_value());
}

TEST(FullKey, UsesAtMostConfiguredWordCount) {
    auto r = kleinberg();
    r.title = "alpha bravo charlie delta echo foxtrot golf hotel india juliet kilo lima";
    EXPECT_EQ(full_key(r), "kleinb|alpha|bravo|charlie|delta|echo|foxtrot|golf|hotel|india|juliet");
    Thresholds t;
    t.full_key_word_count = 2;
    EXPECT_EQ(full_key(r, t), "kleinb|alpha|bravo");
}

TEST(TitleKey, IgnoresAuthors) {
    EXPECT_EQ(title_key(kleinberg()), "authoritative|sources|hyperlinked|environment");
    auto other = kleinberg();
    other.authors = {"Someone, E."};
    EXPECT_EQ(title_key(other), title_key(kleinberg()));
    auto tiny = kleinberg();
    tiny.title = "A b c";
    EXPECT_FALSE(title_key(tiny).has_value());
}

TEST(ShortKey, PrefixAndFirstQualifyingWord) {
    EXPECT_EQ(short_key(kleinberg()), "kleinb|authoritative");
    auto r = kleinberg();
    r.title = "To be";
    EXPECT_FALSE(short_key(r).has_value());
}

TEST(AuthorPrefix, FoldsAndDropsHyphen) {
    auto r = kleinberg();
    r.authors = {"Bar-Ilan, J."};
    EXPECT_EQ(author_prefix(r), "barila");
}

TEST(SourceKey, PrefixVolumePage) {
    EXPECT_EQ(source_key(kleinberg()), "kleinb|46|604");
    auto r = kleinberg();
    r.volume.reset();
    EXPECT_FALSE(source_key(r).has_value());
    auto padded = kleinberg();
    padded.volume = " 046 ";
    EXPECT_EQ(source_key(padded), source_key(kleinberg()));
}

TEST(KeyBundle, ComputeKeysAgreesWithSingleFunctions) {
    const auto r = kleinberg();
    const auto keys = compute_keys(r);
    EXPECT_EQ(keys.full_key, full_key(r));
    EXPECT_EQ(keys.title_key, title_key(r));
    EXPECT_EQ(keys.short_key, short_key(r));
    EXPECT_EQ(keys.source_key, source_key(r));
    EXPECT_EQ(keys.get(KeyKind::Source), keys.source_key);
}

TEST(KeyBundle, InvariantsOnRandomRecords) {
    std::mt19937 rng(5);
    const std::vector<std::string> words{"a", "to", "of", "the", "graph", "index", "citation", "web|link", "Über"};
    const std::vector<std::string> authors{"Kleinberg, J.", "J Smith", "", "Müller-Lüdenscheidt, K.", "O'Brien"};
    for (int n = 0; n < 500; ++n) {
        BibRecord r;
        for (int w = 0, len = static_cast<int>(rng() % 6); w < len; ++w)
            r.title += words[rng() % words.size()] + " ";
        if (rng() % 4)
            r.authors.push_back(authors[rng() % authors.size()]);
        if (rng() % 2)
            r.volume = std::to_string(rng() % 100);
        if (rng() % 2)
            r.start_page = std::to_string(rng() % 1000);
        const auto k = compute_keys(r);
        if (k.full_key) {
            EXPECT_TRUE(k.title_key.has_value());
            EXPECT_TRUE(k.short_key.has_value());
        }
        EXPECT_EQ(k.source_key.has_value(), author_prefix(r) && r.volume && r.start_page);
        // Exactly the expected number of joins: no component carries '|'.
        if (k.source_key)
            EXPECT_EQ(std::count(k.source_key->begin(), k.source_key->end(), kKeyJoin), 2);
        if (k.short_key)
            EXPECT_EQ(std::count(k.short_key->begin(), k.short_key->end(), kKeyJoin), 1);
    }
}

TEST(KeyBundle, YearNeverChangesKeys) {
    auto r = kleinberg();
    const auto before = compute_keys(r);
    r.year = 1998;
    EXPECT_EQ(compute_keys(r), before);
    r.year.reset();
    EXPECT_EQ(compute_keys(r), before);
}

TEST(KeyKindTokens, RoundTrip) {
    for (auto k : kKeyPrecedence)
        EXPECT_EQ(parse_key_kind(to_string(k)), k);
    EXPECT_THROW(parse_key_kind("AUTHOR"), ParseError);
}
