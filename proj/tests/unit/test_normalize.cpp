#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "citelink/error.hpp"
#include "citelink/normalize.hpp"
#include "citelink/unicode.hpp"
#include "support/records.hpp"

using namespace citelink;
using Tokens = std::vector<std::string>;

TEST(FoldDiacritics, BaseFormsOfAccentedLetters) {
    EXPECT_EQ(fold_diacritics("à á ñ"), "a a n");
    EXPECT_EQ(fold_diacritics("Müller"), "Muller");
    EXPECT_EQ(fold_diacritics("abc"), "abc");
}

TEST(FoldDiacritics, OtherScriptsPassThrough) {
    const std::string chinese = "中文标题";
    EXPECT_EQ(fold_diacritics(chinese), chinese);
}

TEST(FoldDiacritics, Idempotent) {
    for (const std::string s : {"École Polytechnique", "Łódź", "naïve café", "plain"}) {
        const auto once = fold_diacritics(s);
        EXPECT_EQ(fold_diacritics(once), once) << s;
    }
}

TEST(TokenizeTitle, DropsShortWordsAndLowercases) {
    EXPECT_EQ(tokenize_title(fixture::kKleinbergTitle, 4),
              (Tokens{"authoritative", "sources", "hyperlinked", "environment"}));
    EXPECT_TRUE(tokenize_title("", 4).empty());
    EXPECT_TRUE(tokenize_title("A-B, c!", 4).empty());
}

TEST(TokenizeTitle, SeparatorsAndHyphenFlag) {
    EXPECT_EQ(tokenize_title("Co-citation: \"networks\" (revisited)", 4),
              (Tokens{"citation", "networks", "revisited"}));
    EXPECT_EQ(tokenize_title("Co-citation networks", 4, false), (Tokens{"co-citation", "networks"}));
    EXPECT_EQ(tokenize_title("Étude des réseaux", 4), (Tokens{"etude", "reseaux"}));
}

TEST(TokenizeTitle, TokensRespectLengthAndHoldNoSeparator) {
    std::mt19937 rng(11);
    const std::u32string alphabet = U"abcXYZ é-,.:;'\"()[]{}/?!|–";
    for (int trial = 0; trial < 300; ++trial) {
        std::u32string s;
        const int len = static_cast<int>(rng() % 40);
        for (int i = 0; i < len; ++i)
            s += alphabet[rng() % alphabet.size()];
        const int min_len = 1 + static_cast<int>(rng() % 5);
        for (const auto &tok : tokenize_title(unicode::encode(s), min_len)) {
            const auto chars = unicode::decode(tok);
            EXPECT_GE(static_cast<int>(chars.size()), min_len);
            for (char32_t c : chars)
                EXPECT_FALSE(is_title_separator(c));
        }
    }
}

TEST(NormalizeAuthor, CommaForm) {
    EXPECT_EQ(normalize_author("Kleinberg, J. M."), (AuthorName{"kleinberg", "jm"}));
}

TEST(NormalizeAuthor, FinalTokenForm) {
    EXPECT_EQ(normalize_author("J Kleinberg"), (AuthorName{"kleinberg", "j"}));
    EXPECT_EQ(normalize_author("JM Kleinberg"), (AuthorName{"kleinberg", "jm"}));
    EXPECT_EQ(normalize_author("Jon Kleinberg"), (AuthorName{"kleinberg", "j"}));
}

TEST(NormalizeAuthor, FoldsAndHandlesSingleToken) {
    EXPECT_EQ(normalize_author("Ñoño"), (AuthorName{"nono", std::nullopt}));
}

TEST(NormalizeAuthor, DropsHyphensInsideNames) {
    EXPECT_EQ(normalize_author("Bar-Ilan, J.").last, "barilan");
    EXPECT_EQ(normalize_author("O'Neill, P.").last, "oneill");
}

TEST(NormalizeAuthor, NoLettersIsAnError) {
    EXPECT_THROW(normalize_author(""), EmptyAuthorError);
    EXPECT_THROW(normalize_author(" , . "), EmptyAuthorError);
    EXPECT_FALSE(try_normalize_author("123").has_value());
}

TEST(NormalizeLabel, FoldsCaseAndPunctuation) {
    EXPECT_EQ(normalize_label("  Scientometrics "), "scientometrics");
    EXPECT_EQ(normalize_label("J. Am. Soc. Inf. Sci."), normalize_label("J Am Soc Inf Sci"));
    EXPECT_EQ(normalize_label("Revista Española"), "revista espanola");
}

TEST(CleanCorpus, NonLatinTitleDeleted) {
    auto r = fixture::citing(2, 1, "中文标题研究");
    r.source_title = "Some journal";
    const auto result = clean_corpus({fixture::target(1, "A proper target title"), r});
    ASSERT_EQ(result.deleted.size(), 1u);
    EXPECT_EQ(result.deleted[0].id, RecordId{2});
    EXPECT_EQ(result.deleted[0].rule, DeletionRule::NonLatinTitle);
    EXPECT_EQ(result.kept.size(), 1u);
}

TEST(CleanCorpus, NoQualifyingWordAndNoSourceDeleted) {
    const auto result = clean_corpus({fixture::target(1, "A proper target title"), fixture::citing(2, 1, "A b c")});
    ASSERT_EQ(result.deleted.size(), 1u);
    EXPECT_EQ(result.deleted[0].rule, DeletionRule::NoQualifyingWordNoSource);
}

TEST(CleanCorpus, ShortTitleWithSourceKept) {
    auto r = fixture::citing(2, 1, "A b c");
    r.source_title = "Nature";
    EXPECT_TRUE(clean_corpus({fixture::target(1, "A proper target title"), r}).deleted.empty());
}

TEST(CleanCorpus, CitationStubKept) {
    auto r = fixture::citing(2, 1, "Citation analysis of the web");
    r.is_citation_stub = true;
    const auto result = clean_corpus({fixture::target(1, "A proper target title"), r});
    EXPECT_TRUE(result.deleted.empty());
    EXPECT_EQ(result.kept.size(), 2u);
}

TEST(CleanCorpus, CitingDocumentsOfDeletedTargetAreReported) {
    const Corpus input{fixture::target(1, "Русский заголовок"),
                       fixture::citing(2, 1, "Citing the russian article"), fixture::target(3, "Another target article")};
    const auto result = clean_corpus(input);
    ASSERT_EQ(result.deleted.size(), 2u);
    EXPECT_EQ(result.deleted[1].rule, DeletionRule::OrphanedCitation);
    EXPECT_EQ(result.kept.size() + result.deleted.size(), input.size());
}
