#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "citelink/model.hpp"

namespace citelink {

/// Replaces every accented Latin letter by its base letter (canonical
/// decomposition with combining marks removed). Characters of other scripts
/// pass through unchanged. Idempotent.
std::string fold_diacritics(std::string_view text);

/// True for characters that split title words: whitespace, comma, period,
/// colon, semicolon, quotes, apostrophes, brackets of all kinds, slash,
/// question and exclamation marks, the key join character '|' and, when
/// `split_on_hyphen` is set, hyphens and dashes.
bool is_title_separator(char32_t c, bool split_on_hyphen = true);

/// Folded, lowercased title words of at least `min_len` characters, in title
/// order with duplicates kept.
std::vector<std::string> tokenize_title(std::string_view title, int min_len, bool split_on_hyphen = true);

inline std::vector<std::string> tokenize_title(std::string_view title, const Thresholds &t) {
    return tokenize_title(title, t.min_title_word_len, t.split_on_hyphen);
}

struct AuthorName {
    std::string last;                    // folded, lowercase, letters only
    std::optional<std::string> initials; // lowercase, one letter per given name

    friend bool operator==(const AuthorName &, const AuthorName &) = default;
};

/// Parses "Last, F. M.", "F. M. Last", "First Last" or "FM Last" into a
/// standard form. The last name is the final word before the comma, or the
/// final non-initial word when there is no comma; hyphens and apostrophes
/// inside names are dropped ("Bar-Ilan" -> "barilan").
/// Throws EmptyAuthorError when the input has no letters.
AuthorName normalize_author(std::string_view raw);

std::optional<AuthorName> try_normalize_author(std::string_view raw);

/// Folded, lowercased label with punctuation removed and whitespace collapsed.
/// Used as the lookup form of source titles and publisher names.
std::string normalize_label(std::string_view text);

/// Share of alphabetic characters in `text` that belong to a non-Latin script.
double non_latin_share(std::string_view text);

enum class DeletionRule {
    NonLatinTitle,            // majority of title letters outside Latin script
    NoQualifyingWordNoSource, // no title word of qualifying length and no source title
    OrphanedCitation,         // cites a target that was itself deleted
};

std::string_view to_string(DeletionRule rule);

struct Deletion {
    RecordId id;
    DeletionRule rule;
    std::string value; // offending field value
};

struct CleanResult {
    Corpus kept;
    std::vector<Deletion> deleted;
};

/// Applies the record-deletion rules. Kept records stay in input order and
/// citation stubs are kept like any other record.
CleanResult clean_corpus(const Corpus &records, const Thresholds &thresholds = {});

} // namespace citelink
