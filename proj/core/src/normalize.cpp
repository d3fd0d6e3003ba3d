#include "citelink/normalize.hpp"

#include <unordered_set>

#include "citelink/error.hpp"
#include "citelink/unicode.hpp"

namespace citelink {

namespace {

std::u32string fold(std::u32string_view text) {
    std::u32string out;
    out.reserve(text.size());
    bool prev_latin = false;
    for (char32_t c : text) {
        if (unicode::is_combining_mark(c)) {
            // Marks already split off a Latin base letter are dropped.
            if (!prev_latin)
                out.push_back(c);
            continue;
        }
        if (unicode::is_latin_script(c)) {
            std::u32string parts;
            unicode::append_canonical_decomposition(c, parts);
            for (char32_t p : parts) {
                if (!unicode::is_combining_mark(p))
                    out.push_back(p);
            }
            prev_latin = true;
        } else {
            out.push_back(c);
            prev_latin = false;
        }
    }
    return out;
}

bool is_hyphen_like(char32_t c) {
    return c == U'-' || (c >= U'\u2010' && c <= U'\u2015') || c == U'\u2212';
}

bool is_whitespace(char32_t c) {
    return c == U' ' || (c >= U'\t' && c <= U'\r') || c == U'\u00A0' || (c >= U'\u2000' && c <= U'\u200B') ||
           c == U'\u202F' || c == U'\u3000';
}

std::vector<std::u32string> split(std::u32string_view text, auto &&is_sep) {
    std::vector<std::u32string> words;
    std::u32string current;
    for (char32_t c : text) {
        if (is_sep(c)) {
            if (!current.empty())
                words.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty())
        words.push_back(std::move(current));
    return words;
}

std::u32string lower(std::u32string_view s) {
    std::u32string out(s);
    for (auto &c : out)
        c = unicode::to_lower(c);
    return out;
}

std::u32string letters_only(std::u32string_view s) {
    std::u32string out;
    for (char32_t c : s) {
        if (unicode::is_alphabetic(c))
            out.push_back(c);
    }
    return out;
}

// "J", or an all-caps run of up to three letters written without dots ("JM").
bool looks_like_initials(std::u32string_view word) {
    if (word.size() == 1)
        return true;
    if (word.size() > 3)
        return false;
    for (char32_t c : word) {
        if (unicode::to_lower(c) == c)
            return false;
    }
    return true;
}

std::vector<std::u32string> name_words(std::u32string_view text) {
    std::vector<std::u32string> words;
    for (auto &w : split(text, [](char32_t c) { return is_whitespace(c) || c == U'.'; })) {
        auto letters = letters_only(w);
        if (!letters.empty())
            words.push_back(std::move(letters));
    }
    return words;
}

void append_initials(std::u32string_view word, std::u32string &initials) {
    if (looks_like_initials(word)) {
        for (char32_t c : word)
            initials.push_back(unicode::to_lower(c));
    } else {
        initials.push_back(unicode::to_lower(word.front()));
    }
}

AuthorName make_name(const std::u32string &last, const std::u32string &initials) {
    AuthorName name;
    name.last = unicode::encode(lower(last));
    if (!initials.empty())
        name.initials = unicode::encode(initials);
    return name;
}

} // namespace

std::string fold_diacritics(std::string_view text) { return unicode::encode(fold(unicode::decode(text))); }

bool is_title_separator(char32_t c, bool split_on_hyphen) {
    if (is_whitespace(c))
        return true;
    switch (c) {
    case U',': case U'.': case U':': case U';':
    case U'"': case U'\'': case U'`':
    case U'‘': case U'’': case U'‚': case U'‛':
    case U'“': case U'”': case U'„': case U'‟':
    case U'«': case U'»': case U'‹': case U'›':
    case U'(': case U')': case U'[': case U']': case U'{': case U'}':
    case U'/': case U'\\': case U'?': case U'!': case U'¿': case U'¡':
    case U'|':
        return true;
    default:
        break;
    }
    return split_on_hyphen && is_hyphen_like(c);
}

std::vector<std::string> tokenize_title(std::string_view title, int min_len, bool split_on_hyphen) {
    std::vector<std::string> tokens;
    const auto folded = fold(unicode::decode(title));
    for (auto &word : split(folded, [&](char32_t c) { return is_title_separator(c, split_on_hyphen); })) {
        if (static_cast<int>(word.size()) >= min_len)
            tokens.push_back(unicode::encode(lower(word)));
    }
    return tokens;
}

AuthorName normalize_author(std::string_view raw) {
    const auto folded = fold(unicode::decode(raw));

    const auto comma = folded.find(U',');
    if (comma != std::u32string::npos) {
        const auto before = name_words(std::u32string_view(folded).substr(0, comma));
        if (!before.empty()) {
            std::u32string initials;
            for (const auto &w : name_words(std::u32string_view(folded).substr(comma + 1)))
                append_initials(w, initials);
            return make_name(before.back(), initials);
        }
    }

    auto words = name_words(folded);
    if (words.empty())
        throw EmptyAuthorError("author '" + std::string(raw) + "' contains no letters");

    std::size_t last_idx = words.size() - 1;
    for (std::size_t i = words.size(); i-- > 0;) {
        if (!looks_like_initials(words[i])) {
            last_idx = i;
            break;
        }
    }
    std::u32string initials;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i != last_idx)
            append_initials(words[i], initials);
    }
    return make_name(words[last_idx], initials);
}

std::optional<AuthorName> try_normalize_author(std::string_view raw) {
    try {
        return normalize_author(raw);
    } catch (const EmptyAuthorError &) {
        return std::nullopt;
    }
}

std::string normalize_label(std::string_view text) {
    const auto folded = fold(unicode::decode(text));
    std::u32string out;
    bool pending_space = false;
    for (char32_t c : folded) {
        if (unicode::is_alphabetic(c) || (c >= U'0' && c <= U'9') || unicode::is_combining_mark(c)) {
            if (pending_space && !out.empty())
                out.push_back(U' ');
            pending_space = false;
            out.push_back(unicode::to_lower(c));
        } else if (c == U'&' || c == U'+') {
            // Meaningful in publisher names ("Taylor & Francis").
            if (!out.empty())
                out.push_back(U' ');
            out.push_back(c);
            pending_space = true;
        } else {
            pending_space = true;
        }
    }
    return unicode::encode(out);
}

double non_latin_share(std::string_view text) {
    std::size_t letters = 0;
    std::size_t non_latin = 0;
    for (char32_t c : unicode::decode(text)) {
        if (!unicode::is_alphabetic(c))
            continue;
        ++letters;
        non_latin += unicode::is_non_latin_letter(c);
    }
    return letters == 0 ? 0.0 : static_cast<double>(non_latin) / static_cast<double>(letters);
}

std::string_view to_string(DeletionRule rule) {
    switch (rule) {
    case DeletionRule::NonLatinTitle:
        return "NON_LATIN_TITLE";
    case DeletionRule::NoQualifyingWordNoSource:
        return "NO_QUALIFYING_WORD_NO_SOURCE";
    case DeletionRule::OrphanedCitation:
        return "ORPHANED_CITATION";
    }
    return "?";
}

CleanResult clean_corpus(const Corpus &records, const Thresholds &thresholds) {
    CleanResult result;
    std::unordered_set<RecordId, RecordIdHash> deleted_ids;
    std::vector<std::optional<Deletion>> verdicts(records.size());

    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto &r = records[i];
        if (non_latin_share(r.title) > 0.5) {
            verdicts[i] = Deletion{r.id, DeletionRule::NonLatinTitle, r.title};
        } else {
            const bool no_source = !r.source_title || normalize_label(*r.source_title).empty();
            if (no_source && tokenize_title(r.title, thresholds).empty())
                verdicts[i] = Deletion{r.id, DeletionRule::NoQualifyingWordNoSource, r.title};
        }
        if (verdicts[i] && r.kind == RecordKind::Target)
            deleted_ids.insert(r.id);
    }

    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto &r = records[i];
        if (!verdicts[i] && r.kind == RecordKind::Citing && r.cites_target && deleted_ids.contains(*r.cites_target))
            verdicts[i] = Deletion{r.id, DeletionRule::OrphanedCitation, std::to_string(r.cites_target->value)};
        if (verdicts[i])
            result.deleted.push_back(std::move(*verdicts[i]));
        else
            result.kept.push_back(r);
    }
    return result;
}

} // namespace citelink
