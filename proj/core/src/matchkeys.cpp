#include "citelink/matchkeys.hpp"

#include <algorithm>

#include "citelink/error.hpp"
#include "citelink/normalize.hpp"
#include "citelink/unicode.hpp"

namespace citelink {

namespace {

std::optional<std::string> join_title_tokens(const std::vector<std::string> &tokens, const Thresholds &t) {
    if (tokens.empty())
        return std::nullopt;
    const auto n = std::min<std::size_t>(tokens.size(), static_cast<std::size_t>(t.full_key_word_count));
    std::string key = tokens.front();
    for (std::size_t i = 1; i < n; ++i) {
        key += kKeyJoin;
        key += tokens[i];
    }
    return key;
}

std::optional<std::string> join(const std::optional<std::string> &a, const std::optional<std::string> &b) {
    if (!a || !b)
        return std::nullopt;
    return *a + kKeyJoin + *b;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

} // namespace

std::string_view to_string(KeyKind kind) {
    switch (kind) {
    case KeyKind::Full:
        return "FULL";
    case KeyKind::Title:
        return "TITLE";
    case KeyKind::Short:
        return "SHORT";
    case KeyKind::Source:
        return "SOURCE";
    }
    return "?";
}

KeyKind parse_key_kind(std::string_view token) {
    for (KeyKind k : kKeyPrecedence) {
        if (to_string(k) == token)
            return k;
    }
    throw ParseError("unknown key token '" + std::string(token) + "'");
}

const std::optional<std::string> &KeyBundle::get(KeyKind kind) const {
    switch (kind) {
    case KeyKind::Full:
        return full_key;
    case KeyKind::Title:
        return title_key;
    case KeyKind::Short:
        return short_key;
    case KeyKind::Source:
        break;
    }
    return source_key;
}

std::optional<std::string> author_prefix(const BibRecord &record, const Thresholds &t) {
    if (record.authors.empty())
        return std::nullopt;
    const auto name = try_normalize_author(record.authors.front());
    if (!name || name->last.empty())
        return std::nullopt;
    const auto chars = unicode::decode(name->last);
    const auto n = std::min<std::size_t>(chars.size(), static_cast<std::size_t>(t.author_prefix_len));
    return unicode::encode(std::u32string_view(chars).substr(0, n));
}

std::optional<std::string> normalize_number_field(const std::optional<std::string> &value) {
    if (!value)
        return std::nullopt;
    std::string s;
    for (char c : *value) {
        if (c != kKeyJoin)
            s += c;
    }
    const auto first = std::find_if_not(s.begin(), s.end(), is_space);
    const auto last = std::find_if_not(s.rbegin(), s.rend(), is_space).base();
    if (first >= last)
        return std::nullopt;
    s = std::string(first, last);
    const auto nz = s.find_first_not_of('0');
    if (nz == std::string::npos)
        return std::string("0");
    return s.substr(nz);
}

std::optional<std::string> full_key(const BibRecord &record, const Thresholds &t) {
    return join(author_prefix(record, t), join_title_tokens(tokenize_title(record.title, t), t));
}

std::optional<std::string> title_key(const BibRecord &record, const Thresholds &t) {
    return join_title_tokens(tokenize_title(record.title, t), t);
}

std::optional<std::string> short_key(const BibRecord &record, const Thresholds &t) {
    const auto tokens = tokenize_title(record.title, t);
    if (tokens.empty())
        return std::nullopt;
    return join(author_prefix(record, t), tokens.front());
}

std::optional<std::string> source_key(const BibRecord &record, const Thresholds &t) {
    return join(join(author_prefix(record, t), normalize_number_field(record.volume)),
                normalize_number_field(record.start_page));
}

KeyBundle compute_keys(const BibRecord &record, const Thresholds &t) {
    const auto prefix = author_prefix(record, t);
    const auto tokens = tokenize_title(record.title, t);
    KeyBundle keys;
    keys.title_key = join_title_tokens(tokens, t);
    keys.full_key = join(prefix, keys.title_key);
    if (!tokens.empty())
        keys.short_key = join(prefix, tokens.front());
    keys.source_key = join(join(prefix, normalize_number_field(record.volume)), normalize_number_field(record.start_page));
    return keys;
}

} // namespace citelink
