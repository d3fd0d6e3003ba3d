#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "citelink/model.hpp"

namespace citelink {

/// The four exact-join keys, in precedence order.
enum class KeyKind { Full = 0, Title = 1, Short = 2, Source = 3 };

inline constexpr std::array<KeyKind, 4> kKeyPrecedence{KeyKind::Full, KeyKind::Title, KeyKind::Short, KeyKind::Source};

std::string_view to_string(KeyKind kind);
KeyKind parse_key_kind(std::string_view token);

/// Character joining key components. Never occurs inside a component.
inline constexpr char kKeyJoin = '|';

struct KeyBundle {
    std::optional<std::string> full_key;
    std::optional<std::string> title_key;
    std::optional<std::string> short_key;
    std::optional<std::string> source_key;

    const std::optional<std::string> &get(KeyKind kind) const;
    bool empty() const { return !full_key && !title_key && !short_key && !source_key; }

    friend bool operator==(const KeyBundle &, const KeyBundle &) = default;
};

/// First `author_prefix_len` characters of the first author's normalized last name.
std::optional<std::string> author_prefix(const BibRecord &record, const Thresholds &t = {});

/// Volume or page number as compared in keys: trimmed, leading zeros dropped.
std::optional<std::string> normalize_number_field(const std::optional<std::string> &value);

std::optional<std::string> full_key(const BibRecord &record, const Thresholds &t = {});
std::optional<std::string> title_key(const BibRecord &record, const Thresholds &t = {});
std::optional<std::string> short_key(const BibRecord &record, const Thresholds &t = {});
std::optional<std::string> source_key(const BibRecord &record, const Thresholds &t = {});

/// All four keys at once; tokenizes the title a single time.
KeyBundle compute_keys(const BibRecord &record, const Thresholds &t = {});

} // namespace citelink
