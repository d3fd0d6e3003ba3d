#include "citelink/record_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>

#include "json.hpp"

#include "citelink/csv.hpp"
#include "citelink/error.hpp"
#include "citelink/normalize.hpp"

namespace citelink {

using nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::int64_t parse_int(std::string_view column, std::string_view text) {
    std::int64_t value = 0;
    const auto *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw ParseError("column '" + std::string(column) + "': not an integer: '" + std::string(text) + "'");
    return value;
}

int parse_small_int(std::string_view column, std::string_view text) {
    const auto v = parse_int(column, text);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        throw ParseError("column '" + std::string(column) + "': out of range: '" + std::string(text) + "'");
    return static_cast<int>(v);
}

bool parse_bool(std::string_view column, std::string_view text) {
    const auto t = lower(text);
    if (t == "true" || t == "1" || t == "yes")
        return true;
    if (t == "false" || t == "0" || t == "no" || t.empty())
        return false;
    throw ParseError("column '" + std::string(column) + "': not a boolean: '" + std::string(text) + "'");
}

RecordId parse_id(std::string_view column, std::string_view text) {
    const auto v = parse_int(column, text);
    if (v < 0)
        throw ParseError("column '" + std::string(column) + "': negative id");
    return RecordId{static_cast<std::uint64_t>(v)};
}

// Cells of one row keyed by canonical column name.
struct RowFields {
    std::map<std::string, std::string> cells;
    std::optional<std::vector<std::string>> author_list; // JSON arrays
};

std::optional<std::string> cell(const RowFields &row, const std::string &column) {
    auto it = row.cells.find(column);
    if (it == row.cells.end())
        return std::nullopt;
    auto value = trim(it->second);
    if (value.empty())
        return std::nullopt;
    return value;
}

std::string url_host(std::string_view value) {
    auto s = std::string(value);
    if (const auto scheme = s.find("://"); scheme != std::string::npos)
        s.erase(0, scheme + 3);
    if (const auto slash = s.find_first_of("/?#"); slash != std::string::npos)
        s.erase(slash);
    s = lower(s);
    if (s.starts_with("www."))
        s.erase(0, 4);
    return s;
}

// "Moed H.F." -> "Moed, H.F."
std::string scopus_author(std::string name) {
    if (name.find(',') != std::string::npos)
        return name;
    const auto space = name.find_last_of(' ');
    if (space == std::string::npos)
        return name;
    const auto tail = std::string_view(name).substr(space + 1);
    const bool initials = !tail.empty() && tail.find('.') != std::string_view::npos &&
                          std::all_of(tail.begin(), tail.end(), [](unsigned char c) {
                              return std::isupper(c) || c == '.' || c == '-';
                          });
    if (!initials)
        return name;
    return name.substr(0, space) + ", " + std::string(tail);
}

std::vector<std::string> split_export_authors(std::string_view cell, RecordFormat format) {
    const char sep = cell.find(';') != std::string_view::npos ? ';' : ',';
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= cell.size()) {
        auto end = cell.find(sep, start);
        if (end == std::string_view::npos)
            end = cell.size();
        auto name = trim(cell.substr(start, end - start));
        if (!name.empty() && name != "..." && name != "…")
            out.push_back(format == RecordFormat::ScopusExport ? scopus_author(std::move(name)) : std::move(name));
        start = end + 1;
    }
    return out;
}

// Leading result-type tags in GS titles; "[CITATION]" marks a citation stub.
void strip_title_tags(std::string &title, bool &stub) {
    static const std::pair<std::string_view, bool> kTags[] = {
        {"[CITATION]", true}, {"[C]", true}, {"[BOOK]", false}, {"[B]", false},
        {"[HTML]", false},    {"[PDF]", false}, {"[DOC]", false},
    };
    bool again = true;
    while (again) {
        again = false;
        for (const auto &[tag, is_stub] : kTags) {
            if (title.size() >= tag.size() && lower(title.substr(0, tag.size())) == lower(tag)) {
                title = trim(std::string_view(title).substr(tag.size()));
                stub = stub || is_stub;
                again = true;
            }
        }
    }
}

BibRecord build_record(const RowFields &row, RecordFormat format, Provenance provenance, std::size_t ordinal) {
    const bool is_export = format == RecordFormat::GsExport || format == RecordFormat::ScopusExport;
    BibRecord r;

    if (auto id = cell(row, "id"))
        r.id = parse_id("id", *id);
    else
        r.id = RecordId{ordinal};

    if (auto p = cell(row, "provenance")) {
        const auto given = parse_provenance(*p);
        if (given != provenance)
            throw ParseError("provenance " + std::string(to_string(given)) + " does not match expected " +
                             std::string(to_string(provenance)));
    }
    r.provenance = provenance;

    if (auto target = cell(row, "cites_target"))
        r.cites_target = parse_id("cites_target", *target);
    if (auto kind = cell(row, "kind"))
        r.kind = parse_record_kind(is_export ? [&] {
            auto k = *kind;
            std::transform(k.begin(), k.end(), k.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
            return k;
        }()
                                             : *kind);
    else if (is_export)
        r.kind = r.cites_target ? RecordKind::Citing : RecordKind::Target;
    else
        throw ParseError("missing kind");

    if (auto stub = cell(row, "is_citation_stub"))
        r.is_citation_stub = parse_bool("is_citation_stub", *stub);

    auto title = cell(row, "title");
    if (is_export && title)
        strip_title_tags(*title, r.is_citation_stub);
    if (!title || title->empty())
        throw ParseError("missing title");
    r.title = std::move(*title);

    if (row.author_list) {
        r.authors = *row.author_list;
    } else if (auto authors = cell(row, "authors")) {
        r.authors = is_export ? split_export_authors(*authors, format) : split_authors(*authors);
    }

    r.source_title = cell(row, "source_title");
    r.publisher = cell(row, "publisher");
    if (auto year = cell(row, "year"))
        r.year = parse_small_int("year", *year);
    r.volume = cell(row, "volume");
    r.start_page = cell(row, "start_page");
    if (auto domain = cell(row, "web_domain"))
        r.web_domain = is_export ? url_host(*domain) : *domain;
    if (auto count = cell(row, "citation_count")) {
        if (is_export)
            count->erase(std::remove(count->begin(), count->end(), ','), count->end());
        r.citation_count = parse_int("citation_count", *count);
    }
    if (auto age = cell(row, "entry_age_days"))
        r.entry_age_days = parse_small_int("entry_age_days", *age);
    return r;
}

RowFields json_row(const std::string &line) {
    const auto doc = ordered_json::parse(line);
    if (!doc.is_object())
        throw ParseError("line is not a JSON object");
    RowFields row;
    for (const auto &[key, value] : doc.items()) {
        if (value.is_null())
            continue;
        if (key == "authors") {
            if (!value.is_array())
                throw ParseError("authors must be an array");
            std::vector<std::string> names;
            for (const auto &name : value) {
                if (!name.is_string())
                    throw ParseError("author names must be strings");
                names.push_back(name.get<std::string>());
            }
            row.author_list = std::move(names);
        } else if (value.is_string()) {
            row.cells[key] = value.get<std::string>();
        } else if (value.is_number_integer()) {
            row.cells[key] = value.dump();
        } else if (value.is_boolean()) {
            row.cells[key] = value.get<bool>() ? "true" : "false";
        } else {
            throw ParseError("field '" + key + "' has an unsupported JSON type");
        }
    }
    return row;
}

void finish(IngestResult &result) { result.violations = validate_corpus(result.records); }

IngestResult ingest_jsonl(std::istream &in, Provenance provenance) {
    IngestResult result;
    std::string line;
    std::size_t line_no = 0;
    std::size_t ordinal = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        ++ordinal;
        try {
            result.records.push_back(build_record(json_row(line), RecordFormat::Jsonl, provenance, ordinal));
        } catch (const nlohmann::json::exception &e) {
            result.errors.push_back({line_no, std::string("invalid JSON: ") + e.what()});
        } catch (const Error &e) {
            result.errors.push_back({line_no, e.what()});
        }
    }
    finish(result);
    return result;
}

IngestResult ingest_csv(std::istream &in, RecordFormat format, Provenance provenance) {
    IngestResult result;
    csv::Reader reader(in);
    std::vector<std::string> header;
    if (!reader.next(header))
        return result;
    if (header.size() == 1 && trim(header[0]).empty())
        return result;
    if (!header.empty() && header[0].starts_with("\xEF\xBB\xBF"))
        header[0].erase(0, 3);

    // Map physical columns onto canonical names.
    std::vector<std::optional<std::string>> columns;
    std::set<std::string> seen;
    if (format == RecordFormat::Csv) {
        const auto &known = canonical_columns();
        for (const auto &raw : header) {
            auto name = trim(raw);
            if (std::find(known.begin(), known.end(), name) == known.end() || !seen.insert(name).second)
                throw SchemaMismatchError(name, "unexpected column '" + name + "'");
            columns.emplace_back(std::move(name));
        }
        for (const char *required : {"title", "kind"}) {
            if (!seen.contains(required))
                throw SchemaMismatchError(required, std::string("missing column '") + required + "'");
        }
    } else {
        const auto &map = export_column_map(format);
        for (const auto &raw : header) {
            const auto name = lower(trim(raw));
            std::optional<std::string> canonical;
            for (const auto &[vendor, target] : map) {
                if (lower(vendor) == name && !seen.contains(target)) {
                    canonical = target;
                    seen.insert(target);
                    break;
                }
            }
            columns.push_back(std::move(canonical)); // unmapped vendor columns are ignored
        }
        if (!seen.contains("title"))
            throw SchemaMismatchError("Title", "missing column 'Title'");
    }

    std::vector<std::string> cells;
    std::size_t ordinal = 0;
    while (true) {
        try {
            if (!reader.next(cells))
                break;
        } catch (const ParseError &e) {
            result.errors.push_back({reader.line(), e.what()});
            break;
        }
        if (cells.size() == 1 && trim(cells[0]).empty())
            continue;
        ++ordinal;
        if (cells.size() != columns.size()) {
            result.errors.push_back({reader.line(), "expected " + std::to_string(columns.size()) + " fields, found " +
                                                        std::to_string(cells.size())});
            continue;
        }
        RowFields row;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (columns[i])
                row.cells[*columns[i]] = std::move(cells[i]);
        }
        try {
            result.records.push_back(build_record(row, format, provenance, ordinal));
        } catch (const Error &e) {
            result.errors.push_back({reader.line(), e.what()});
        }
    }
    finish(result);
    return result;
}

std::ifstream open_input(const std::filesystem::path &path) {
    std::error_code ec;
    if (std::filesystem::is_directory(path, ec))
        throw UnreadableFileError("cannot read '" + path.string() + "': is a directory");
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UnreadableFileError("cannot read '" + path.string() + "'");
    return in;
}

std::ofstream open_output(const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write '" + path.string() + "'");
    return out;
}

template <typename T>
std::string opt_cell(const std::optional<T> &v) {
    if (!v)
        return {};
    if constexpr (std::is_same_v<T, std::string>)
        return *v;
    else
        return std::to_string(*v);
}

ordered_json to_json(const BibRecord &r) {
    ordered_json j;
    j["id"] = r.id.value;
    j["provenance"] = to_string(r.provenance);
    j["kind"] = to_string(r.kind);
    if (r.cites_target)
        j["cites_target"] = r.cites_target->value;
    j["title"] = r.title;
    j["authors"] = r.authors;
    if (r.source_title)
        j["source_title"] = *r.source_title;
    if (r.publisher)
        j["publisher"] = *r.publisher;
    if (r.year)
        j["year"] = *r.year;
    if (r.volume)
        j["volume"] = *r.volume;
    if (r.start_page)
        j["start_page"] = *r.start_page;
    if (r.web_domain)
        j["web_domain"] = *r.web_domain;
    if (r.citation_count)
        j["citation_count"] = *r.citation_count;
    if (r.entry_age_days)
        j["entry_age_days"] = *r.entry_age_days;
    j["is_citation_stub"] = r.is_citation_stub;
    return j;
}

} // namespace

std::string_view to_string(RecordFormat f) {
    switch (f) {
    case RecordFormat::Auto: return "auto";
    case RecordFormat::Jsonl: return "jsonl";
    case RecordFormat::Csv: return "csv";
    case RecordFormat::GsExport: return "gs-export";
    case RecordFormat::ScopusExport: return "scopus-export";
    }
    return "?";
}

RecordFormat parse_record_format(std::string_view token) {
    for (auto f : {RecordFormat::Auto, RecordFormat::Jsonl, RecordFormat::Csv, RecordFormat::GsExport,
                   RecordFormat::ScopusExport}) {
        if (to_string(f) == token)
            return f;
    }
    throw ParseError("unknown record format '" + std::string(token) + "'");
}

RecordFormat resolve_format(const std::filesystem::path &path, RecordFormat requested) {
    if (requested != RecordFormat::Auto)
        return requested;
    const auto ext = lower(path.extension().string());
    if (ext == ".jsonl" || ext == ".json" || ext == ".ndjson")
        return RecordFormat::Jsonl;
    if (ext == ".csv")
        return RecordFormat::Csv;
    throw ConfigError("cannot infer record format of '" + path.string() + "'; give it explicitly");
}

const std::vector<std::string> &canonical_columns() {
    static const std::vector<std::string> columns{
        "id",      "provenance", "kind",       "cites_target",   "title",          "authors",         "source_title",
        "publisher", "year",     "volume",     "start_page",     "web_domain",     "citation_count", "entry_age_days",
        "is_citation_stub"};
    return columns;
}

const std::vector<std::pair<std::string, std::string>> &export_column_map(RecordFormat f) {
    // Publish-or-Perish style Google Scholar export.
    static const std::vector<std::pair<std::string, std::string>> gs{
        {"ID", "id"},
        {"Kind", "kind"},
        {"CitesTarget", "cites_target"},
        {"Cites", "citation_count"},
        {"Authors", "authors"},
        {"Title", "title"},
        {"Year", "year"},
        {"Source", "source_title"},
        {"Publisher", "publisher"},
        {"Volume", "volume"},
        {"StartPage", "start_page"},
        {"ArticleURL", "web_domain"},
        {"FullTextURL", "web_domain"},
        {"Domain", "web_domain"},
        {"EntryAgeDays", "entry_age_days"},
        {"Stub", "is_citation_stub"},
    };
    // Scopus CSV export.
    static const std::vector<std::pair<std::string, std::string>> scopus{
        {"ID", "id"},
        {"Kind", "kind"},
        {"CitesTarget", "cites_target"},
        {"Authors", "authors"},
        {"Title", "title"},
        {"Year", "year"},
        {"Source title", "source_title"},
        {"Publisher", "publisher"},
        {"Volume", "volume"},
        {"Page start", "start_page"},
        {"Cited by", "citation_count"},
    };
    static const std::vector<std::pair<std::string, std::string>> none;
    if (f == RecordFormat::GsExport)
        return gs;
    if (f == RecordFormat::ScopusExport)
        return scopus;
    return none;
}

IngestResult ingest_stream(std::istream &in, RecordFormat format, Provenance provenance) {
    switch (format) {
    case RecordFormat::Jsonl:
        return ingest_jsonl(in, provenance);
    case RecordFormat::Csv:
    case RecordFormat::GsExport:
    case RecordFormat::ScopusExport:
        return ingest_csv(in, format, provenance);
    case RecordFormat::Auto:
        break;
    }
    throw ConfigError("record format must be resolved before reading a stream");
}

IngestResult ingest(const std::filesystem::path &path, RecordFormat format, Provenance provenance) {
    auto in = open_input(path);
    return ingest_stream(in, resolve_format(path, format), provenance);
}

void write_jsonl(std::ostream &out, const Corpus &records) {
    for (const auto &r : records)
        out << to_json(r).dump() << '\n';
}

void write_csv(std::ostream &out, const Corpus &records) {
    out << csv::join_row(canonical_columns());
    for (const auto &r : records) {
        out << csv::join_row({
            std::to_string(r.id.value),
            std::string(to_string(r.provenance)),
            std::string(to_string(r.kind)),
            r.cites_target ? std::to_string(r.cites_target->value) : std::string(),
            r.title,
            join_authors(r.authors),
            opt_cell(r.source_title),
            opt_cell(r.publisher),
            opt_cell(r.year),
            opt_cell(r.volume),
            opt_cell(r.start_page),
            opt_cell(r.web_domain),
            opt_cell(r.citation_count),
            opt_cell(r.entry_age_days),
            r.is_citation_stub ? "true" : "false",
        });
    }
}

void write_corpus(const std::filesystem::path &path, const Corpus &records) {
    auto out = open_output(path);
    if (resolve_format(path, RecordFormat::Auto) == RecordFormat::Csv)
        write_csv(out, records);
    else
        write_jsonl(out, records);
}

std::string join_authors(const std::vector<std::string> &authors) {
    std::string out;
    for (std::size_t i = 0; i < authors.size(); ++i) {
        if (i)
            out += ';';
        for (char c : authors[i]) {
            if (c == ';' || c == '\\')
                out += '\\';
            out += c;
        }
    }
    return out;
}

std::vector<std::string> split_authors(std::string_view cell) {
    std::vector<std::string> out;
    if (cell.empty())
        return out;
    std::string current;
    for (std::size_t i = 0; i < cell.size(); ++i) {
        const char c = cell[i];
        if (c == '\\' && i + 1 < cell.size()) {
            current += cell[++i];
        } else if (c == ';') {
            out.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    out.push_back(std::move(current));
    return out;
}

std::vector<std::string> read_source_list(const std::filesystem::path &path) {
    auto in = open_input(path);
    std::vector<std::string> titles;
    if (lower(path.extension().string()) == ".csv") {
        csv::Reader reader(in);
        std::vector<std::string> row;
        if (!reader.next(row))
            return titles;
        std::optional<std::size_t> column;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto name = lower(trim(row[i]));
            if (name == "title" || name == "source_title" || name == "source title")
                column = i;
        }
        if (!column)
            throw SchemaMismatchError(row.empty() ? std::string() : row[0], "source list CSV needs a 'title' column");
        while (reader.next(row)) {
            if (*column < row.size() && !trim(row[*column]).empty())
                titles.push_back(trim(row[*column]));
        }
        return titles;
    }
    std::string line;
    while (std::getline(in, line)) {
        auto title = trim(line);
        if (!title.empty() && !title.starts_with('#'))
            titles.push_back(std::move(title));
    }
    return titles;
}

void write_source_list(const std::filesystem::path &path, const std::vector<std::string> &titles) {
    auto out = open_output(path);
    for (const auto &t : titles)
        out << t << '\n';
}

PublisherAipTable read_aip_table(const std::filesystem::path &path) {
    auto in = open_input(path);
    csv::Reader reader(in);
    PublisherAipTable table;
    std::vector<std::string> row;
    if (!reader.next(row))
        return table;
    if (row.size() < 2 || lower(trim(row[0])) != "publisher" || lower(trim(row[1])) != "has_aip")
        throw SchemaMismatchError(row.empty() ? std::string() : row[0], "AIP table needs columns publisher,has_aip");
    while (reader.next(row)) {
        if (row.size() == 1 && trim(row[0]).empty())
            continue;
        if (row.size() < 2)
            throw ParseError("AIP table line " + std::to_string(reader.line()) + ": expected 2 fields");
        table.set(trim(row[0]), parse_bool("has_aip", trim(row[1])));
    }
    return table;
}

void write_aip_table(const std::filesystem::path &path, const std::vector<std::pair<std::string, bool>> &rows) {
    auto out = open_output(path);
    out << csv::join_row({"publisher", "has_aip"});
    for (const auto &[publisher, has] : rows)
        out << csv::join_row({publisher, has ? "true" : "false"});
}

SourcePairAllowlist read_allowlist(const std::filesystem::path &path) {
    auto in = open_input(path);
    csv::Reader reader(in);
    SourcePairAllowlist allow;
    std::vector<std::string> row;
    if (!reader.next(row))
        return allow;
    if (row.size() < 2 || lower(trim(row[0])) != "gs_source" || lower(trim(row[1])) != "scopus_source")
        throw SchemaMismatchError(row.empty() ? std::string() : row[0],
                                  "allowlist needs columns gs_source,scopus_source");
    while (reader.next(row)) {
        if (row.size() < 2)
            continue;
        allow.emplace(normalize_label(row[0]), normalize_label(row[1]));
    }
    return allow;
}

void write_ground_truth(std::ostream &out, const GroundTruth &truth) {
    auto pairs = [&](std::string_view type, const std::vector<std::pair<RecordId, RecordId>> &list, const char *a,
                     const char *b) {
        for (const auto &[x, y] : list) {
            ordered_json j;
            j["type"] = type;
            j[a] = x.value;
            j[b] = y.value;
            out << j.dump() << '\n';
        }
    };
    pairs("target_pair", truth.target_pairs, "gs", "scopus");
    pairs("citing_pair", truth.citing_pairs, "gs", "scopus");
    pairs("search_metrics_pair", truth.search_metrics_pairs, "search", "metrics");
    pairs("cross_language_pair", truth.cross_language_pairs, "gs", "scopus");
    for (const auto &d : truth.duplicates) {
        ordered_json j;
        j["type"] = "duplicate";
        j["corpus"] = to_string(d.corpus);
        j["original"] = d.original.value;
        j["duplicate"] = d.duplicate.value;
        j["expected"] = to_string(d.expected);
        out << j.dump() << '\n';
    }
    for (const auto &[id, category] : truth.categories) {
        ordered_json j;
        j["type"] = "category";
        j["id"] = id.value;
        j["category"] = to_string(category);
        out << j.dump() << '\n';
    }
    for (const auto &[id, days] : truth.delays_days) {
        ordered_json j;
        j["type"] = "delay";
        j["id"] = id.value;
        j["days"] = days;
        out << j.dump() << '\n';
    }
    if (truth.planted_median_delay_days || truth.planted_q3_delay_days) {
        ordered_json j;
        j["type"] = "planted_quantiles";
        if (truth.planted_median_delay_days)
            j["median_days"] = *truth.planted_median_delay_days;
        if (truth.planted_q3_delay_days)
            j["q3_days"] = *truth.planted_q3_delay_days;
        out << j.dump() << '\n';
    }
    for (const auto id : truth.all_ids) {
        ordered_json j;
        j["type"] = "record";
        j["id"] = id.value;
        out << j.dump() << '\n';
    }
}

GroundTruth read_ground_truth(std::istream &in) {
    GroundTruth truth;
    std::string line;
    std::size_t line_no = 0;
    auto id_of = [](const ordered_json &j, const char *key) { return RecordId{j.at(key).get<std::uint64_t>()}; };
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        try {
            const auto j = ordered_json::parse(line);
            const auto type = j.at("type").get<std::string>();
            if (type == "target_pair")
                truth.target_pairs.emplace_back(id_of(j, "gs"), id_of(j, "scopus"));
            else if (type == "citing_pair")
                truth.citing_pairs.emplace_back(id_of(j, "gs"), id_of(j, "scopus"));
            else if (type == "search_metrics_pair")
                truth.search_metrics_pairs.emplace_back(id_of(j, "search"), id_of(j, "metrics"));
            else if (type == "cross_language_pair")
                truth.cross_language_pairs.emplace_back(id_of(j, "gs"), id_of(j, "scopus"));
            else if (type == "duplicate")
                truth.duplicates.push_back({parse_provenance(j.at("corpus").get<std::string>()), id_of(j, "original"),
                                            id_of(j, "duplicate"), parse_similarity(j.at("expected").get<std::string>())});
            else if (type == "category")
                truth.categories[id_of(j, "id")] = parse_category(j.at("category").get<std::string>());
            else if (type == "delay")
                truth.delays_days[id_of(j, "id")] = j.at("days").get<int>();
            else if (type == "planted_quantiles") {
                if (j.contains("median_days"))
                    truth.planted_median_delay_days = j["median_days"].get<int>();
                if (j.contains("q3_days"))
                    truth.planted_q3_delay_days = j["q3_days"].get<int>();
            } else if (type == "record")
                truth.all_ids.insert(id_of(j, "id"));
            else
                throw ParseError("unknown ground-truth entry '" + type + "'");
        } catch (const nlohmann::json::exception &e) {
            throw ParseError("ground truth line " + std::to_string(line_no) + ": " + e.what());
        } catch (const ParseError &e) {
            throw ParseError("ground truth line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return truth;
}

GroundTruth read_ground_truth(const std::filesystem::path &path) {
    auto in = open_input(path);
    return read_ground_truth(in);
}

} // namespace citelink
