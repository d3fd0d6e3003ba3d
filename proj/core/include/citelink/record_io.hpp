#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "citelink/coverage.hpp"
#include "citelink/model.hpp"
#include "citelink/synth.hpp"

namespace citelink {

/// Input layouts. The two export layouts rename vendor columns onto the
/// canonical schema (see export_column_map).
enum class RecordFormat { Auto, Jsonl, Csv, GsExport, ScopusExport };

std::string_view to_string(RecordFormat f);
RecordFormat parse_record_format(std::string_view token);

/// Resolves Auto from the file extension (.jsonl/.json or .csv).
RecordFormat resolve_format(const std::filesystem::path &path, RecordFormat requested);

struct RowError {
    std::size_t line = 0;
    std::string message;

    friend bool operator==(const RowError &, const RowError &) = default;
};

struct IngestResult {
    Corpus records;
    std::vector<RowError> errors;        // malformed rows, not ingested
    std::vector<Violation> violations;   // invariant violations among ingested rows
};

/// Canonical CSV column order.
const std::vector<std::string> &canonical_columns();

/// Vendor column name -> canonical column name.
const std::vector<std::pair<std::string, std::string>> &export_column_map(RecordFormat f);

/// Reads records. Rows without an id get their 1-based data row number.
/// Throws UnreadableFileError and SchemaMismatchError.
IngestResult ingest(const std::filesystem::path &path, RecordFormat format, Provenance provenance);
IngestResult ingest_stream(std::istream &in, RecordFormat format, Provenance provenance);

void write_jsonl(std::ostream &out, const Corpus &records);
void write_csv(std::ostream &out, const Corpus &records);
void write_corpus(const std::filesystem::path &path, const Corpus &records);

/// Author list cell: names joined by ';', with '\' escaping ';' and '\'.
std::string join_authors(const std::vector<std::string> &authors);
std::vector<std::string> split_authors(std::string_view cell);

/// Plain text with one title per line, or CSV with a "title" column.
std::vector<std::string> read_source_list(const std::filesystem::path &path);
void write_source_list(const std::filesystem::path &path, const std::vector<std::string> &titles);

/// CSV with columns publisher,has_aip.
PublisherAipTable read_aip_table(const std::filesystem::path &path);
void write_aip_table(const std::filesystem::path &path, const std::vector<std::pair<std::string, bool>> &rows);

/// CSV with columns gs_source,scopus_source; titles are normalized on read.
SourcePairAllowlist read_allowlist(const std::filesystem::path &path);

void write_ground_truth(std::ostream &out, const GroundTruth &truth);
GroundTruth read_ground_truth(std::istream &in);
GroundTruth read_ground_truth(const std::filesystem::path &path);

} // namespace citelink
