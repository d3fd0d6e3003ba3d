#pragma once

#include <stdexcept>
#include <string>

namespace citelink {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unknown enumeration token or malformed field during deserialization.
class ParseError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class EmptyAuthorError : public Error {
public:
    using Error::Error;
};

class ZeroDenominatorError : public Error {
public:
    using Error::Error;
};

class ConstantInputError : public Error {
public:
    using Error::Error;
};

class UnreadableFileError : public Error {
public:
    using Error::Error;
};

/// A required column is missing from a file header.
class SchemaMismatchError : public Error {
public:
    SchemaMismatchError(const std::string &column, const std::string &what)
        : Error(what), column_(column) {}

    const std::string &column() const noexcept { return column_; }

private:
    std::string column_;
};

/// Identifiers in pipeline output do not belong to the scored corpus.
class MismatchedCorpusError : public Error {
public:
    using Error::Error;
};

/// Wraps a failure with the name of the pipeline stage that raised it.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string &what)
        : Error("stage '" + stage + "' failed: " + what), stage_(std::move(stage)) {}

    const std::string &stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

} // namespace citelink
