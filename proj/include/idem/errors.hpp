#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace idem {

/// Base class for all engine errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Query at a time before the system's deployment.
class BeforeDeploymentError : public Error {
public:
    using Error::Error;
};

/// No measurement exists that could answer the query.
class NoDataError : public Error {
public:
    using Error::Error;
};

/// Contract or ladder text does not match the grammar.
class ParseError : public Error {
public:
    ParseError(std::size_t position, std::string expected, std::string found)
        : Error("parse error at " + std::to_string(position) + ": expected " + expected +
                ", found " + (found.empty() ? "end of input" : "'" + found + "'")),
          position(position),
          expected(std::move(expected)),
          found(std::move(found)) {}

    std::size_t position;
    std::string expected;
    std::string found;
};

/// Ladder text has no `default` line.
class MissingDefaultError : public Error {
public:
    using Error::Error;
};

/// Base for ledger file violations; carries the 1-based line when known.
class LedgerError : public Error {
public:
    LedgerError(std::string msg, std::optional<std::size_t> line = std::nullopt)
        : Error(line ? "line " + std::to_string(*line) + ": " + msg : std::move(msg)),
          line(line) {}

    std::optional<std::size_t> line;
};

class OutOfOrderError : public LedgerError {
public:
    using LedgerError::LedgerError;
};

class DuplicateDeploymentError : public LedgerError {
public:
    using LedgerError::LedgerError;
};

class MissingDeploymentError : public LedgerError {
public:
    using LedgerError::LedgerError;
};

class MalformedRecordError : public LedgerError {
public:
    using LedgerError::LedgerError;
};

class UnsupportedVersionError : public LedgerError {
public:
    using LedgerError::LedgerError;
};

/// A history was queried against a kind its techno-function does not belong to,
/// in a context where no verdict can carry the mismatch.
class KindMismatchError : public Error {
public:
    using Error::Error;
};

/// Invalid drift-model parameters for trajectory generation.
class InvalidModelError : public Error {
public:
    using Error::Error;
};

}  // namespace idem
