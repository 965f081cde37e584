#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pscnn {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OddWidthError : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct InvalidDimensions : Error {
    using Error::Error;
};

struct InvalidParameters : Error {
    using Error::Error;
};

struct EmptyDataset : Error {
    using Error::Error;
};

struct BothListsEmpty : Error {
    using Error::Error;
};

struct OutOfCodomain : Error {
    using Error::Error;
};

struct EmptyEnsemble : Error {
    using Error::Error;
};

struct LengthMismatch : Error {
    using Error::Error;
};

struct EmptyVector : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

/// CSV cell that failed to parse; row/column are 1-based.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t row_, std::size_t column_)
        : Error(msg), row(row_), column(column_) {}
    std::size_t row;
    std::size_t column;
};

/// Row whose field count differs from the first row; row is 1-based.
struct RaggedRow : Error {
    RaggedRow(const std::string& msg, std::size_t row_) : Error(msg), row(row_) {}
    std::size_t row;
};

struct VersionMismatch : Error {
    using Error::Error;
};

struct CorruptModel : Error {
    using Error::Error;
};

}  // namespace pscnn
