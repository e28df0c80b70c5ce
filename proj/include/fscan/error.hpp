#pragma once

#include <stdexcept>
#include <string>

namespace fscan {

// Error taxonomy used across the library. The CLI maps these onto exit
// codes: ParseError -> 1, ValidationError -> 2, NumericError -> 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

// Structural preconditions: shapes, endpoints, boundaries, ranges.
struct ValidationError : Error {
    using Error::Error;
};

struct DimensionMismatch : ValidationError {
    DimensionMismatch(std::size_t got, std::size_t want)
        : ValidationError("dimension mismatch: " + std::to_string(got) +
                          " vs " + std::to_string(want)) {}
    explicit DimensionMismatch(const std::string& what) : ValidationError(what) {}
};

struct NonSquare : ValidationError {
    explicit NonSquare(const std::string& what = "matrix is not square")
        : ValidationError(what) {}
};

struct OutOfRange : ValidationError {
    explicit OutOfRange(const std::string& what) : ValidationError(what) {}
};

struct EndpointMismatch : ValidationError {
    explicit EndpointMismatch(std::size_t cell_index)
        : ValidationError("endpoint mismatch at cell " + std::to_string(cell_index)),
          index(cell_index) {}
    std::size_t index;
};

struct BoundaryMismatch : ValidationError {
    explicit BoundaryMismatch(const std::string& what) : ValidationError(what) {}
};

struct AlphabetMismatch : ValidationError {
    explicit AlphabetMismatch(const std::string& what) : ValidationError(what) {}
};

// Numeric failures detected at run time on well-formed inputs.
struct NumericError : Error {
    using Error::Error;
};

struct Singular : NumericError {
    explicit Singular(const std::string& what = "matrix is singular")
        : NumericError(what) {}
};

struct NonFinite : NumericError {
    explicit NonFinite(const std::string& what = "non-finite entry")
        : NumericError(what) {}
};

struct NotInFeedbackImage : NumericError {
    explicit NotInFeedbackImage(const std::string& what) : NumericError(what) {}
};

}  // namespace fscan
