#pragma once

#include <stdexcept>
#include <string>

namespace biphoton {

/// Invalid user input: bad configuration values, malformed files, out-of-range requests.
class InvalidInput : public std::runtime_error {
public:
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

/// Structured parse failure; message names the offending key or file location.
class ParseError : public InvalidInput {
public:
    explicit ParseError(const std::string& what) : InvalidInput(what) {}
};

/// A grid cannot resolve or contain a requested physical feature.
class GridResolutionError : public InvalidInput {
public:
    explicit GridResolutionError(const std::string& what) : InvalidInput(what) {}
};

/// Data degenerate after preprocessing (all-zero surface, zero-variance density).
class DegenerateDataError : public InvalidInput {
public:
    explicit DegenerateDataError(const std::string& what) : InvalidInput(what) {}
};

/// Numerical failure: eigensolver or fit did not converge.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

class FitError : public NumericError {
public:
    explicit FitError(const std::string& what) : NumericError(what) {}
};

class SearchError : public NumericError {
public:
    explicit SearchError(const std::string& what) : NumericError(what) {}
};

}  // namespace biphoton
