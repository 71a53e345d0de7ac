#pragma once

#include <stdexcept>
#include <string>

namespace algorec {

/// Base of every error the library raises. The CLI maps the subclasses onto
/// process exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad command-line usage or an inconsistent run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent input data (corpus, truth, pattern files).
class DataError : public Error {
public:
    using Error::Error;
};

class EncodingError : public DataError {
public:
    using DataError::DataError;
};

class PatternError : public DataError {
public:
    using DataError::DataError;
};

/// Failure talking to, or decoding the answer of, an LLM backend.
class BackendError : public Error {
public:
    using Error::Error;
};

/// Retryable transport failure (connection refused, timeout, 5xx).
class TransportError : public BackendError {
public:
    using BackendError::BackendError;
};

}  // namespace algorec
