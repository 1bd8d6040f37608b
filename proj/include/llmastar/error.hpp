#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace llmastar {

/// Failure category. The CLI maps each one onto a distinct exit code.
enum class ErrorCategory {
    config = 2,
    io = 3,
    provider = 4,
    data = 5,
    internal = 6,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

/// Malformed or out-of-contract input data (dataset files, environments).
class SchemaError : public Error {
public:
    SchemaError(std::string field_path, const std::string& what)
        : Error(ErrorCategory::data, field_path + ": " + what), field_path_(std::move(field_path)) {}

    const std::string& field_path() const noexcept { return field_path_; }

private:
    std::string field_path_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCategory::io, what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

/// Search-side contract violations (broken parent chains, bad arguments).
class SearchError : public Error {
public:
    explicit SearchError(const std::string& what) : Error(ErrorCategory::internal, what) {}
};

}  // namespace llmastar
