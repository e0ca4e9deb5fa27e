#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace solmut {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Error anchored at a source position. what() carries "line:col: message".
class SourceError : public Error {
public:
    SourceError(std::uint32_t line, std::uint32_t col, std::string message)
        : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + message),
          line_(line), col_(col), message_(std::move(message)) {}

    [[nodiscard]] std::uint32_t line() const { return line_; }
    [[nodiscard]] std::uint32_t col() const { return col_; }
    [[nodiscard]] const std::string& message() const { return message_; }

    /// "file:line:col: message", the diagnostic line format.
    [[nodiscard]] std::string diagnostic(const std::string& file) const {
        return file + ":" + what();
    }

private:
    std::uint32_t line_;
    std::uint32_t col_;
    std::string message_;
};

class LexError : public SourceError {
public:
    using SourceError::SourceError;
};

class ParseError : public SourceError {
public:
    ParseError(std::uint32_t line, std::uint32_t col, std::string message,
               std::vector<std::string> expected = {})
        : SourceError(line, col, std::move(message)), expected_(std::move(expected)) {}

    [[nodiscard]] const std::vector<std::string>& expected() const { return expected_; }

private:
    std::vector<std::string> expected_;
};

/// A mutation point no longer matches the text it is applied to.
class SpanMismatch : public Error {
public:
    using Error::Error;
};

/// An external compile or test adapter violated its protocol.
class AdapterError : public Error {
public:
    using Error::Error;
};

class BaselineFailure : public Error {
public:
    explicit BaselineFailure(std::vector<std::string> failing)
        : Error(format(failing)), failing_(std::move(failing)) {}

    [[nodiscard]] const std::vector<std::string>& failing_tests() const { return failing_; }

private:
    static std::string format(const std::vector<std::string>& ids) {
        std::string s = "baseline failure: " + std::to_string(ids.size()) + " failing test(s):";
        for (const auto& id : ids) s += " " + id;
        return s;
    }
    std::vector<std::string> failing_;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Mutation score requested over zero non-equivalent mutants.
class UndefinedScore : public Error {
public:
    using Error::Error;
};

class ExperimentInfeasible : public Error {
public:
    using Error::Error;
};

class InsufficientPairs : public Error {
public:
    using Error::Error;
};

} // namespace solmut
