#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace topochange {

/// Malformed or inconsistent caller input (bad dimensions, out-of-range parameters).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Data that is well-formed but degenerate for the requested operation (e.g. all points coincide).
class DegenerateDataError : public InputError {
public:
    using InputError::InputError;
};

/// A request that would exceed a computational budget (exhaustive enumeration guards).
class GuardError : public InputError {
public:
    using InputError::InputError;
};

/// A text input that failed to parse; carries the file and 1-based line.
class ParseError : public InputError {
public:
    ParseError(std::string file, std::size_t line, const std::string& what)
        : InputError(file + ":" + std::to_string(line) + ": " + what),
          file_(std::move(file)),
          line_(line) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

/// Violated precondition on an internal contract (programming error at the call site).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace topochange
