#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hurstlab {

// Input data violates a precondition of an estimator or loader. The CLI maps
// this family to exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid configuration or arguments (exit code 1).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class MalformedRow : public DataError {
public:
    MalformedRow(std::size_t line, const std::string& detail)
        : DataError("malformed row at line " + std::to_string(line) + ": " + detail), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class NonPositivePrice : public DataError {
public:
    explicit NonPositivePrice(std::size_t line)
        : DataError("non-positive price at line " + std::to_string(line)), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class DuplicateDate : public DataError {
public:
    DuplicateDate(std::size_t line, std::string date)
        : DataError("duplicate date " + date + " at line " + std::to_string(line)),
          line_(line), date_(std::move(date)) {}
    std::size_t line() const noexcept { return line_; }
    const std::string& date() const noexcept { return date_; }

private:
    std::size_t line_;
    std::string date_;
};

class MissingDays : public DataError {
public:
    explicit MissingDays(std::vector<std::string> gaps)
        : DataError(describe(gaps)), gaps_(std::move(gaps)) {}
    const std::vector<std::string>& gaps() const noexcept { return gaps_; }

private:
    static std::string describe(const std::vector<std::string>& gaps) {
        std::string msg = std::to_string(gaps.size()) + " missing calendar day(s)";
        if (!gaps.empty()) {
            msg += ", first " + gaps.front();
        }
        return msg;
    }
    std::vector<std::string> gaps_;
};

class TooShort : public DataError {
public:
    using DataError::DataError;
};

class DegenerateSeries : public DataError {
public:
    using DataError::DataError;
};

// A structure function value K_q(tau) is zero or non-finite.
class DegenerateStructure : public DataError {
public:
    using DataError::DataError;
};

class SingularFit : public DataError {
public:
    using DataError::DataError;
};

// Every segment at some scale has zero detrended variance, so a q <= 0
// fluctuation function is undefined.
class ZeroVarianceSegment : public DataError {
public:
    using DataError::DataError;
};

// More tickers failed than the pipeline's failure budget allows (exit code 3).
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hurstlab
