#pragma once

#include <string>
#include <utility>
#include <variant>

namespace botscan {

enum class ParseErrorCode {
    MalformedJson,
    MissingField,
    BadField,
    BadTimestamp,
    OutOfRangeId,
    InvalidGeo,
};

const char* parse_error_name(ParseErrorCode code);

struct ParseError {
    ParseErrorCode code;
    std::string message;
};

// Per-line parse outcome: a record or a structured error, never a silent drop.
template <typename T>
class ParseResult {
public:
    ParseResult(T value) : v_(std::move(value)) {}
    ParseResult(ParseError err) : v_(std::move(err)) {}

    bool ok() const { return std::holds_alternative<T>(v_); }
    const T& value() const { return std::get<T>(v_); }
    T&& take() { return std::move(std::get<T>(v_)); }
    const ParseError& error() const { return std::get<ParseError>(v_); }

private:
    std::variant<T, ParseError> v_;
};

}  // namespace botscan
