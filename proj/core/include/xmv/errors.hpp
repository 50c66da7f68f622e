#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xmv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    explicit Error(const std::string &message) : std::runtime_error(message) {}
};

/// Malformed input text (XML documents or workload queries). Carries the
/// 1-based source position of the offending character or token.
class ParseError : public Error
{
public:
    ParseError(const std::string &message, std::size_t line, std::size_t column)
        : Error(message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")")
        , message_(message)
        , line_(line)
        , column_(column)
    {}

    /// The message without the position suffix.
    const std::string &message() const { return message_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

/// A construct the query dialect deliberately does not cover (disjunction,
/// inequality predicates, nested FLWOR, ...).
class UnsupportedConstructError : public ParseError
{
public:
    UnsupportedConstructError(const std::string &construct, std::size_t line, std::size_t column)
        : ParseError("unsupported construct: " + construct, line, column)
        , construct_(construct)
    {}

    const std::string &construct() const { return construct_; }

private:
    std::string construct_;
};

/// Structurally well-formed input whose cross references do not resolve:
/// facts naming unknown members, views naming unknown attributes, ...
class IntegrityError : public Error
{
public:
    using Error::Error;
};

/// Input that violates a declared invariant (zero cardinality, duplicate
/// names, missing required fields, ...).
class ValidationError : public Error
{
public:
    using Error::Error;
};

} // namespace xmv
