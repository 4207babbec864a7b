#ifndef QSCHED_ERRORS_HPP
#define QSCHED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qsched {

/// A value violates a type invariant (non-positive capacity, bad weights, ...).
class invalid_argument_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// An assignment refers to a VM index that does not exist.
class index_out_of_range_error : public std::out_of_range
{
public:
    using std::out_of_range::out_of_range;
};

/// Exhaustive enumeration refused: m^n exceeds the configured guard.
class too_large_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// No assignment satisfies the time/budget caps.
class infeasible_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A generator range has lo > hi or a negative bound.
class invalid_range_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed instance file. `line` is 0 when the error is not positional.
class parse_error : public std::runtime_error
{
public:
    parse_error(const std::string& what, std::size_t line = 0)
        : std::runtime_error(what), line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class schema_version_error : public parse_error
{
public:
    using parse_error::parse_error;
};

} // namespace qsched

#endif
