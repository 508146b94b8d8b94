#ifndef LIKEPOWERS_ERRORS_HPP
#define LIKEPOWERS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace likepowers
{

// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// A configured bound (sequence index, exponent, prime count, ...) would be exceeded.
class resource_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// An exact certification failed. Always an implementation bug.
class invariant_violation : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

} // namespace likepowers

#endif
