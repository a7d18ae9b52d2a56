#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flpe
{

// Bad user input: value counts, unknown keys, malformed files.
class configuration_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class topology_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Raised when a harness applies an event that was not enabled. Always a bug.
class scheduler_contract_violation : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

// A configured resource cap (visited states, closure size) was exceeded.
class resource_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class unsupported_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class parse_error : public std::runtime_error
{
    std::size_t position_;

public:
    parse_error( const std::string& what, std::size_t position )
        : std::runtime_error{ what + " at position " + std::to_string( position ) }, position_{ position }
    {
    }

    [[nodiscard]] std::size_t position() const { return position_; }
};

} // namespace flpe
