#pragma once

#include <stdexcept>
#include <string>

namespace armoga {

// Raised when a caller breaks a documented precondition (dimension mismatch,
// out-of-box design, empty archive, ...).
class contract_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Raised for bad experiment configuration (unknown names, malformed values).
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised for filesystem failures; the message always carries the path.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, std::string const& message)
{
    if (!condition) { throw contract_error(message); }
}

} // namespace armoga
