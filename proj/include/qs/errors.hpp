#pragma once

#include <stdexcept>
#include <string>

namespace qs {

// Input outside an operation's mathematical domain (bad residue, zero, inert prime, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Bad job or verification configuration (bound below the expected list, bad filter text, ...).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Table or enumeration too large, or I/O failure while journaling.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A search that a proven lemma guarantees to succeed came back empty.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Journal whose header cannot be read back.
class JournalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qs
