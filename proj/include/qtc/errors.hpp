#pragma once

#include <stdexcept>
#include <string>

namespace qtc {

// Exit-code contract of the CLI: 2 invariant violation, 3 capacity, 4 I/O.

struct invariant_violation : std::logic_error {
    explicit invariant_violation(const std::string& what) : std::logic_error(what) {}
};

struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const char* what) {
    if (!cond) throw invariant_violation(what);
}

} // namespace qtc
