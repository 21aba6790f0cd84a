#pragma once

#include <stdexcept>
#include <string>

namespace feqlab {

/// Raised for forbidden inputs: zero denominators, incompatible orders,
/// missing bindings, malformed corner sets.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace feqlab
