#pragma once

#include <stdexcept>
#include <string>

namespace graphprod {

/// Raised when a computation would exceed its exactness budget (truncation
/// cutoff, ball radius, dimension cap). Results past the budget would be
/// silently corrupted, so we refuse instead.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace graphprod
