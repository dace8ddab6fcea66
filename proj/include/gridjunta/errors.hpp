#pragma once

#include <stdexcept>
#include <string>

namespace gridjunta {

// Thrown when an operation would exceed a configured enumeration or memory
// budget. Callers must handle it explicitly; nothing is silently truncated.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a hard output contract (an epsilon-closeness guarantee) fails
// its post-hoc recomputation. Indicates an implementation bug, never tolerated.
struct ContractViolation : std::logic_error {
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// Malformed or corrupted input file.
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gridjunta
