#pragma once

#include <stdexcept>
#include <string>

namespace rdpf {

// Raised when an iterative routine fails to reach its accuracy contract
// (non-convergence, empty bracket, residual above threshold, ...).
// Config/domain violations use std::domain_error / std::invalid_argument.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rdpf
