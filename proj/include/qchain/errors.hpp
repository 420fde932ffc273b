#pragma once

#include <stdexcept>

namespace qchain {

/// Thrown when an operation would exceed a configured memory or
/// enumeration cap (e.g. brute-force scans above the qubit limit).
class ResourceCapError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace qchain
