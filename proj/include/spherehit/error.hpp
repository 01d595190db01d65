// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace spherehit {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A series did not reach its tolerance within the allowed number of terms.
class TruncationError : public std::runtime_error {
  public:
    TruncationError(const std::string& what, int terms, double residual)
        : std::runtime_error(what), terms_(terms), residual_(residual) {}

    int terms() const noexcept { return terms_; }
    double residual() const noexcept { return residual_; }

  private:
    int terms_;
    double residual_;
};

/// Numerical Laplace inversion produced an unusable value (significant
/// negativity, or disagreement between the two inversion routes).
class InversionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid simulation or run configuration.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {
inline void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}
}  // namespace detail

}  // namespace spherehit
