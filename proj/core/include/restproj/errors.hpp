#pragma once
#include <stdexcept>
#include <string>

namespace restproj {

/// Input violates an operation's stated precondition.
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A computation hit a configured resource limit (point budgets etc).
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two cloud points coincide; energies would be singular.
struct singular_pair_error : std::runtime_error {
    singular_pair_error(std::size_t i, std::size_t j)
        : std::runtime_error("singular pair: points " + std::to_string(i) + " and " +
                             std::to_string(j) + " coincide"),
          first(i), second(j) {}
    std::size_t first, second;
};

/// Requested scale window is finer than the data can support.
struct scale_window_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The caller took the wrong branch of a case analysis; the message names the
/// quantity that failed.
struct branch_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Transversality scan failed: slice differences are degenerate and the
/// caller should switch to the flat-shift construction.
struct degenerate_shift_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A tube system failed to cover a projected point.
struct coverage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace restproj
