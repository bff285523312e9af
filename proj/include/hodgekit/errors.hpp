#pragma once

#include <stdexcept>
#include <string>

namespace hk {

// Malformed input or violated precondition. The CLI maps this to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An exact identity that the theory guarantees failed to hold. Either an
// invalid instance slipped past construction or there is a bug; tests treat
// this as a hard failure, never as a negative verdict.
struct TheoremViolation : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace hk
