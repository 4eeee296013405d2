#ifndef FGM_ERROR_HPP
#define FGM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fgm {

// Invalid caller-supplied data (bad dimensions, broken invariants, ...).
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical consistency check failed at runtime. Carries the iteration
// step at which it happened when that is meaningful (sampler steps,
// sample indices), -1 otherwise.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what, long step = -1)
      : std::runtime_error(step >= 0 ? what + " (step " + std::to_string(step) + ")" : what),
        step_(step) {}
  long step() const noexcept { return step_; }

 private:
  long step_;
};

// Estimator was handed an empty (or fully filtered-out) sample batch.
class insufficient_samples : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fgm

#endif
