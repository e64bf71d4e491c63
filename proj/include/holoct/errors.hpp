#ifndef HOLOCT_ERRORS_HPP
#define HOLOCT_ERRORS_HPP

#include <stdexcept>

namespace holoct {

// A rational number or function could not be mapped to the requested
// modular image (vanishing denominator, pole, bad prime).
class UnluckyPoint : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured ceiling (degree, point count, prime count, index) was hit.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Modular images disagree beyond what the majority votes can repair, or an
// internal consistency check failed.
class Inconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace holoct

#endif
