#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace clustrans {

// Error taxonomy mirrors the CLI exit codes: bad input / violated
// preconditions vs broken internal invariants.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double feas = 1e-9;  // primal feasibility, geometric comparisons
  double opt = 1e-7;   // dual feasibility / optimality
};

enum class PivotRule { Dantzig, Bland };

// One record holds every knob so runs are auditable and reproducible.
struct Config {
  Tolerances tol;
  PivotRule pivot = PivotRule::Dantzig;
  std::uint64_t enum_budget = 10'000'000;
  std::uint64_t seed = 0;
};

// |a - b| measured against 1 + max(|a|,|b|).
inline bool rel_close(double a, double b, double rtol) {
  return std::abs(a - b) <= rtol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

inline double infinity() { return std::numeric_limits<double>::infinity(); }

}  // namespace clustrans
