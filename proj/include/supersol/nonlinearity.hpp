#pragma once

#include <utility>
#include <vector>

#include "supersol/domain.hpp"

namespace supersol {

/// Source term f: continuous, nondecreasing, f(0) >= 0, mapping [0, inf) into
/// itself. Either a power law s^p with p > 1 or a piecewise-linear monotone
/// table (extended with its last slope beyond the final breakpoint).
class Nonlinearity {
 public:
  static Nonlinearity power_law(double p);
  static Nonlinearity monotone_table(std::vector<std::pair<double, double>> breakpoints);
  static Nonlinearity zero();

  double operator()(double s) const;
  Array operator()(const Array& s) const;

  bool is_power_law() const { return kind_ == Kind::power; }
  double exponent() const;  // power-law exponent p

 private:
  enum class Kind { power, table };
  Kind kind_ = Kind::power;
  double p_ = 2;
  std::vector<double> xs_, ys_;
};

}  // namespace supersol
