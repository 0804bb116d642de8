#include "supersol/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace supersol {

Nonlinearity Nonlinearity::power_law(double p) {
  if (!(p > 1)) throw std::invalid_argument("power law requires p > 1");
  Nonlinearity f;
  f.kind_ = Kind::power;
  f.p_ = p;
  return f;
}

Nonlinearity Nonlinearity::monotone_table(
    std::vector<std::pair<double, double>> breakpoints) {
  if (breakpoints.size() < 2)
    throw std::invalid_argument("monotone table needs at least two breakpoints");
  Nonlinearity f;
  f.kind_ = Kind::table;
  double prev_x = -1, prev_y = -1;
  for (const auto& [x, y] : breakpoints) {
    if (x < 0 || y < 0)
      throw std::invalid_argument("table breakpoints must be nonnegative");
    if (!f.xs_.empty()) {
      if (x <= prev_x) throw std::invalid_argument("table abscissae must increase");
      if (y < prev_y) throw std::invalid_argument("table values must be nondecreasing");
    }
    f.xs_.push_back(x);
    f.ys_.push_back(y);
    prev_x = x;
    prev_y = y;
  }
  if (f.xs_.front() != 0)
    throw std::invalid_argument("table must start at s = 0 (f(0) is required)");
  return f;
}

Nonlinearity Nonlinearity::zero() { return monotone_table({{0.0, 0.0}, {1.0, 0.0}}); }

double Nonlinearity::exponent() const {
  if (kind_ != Kind::power)
    throw std::logic_error("exponent() is only defined for power laws");
  return p_;
}

double Nonlinearity::operator()(double s) const {
  if (s < 0) s = 0;
  if (kind_ == Kind::power) return std::pow(s, p_);
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), s);
  if (it == xs_.begin()) return ys_.front();
  std::size_t hi = static_cast<std::size_t>(it - xs_.begin());
  if (hi >= xs_.size()) hi = xs_.size() - 1;  // extend with the last slope
  const std::size_t lo = hi - 1;
  const double slope = (ys_[hi] - ys_[lo]) / (xs_[hi] - xs_[lo]);
  return ys_[lo] + slope * (s - xs_[lo]);
}

Array Nonlinearity::operator()(const Array& s) const {
  if (kind_ == Kind::power) return s.max(0.0).pow(p_);
  Array out(s.size());
  for (Index i = 0; i < s.size(); ++i) out[i] = (*this)(s[i]);
  return out;
}

}  // namespace supersol
