#include "fracseq/frac_coeff.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fracseq {

namespace {

std::string format_order(double r) {
  std::ostringstream os;
  os.precision(17);
  os << r;
  return os.str();
}

// Sign of Gamma(x) for non-pole x: positive for x > 0, and on the negative
// axis it alternates interval by interval, negative on (-1,0).
double gamma_sign(double x) {
  if (x > 0.0) return 1.0;
  const double f = std::floor(x);
  return (static_cast<long long>(f) % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace

FracOrder::FracOrder(double r) : r_(r) {
  if (!std::isfinite(r)) {
    throw std::domain_error("difference order must be finite, got " + format_order(r));
  }
  if (r < 0.0 && r == std::floor(r)) {
    throw std::domain_error("difference order " + format_order(r) +
                            " is a negative integer: Gamma(r+1) is undefined");
  }
}

bool FracOrder::is_nonnegative_integer() const noexcept {
  return r_ >= 0.0 && r_ == std::floor(r_);
}

namespace detail {

std::vector<double> weight_prefix(double order, std::size_t count) {
  std::vector<double> w;
  w.reserve(count);
  w.push_back(1.0);
  for (std::size_t i = 1; i < count; ++i) {
    const double di = static_cast<double>(i);
    const double next = w.back() * ((di - 1.0 - order) / di);
    w.push_back(next == 0.0 ? 0.0 : next);  // normalize -0 at integer orders
  }
  return w;
}

std::vector<double> weight_partial_sums(double order, std::size_t count) {
  std::vector<double> s = weight_prefix(order, count);
  for (std::size_t i = 1; i < s.size(); ++i) s[i] += s[i - 1];
  return s;
}

}  // namespace detail

WeightVector weights(FracOrder order, std::size_t count) {
  if (count == 0) {
    throw std::invalid_argument("weights: count must be at least 1");
  }
  return WeightVector{order, detail::weight_prefix(order.value(), count)};
}

std::vector<double> weight_partial_sums(FracOrder order, std::size_t count) {
  if (count == 0) {
    throw std::invalid_argument("weight_partial_sums: count must be at least 1");
  }
  return detail::weight_partial_sums(order.value(), count);
}

double weight_direct(FracOrder order, unsigned i) {
  if (i > kWeightDirectMaxIndex) {
    throw std::out_of_range("weight_direct: index " + std::to_string(i) +
                            " exceeds the documented cutoff " +
                            std::to_string(kWeightDirectMaxIndex));
  }
  const double r = order.value();
  // 1/Gamma at a nonpositive-integer argument is exactly zero.
  if (order.is_nonnegative_integer() && static_cast<double>(i) > r) return 0.0;

  const double num_arg = r + 1.0;
  const double den_arg = r - static_cast<double>(i) + 1.0;
  const double log_mag =
      std::lgamma(num_arg) - std::lgamma(static_cast<double>(i) + 1.0) - std::lgamma(den_arg);
  if (log_mag > 700.0) {
    throw std::range_error("weight_direct: |w| overflows double at order " +
                           format_order(r) + ", index " + std::to_string(i));
  }
  double sign = (i % 2 == 0) ? 1.0 : -1.0;
  sign *= gamma_sign(num_arg) * gamma_sign(den_arg);
  return sign * std::exp(log_mag);
}

}  // namespace fracseq
