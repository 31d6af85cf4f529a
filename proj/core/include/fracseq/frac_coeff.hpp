#pragma once

#include <cstddef>
#include <vector>

namespace fracseq {

/// A real difference order r. Valid for every finite real except the
/// negative integers, where Gamma(r+1) has a pole. The constructor throws
/// std::domain_error naming the offending value.
class FracOrder {
 public:
  explicit FracOrder(double r);

  double value() const noexcept { return r_; }
  bool is_nonnegative_integer() const noexcept;

  /// The order of the inverse operator. Throws if -r is a negative integer
  /// (i.e. r is a positive integer); use the raw-order kernels in that case.
  FracOrder negated() const { return FracOrder(-r_); }

 private:
  double r_;
};

/// The kernel w_0..w_{count-1} of the order-r difference operator,
/// w_i = (-1)^i Gamma(r+1) / (i! Gamma(r-i+1)), computed by the
/// multiplicative recurrence w_0 = 1, w_i = w_{i-1} (i-1-r)/i.
/// At nonnegative integer r the recurrence gives the signed binomial
/// coefficients with exact zeros beyond i = r.
struct WeightVector {
  FracOrder order;
  std::vector<double> weights;
};

WeightVector weights(FracOrder order, std::size_t count);

/// Partial sums S_m = w_0 + ... + w_m of the order-r kernel, m < count.
std::vector<double> weight_partial_sums(FracOrder order, std::size_t count);

/// Largest index accepted by weight_direct. The log-Gamma route is stable
/// well past the factorial overflow point near 170!, so the cutoff is a
/// documented contract rather than a numeric cliff.
inline constexpr unsigned kWeightDirectMaxIndex = 1000;

/// Direct Gamma-ratio evaluation of w_i, used as a cross-check oracle for
/// the recurrence. Signed log-Gamma arithmetic; throws std::out_of_range
/// beyond kWeightDirectMaxIndex and std::range_error if the magnitude
/// cannot be represented.
double weight_direct(FracOrder order, unsigned i);

namespace detail {

/// Recurrence kernel for a raw order. The recurrence is the analytic
/// continuation of the Gamma-ratio formula and is well defined for every
/// finite r, including negative integers (e.g. r = -1 gives the all-ones
/// summation kernel); the FracOrder validity check applies only where a
/// Gamma quotient is actually evaluated.
std::vector<double> weight_prefix(double order, std::size_t count);

/// Partial sums of weight_prefix.
std::vector<double> weight_partial_sums(double order, std::size_t count);

}  // namespace detail

}  // namespace fracseq
