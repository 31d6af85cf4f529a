#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fracseq/frac_coeff.hpp"
#include "fracseq/sequence.hpp"

namespace fracseq {

/// Lower-triangular infinite matrix realized as a row generator. Entries
/// above the diagonal are exactly zero; `truncation(N)` is the leading
/// N x N window, which for triangles is exact (the window of the inverse
/// is the inverse of the window).
///
/// Three backings share the interface: a convolution kernel (entry(n,k) =
/// kern[n-k], the fractional difference family), a general entry function,
/// and a dense window produced by compose(). Dense-backed operators carry a
/// window bound; reading past it throws std::out_of_range.
class TriangularOperator {
 public:
  using EntryFn = std::function<double(std::size_t, std::size_t)>;
  using KernelFn = std::function<std::vector<double>(std::size_t)>;

  static TriangularOperator from_entries(std::string name, EntryFn fn);
  static TriangularOperator from_kernel(std::string name, KernelFn kernel_prefix);
  static TriangularOperator from_matrix(std::string name, Eigen::MatrixXd window);

  const std::string& name() const noexcept { return name_; }
  std::optional<std::size_t> window() const noexcept { return window_; }
  bool is_convolution() const noexcept { return kernel_ != nullptr; }

  double entry(std::size_t n, std::size_t k) const;
  Eigen::MatrixXd truncation(std::size_t n) const;

  /// First `count` kernel values for convolution-backed operators.
  std::vector<double> kernel_prefix(std::size_t count) const;

 private:
  TriangularOperator() = default;

  std::string name_;
  EntryFn entry_;
  KernelFn kernel_;
  std::shared_ptr<const Eigen::MatrixXd> dense_;
  std::optional<std::size_t> window_;
};

/// Infinite matrix whose rows each carry an explicit column bound: entries
/// at or beyond `row_bound(n)` are exactly zero, and a nullopt bound marks a
/// genuinely infinite row (the Taylor means) whose evaluation on a window
/// must be flagged as tail-truncated.
class RowFiniteMatrix {
 public:
  using EntryFn = std::function<double(std::size_t, std::size_t)>;
  using RowBoundFn = std::function<std::optional<std::size_t>(std::size_t)>;

  static RowFiniteMatrix from_entries(std::string name, EntryFn fn, RowBoundFn bound);
  static RowFiniteMatrix from_dense(std::string name, Eigen::MatrixXd window,
                                    bool tail_truncated = false);

  const std::string& name() const noexcept { return name_; }
  std::optional<std::size_t> window() const noexcept { return window_; }
  /// True when this matrix was materialized from rows that extended past
  /// its window (results derived from it are approximate).
  bool tail_truncated() const noexcept { return tail_truncated_; }

  double entry(std::size_t n, std::size_t k) const;
  std::optional<std::size_t> row_bound(std::size_t n) const;

  /// Dense backing when materialized, nullptr otherwise.
  const Eigen::MatrixXd* dense() const noexcept { return dense_.get(); }

 private:
  RowFiniteMatrix() = default;

  std::string name_;
  EntryFn entry_;
  RowBoundFn bound_;
  std::shared_ptr<const Eigen::MatrixXd> dense_;
  std::optional<std::size_t> window_;
  bool tail_truncated_ = false;
};

using AnyMatrix = std::variant<TriangularOperator, RowFiniteMatrix>;

/// The order-r difference triangle: entry(n,k) = w_{n-k}(r), unit diagonal.
TriangularOperator build_frac_delta(FracOrder order);

/// Its inverse triangle, entry(n,k) = w_{n-k}(-r). Defined for every valid
/// order via the recurrence continuation (at r = 1 this is the running-sum
/// triangle even though the literal Gamma quotient degenerates).
TriangularOperator build_frac_delta_inverse(FracOrder order);

TriangularOperator build_identity();
TriangularOperator build_cesaro();
/// Euler means E^q, 0 < q < 1: entry(n,k) = C(n,k) (1-q)^{n-k} q^k.
TriangularOperator build_euler(double q);
/// Riesz means R^t for positive weights t: entry(n,k) = t_k / (t_0+...+t_n).
/// The window is limited by the supplied weight list.
TriangularOperator build_riesz(std::vector<double> t);
/// Taylor means T^q, 0 < q < 1: entry(n,k) = C(k,n) (1-q)^{n+1} q^{k-n} for
/// k >= n. Upper triangular with infinite rows.
RowFiniteMatrix build_taylor(double q);

/// Name-dispatched builder backing the matrix-spec file format.
/// Known names: identity, cesaro, euler(q), riesz(weights), taylor(q),
/// frac_delta(order), frac_delta_inv(order).
struct BuiltinSpec {
  std::string name;
  std::optional<double> param;   // euler/taylor ratio or frac_delta order
  std::vector<double> weights;   // riesz
};
AnyMatrix build_builtin(const BuiltinSpec& spec);

/// Window-exact product: truncation(n) of the result equals the product of
/// the operand truncations.
TriangularOperator compose(const TriangularOperator& a, const TriangularOperator& b,
                           std::size_t n);

/// y_n = sum_k entry(n,k) x_k on the prefix of x. For triangular operators
/// this equals the exact infinite-matrix action; for row-finite matrices a
/// row bound past the prefix sets the `approximate` flag on the result.
TruncatedSequence apply(const TriangularOperator& op, const TruncatedSequence& x);
TruncatedSequence apply(const RowFiniteMatrix& a, const TruncatedSequence& x);
TruncatedSequence apply(const AnyMatrix& m, const TruncatedSequence& x);

/// View a triangle through the row-finite interface (row bound n+1).
RowFiniteMatrix as_row_finite(const TriangularOperator& op);
RowFiniteMatrix as_row_finite(const AnyMatrix& m);

/// The leading n x n window of a row-finite matrix as a dense block.
/// `tail_truncated` records whether any evaluated row extended past the
/// window (entries were cut, not known to be zero).
struct MaterializedWindow {
  Eigen::MatrixXd values;
  bool tail_truncated = false;
};
MaterializedWindow materialize_window(const RowFiniteMatrix& a, std::size_t n);

/// The D-side transform of the fdf source characterization on an N-window:
/// t_{nk} = a_{nk} * (w_0(-r)+...+w_k(-r)), then d_{nk} = t_{nk} - t_{n,k+1}
/// for k < N-1 with the single-term branch d_{n,N-1} = t_{n,N-1} at the
/// truncation edge.
RowFiniteMatrix transform_D(const RowFiniteMatrix& a, FracOrder order, std::size_t n);

/// The E-side transform of the fdf target characterization, literal form:
/// e_{nk} = sum_{j<=n} S_{n-j}(r) a_{jk} with S the kernel partial sums.
RowFiniteMatrix transform_E(const RowFiniteMatrix& a, FracOrder order, std::size_t n);

/// Alternate reading with the plain weight-convolution kernel,
/// e_{nk} = sum_{j<=n} w_{n-j}(r) a_{jk}. For every order,
/// transform_E(a) == transform_E_weight_kernel(column partial sums of a).
RowFiniteMatrix transform_E_weight_kernel(const RowFiniteMatrix& a, FracOrder order,
                                          std::size_t n);

/// Column partial sums p_{nk} = sum_{j<=n} a_{jk} on an N-window.
RowFiniteMatrix column_partial_sums(const RowFiniteMatrix& a, std::size_t n);

// Named matrix substitutions from the worked examples: each produces the
// matrix whose rows replace a_{nk} when characterizing against the
// corresponding derived space.

/// c_{nk} = sum_{j<=n} C(n,j)(1-q)^{n-j} q^j a_{jk}  (Euler means of rows).
RowFiniteMatrix euler_rows(const RowFiniteMatrix& a, double q);
/// g_{nk} = (1/T_n) sum_{j<=n} t_j a_{jk}  (Riesz means of rows).
RowFiniteMatrix riesz_rows(const RowFiniteMatrix& a, std::vector<double> t);
/// p_{nk} = sum_{j>=n} C(j,n)(1-q)^{n+1} q^{j-n} a_{jk}, materialized on an
/// N-window and always tail-truncated (the Taylor rows are infinite).
RowFiniteMatrix taylor_rows(const RowFiniteMatrix& a, double q, std::size_t n);
/// h_{nk} = s a_{n-1,k} + r a_{nk}, with a_{-1,k} taken as zero.
RowFiniteMatrix shifted_blend_rows(const RowFiniteMatrix& a, double s, double r);
/// m_{nk} = sum_{j>=k} a_{nj} / (j+1), exact when the rows of `a` are
/// finite, window-truncated (and flagged) otherwise.
RowFiniteMatrix harmonic_tail_rows(const RowFiniteMatrix& a, std::size_t window);

}  // namespace fracseq
