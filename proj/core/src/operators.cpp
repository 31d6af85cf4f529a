#include "fracseq/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace fracseq {

namespace {

void check_index(const std::optional<std::size_t>& window, std::size_t n, std::size_t k,
                 const std::string& name) {
  if (window && (n >= *window || k >= *window)) {
    throw std::out_of_range(name + ": index (" + std::to_string(n) + "," + std::to_string(k) +
                            ") outside the materialized window " + std::to_string(*window));
  }
}

double log_binomial(std::size_t n, std::size_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

// ---------------------------------------------------------------------------
// TriangularOperator

TriangularOperator TriangularOperator::from_entries(std::string name, EntryFn fn) {
  TriangularOperator op;
  op.name_ = std::move(name);
  op.entry_ = std::move(fn);
  return op;
}

TriangularOperator TriangularOperator::from_kernel(std::string name, KernelFn kernel_prefix) {
  TriangularOperator op;
  op.name_ = std::move(name);
  op.kernel_ = std::move(kernel_prefix);
  return op;
}

TriangularOperator TriangularOperator::from_matrix(std::string name, Eigen::MatrixXd window) {
  if (window.rows() != window.cols()) {
    throw std::invalid_argument("from_matrix: window must be square");
  }
  TriangularOperator op;
  op.name_ = std::move(name);
  op.window_ = static_cast<std::size_t>(window.rows());
  op.dense_ = std::make_shared<const Eigen::MatrixXd>(std::move(window));
  return op;
}

double TriangularOperator::entry(std::size_t n, std::size_t k) const {
  if (k > n) return 0.0;
  check_index(window_, n, k, name_);
  if (dense_) return (*dense_)(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  if (kernel_) return kernel_(n - k + 1).back();
  return entry_(n, k);
}

Eigen::MatrixXd TriangularOperator::truncation(std::size_t n) const {
  if (n == 0) throw std::invalid_argument("truncation: size must be positive");
  if (window_ && n > *window_) {
    throw std::out_of_range(name_ + ": truncation " + std::to_string(n) +
                            " exceeds the materialized window " + std::to_string(*window_));
  }
  if (dense_) return dense_->topLeftCorner(static_cast<Eigen::Index>(n),
                                           static_cast<Eigen::Index>(n));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
  if (kernel_) {
    const std::vector<double> w = kernel_(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k <= i; ++k)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = w[i - k];
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k <= i; ++k)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = entry_(i, k);
  }
  return m;
}

std::vector<double> TriangularOperator::kernel_prefix(std::size_t count) const {
  if (!kernel_) {
    throw std::logic_error(name_ + ": not a convolution operator");
  }
  return kernel_(count);
}

// ---------------------------------------------------------------------------
// RowFiniteMatrix

RowFiniteMatrix RowFiniteMatrix::from_entries(std::string name, EntryFn fn, RowBoundFn bound) {
  RowFiniteMatrix a;
  a.name_ = std::move(name);
  a.entry_ = std::move(fn);
  a.bound_ = std::move(bound);
  return a;
}

RowFiniteMatrix RowFiniteMatrix::from_dense(std::string name, Eigen::MatrixXd window,
                                            bool tail_truncated) {
  if (window.rows() != window.cols()) {
    throw std::invalid_argument("from_dense: window must be square");
  }
  RowFiniteMatrix a;
  a.name_ = std::move(name);
  a.window_ = static_cast<std::size_t>(window.rows());
  a.dense_ = std::make_shared<const Eigen::MatrixXd>(std::move(window));
  a.tail_truncated_ = tail_truncated;
  return a;
}

double RowFiniteMatrix::entry(std::size_t n, std::size_t k) const {
  check_index(window_, n, k, name_);
  if (dense_) return (*dense_)(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  return entry_(n, k);
}

std::optional<std::size_t> RowFiniteMatrix::row_bound(std::size_t n) const {
  if (window_) {
    if (n >= *window_) {
      throw std::out_of_range(name_ + ": row " + std::to_string(n) +
                              " outside the materialized window");
    }
    return *window_;
  }
  return bound_(n);
}

RowFiniteMatrix as_row_finite(const TriangularOperator& op) {
  return RowFiniteMatrix::from_entries(
      op.name(), [op](std::size_t n, std::size_t k) { return op.entry(n, k); },
      [](std::size_t n) { return std::optional<std::size_t>(n + 1); });
}

RowFiniteMatrix as_row_finite(const AnyMatrix& m) {
  if (const auto* tri = std::get_if<TriangularOperator>(&m)) return as_row_finite(*tri);
  return std::get<RowFiniteMatrix>(m);
}

// ---------------------------------------------------------------------------
// Builders

TriangularOperator build_frac_delta(FracOrder order) {
  const double r = order.value();
  return TriangularOperator::from_kernel(
      "frac_delta(" + std::to_string(r) + ")",
      [r](std::size_t count) { return detail::weight_prefix(r, count); });
}

TriangularOperator build_frac_delta_inverse(FracOrder order) {
  const double r = order.value();
  return TriangularOperator::from_kernel(
      "frac_delta_inv(" + std::to_string(r) + ")",
      [r](std::size_t count) { return detail::weight_prefix(-r, count); });
}

TriangularOperator build_identity() {
  return TriangularOperator::from_kernel("identity", [](std::size_t count) {
    std::vector<double> w(count, 0.0);
    w[0] = 1.0;
    return w;
  });
}

TriangularOperator build_cesaro() {
  return TriangularOperator::from_entries("cesaro", [](std::size_t n, std::size_t) {
    return 1.0 / (static_cast<double>(n) + 1.0);
  });
}

TriangularOperator build_euler(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::domain_error("euler: ratio must satisfy 0 < q < 1");
  }
  const double lq = std::log(q), l1q = std::log1p(-q);
  return TriangularOperator::from_entries(
      "euler(" + std::to_string(q) + ")", [lq, l1q](std::size_t n, std::size_t k) {
        return std::exp(log_binomial(n, k) + static_cast<double>(n - k) * l1q +
                        static_cast<double>(k) * lq);
      });
}

TriangularOperator build_riesz(std::vector<double> t) {
  if (t.empty()) throw std::invalid_argument("riesz: weight list is empty");
  std::vector<double> cum(t.size());
  long double acc = 0.0L;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0)) throw std::domain_error("riesz: weights must be positive");
    acc += t[i];
    cum[i] = static_cast<double>(acc);
  }
  auto weights = std::make_shared<const std::vector<double>>(std::move(t));
  auto sums = std::make_shared<const std::vector<double>>(std::move(cum));
  return TriangularOperator::from_entries("riesz", [weights, sums](std::size_t n, std::size_t k) {
    if (n >= weights->size()) {
      throw std::out_of_range("riesz: weight list has only " + std::to_string(weights->size()) +
                              " entries, row " + std::to_string(n) + " requested");
    }
    return (*weights)[k] / (*sums)[n];
  });
}

RowFiniteMatrix build_taylor(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::domain_error("taylor: ratio must satisfy 0 < q < 1");
  }
  const double lq = std::log(q), l1q = std::log1p(-q);
  return RowFiniteMatrix::from_entries(
      "taylor(" + std::to_string(q) + ")",
      [lq, l1q](std::size_t n, std::size_t k) {
        if (k < n) return 0.0;
        return std::exp(log_binomial(k, n) + static_cast<double>(n + 1) * l1q +
                        static_cast<double>(k - n) * lq);
      },
      [](std::size_t) { return std::optional<std::size_t>(); });
}

AnyMatrix build_builtin(const BuiltinSpec& spec) {
  auto need_param = [&spec](const char* what) {
    if (!spec.param) {
      throw std::invalid_argument("builtin '" + spec.name + "' requires the " + what +
                                  " parameter");
    }
    return *spec.param;
  };
  if (spec.name == "identity") return build_identity();
  if (spec.name == "cesaro") return build_cesaro();
  if (spec.name == "euler") return build_euler(need_param("ratio"));
  if (spec.name == "taylor") return build_taylor(need_param("ratio"));
  if (spec.name == "riesz") return build_riesz(spec.weights);
  if (spec.name == "frac_delta") return build_frac_delta(FracOrder(need_param("order")));
  if (spec.name == "frac_delta_inv")
    return build_frac_delta_inverse(FracOrder(need_param("order")));
  throw std::invalid_argument(
      "unknown builtin matrix '" + spec.name +
      "' (known: identity, cesaro, euler, riesz, taylor, frac_delta, frac_delta_inv)");
}

// ---------------------------------------------------------------------------
// Composition and application

TriangularOperator compose(const TriangularOperator& a, const TriangularOperator& b,
                           std::size_t n) {
  Eigen::MatrixXd product = a.truncation(n) * b.truncation(n);
  return TriangularOperator::from_matrix(a.name() + "*" + b.name(), std::move(product));
}

TruncatedSequence apply(const TriangularOperator& op, const TruncatedSequence& x) {
  const std::size_t n = x.size();
  if (op.window() && *op.window() < n) {
    throw std::out_of_range(op.name() + ": window smaller than the input prefix");
  }
  std::vector<double> y(n);
  if (op.is_convolution()) {
    const std::vector<double> w = op.kernel_prefix(n);
    for (std::size_t i = 0; i < n; ++i) {
      long double acc = 0.0L;
      for (std::size_t j = 0; j <= i; ++j) {
        acc += static_cast<long double>(w[j]) * x.values[i - j];
      }
      y[i] = static_cast<double>(acc);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      long double acc = 0.0L;
      for (std::size_t k = 0; k <= i; ++k) {
        acc += static_cast<long double>(op.entry(i, k)) * x.values[k];
      }
      y[i] = static_cast<double>(acc);
    }
  }
  return TruncatedSequence{std::move(y), op.name() + "(" + x.source + ")", x.approximate};
}

TruncatedSequence apply(const RowFiniteMatrix& a, const TruncatedSequence& x) {
  const std::size_t n = x.size();
  if (a.window() && *a.window() < n) {
    throw std::out_of_range(a.name() + ": window smaller than the input prefix");
  }
  std::vector<double> y(n);
  bool truncated = a.tail_truncated() || x.approximate;
  for (std::size_t i = 0; i < n; ++i) {
    const std::optional<std::size_t> bound = a.row_bound(i);
    const std::size_t limit = bound ? std::min(*bound, n) : n;
    if (!bound || *bound > n) truncated = true;
    long double acc = 0.0L;
    for (std::size_t k = 0; k < limit; ++k) {
      acc += static_cast<long double>(a.entry(i, k)) * x.values[k];
    }
    y[i] = static_cast<double>(acc);
  }
  return TruncatedSequence{std::move(y), a.name() + "(" + x.source + ")", truncated};
}

TruncatedSequence apply(const AnyMatrix& m, const TruncatedSequence& x) {
  return std::visit([&x](const auto& inner) { return apply(inner, x); }, m);
}

// ---------------------------------------------------------------------------
// Window materialization

MaterializedWindow materialize_window(const RowFiniteMatrix& a, std::size_t n) {
  if (n == 0) throw std::invalid_argument("window size must be positive");
  if (a.window() && *a.window() < n) {
    throw std::out_of_range(a.name() + ": window smaller than requested size " +
                            std::to_string(n));
  }
  MaterializedWindow w;
  if (const Eigen::MatrixXd* dense = a.dense()) {
    w.values = dense->topLeftCorner(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    w.tail_truncated = a.tail_truncated();
    return w;
  }
  w.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  w.tail_truncated = a.tail_truncated();
  for (std::size_t i = 0; i < n; ++i) {
    const std::optional<std::size_t> bound = a.row_bound(i);
    const std::size_t limit = bound ? std::min(*bound, n) : n;
    if (!bound || *bound > n) w.tail_truncated = true;
    for (std::size_t k = 0; k < limit; ++k) {
      w.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = a.entry(i, k);
    }
  }
  return w;
}

RowFiniteMatrix transform_D(const RowFiniteMatrix& a, FracOrder order, std::size_t n) {
  const MaterializedWindow win = materialize_window(a, n);
  const std::vector<double> cum = detail::weight_partial_sums(-order.value(), n);
  Eigen::MatrixXd t(win.values.rows(), win.values.cols());
  for (std::size_t k = 0; k < n; ++k) {
    t.col(static_cast<Eigen::Index>(k)) = win.values.col(static_cast<Eigen::Index>(k)) * cum[k];
  }
  Eigen::MatrixXd d(t.rows(), t.cols());
  for (std::size_t k = 0; k + 1 < n; ++k) {
    d.col(static_cast<Eigen::Index>(k)) =
        t.col(static_cast<Eigen::Index>(k)) - t.col(static_cast<Eigen::Index>(k + 1));
  }
  d.col(static_cast<Eigen::Index>(n - 1)) = t.col(static_cast<Eigen::Index>(n - 1));
  return RowFiniteMatrix::from_dense("D[" + a.name() + "]", std::move(d), win.tail_truncated);
}

namespace {

RowFiniteMatrix row_convolve(const RowFiniteMatrix& a, const std::vector<double>& kernel,
                             std::size_t n, const std::string& label) {
  const MaterializedWindow win = materialize_window(a, n);
  Eigen::MatrixXd toeplitz = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                   static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      toeplitz(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = kernel[i - j];
  Eigen::MatrixXd e = toeplitz * win.values;
  return RowFiniteMatrix::from_dense(label, std::move(e), win.tail_truncated);
}

}  // namespace

RowFiniteMatrix transform_E(const RowFiniteMatrix& a, FracOrder order, std::size_t n) {
  return row_convolve(a, weight_partial_sums(order, n), n, "E[" + a.name() + "]");
}

RowFiniteMatrix transform_E_weight_kernel(const RowFiniteMatrix& a, FracOrder order,
                                          std::size_t n) {
  return row_convolve(a, weights(order, n).weights, n, "Ew[" + a.name() + "]");
}

RowFiniteMatrix column_partial_sums(const RowFiniteMatrix& a, std::size_t n) {
  const MaterializedWindow win = materialize_window(a, n);
  Eigen::MatrixXd p = win.values;
  for (std::size_t i = 1; i < n; ++i) {
    p.row(static_cast<Eigen::Index>(i)) += p.row(static_cast<Eigen::Index>(i - 1));
  }
  return RowFiniteMatrix::from_dense("colsum[" + a.name() + "]", std::move(p),
                                     win.tail_truncated);
}

// ---------------------------------------------------------------------------
// Worked-example row substitutions

namespace {

std::optional<std::size_t> max_bound_below(const RowFiniteMatrix& a, std::size_t n) {
  std::size_t best = 0;
  for (std::size_t j = 0; j <= n; ++j) {
    const std::optional<std::size_t> b = a.row_bound(j);
    if (!b) return std::nullopt;
    best = std::max(best, *b);
  }
  return best;
}

}  // namespace

RowFiniteMatrix euler_rows(const RowFiniteMatrix& a, double q) {
  const TriangularOperator e = build_euler(q);
  return RowFiniteMatrix::from_entries(
      "euler_rows[" + a.name() + "]",
      [a, e](std::size_t n, std::size_t k) {
        long double acc = 0.0L;
        for (std::size_t j = 0; j <= n; ++j) {
          acc += static_cast<long double>(e.entry(n, j)) * a.entry(j, k);
        }
        return static_cast<double>(acc);
      },
      [a](std::size_t n) { return max_bound_below(a, n); });
}

RowFiniteMatrix riesz_rows(const RowFiniteMatrix& a, std::vector<double> t) {
  const TriangularOperator r = build_riesz(std::move(t));
  return RowFiniteMatrix::from_entries(
      "riesz_rows[" + a.name() + "]",
      [a, r](std::size_t n, std::size_t k) {
        long double acc = 0.0L;
        for (std::size_t j = 0; j <= n; ++j) {
          acc += static_cast<long double>(r.entry(n, j)) * a.entry(j, k);
        }
        return static_cast<double>(acc);
      },
      [a](std::size_t n) { return max_bound_below(a, n); });
}

RowFiniteMatrix taylor_rows(const RowFiniteMatrix& a, double q, std::size_t n) {
  const RowFiniteMatrix taylor = build_taylor(q);
  const MaterializedWindow win = materialize_window(a, n);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(win.values.rows(), win.values.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      p.row(static_cast<Eigen::Index>(i)) +=
          taylor.entry(i, j) * win.values.row(static_cast<Eigen::Index>(j));
    }
  }
  // The Taylor rows extend past any window.
  return RowFiniteMatrix::from_dense("taylor_rows[" + a.name() + "]", std::move(p), true);
}

RowFiniteMatrix shifted_blend_rows(const RowFiniteMatrix& a, double s, double r) {
  return RowFiniteMatrix::from_entries(
      "shifted_blend[" + a.name() + "]",
      [a, s, r](std::size_t n, std::size_t k) {
        const double prev = (n == 0) ? 0.0 : a.entry(n - 1, k);
        return s * prev + r * a.entry(n, k);
      },
      [a](std::size_t n) {
        const std::optional<std::size_t> cur = a.row_bound(n);
        if (n == 0) return cur;
        const std::optional<std::size_t> prev = a.row_bound(n - 1);
        if (!cur || !prev) return std::optional<std::size_t>();
        return std::optional<std::size_t>(std::max(*cur, *prev));
      });
}

RowFiniteMatrix harmonic_tail_rows(const RowFiniteMatrix& a, std::size_t window) {
  const MaterializedWindow win = materialize_window(a, window);
  const std::size_t n = window;
  Eigen::MatrixXd m(win.values.rows(), win.values.cols());
  bool truncated = win.tail_truncated;
  for (std::size_t i = 0; i < n; ++i) {
    const std::optional<std::size_t> bound = a.row_bound(i);
    if (!bound || *bound > n) truncated = true;
    long double acc = 0.0L;
    // Accumulate the tail right-to-left so each entry is the full remainder.
    for (std::size_t k = n; k-- > 0;) {
      acc += static_cast<long double>(
                 win.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k))) /
             (static_cast<long double>(k) + 1.0L);
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = static_cast<double>(acc);
    }
  }
  return RowFiniteMatrix::from_dense("harmonic_tail[" + a.name() + "]", std::move(m), truncated);
}

}  // namespace fracseq
