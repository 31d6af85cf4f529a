#include "fracseq/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fracseq {

std::string_view to_string(DualKind k) {
  return k == DualKind::beta ? "beta" : "gamma";
}

TruncatedSequence u_transform(const TruncatedSequence& a, FracOrder order) {
  const std::vector<double> cum = detail::weight_partial_sums(-order.value(), a.size());
  std::vector<double> u(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) u[k] = a.values[k] * cum[k];
  return TruncatedSequence{std::move(u), "u(" + a.source + ")", a.approximate};
}

TriangularOperator build_v(const TruncatedSequence& a, FracOrder order) {
  auto u = std::make_shared<const std::vector<double>>(u_transform(a, order).values);
  const std::size_t window = u->size();
  TriangularOperator op = TriangularOperator::from_entries(
      "V", [u, window](std::size_t n, std::size_t k) {
        if (n >= window) {
          throw std::out_of_range("V: row beyond the input window");
        }
        if (k == n) return (*u)[n];
        // k < n; the k+1 access stays inside the window because k+1 <= n.
        return (*u)[k] - (*u)[k + 1];
      });
  return op;
}

namespace {

constexpr double kBoundedGrowthViolationFactor = 5.0;
constexpr double kDirectDecayFloor = 0.5;
// Summability is judged violated only when the tail increments clearly stop
// shrinking; slowly decaying tails stay inconclusive (a single truncation
// cannot separate them from divergence).
constexpr double kL1NonDecayRatio = 0.9;

struct Quarters {
  // indices: [0, q1), [q1, q2), [q2, q3), [q3, n)
  std::size_t q1, q2, q3, n;
};

Quarters quarters(std::size_t n) { return Quarters{n / 4, n / 2, 3 * n / 4, n}; }

double range_over(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  double mn = std::numeric_limits<double>::infinity(), mx = -mn;
  for (std::size_t i = lo; i < hi; ++i) {
    mn = std::min(mn, v[i]);
    mx = std::max(mx, v[i]);
  }
  return mx - mn;
}

double mean_over(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  long double s = 0.0L;
  for (std::size_t i = lo; i < hi; ++i) s += v[i];
  return static_cast<double>(s / static_cast<long double>(hi - lo));
}

double max_abs_over(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  double m = 0.0;
  for (std::size_t i = lo; i < hi; ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

// Absolute-difference partial sums must stabilize: the increment over the
// last quarter of the window within tol, or judged non-decaying against the
// quarter before it.
ConditionVerdict check_diffs_summable(const std::vector<double>& u, double tol) {
  const Quarters q = quarters(u.size());
  long double s = 0.0L, at_q2 = 0.0L, at_q3 = 0.0L;
  for (std::size_t k = 0; k + 1 < u.size(); ++k) {
    s += std::abs(u[k] - u[k + 1]);
    if (k + 1 == q.q2) at_q2 = s;
    if (k + 1 == q.q3) at_q3 = s;
  }
  const double last = static_cast<double>(s - at_q3);
  const double prev = static_cast<double>(at_q3 - at_q2);

  ConditionVerdict cv;
  cv.id = "u-diffs-l1";
  cv.stat_small = prev;
  cv.stat_large = last;
  cv.size_small = q.q3;
  cv.size_large = u.size();
  cv.tol = tol;
  cv.alpha = static_cast<double>(s);
  if (last <= tol) {
    cv.verdict = Verdict::satisfied;
    cv.note = "absolute-difference partial sums stabilize";
  } else if (last >= kL1NonDecayRatio * prev) {
    cv.verdict = Verdict::violated;
    cv.note = "absolute-difference partial sums keep growing";
  } else {
    cv.verdict = Verdict::inconclusive;
    cv.note = "absolute-difference tail still shrinking";
  }
  return cv;
}

// Convergence of u: oscillation over the last half within tol, with
// persistent oscillation or persistent quarter-to-quarter drift as the
// violation evidence.
ConditionVerdict check_convergent(const std::vector<double>& u, double tol) {
  const Quarters q = quarters(u.size());
  const double range_last = range_over(u, q.q2, q.n);
  const double range_first = range_over(u, 0, q.q2);
  const double drift4 = mean_over(u, q.q3, q.n) - mean_over(u, q.q2, q.q3);
  const double drift3 = mean_over(u, q.q2, q.q3) - mean_over(u, q.q1, q.q2);

  ConditionVerdict cv;
  cv.id = "u-convergent";
  cv.stat_small = range_first;
  cv.stat_large = range_last;
  cv.size_small = q.q2;
  cv.size_large = q.n;
  cv.tol = tol;
  cv.alpha = mean_over(u, q.q3, q.n);
  if (range_last <= tol) {
    cv.verdict = Verdict::satisfied;
    cv.note = "tail oscillation within tolerance";
  } else if (range_last >= kDirectDecayFloor * range_first ||
             (std::abs(drift4) > tol && std::abs(drift4) >= kDirectDecayFloor * std::abs(drift3))) {
    cv.verdict = Verdict::violated;
    cv.note = "tail keeps oscillating or drifting";
  } else {
    cv.verdict = Verdict::inconclusive;
    cv.note = "tail oscillation above tolerance but shrinking";
  }
  return cv;
}

// Boundedness of u: relative growth of max|u| from the first half to the
// whole window.
ConditionVerdict check_bounded(const std::vector<double>& u, double tol) {
  const Quarters q = quarters(u.size());
  const double m_half = max_abs_over(u, 0, q.q2);
  const double m_all = max_abs_over(u, 0, q.n);
  const double growth = (m_all - m_half) / std::max(1.0, m_half);

  ConditionVerdict cv;
  cv.id = "u-bounded";
  cv.stat_small = m_half;
  cv.stat_large = m_all;
  cv.size_small = q.q2;
  cv.size_large = q.n;
  cv.tol = tol;
  if (growth <= tol) {
    cv.verdict = Verdict::satisfied;
    cv.note = "max |u| stable across the window";
  } else if (growth > kBoundedGrowthViolationFactor * tol) {
    cv.verdict = Verdict::violated;
    cv.note = "max |u| grows with the window";
  } else {
    cv.verdict = Verdict::inconclusive;
    cv.note = "max |u| growth in the gray zone";
  }
  return cv;
}

}  // namespace

DualReport dual_check(const TruncatedSequence& a, FracOrder order, DualKind kind, double tol) {
  if (a.size() < 16) {
    throw std::invalid_argument("dual_check needs a prefix of at least 16 entries");
  }
  DualReport report;
  report.kind = kind;
  report.order = order.value();
  report.u = u_transform(a, order);

  // Route one: the pairing triangle against the (f:c) or (f:linf) classes.
  // The window is filled directly from u.
  const std::size_t n2 = a.size();
  const std::size_t n1 = n2 / 2;
  const std::vector<double>& u = report.u.values;
  Eigen::MatrixXd vwin =
      Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n2), static_cast<Eigen::Index>(n2));
  for (std::size_t n = 0; n < n2; ++n) {
    for (std::size_t k = 0; k < n; ++k) {
      vwin(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k)) = u[k] - u[k + 1];
    }
    vwin(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) = u[n];
  }
  const RowFiniteMatrix v_dense =
      RowFiniteMatrix::from_dense("V(" + a.source + ")", std::move(vwin));
  const std::vector<ConditionId> conds =
      kind == DualKind::beta
          ? std::vector<ConditionId>{ConditionId::C20, ConditionId::C21, ConditionId::C22,
                                     ConditionId::C23}
          : std::vector<ConditionId>{ConditionId::C20};
  report.route_v.subject = v_dense.name();
  report.route_v.conditions = eval_conditions(conds, v_dense, n1, n2, tol);
  report.route_v.aggregate = aggregate_verdicts(report.route_v.conditions);

  // Route two: tail diagnostics directly on u.
  report.route_direct.subject = "u(" + a.source + ")";
  report.route_direct.conditions.push_back(check_diffs_summable(report.u.values, tol));
  report.route_direct.conditions.push_back(kind == DualKind::beta
                                               ? check_convergent(report.u.values, tol)
                                               : check_bounded(report.u.values, tol));
  report.route_direct.aggregate = aggregate_verdicts(report.route_direct.conditions);

  if (report.route_v.aggregate != Verdict::inconclusive &&
      report.route_direct.aggregate != Verdict::inconclusive) {
    report.agreement = (report.route_v.aggregate == report.route_direct.aggregate);
  }
  return report;
}

}  // namespace fracseq
