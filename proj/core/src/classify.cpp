#include "fracseq/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracseq/almost.hpp"
#include "fracseq/duality.hpp"

namespace fracseq {

// ---------------------------------------------------------------------------
// Labels

std::string_view to_string(ConditionId id) {
  switch (id) {
    case ConditionId::C20: return "C20";
    case ConditionId::C21: return "C21";
    case ConditionId::C22: return "C22";
    case ConditionId::C23: return "C23";
    case ConditionId::C24: return "C24";
    case ConditionId::C25: return "C25";
    case ConditionId::C26: return "C26";
    case ConditionId::C26x: return "C26x";
    case ConditionId::C27: return "C27";
    case ConditionId::C28: return "C28";
    case ConditionId::C29: return "C29";
    case ConditionId::C30: return "C30";
    case ConditionId::C31: return "C31";
    case ConditionId::C32: return "C32";
    case ConditionId::C33: return "C33";
  }
  return "";
}

std::optional<ConditionId> condition_from_string(std::string_view s) {
  for (ConditionId id : all_conditions()) {
    if (to_string(id) == s) return id;
  }
  return std::nullopt;
}

std::string_view condition_description(ConditionId id) {
  switch (id) {
    case ConditionId::C20: return "row absolute sums bounded";
    case ConditionId::C21: return "column limits exist";
    case ConditionId::C22: return "row-sum limit exists";
    case ConditionId::C23: return "column-difference variation of centered rows vanishes";
    case ConditionId::C24: return "column window means converge uniformly";
    case ConditionId::C25: return "row-sum window means converge uniformly";
    case ConditionId::C26: return "difference variation of centered row averages vanishes uniformly";
    case ConditionId::C26x: return "deviation of row averages vanishes uniformly";
    case ConditionId::C27: return "column limits are zero";
    case ConditionId::C28: return "second-difference variation stabilizes";
    case ConditionId::C29: return "column-partial-sum rows bounded";
    case ConditionId::C30: return "column series converge";
    case ConditionId::C31: return "double series converges";
    case ConditionId::C32: return "difference variation of centered partial sums vanishes";
    case ConditionId::C33: return "row difference variation bounded";
  }
  return "";
}

const std::vector<ConditionId>& all_conditions() {
  static const std::vector<ConditionId> ids = {
      ConditionId::C20, ConditionId::C21, ConditionId::C22, ConditionId::C23,
      ConditionId::C24, ConditionId::C25, ConditionId::C26, ConditionId::C26x,
      ConditionId::C27, ConditionId::C28, ConditionId::C29, ConditionId::C30,
      ConditionId::C31, ConditionId::C32, ConditionId::C33};
  return ids;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::satisfied: return "satisfied";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string_view to_string(SpaceId s) {
  switch (s) {
    case SpaceId::f: return "f";
    case SpaceId::fdf: return "fdf";
    case SpaceId::c: return "c";
    case SpaceId::linf: return "linf";
    case SpaceId::bs: return "bs";
    case SpaceId::cs: return "cs";
  }
  return "";
}

std::optional<SpaceId> space_from_string(std::string_view s) {
  if (s == "f") return SpaceId::f;
  if (s == "fdf") return SpaceId::fdf;
  if (s == "c") return SpaceId::c;
  if (s == "linf") return SpaceId::linf;
  if (s == "bs") return SpaceId::bs;
  if (s == "cs") return SpaceId::cs;
  return std::nullopt;
}

Verdict aggregate_verdicts(const std::vector<ConditionVerdict>& conditions) {
  bool all_satisfied = true;
  for (const ConditionVerdict& c : conditions) {
    if (c.verdict == Verdict::violated) return Verdict::violated;
    if (c.verdict != Verdict::satisfied) all_satisfied = false;
  }
  return (all_satisfied && !conditions.empty()) ? Verdict::satisfied : Verdict::inconclusive;
}

// ---------------------------------------------------------------------------
// Class tables

ClassSpec class_conditions(const SpacePair& pair) {
  using C = ConditionId;
  const bool involves_fdf = (pair.from == SpaceId::fdf || pair.to == SpaceId::fdf);
  if (involves_fdf && !pair.order) {
    throw std::invalid_argument("class pair with a derived space requires an order");
  }
  if (pair.from == SpaceId::fdf && pair.to == SpaceId::fdf) {
    throw std::invalid_argument("pair (fdf:fdf) is not in the class tables");
  }

  auto from_f = [](SpaceId to) -> std::optional<std::vector<C>> {
    switch (to) {
      case SpaceId::linf: return std::vector<C>{C::C20};
      case SpaceId::c: return std::vector<C>{C::C20, C::C21, C::C22, C::C23};
      case SpaceId::cs: return std::vector<C>{C::C29, C::C30, C::C31, C::C32};
      case SpaceId::bs: return std::vector<C>{C::C29};
      case SpaceId::f: return std::vector<C>{C::C20, C::C24, C::C25, C::C26};
      default: return std::nullopt;
    }
  };
  auto into_f = [](SpaceId from) -> std::optional<std::vector<C>> {
    switch (from) {
      case SpaceId::linf: return std::vector<C>{C::C20, C::C24, C::C26x};
      case SpaceId::c: return std::vector<C>{C::C20, C::C24, C::C25};
      case SpaceId::bs: return std::vector<C>{C::C33, C::C27, C::C24, C::C26};
      case SpaceId::cs: return std::vector<C>{C::C33, C::C24};
      default: return std::nullopt;
    }
  };

  if (pair.from == SpaceId::f) {
    if (auto conds = from_f(pair.to)) return ClassSpec{*conds, TransformKind::none, false};
  }
  if (pair.to == SpaceId::f) {
    if (auto conds = into_f(pair.from)) return ClassSpec{*conds, TransformKind::none, false};
  }
  if (pair.from == SpaceId::fdf) {
    if (auto conds = from_f(pair.to)) return ClassSpec{*conds, TransformKind::d_transform, true};
  }
  if (pair.to == SpaceId::fdf) {
    if (auto conds = into_f(pair.from)) return ClassSpec{*conds, TransformKind::e_transform, false};
  }
  throw std::invalid_argument("pair (" + std::string(to_string(pair.from)) + ":" +
                              std::string(to_string(pair.to)) + ") is not in the class tables");
}

// ---------------------------------------------------------------------------
// Condition evaluators

namespace {

// Sup-type statistics are compared by relative growth between the two
// truncations; limit-type statistics must decay to within tol, and count as
// violated only when they also failed to shrink by kLimitDecayFloor.
constexpr double kGrowthViolationFactor = 2.0;
constexpr double kLimitDecayFloor = 0.75;

std::size_t tail_rows(std::size_t m) {
  return std::min<std::size_t>(16, std::max<std::size_t>(1, m / 4));
}
std::size_t stat_rows(std::size_t m) {
  return std::min<std::size_t>(8, std::max<std::size_t>(1, m / 4));
}

struct Stat {
  double value = 0.0;
  std::optional<double> alpha;
  std::vector<double> alpha_head;
  AlmostVerdict flim = AlmostVerdict::inconclusive;  // f-lim conditions only
};

double row_abs_sum(const Eigen::MatrixXd& w, std::size_t i, std::size_t m) {
  double s = 0.0;
  for (std::size_t k = 0; k < m; ++k)
    s += std::abs(w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)));
  return s;
}

double row_sum(const Eigen::MatrixXd& w, std::size_t i, std::size_t m) {
  double s = 0.0;
  for (std::size_t k = 0; k < m; ++k) s += w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
  return s;
}

// Oscillation (max - min) of a column over rows [lo, hi).
double column_osc(const Eigen::MatrixXd& w, std::size_t k, std::size_t lo, std::size_t hi) {
  double mn = std::numeric_limits<double>::infinity(), mx = -mn;
  for (std::size_t i = lo; i < hi; ++i) {
    const double v = w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  return mx - mn;
}

double column_tail_mean(const Eigen::MatrixXd& w, std::size_t k, std::size_t m) {
  const std::size_t t = tail_rows(m);
  double s = 0.0;
  for (std::size_t i = m - t; i < m; ++i)
    s += w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
  return s / static_cast<double>(t);
}

Stat stat_sup_rows(const Eigen::MatrixXd& w, std::size_t m) {
  Stat st;
  for (std::size_t i = 0; i < m; ++i) st.value = std::max(st.value, row_abs_sum(w, i, m));
  return st;
}

Stat stat_sup_row_diffs(const Eigen::MatrixXd& w, std::size_t m) {
  Stat st;
  for (std::size_t i = 0; i < m; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < m; ++k) {
      s += std::abs(w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) -
                    w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k + 1)));
    }
    st.value = std::max(st.value, s);
  }
  return st;
}

Stat stat_column_limits(const Eigen::MatrixXd& w, std::size_t m, bool force_zero) {
  Stat st;
  const std::size_t cols = m / 2;
  for (std::size_t k = 0; k < cols; ++k) {
    if (force_zero) {
      double sup = 0.0;
      for (std::size_t i = m / 2; i < m; ++i)
        sup = std::max(sup, std::abs(w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k))));
      st.value = std::max(st.value, sup);
    } else {
      st.value = std::max(st.value, column_osc(w, k, m / 2, m));
    }
    if (k < 8) st.alpha_head.push_back(force_zero ? 0.0 : column_tail_mean(w, k, m));
  }
  return st;
}

Stat stat_row_sum_limit(const Eigen::MatrixXd& w, std::size_t m) {
  Stat st;
  double mn = std::numeric_limits<double>::infinity(), mx = -mn;
  for (std::size_t i = m / 2; i < m; ++i) {
    const double q = row_sum(w, i, m);
    mn = std::min(mn, q);
    mx = std::max(mx, q);
  }
  st.value = mx - mn;
  const std::size_t t = tail_rows(m);
  double s = 0.0;
  for (std::size_t i = m - t; i < m; ++i) s += row_sum(w, i, m);
  st.alpha = s / static_cast<double>(t);
  return st;
}

Stat stat_centered_diff_variation(const Eigen::MatrixXd& w, std::size_t m) {
  Stat st;
  std::vector<double> alpha(m);
  for (std::size_t k = 0; k < m; ++k) alpha[k] = column_tail_mean(w, k, m);
  const std::size_t r = stat_rows(m);
  for (std::size_t i = m - r; i < m; ++i) {
    double q = 0.0;
    for (std::size_t k = 0; k + 1 < m; ++k) {
      const double g = w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) - alpha[k];
      const double h =
          w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k + 1)) - alpha[k + 1];
      q += std::abs(g - h);
    }
    st.value = std::max(st.value, q);
  }
  st.alpha_head.assign(alpha.begin(), alpha.begin() + std::min<std::size_t>(8, m));
  return st;
}

Stat stat_second_diff_variation(const Eigen::MatrixXd& w, std::size_t m) {
  Stat st;
  double mn = std::numeric_limits<double>::infinity(), mx = -mn;
  double tail_sum = 0.0;
  const std::size_t t = tail_rows(m);
  for (std::size_t i = m / 2; i < m; ++i) {
    double q = 0.0;
    for (std::size_t k = 0; k + 2 < m; ++k) {
      q += std::abs(w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) -
                    2.0 * w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k + 1)) +
                    w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k + 2)));
    }
    mn = std::min(mn, q);
    mx = std::max(mx, q);
    if (i >= m - t) tail_sum += q;
  }
  st.value = mx - mn;
  st.alpha = tail_sum / static_cast<double>(t);
  return st;
}

Stat stat_column_series(const Eigen::MatrixXd& p, std::size_t m) {
  Stat st;
  const std::size_t cols = m / 2;
  for (std::size_t k = 0; k < cols; ++k) {
    const double drift = std::abs(p(static_cast<Eigen::Index>(m - 1), static_cast<Eigen::Index>(k)) -
                                  p(static_cast<Eigen::Index>(m / 2 - 1), static_cast<Eigen::Index>(k)));
    st.value = std::max(st.value, drift);
    if (k < 8)
      st.alpha_head.push_back(p(static_cast<Eigen::Index>(m - 1), static_cast<Eigen::Index>(k)));
  }
  return st;
}

Stat stat_double_series(const Eigen::MatrixXd& w, std::size_t m) {
  Stat st;
  double total_half = 0.0, total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    total += row_sum(w, i, m);
    if (i + 1 == m / 2) total_half = total;
  }
  st.value = std::abs(total - total_half);
  st.alpha = total;
  return st;
}

Stat stat_partial_sum_variation(const Eigen::MatrixXd& p, std::size_t m) {
  Stat st;
  std::vector<double> alpha(m);
  for (std::size_t k = 0; k < m; ++k)
    alpha[k] = p(static_cast<Eigen::Index>(m - 1), static_cast<Eigen::Index>(k));
  const std::size_t r = stat_rows(m);
  const std::size_t hi = std::max<std::size_t>(3 * m / 4, r);
  for (std::size_t i = hi - r; i < hi; ++i) {
    double q = 0.0;
    for (std::size_t k = 0; k + 1 < m; ++k) {
      const double g = p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) - alpha[k];
      const double h =
          p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k + 1)) - alpha[k + 1];
      q += std::abs(g - h);
    }
    st.value = std::max(st.value, q);
  }
  st.alpha_head.assign(alpha.begin(), alpha.begin() + std::min<std::size_t>(8, m));
  return st;
}

// Envelope-based window-mean diagnostics from a per-column prefix table.
struct LightEstimate {
  double value = 0.0;
  double spread_top = 0.0;
  double spread_half = 0.0;
  AlmostVerdict verdict = AlmostVerdict::inconclusive;
};

LightEstimate light_estimate(const std::vector<long double>& prefix, std::size_t m_max,
                             double tol) {
  const std::size_t n = prefix.size() - 1;
  auto spread_at = [&](std::size_t m, double* mid) {
    long double mn = std::numeric_limits<long double>::infinity(), mx = -mn;
    for (std::size_t pos = 0; pos + m < n; ++pos) {
      const long double s = prefix[pos + m + 1] - prefix[pos];
      mn = std::min(mn, s);
      mx = std::max(mx, s);
    }
    const long double div = static_cast<long double>(m) + 1.0L;
    if (mid) *mid = static_cast<double>((mn + mx) / (2.0L * div));
    return static_cast<double>((mx - mn) / div);
  };
  LightEstimate est;
  est.spread_top = spread_at(m_max, &est.value);
  est.spread_half = spread_at(m_max / 2, nullptr);
  if (n - m_max < 2) {
    est.verdict = AlmostVerdict::inconclusive;
  } else if (est.spread_top <= tol) {
    est.verdict = AlmostVerdict::convergent_within_tol;
  } else if (m_max >= 1 && est.spread_top > kAlmostEvidenceFactor * tol &&
             est.spread_top >= kAlmostDecayFloor * est.spread_half) {
    est.verdict = AlmostVerdict::not_convergent_evidence;
  } else {
    est.verdict = AlmostVerdict::inconclusive;
  }
  return est;
}

std::vector<long double> column_prefix(const Eigen::MatrixXd& w, std::size_t k, std::size_t m) {
  std::vector<long double> p(m + 1, 0.0L);
  for (std::size_t i = 0; i < m; ++i)
    p[i + 1] = p[i] + w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
  return p;
}

Stat stat_flim_columns(const Eigen::MatrixXd& w, std::size_t m, double tol) {
  Stat st;
  st.flim = AlmostVerdict::convergent_within_tol;
  const std::size_t cols = m / 2;
  const std::size_t m_max = m / 2 - 1;
  for (std::size_t k = 0; k < cols; ++k) {
    const LightEstimate est = light_estimate(column_prefix(w, k, m), m_max, tol);
    st.value = std::max(st.value, est.spread_top);
    if (k < 8) st.alpha_head.push_back(est.value);
    if (est.verdict == AlmostVerdict::not_convergent_evidence) {
      st.flim = AlmostVerdict::not_convergent_evidence;
    } else if (est.verdict == AlmostVerdict::inconclusive &&
               st.flim == AlmostVerdict::convergent_within_tol) {
      st.flim = AlmostVerdict::inconclusive;
    }
  }
  return st;
}

Stat stat_flim_row_sums(const Eigen::MatrixXd& w, std::size_t m, double tol) {
  Stat st;
  std::vector<long double> prefix(m + 1, 0.0L);
  for (std::size_t i = 0; i < m; ++i) prefix[i + 1] = prefix[i] + row_sum(w, i, m);
  const LightEstimate est = light_estimate(prefix, m / 2 - 1, tol);
  st.value = est.spread_top;
  st.alpha = est.value;
  st.flim = est.verdict;
  return st;
}

// Uniform window-mean conditions. Row averages a(n,k,m*) are taken at
// m* = m/2 - 1 with the reference limits alpha_k estimated as the envelope
// midpoints of the column means; the statistic is the sup over every start
// index n of the (differenced) deviation sum.
Stat stat_uniform_means(const Eigen::MatrixXd& w, std::size_t m, bool differenced) {
  Stat st;
  const std::size_t m_star = m / 2 - 1;
  const std::size_t starts = m - m_star;  // n = 0 .. m - m* - 1

  Eigen::MatrixXd means(static_cast<Eigen::Index>(starts), static_cast<Eigen::Index>(m));
  std::vector<double> alpha(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::vector<long double> p = column_prefix(w, k, m);
    long double mn = std::numeric_limits<long double>::infinity(), mx = -mn;
    const long double div = static_cast<long double>(m_star) + 1.0L;
    for (std::size_t n = 0; n < starts; ++n) {
      const long double s = (p[n + m_star + 1] - p[n]) / div;
      means(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k)) =
          static_cast<double>(s);
      mn = std::min(mn, s);
      mx = std::max(mx, s);
    }
    alpha[k] = static_cast<double>((mn + mx) / 2.0L);
  }
  for (std::size_t n = 0; n < starts; ++n) {
    double q = 0.0;
    if (differenced) {
      for (std::size_t k = 0; k + 1 < m; ++k) {
        const double g = means(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k)) - alpha[k];
        const double h =
            means(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k + 1)) - alpha[k + 1];
        q += std::abs(g - h);
      }
    } else {
      for (std::size_t k = 0; k < m; ++k) {
        q += std::abs(means(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k)) - alpha[k]);
      }
    }
    st.value = std::max(st.value, q);
  }
  st.alpha_head.assign(alpha.begin(), alpha.begin() + std::min<std::size_t>(8, m));
  return st;
}

Eigen::MatrixXd partial_sum_rows(const Eigen::MatrixXd& w) {
  Eigen::MatrixXd p = w;
  for (Eigen::Index i = 1; i < p.rows(); ++i) p.row(i) += p.row(i - 1);
  return p;
}

enum class RuleKind { sup, limit, flim };

RuleKind rule_kind(ConditionId id) {
  switch (id) {
    case ConditionId::C20:
    case ConditionId::C29:
    case ConditionId::C33:
      return RuleKind::sup;
    case ConditionId::C24:
    case ConditionId::C25:
      return RuleKind::flim;
    default:
      return RuleKind::limit;
  }
}

Stat compute_stat(ConditionId id, const Eigen::MatrixXd& w, const Eigen::MatrixXd* psums,
                  std::size_t m, double tol) {
  switch (id) {
    case ConditionId::C20: return stat_sup_rows(w, m);
    case ConditionId::C21: return stat_column_limits(w, m, /*force_zero=*/false);
    case ConditionId::C22: return stat_row_sum_limit(w, m);
    case ConditionId::C23: return stat_centered_diff_variation(w, m);
    case ConditionId::C24: return stat_flim_columns(w, m, tol);
    case ConditionId::C25: return stat_flim_row_sums(w, m, tol);
    case ConditionId::C26: return stat_uniform_means(w, m, /*differenced=*/true);
    case ConditionId::C26x: return stat_uniform_means(w, m, /*differenced=*/false);
    case ConditionId::C27: return stat_column_limits(w, m, /*force_zero=*/true);
    case ConditionId::C28: return stat_second_diff_variation(w, m);
    case ConditionId::C29: return stat_sup_rows(*psums, m);
    case ConditionId::C30: return stat_column_series(*psums, m);
    case ConditionId::C31: return stat_double_series(w, m);
    case ConditionId::C32: return stat_partial_sum_variation(*psums, m);
    case ConditionId::C33: return stat_sup_row_diffs(w, m);
  }
  throw std::logic_error("unhandled condition id");
}

bool needs_partial_sums(ConditionId id) {
  return id == ConditionId::C29 || id == ConditionId::C30 || id == ConditionId::C32;
}

ConditionVerdict judge(ConditionId id, const Stat& s1, const Stat& s2, std::size_t n1,
                       std::size_t n2, double tol) {
  ConditionVerdict cv;
  cv.id = std::string(to_string(id));
  cv.stat_small = s1.value;
  cv.stat_large = s2.value;
  cv.size_small = n1;
  cv.size_large = n2;
  cv.tol = tol;
  cv.alpha = s2.alpha;
  cv.alpha_head = s2.alpha_head;
  switch (rule_kind(id)) {
    case RuleKind::sup: {
      const double growth = (s2.value - s1.value) / std::max(1.0, std::abs(s1.value));
      if (growth <= tol) {
        cv.verdict = Verdict::satisfied;
        cv.note = "sup stable across truncations";
      } else if (growth > kGrowthViolationFactor * tol) {
        cv.verdict = Verdict::violated;
        cv.note = "sup grows with the truncation";
      } else {
        cv.verdict = Verdict::inconclusive;
        cv.note = "sup growth in the gray zone";
      }
      break;
    }
    case RuleKind::limit: {
      if (s2.value <= tol) {
        cv.verdict = Verdict::satisfied;
        cv.note = "tail statistic within tolerance";
      } else if (s2.value >= kLimitDecayFloor * s1.value) {
        cv.verdict = Verdict::violated;
        cv.note = "tail statistic fails to decay";
      } else {
        cv.verdict = Verdict::inconclusive;
        cv.note = "tail statistic still decaying";
      }
      break;
    }
    case RuleKind::flim: {
      switch (s2.flim) {
        case AlmostVerdict::convergent_within_tol:
          cv.verdict = Verdict::satisfied;
          cv.note = "window means settle uniformly";
          break;
        case AlmostVerdict::not_convergent_evidence:
          cv.verdict = Verdict::violated;
          cv.note = "window-mean spread fails to decay";
          break;
        case AlmostVerdict::inconclusive:
          cv.verdict = Verdict::inconclusive;
          cv.note = "window-mean spread above tolerance but shrinking";
          break;
      }
      break;
    }
  }
  return cv;
}

ConditionVerdict eval_on_window(ConditionId id, const Eigen::MatrixXd& window, std::size_t n1,
                                std::size_t n2, double tol) {
  const Eigen::MatrixXd corner = window.topLeftCorner(static_cast<Eigen::Index>(n1),
                                                      static_cast<Eigen::Index>(n1));
  Eigen::MatrixXd psums_full, psums_corner;
  const Eigen::MatrixXd* pf = nullptr;
  const Eigen::MatrixXd* pc = nullptr;
  if (needs_partial_sums(id)) {
    psums_full = partial_sum_rows(window);
    psums_corner = psums_full.topLeftCorner(static_cast<Eigen::Index>(n1),
                                            static_cast<Eigen::Index>(n1));
    pf = &psums_full;
    pc = &psums_corner;
  }
  const Stat s1 = compute_stat(id, corner, pc, n1, tol);
  const Stat s2 = compute_stat(id, window, pf, n2, tol);
  return judge(id, s1, s2, n1, n2, tol);
}

void check_sizes(std::size_t n1, std::size_t n2) {
  if (n1 < 8) throw std::invalid_argument("condition evaluation needs n1 >= 8");
  if (n1 >= n2) throw std::invalid_argument("condition evaluation needs n1 < n2");
}

}  // namespace

ConditionVerdict eval_condition_detail(ConditionId id, const RowFiniteMatrix& a,
                                       std::size_t n1, std::size_t n2, double tol) {
  return eval_conditions({id}, a, n1, n2, tol).front();
}

Verdict eval_condition(ConditionId id, const RowFiniteMatrix& a, std::size_t n1,
                       std::size_t n2, double tol) {
  return eval_condition_detail(id, a, n1, n2, tol).verdict;
}

std::vector<ConditionVerdict> eval_conditions(const std::vector<ConditionId>& ids,
                                              const RowFiniteMatrix& a, std::size_t n1,
                                              std::size_t n2, double tol) {
  check_sizes(n1, n2);
  const MaterializedWindow win = materialize_window(a, n2);
  std::vector<ConditionVerdict> out;
  out.reserve(ids.size());
  for (ConditionId id : ids) {
    ConditionVerdict cv = eval_on_window(id, win.values, n1, n2, tol);
    if (win.tail_truncated) {
      cv.note += cv.note.empty() ? "" : "; ";
      cv.note += "window tail truncated";
    }
    out.push_back(std::move(cv));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classification driver

ConditionReport classify(const RowFiniteMatrix& a, const SpacePair& pair,
                         const ClassifyOptions& opts) {
  check_sizes(opts.n1, opts.n2);
  const ClassSpec spec = class_conditions(pair);

  ConditionReport report;
  report.subject = a.name();

  MaterializedWindow win;
  switch (spec.transform) {
    case TransformKind::none: {
      win = materialize_window(a, opts.n2);
      break;
    }
    case TransformKind::d_transform: {
      const RowFiniteMatrix d = transform_D(a, *pair.order, opts.n2);
      win = materialize_window(d, opts.n2);
      report.transform = "D";
      break;
    }
    case TransformKind::e_transform: {
      const RowFiniteMatrix e = transform_E(a, *pair.order, opts.n2);
      win = materialize_window(e, opts.n2);
      report.transform = "E";
      break;
    }
  }
  report.tail_truncated = win.tail_truncated;

  for (ConditionId id : spec.conditions) {
    ConditionVerdict cv = eval_on_window(id, win.values, opts.n1, opts.n2, opts.tol);
    if (win.tail_truncated) {
      cv.note += "; window tail truncated";
    }
    report.conditions.push_back(std::move(cv));
  }

  if (spec.fdf_beta_precondition) {
    // A row with finite support is in the dual by construction (its pairing
    // sums are finite), so the numeric dual check runs only where it is
    // meaningful: on rows whose support fits well inside the prefix (the
    // tail is visible) and on genuinely infinite rows (prefix evidence is
    // all there is).
    const std::size_t rows = std::min(opts.beta_rows, opts.n2);
    const std::size_t len = std::min(opts.beta_length, opts.n2);
    std::size_t checked = 0, certified = 0, violated = 0, inconclusive = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      const std::optional<std::size_t> bound = a.row_bound(i);
      if (bound && *bound > len / 2) {
        ++certified;
        continue;
      }
      std::vector<double> row(len, 0.0);
      const std::size_t limit = bound ? std::min(*bound, len) : len;
      for (std::size_t k = 0; k < limit; ++k) row[k] = a.entry(i, k);
      const DualReport dr = dual_check(TruncatedSequence{std::move(row), "row", false},
                                       *pair.order, DualKind::beta, opts.tol);
      ++checked;
      const bool row_violated = dr.route_v.aggregate == Verdict::violated ||
                                dr.route_direct.aggregate == Verdict::violated;
      const bool row_satisfied = !row_violated &&
                                 (dr.route_v.aggregate == Verdict::satisfied ||
                                  dr.route_direct.aggregate == Verdict::satisfied);
      if (row_violated) ++violated;
      else if (!row_satisfied) ++inconclusive;
    }
    ConditionVerdict pre;
    pre.id = "fdf-beta-rows";
    pre.stat_small = static_cast<double>(violated);
    pre.stat_large = static_cast<double>(inconclusive);
    pre.size_small = rows;
    pre.size_large = len;
    pre.tol = opts.tol;
    pre.verdict = violated > 0 ? Verdict::violated
                  : inconclusive > 0 ? Verdict::inconclusive
                                     : Verdict::satisfied;
    pre.note = std::to_string(rows) + " rows at prefix length " + std::to_string(len) + ": " +
               std::to_string(certified) + " certified by finite support, " +
               std::to_string(checked) + " checked (" + std::to_string(violated) +
               " violated, " + std::to_string(inconclusive) + " inconclusive)";
    report.conditions.push_back(std::move(pre));
  }

  report.aggregate = aggregate_verdicts(report.conditions);
  return report;
}

}  // namespace fracseq
