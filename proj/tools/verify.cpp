#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <fracseq/classify.hpp>
#include <fracseq/duality.hpp>
#include <fracseq/spaces.hpp>

#include "cli.hpp"

namespace fracseq::cli {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

VerifyCheck check_inverse_identity() {
  const std::size_t n = 128;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  double worst = 0.0;
  for (double r : {0.1, 0.5, 0.9, 1.5}) {
    const TriangularOperator fwd = build_frac_delta(FracOrder(r));
    const TriangularOperator inv = build_frac_delta_inverse(FracOrder(r));
    worst = std::max(worst, (compose(fwd, inv, n).truncation(n) - id).cwiseAbs().maxCoeff());
    worst = std::max(worst, (compose(inv, fwd, n).truncation(n) - id).cwiseAbs().maxCoeff());
  }
  return {"inverse-identity", worst < 1e-9,
          "max |composition - identity| = " + fmt(worst) + " (bound 1e-9, N=128)"};
}

VerifyCheck check_semigroup() {
  const std::size_t n = 128;
  double worst = 0.0;
  const auto gap = [n](double r, double s) {
    const Eigen::MatrixXd lhs =
        compose(build_frac_delta(FracOrder(r)), build_frac_delta(FracOrder(s)), n).truncation(n);
    const Eigen::MatrixXd rhs = build_frac_delta(FracOrder(r + s)).truncation(n);
    return (lhs - rhs).cwiseAbs().maxCoeff();
  };
  worst = std::max(worst, gap(0.3, 0.7));
  worst = std::max(worst, gap(0.25, 0.25));
  return {"semigroup", worst < 1e-9,
          "max |composed - direct| = " + fmt(worst) + " (bound 1e-9, N=128)"};
}

VerifyCheck check_weight_oracle() {
  double worst_rel = 0.0;
  for (double r : {0.1, 0.3, 0.5, 0.9, 1.5, 2.5}) {
    const WeightVector w = weights(FracOrder(r), 31);
    for (unsigned i = 0; i <= 30; ++i) {
      const double direct = weight_direct(FracOrder(r), i);
      const double denom = std::max(1.0, std::abs(direct));
      worst_rel = std::max(worst_rel, std::abs(w.weights[i] - direct) / denom);
    }
  }
  bool integer_exact = true;
  for (int m : {0, 1, 2, 3, 5, 10}) {
    const WeightVector w = weights(FracOrder(static_cast<double>(m)), 20);
    double binom = 1.0;  // C(m, i), advanced multiplicatively; integer-exact in double
    for (int i = 0; i < 20; ++i) {
      const double expected = (i <= m) ? ((i % 2 == 0) ? binom : -binom) : 0.0;
      if (w.weights[static_cast<std::size_t>(i)] != expected) integer_exact = false;
      if (i < m) binom = binom * static_cast<double>(m - i) / static_cast<double>(i + 1);
    }
  }
  const bool pass = worst_rel <= 1e-12 && integer_exact;
  return {"weight-oracle", pass,
          "recurrence vs Gamma ratio rel err = " + fmt(worst_rel) +
              " (bound 1e-12); integer orders exact: " + (integer_exact ? "yes" : "no")};
}

VerifyCheck check_fdf_witness() {
  const std::size_t n = 8192;
  const FracOrder order(0.5);
  const TruncatedSequence d = make_generator("d_sequence", {.order = 0.5}, n);
  const TruncatedSequence recovered = apply(build_frac_delta(order), d);
  double recover_err = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double wave = (k % 2 == 0) ? 0.0 : 1.0;
    recover_err = std::max(recover_err, std::abs(recovered.values[k] - wave));
  }
  const AlmostLimitEstimate est = estimate_almost_limit(recovered, 2000, 1e-3);
  const bool pass = recover_err <= 1e-10 && std::abs(est.value - 0.5) <= 1e-3 &&
                    est.verdict == AlmostVerdict::convergent_within_tol;
  return {"fdf-witness", pass,
          "round trip err " + fmt(recover_err) + " (bound 1e-10); limit " + fmt(est.value) +
              " vs 0.5, verdict " + std::string(to_string(est.verdict))};
}

VerifyCheck check_grid_oracle() {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const std::size_t n = 256, m_max = 100;
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> x(n);
    for (double& v : x) v = dist(rng);
    const TruncatedSequence seq{x, "random", false};
    const MeanGrid grid(seq, m_max);
    for (std::size_t m = 0; m <= m_max; ++m) {
      for (std::size_t pos = 0; pos + m < n; ++pos) {
        long double direct = 0.0L;
        for (std::size_t i = 0; i <= m; ++i) direct += x[pos + i];
        direct /= static_cast<long double>(m + 1);
        worst = std::max(worst, std::abs(grid.t(m, pos) - static_cast<double>(direct)));
      }
    }
  }
  return {"grid-oracle", worst <= 1e-12,
          "max |prefix grid - direct window sums| = " + fmt(worst) + " (bound 1e-12)"};
}

VerifyCheck check_block_witness() {
  const std::size_t n = 20000;
  GeneratorParams params;
  params.zeros0 = 1;
  params.ones0 = 3;
  const TruncatedSequence mo = make_generator("miller_orhan", params, n);
  const AlmostLimitEstimate est = estimate_almost_limit(mo, 2000, 1e-3);
  double min_spread = est.spread[500];
  for (std::size_t m = 500; m <= 2000; ++m) min_spread = std::min(min_spread, est.spread[m]);
  const bool pass =
      min_spread >= 0.1 && est.verdict == AlmostVerdict::not_convergent_evidence;
  return {"block-witness", pass,
          "min spread over m in [500,2000] = " + fmt(min_spread) + " (bound 0.1); verdict " +
              std::string(to_string(est.verdict))};
}

VerifyCheck check_class_tables() {
  using C = ConditionId;
  struct Entry {
    SpaceId from, to;
    std::vector<C> conds;
    TransformKind tf;
    bool pre;
  };
  const std::vector<Entry> golden = {
      {SpaceId::f, SpaceId::linf, {C::C20}, TransformKind::none, false},
      {SpaceId::f, SpaceId::c, {C::C20, C::C21, C::C22, C::C23}, TransformKind::none, false},
      {SpaceId::f, SpaceId::cs, {C::C29, C::C30, C::C31, C::C32}, TransformKind::none, false},
      {SpaceId::f, SpaceId::bs, {C::C29}, TransformKind::none, false},
      {SpaceId::f, SpaceId::f, {C::C20, C::C24, C::C25, C::C26}, TransformKind::none, false},
      {SpaceId::linf, SpaceId::f, {C::C20, C::C24, C::C26x}, TransformKind::none, false},
      {SpaceId::c, SpaceId::f, {C::C20, C::C24, C::C25}, TransformKind::none, false},
      {SpaceId::bs, SpaceId::f, {C::C33, C::C27, C::C24, C::C26}, TransformKind::none, false},
      {SpaceId::cs, SpaceId::f, {C::C33, C::C24}, TransformKind::none, false},
      {SpaceId::fdf, SpaceId::linf, {C::C20}, TransformKind::d_transform, true},
      {SpaceId::fdf, SpaceId::c, {C::C20, C::C21, C::C22, C::C23}, TransformKind::d_transform,
       true},
      {SpaceId::fdf, SpaceId::cs, {C::C29, C::C30, C::C31, C::C32}, TransformKind::d_transform,
       true},
      {SpaceId::fdf, SpaceId::bs, {C::C29}, TransformKind::d_transform, true},
      {SpaceId::fdf, SpaceId::f, {C::C20, C::C24, C::C25, C::C26}, TransformKind::d_transform,
       true},
      {SpaceId::linf, SpaceId::fdf, {C::C20, C::C24, C::C26x}, TransformKind::e_transform,
       false},
      {SpaceId::c, SpaceId::fdf, {C::C20, C::C24, C::C25}, TransformKind::e_transform, false},
      {SpaceId::bs, SpaceId::fdf, {C::C33, C::C27, C::C24, C::C26}, TransformKind::e_transform,
       false},
      {SpaceId::cs, SpaceId::fdf, {C::C33, C::C24}, TransformKind::e_transform, false},
  };
  bool tables_ok = true;
  for (const Entry& e : golden) {
    SpacePair pair{e.from, e.to, FracOrder(0.5)};
    const ClassSpec spec = class_conditions(pair);
    tables_ok = tables_ok && spec.conditions == e.conds && spec.transform == e.tf &&
                spec.fdf_beta_precondition == e.pre;
  }
  const RowFiniteMatrix cesaro = as_row_finite(build_cesaro());
  const RowFiniteMatrix identity = as_row_finite(build_identity());
  const ConditionReport r1 = classify(cesaro, {SpaceId::f, SpaceId::c, std::nullopt}, {});
  const ConditionReport r2 = classify(identity, {SpaceId::f, SpaceId::f, std::nullopt}, {});
  const bool pass =
      tables_ok && r1.aggregate == Verdict::satisfied && r2.aggregate == Verdict::satisfied;
  return {"class-tables", pass,
          std::string("18 table entries ") + (tables_ok ? "match" : "MISMATCH") +
              "; cesaro (f:c) " + std::string(to_string(r1.aggregate)) + "; identity (f:f) " +
              std::string(to_string(r2.aggregate))};
}

std::vector<TruncatedSequence> dual_corpus(std::size_t n) {
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> amp(0.5, 2.0);
  std::bernoulli_distribution flip(0.5);
  auto scale = [&] { return (flip(rng) ? 1.0 : -1.0) * amp(rng); };

  std::vector<TruncatedSequence> corpus;
  auto push = [&corpus, n](const std::string& label, auto&& f) {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = f(k);
    corpus.push_back(TruncatedSequence{std::move(v), label, false});
  };

  const double decay_p[] = {1.2, 1.5, 2.0, 2.5, 3.0};
  for (double p : decay_p) {
    const double c = scale();
    push("decay(p=" + std::to_string(p) + ")",
         [c, p](std::size_t k) { return c * std::pow(static_cast<double>(k) + 1.0, -p); });
  }
  const double constants[] = {0.0, 1.0, -3.0, 7.5, 0.25};
  for (double c : constants) {
    push("constant(" + std::to_string(c) + ")", [c](std::size_t) { return c; });
  }
  const double alt_p[] = {0.0, 0.5, 1.0, 2.0, 3.0};
  for (double p : alt_p) {
    const double c = scale();
    push("alternating(p=" + std::to_string(p) + ")", [c, p](std::size_t k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      return c * sign * std::pow(static_cast<double>(k) + 1.0, -p);
    });
  }
  const double log_p[] = {0.0, 0.0, 0.5, 1.0, 2.0};
  for (double p : log_p) {
    const double c = scale();
    push("log_growth(p=" + std::to_string(p) + ")", [c, p](std::size_t k) {
      return c * std::log(static_cast<double>(k) + 2.0) *
             std::pow(static_cast<double>(k) + 1.0, -p);
    });
  }
  return corpus;
}

VerifyCheck check_dual_corpus() {
  const std::vector<TruncatedSequence> corpus = dual_corpus(2048);
  std::size_t contradictions = 0, binding = 0;
  for (const TruncatedSequence& a : corpus) {
    for (double r : {0.3, 0.7}) {
      for (DualKind kind : {DualKind::beta, DualKind::gamma}) {
        const DualReport report = dual_check(a, FracOrder(r), kind, 1e-2);
        if (report.agreement) {
          ++binding;
          if (!*report.agreement) ++contradictions;
        }
      }
    }
  }
  return {"dual-routes", contradictions == 0,
          std::to_string(corpus.size() * 4) + " checks, " + std::to_string(binding) +
              " with definite verdicts on both routes, " + std::to_string(contradictions) +
              " contradictions"};
}

VerifyCheck check_norm_properties() {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const FracOrder order(0.5);
  bool homogeneous = true, triangle = true, monotone = true;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> xv(512), zv(512);
    for (double& v : xv) v = dist(rng);
    for (double& v : zv) v = dist(rng);
    const TruncatedSequence x{xv, "random", false};
    const TruncatedSequence z{zv, "random", false};
    const double nx = fdf_norm(x, order, 128);
    const double nz = fdf_norm(z, order, 128);
    for (double alpha : {0.5, -2.0, 4.0, 0.25}) {
      std::vector<double> sv(512);
      for (std::size_t i = 0; i < 512; ++i) sv[i] = alpha * xv[i];
      if (fdf_norm(TruncatedSequence{sv, "scaled", false}, order, 128) !=
          std::abs(alpha) * nx) {
        homogeneous = false;
      }
    }
    std::vector<double> sum(512);
    for (std::size_t i = 0; i < 512; ++i) sum[i] = xv[i] + zv[i];
    if (fdf_norm(TruncatedSequence{sum, "sum", false}, order, 128) > nx + nz + 1e-12) {
      triangle = false;
    }
    const std::vector<double> prefix(xv.begin(), xv.begin() + 256);
    if (fdf_norm(TruncatedSequence{prefix, "prefix", false}, order, 64) > nx) monotone = false;
    if (fdf_norm(x, order, 64) > nx) monotone = false;
  }
  const bool pass = homogeneous && triangle && monotone;
  return {"norm-properties", pass,
          std::string("power-of-two homogeneity ") + (homogeneous ? "exact" : "BROKEN") +
              "; triangle inequality " + (triangle ? "holds" : "BROKEN") +
              "; monotone in truncation " + (monotone ? "holds" : "BROKEN")};
}

}  // namespace

std::vector<VerifyCheck> run_verify_checks(bool quick) {
  std::vector<VerifyCheck> checks;
  checks.push_back(check_inverse_identity());
  checks.push_back(check_semigroup());
  checks.push_back(check_weight_oracle());
  checks.push_back(check_fdf_witness());
  checks.push_back(check_grid_oracle());
  if (!quick) {
    checks.push_back(check_block_witness());
    checks.push_back(check_class_tables());
    checks.push_back(check_dual_corpus());
    checks.push_back(check_norm_properties());
  }
  return checks;
}

}  // namespace fracseq::cli
