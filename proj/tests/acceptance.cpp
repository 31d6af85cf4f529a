// Acceptance suite: each case prints one pass/fail line with the measured
// evidence and asserts it. Run through ctest as the `acceptance` test.

#include <doctest.h>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <fracseq/classify.hpp>
#include <fracseq/duality.hpp>
#include <fracseq/spaces.hpp>

#include "oracles.hpp"

using namespace fracseq;

namespace {

bool report(int number, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] %2d %-22s %s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  return pass;
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
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
  for (double p : {1.2, 1.5, 2.0, 2.5, 3.0}) {
    const double c = scale();
    push("decay", [c, p](std::size_t k) { return c * std::pow(k + 1.0, -p); });
  }
  for (double c : {0.0, 1.0, -3.0, 7.5, 0.25}) {
    push("constant", [c](std::size_t) { return c; });
  }
  for (double p : {0.0, 0.5, 1.0, 2.0, 3.0}) {
    const double c = scale();
    push("alternating", [c, p](std::size_t k) {
      return c * ((k % 2 == 0) ? 1.0 : -1.0) * std::pow(k + 1.0, -p);
    });
  }
  for (double p : {0.0, 0.0, 0.5, 1.0, 2.0}) {
    const double c = scale();
    push("log-growth",
         [c, p](std::size_t k) { return c * std::log(k + 2.0) * std::pow(k + 1.0, -p); });
  }
  return corpus;
}

}  // namespace

TEST_CASE("criterion 1: inverse identity") {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = 128;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  double worst = 0.0;
  for (double r : {0.1, 0.5, 0.9, 1.5}) {
    const TriangularOperator fwd = build_frac_delta(FracOrder(r));
    const TriangularOperator inv = build_frac_delta_inverse(FracOrder(r));
    worst = std::max(worst, (compose(fwd, inv, n).truncation(n) - id).cwiseAbs().maxCoeff());
    worst = std::max(worst, (compose(inv, fwd, n).truncation(n) - id).cwiseAbs().maxCoeff());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = worst < 1e-9 && seconds < 1.0;
  CHECK(report(1, "inverse-identity", pass,
               "max entry error " + sci(worst) + " (bound 1e-9), runtime " + sci(seconds) + " s"));
}

TEST_CASE("criterion 2: semigroup law") {
  const std::size_t n = 128;
  const Eigen::MatrixXd first_difference = build_frac_delta(FracOrder(1.0)).truncation(n);
  const Eigen::MatrixXd half = build_frac_delta(FracOrder(0.5)).truncation(n);
  const double e1 =
      (compose(build_frac_delta(FracOrder(0.3)), build_frac_delta(FracOrder(0.7)), n)
           .truncation(n) -
       first_difference)
          .cwiseAbs()
          .maxCoeff();
  const double e2 =
      (compose(build_frac_delta(FracOrder(0.25)), build_frac_delta(FracOrder(0.25)), n)
           .truncation(n) -
       half)
          .cwiseAbs()
          .maxCoeff();
  const bool pass = e1 < 1e-9 && e2 < 1e-9;
  CHECK(report(2, "semigroup", pass,
               "0.3+0.7 error " + sci(e1) + ", 0.25+0.25 error " + sci(e2) + " (bound 1e-9)"));
}

TEST_CASE("criterion 3: weight oracle agreement") {
  double worst_rel = 0.0;
  for (double r : {0.1, 0.3, 0.5, 0.9, 1.5, 2.5}) {
    const WeightVector w = weights(FracOrder(r), 31);
    for (unsigned i = 0; i <= 30; ++i) {
      const double direct = weight_direct(FracOrder(r), i);
      worst_rel = std::max(worst_rel,
                           std::abs(w.weights[i] - direct) / std::max(1.0, std::abs(direct)));
    }
  }
  bool integer_exact = true;
  for (int m : {0, 1, 2, 3, 5, 10}) {
    const WeightVector w = weights(FracOrder(static_cast<double>(m)), 20);
    for (unsigned i = 0; i < 20; ++i) {
      const double expected =
          (static_cast<int>(i) <= m)
              ? ((i % 2 == 0) ? 1.0 : -1.0) * oracle::binomial(static_cast<unsigned>(m), i)
              : 0.0;
      integer_exact = integer_exact && (w.weights[i] == expected);
    }
  }
  const bool pass = worst_rel <= 1e-12 && integer_exact;
  CHECK(report(3, "weight-oracle", pass,
               "relative error " + sci(worst_rel) +
                   " (bound 1e-12); integer binomials exact: " + (integer_exact ? "yes" : "no")));
}

TEST_CASE("criterion 4: derived-space witness") {
  const std::size_t n = 8192;
  const TruncatedSequence d = make_generator("d_sequence", {.order = 0.5}, n);
  const TruncatedSequence recovered = apply(build_frac_delta(FracOrder(0.5)), d);
  double recover_err = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    recover_err =
        std::max(recover_err, std::abs(recovered.values[k] - ((k % 2 == 0) ? 0.0 : 1.0)));
  }
  const AlmostLimitEstimate est = estimate_almost_limit(recovered, 2000, 1e-3);
  const bool pass = recover_err <= 1e-10 && std::abs(est.value - 0.5) <= 1e-3 &&
                    est.verdict == AlmostVerdict::convergent_within_tol;
  CHECK(report(4, "derived-witness", pass,
               "recovery error " + sci(recover_err) + " (bound 1e-10), limit error " +
                   sci(std::abs(est.value - 0.5)) + " (bound 1e-3)"));
}

TEST_CASE("criterion 5: block witness spreads") {
  const std::size_t n = 20000;
  GeneratorParams params;
  params.zeros0 = 1;
  params.ones0 = 3;
  const TruncatedSequence mo = make_generator("miller_orhan", params, n);
  const AlmostLimitEstimate est = estimate_almost_limit(mo, 2000, 1e-3);

  // independent oracle: sliding-window sums per row, no prefix table
  double min_spread = std::numeric_limits<double>::infinity();
  double worst_gap = 0.0;
  for (std::size_t m = 500; m <= 2000; ++m) {
    double window = 0.0;
    for (std::size_t i = 0; i <= m; ++i) window += mo.values[i];
    double lo = window, hi = window;
    for (std::size_t pos = 1; pos + m < n; ++pos) {
      window += mo.values[pos + m] - mo.values[pos - 1];
      lo = std::min(lo, window);
      hi = std::max(hi, window);
    }
    const double spread = (hi - lo) / (static_cast<double>(m) + 1.0);
    min_spread = std::min(min_spread, spread);
    worst_gap = std::max(worst_gap, std::abs(spread - est.spread[m]));
  }
  const bool pass = min_spread >= 0.1 && worst_gap <= 1e-9 &&
                    est.verdict == AlmostVerdict::not_convergent_evidence;
  CHECK(report(5, "block-witness", pass,
               "min spread " + sci(min_spread) + " (bound 0.1), oracle gap " + sci(worst_gap) +
                   ", verdict " + std::string(to_string(est.verdict))));
}

TEST_CASE("criterion 6: grid oracle") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> x(256);
    for (double& v : x) v = dist(rng);
    const MeanGrid grid(TruncatedSequence{x, "random", false}, 100);
    for (std::size_t m = 0; m <= 100; ++m)
      for (std::size_t pos = 0; pos + m < 256; ++pos)
        worst = std::max(worst, std::abs(grid.t(m, pos) - oracle::window_mean(x, m, pos)));
  }
  CHECK(report(6, "grid-oracle", worst <= 1e-12,
               "max |grid - naive double loop| = " + sci(worst) + " (bound 1e-12)"));
}

TEST_CASE("criterion 7: classification golden suite") {
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
      {SpaceId::fdf, SpaceId::c, {C::C20, C::C21, C::C22, C::C23}, TransformKind::d_transform, true},
      {SpaceId::fdf, SpaceId::cs, {C::C29, C::C30, C::C31, C::C32}, TransformKind::d_transform, true},
      {SpaceId::fdf, SpaceId::bs, {C::C29}, TransformKind::d_transform, true},
      {SpaceId::fdf, SpaceId::f, {C::C20, C::C24, C::C25, C::C26}, TransformKind::d_transform, true},
      {SpaceId::linf, SpaceId::fdf, {C::C20, C::C24, C::C26x}, TransformKind::e_transform, false},
      {SpaceId::c, SpaceId::fdf, {C::C20, C::C24, C::C25}, TransformKind::e_transform, false},
      {SpaceId::bs, SpaceId::fdf, {C::C33, C::C27, C::C24, C::C26}, TransformKind::e_transform, false},
      {SpaceId::cs, SpaceId::fdf, {C::C33, C::C24}, TransformKind::e_transform, false},
  };
  bool tables_ok = golden.size() == 18;
  for (const Entry& e : golden) {
    const ClassSpec spec = class_conditions({e.from, e.to, FracOrder(0.5)});
    tables_ok = tables_ok && spec.conditions == e.conds && spec.transform == e.tf &&
                spec.fdf_beta_precondition == e.pre;
  }
  const ConditionReport cesaro =
      classify(as_row_finite(build_cesaro()), {SpaceId::f, SpaceId::c, std::nullopt},
               {});
  const ConditionReport identity =
      classify(as_row_finite(build_identity()), {SpaceId::f, SpaceId::f, std::nullopt},
               {});
  const bool pass = tables_ok && cesaro.aggregate == Verdict::satisfied &&
                    identity.aggregate == Verdict::satisfied;
  CHECK(report(7, "class-golden", pass,
               std::string("tables ") + (tables_ok ? "match" : "MISMATCH") + "; cesaro (f:c) " +
                   std::string(to_string(cesaro.aggregate)) + "; identity (f:f) " +
                   std::string(to_string(identity.aggregate))));
}

TEST_CASE("criterion 8: dual route agreement") {
  const std::vector<TruncatedSequence> corpus = dual_corpus(2048);
  std::size_t contradictions = 0, binding = 0, total = 0;
  for (const TruncatedSequence& a : corpus) {
    for (double r : {0.3, 0.7}) {
      for (DualKind kind : {DualKind::beta, DualKind::gamma}) {
        ++total;
        const DualReport rep = dual_check(a, FracOrder(r), kind, 1e-2);
        if (rep.agreement) {
          ++binding;
          if (!*rep.agreement) ++contradictions;
        }
      }
    }
  }
  const bool pass = contradictions == 0 && corpus.size() == 20;
  CHECK(report(8, "dual-agreement", pass,
               std::to_string(total) + " checks (" + std::to_string(binding) +
                   " binding), contradictions: " + std::to_string(contradictions)));
}

TEST_CASE("criterion 9: norm estimator properties") {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const FracOrder order(0.5);
  bool homogeneous = true, triangle = true, monotone = true;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> xv(512), zv(512);
    for (double& v : xv) v = dist(rng);
    for (double& v : zv) v = dist(rng);
    const TruncatedSequence x{xv, "x", false};
    const TruncatedSequence z{zv, "z", false};
    const double nx = fdf_norm(x, order, 128);
    const double nz = fdf_norm(z, order, 128);
    for (double alpha : {0.5, -2.0, 4.0, 0.25}) {
      std::vector<double> sv(512);
      for (std::size_t i = 0; i < 512; ++i) sv[i] = alpha * xv[i];
      homogeneous = homogeneous &&
                    fdf_norm(TruncatedSequence{sv, "s", false}, order, 128) ==
                        std::abs(alpha) * nx;
    }
    std::vector<double> sum(512);
    for (std::size_t i = 0; i < 512; ++i) sum[i] = xv[i] + zv[i];
    triangle = triangle &&
               fdf_norm(TruncatedSequence{sum, "sum", false}, order, 128) <= nx + nz + 1e-12;
    monotone = monotone && fdf_norm(x, order, 64) <= nx;
    const TruncatedSequence prefix{std::vector<double>(xv.begin(), xv.begin() + 256), "p", false};
    monotone = monotone && fdf_norm(prefix, order, 64) <= fdf_norm(x, order, 64);
  }
  const bool pass = homogeneous && triangle && monotone;
  CHECK(report(9, "norm-properties", pass,
               std::string("homogeneity exact: ") + (homogeneous ? "yes" : "no") +
                   "; triangle: " + (triangle ? "yes" : "no") +
                   "; monotone: " + (monotone ? "yes" : "no")));
}

TEST_CASE("criterion 10: the quick verify suite") {
#ifndef FRACSEQ_CLI_PATH
  CHECK(report(10, "verify-quick", false, "cli binary path not configured"));
#else
  const std::string out_path = "/tmp/fracseq_acceptance_verify.out";
  const std::string cmd = std::string(FRACSEQ_CLI_PATH) + " verify --quick > " + out_path + " 2>&1";
  const auto start = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ifstream in(out_path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string output = buf.str();
  const bool exit_ok = status != -1 && WEXITSTATUS(status) == 0;
  const bool all_passed = output.find("all checks passed") != std::string::npos;
  const bool has_rows = output.find("inverse-identity") != std::string::npos &&
                        output.find("semigroup") != std::string::npos &&
                        output.find("weight-oracle") != std::string::npos &&
                        output.find("fdf-witness") != std::string::npos &&
                        output.find("grid-oracle") != std::string::npos;
  const bool pass = exit_ok && all_passed && has_rows && seconds < 30.0;
  CHECK(report(10, "verify-quick", pass,
               "exit ok: " + std::string(exit_ok ? "yes" : "no") + ", table complete: " +
                   (has_rows && all_passed ? "yes" : "no") + ", runtime " + sci(seconds) + " s (bound 30 s)"));
#endif
}
