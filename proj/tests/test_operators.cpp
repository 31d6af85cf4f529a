#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include <fracseq/operators.hpp>

#include "oracles.hpp"

using namespace fracseq;

namespace {

TruncatedSequence random_sequence(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return TruncatedSequence{std::move(v), "random", false};
}

}  // namespace

TEST_CASE("difference triangle rows") {
  SUBCASE("integer order") {
    const Eigen::MatrixXd m = build_frac_delta(FracOrder(1.0)).truncation(3);
    CHECK(m(0, 0) == 1.0);
    CHECK(m(1, 0) == -1.0);
    CHECK(m(1, 1) == 1.0);
    CHECK(m(2, 0) == 0.0);
    CHECK(m(2, 1) == -1.0);
    CHECK(m(2, 2) == 1.0);
    CHECK(m(0, 1) == 0.0);
  }
  SUBCASE("generic order fourth row") {
    const double r = 0.37;
    const Eigen::MatrixXd m = build_frac_delta(FracOrder(r)).truncation(4);
    CHECK(m(3, 0) == doctest::Approx(-r * (r - 1) * (r - 2) / 6.0).epsilon(1e-15));
    CHECK(m(3, 1) == doctest::Approx(r * (r - 1) / 2.0).epsilon(1e-15));
    CHECK(m(3, 2) == doctest::Approx(-r).epsilon(1e-15));
    CHECK(m(3, 3) == 1.0);
  }
  SUBCASE("half order entry") {
    CHECK(build_frac_delta(FracOrder(0.5)).entry(2, 0) == -0.125);
  }
}

TEST_CASE("inverse triangle") {
  SUBCASE("first column at a generic order") {
    const double r = 0.37;
    const TriangularOperator inv = build_frac_delta_inverse(FracOrder(r));
    CHECK(inv.entry(0, 0) == 1.0);
    CHECK(inv.entry(1, 0) == doctest::Approx(r).epsilon(1e-15));
    CHECK(inv.entry(2, 0) == doctest::Approx(r * (r + 1) / 2.0).epsilon(1e-15));
    CHECK(inv.entry(3, 0) == doctest::Approx(r * (r + 1) * (r + 2) / 6.0).epsilon(1e-15));
  }
  SUBCASE("order zero is the identity") {
    const Eigen::MatrixXd m = build_frac_delta_inverse(FracOrder(0.0)).truncation(5);
    CHECK((m - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("half order entry") {
    CHECK(build_frac_delta_inverse(FracOrder(0.5)).entry(3, 0) == 0.3125);
  }
  SUBCASE("integer order is the running-sum triangle") {
    const Eigen::MatrixXd m = build_frac_delta_inverse(FracOrder(1.0)).truncation(4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j <= i; ++j) CHECK(m(i, j) == 1.0);
  }
}

TEST_CASE("composition laws") {
  const std::size_t n = 128;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  SUBCASE("inverse identity") {
    for (double r : {0.1, 0.5, 0.9, 1.5}) {
      const TriangularOperator fwd = build_frac_delta(FracOrder(r));
      const TriangularOperator inv = build_frac_delta_inverse(FracOrder(r));
      CHECK((compose(fwd, inv, n).truncation(n) - id).cwiseAbs().maxCoeff() < 1e-9);
      CHECK((compose(inv, fwd, n).truncation(n) - id).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
  SUBCASE("orders add under composition") {
    for (auto [r, s] : {std::pair{0.3, 0.7}, {0.25, 0.25}, {1.0, 0.5}}) {
      const Eigen::MatrixXd lhs =
          compose(build_frac_delta(FracOrder(r)), build_frac_delta(FracOrder(s)), n)
              .truncation(n);
      const Eigen::MatrixXd rhs = build_frac_delta(FracOrder(r + s)).truncation(n);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
  SUBCASE("composition commutes") {
    for (auto [r, s] : {std::pair{0.3, 0.7}, {0.25, 0.5}}) {
      const TriangularOperator a = build_frac_delta(FracOrder(r));
      const TriangularOperator b = build_frac_delta(FracOrder(s));
      const Eigen::MatrixXd ab = compose(a, b, 64).truncation(64);
      const Eigen::MatrixXd ba = compose(b, a, 64).truncation(64);
      CHECK((ab - ba).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SUBCASE("identity composes exactly") {
    const Eigen::MatrixXd c = build_cesaro().truncation(16);
    const Eigen::MatrixXd composed = compose(build_identity(), build_cesaro(), 16).truncation(16);
    CHECK((composed - c).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("product matches the textbook triple loop") {
    const TriangularOperator a = build_frac_delta(FracOrder(0.4));
    const TriangularOperator b = build_cesaro();
    const Eigen::MatrixXd got = compose(a, b, 16).truncation(16);
    const Eigen::MatrixXd want = oracle::matmul(a.truncation(16), b.truncation(16));
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-13);
  }
  SUBCASE("truncation commutes with inversion") {
    // triangularity makes the window exact: inverting the window equals
    // windowing the inverse operator
    for (double r : {0.3, 0.9}) {
      const Eigen::MatrixXd inverted = build_frac_delta(FracOrder(r)).truncation(64).inverse();
      const Eigen::MatrixXd windowed = build_frac_delta_inverse(FracOrder(r)).truncation(64);
      CHECK((inverted - windowed).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("applying operators to prefixes") {
  SUBCASE("first difference of the constant sequence") {
    const TruncatedSequence ones{std::vector<double>(8, 1.0), "ones", false};
    const TruncatedSequence y = apply(build_frac_delta(FracOrder(1.0)), ones);
    CHECK(y.values[0] == 1.0);
    for (std::size_t i = 1; i < 8; ++i) CHECK(y.values[i] == 0.0);
  }
  SUBCASE("round trip through the inverse") {
    std::vector<double> wave(256);
    for (std::size_t k = 0; k < wave.size(); ++k) wave[k] = (k % 2 == 0) ? 0.0 : 1.0;
    const TruncatedSequence z{wave, "wave", false};
    for (double r : {0.3, 0.5, 1.5}) {
      const TruncatedSequence back = apply(
          build_frac_delta(FracOrder(r)), apply(build_frac_delta_inverse(FracOrder(r)), z));
      double worst = 0.0;
      for (std::size_t k = 0; k < wave.size(); ++k)
        worst = std::max(worst, std::abs(back.values[k] - wave[k]));
      CHECK(worst < 1e-10);
    }
  }
  SUBCASE("window means of the alternating sequence") {
    std::vector<double> alt(64);
    for (std::size_t k = 0; k < alt.size(); ++k) alt[k] = (k % 2 == 0) ? 1.0 : -1.0;
    const TruncatedSequence x{alt, "alt", false};
    const TruncatedSequence y = apply(build_cesaro(), x);
    for (std::size_t i = 0; i < alt.size(); ++i) {
      long double partial = 0.0L;
      for (std::size_t k = 0; k <= i; ++k) partial += alt[k];
      CHECK(y.values[i] ==
            doctest::Approx(static_cast<double>(partial) / (static_cast<double>(i) + 1.0))
                .epsilon(1e-14));
    }
  }
  SUBCASE("application distributes over composition") {
    const TruncatedSequence x = random_sequence(64, 99);
    const TriangularOperator a = build_frac_delta(FracOrder(0.6));
    const TriangularOperator b = build_cesaro();
    const TruncatedSequence lhs = apply(compose(a, b, 64), x);
    const TruncatedSequence rhs = apply(a, apply(b, x));
    for (std::size_t i = 0; i < 64; ++i)
      CHECK(std::abs(lhs.values[i] - rhs.values[i]) < 1e-10);
  }
}

TEST_CASE("builtin matrices") {
  SUBCASE("cesaro row") {
    const TriangularOperator c = build_cesaro();
    for (int k = 0; k <= 2; ++k) CHECK(c.entry(2, k) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  }
  SUBCASE("euler row against the binomial expansion") {
    const TriangularOperator e = build_euler(0.5);
    CHECK(e.entry(2, 0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(e.entry(2, 1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(e.entry(2, 2) == doctest::Approx(0.25).epsilon(1e-14));
    const double q = 0.37;
    const TriangularOperator eq = build_euler(q);
    for (unsigned n = 0; n < 12; ++n)
      for (unsigned k = 0; k <= n; ++k)
        CHECK(eq.entry(n, k) ==
              doctest::Approx(oracle::binomial(n, k) * std::pow(1 - q, n - k) * std::pow(q, k))
                  .epsilon(1e-12));
  }
  SUBCASE("riesz with unit weights is the cesaro matrix") {
    const TriangularOperator r = build_riesz(std::vector<double>(32, 1.0));
    const TriangularOperator c = build_cesaro();
    for (unsigned n = 0; n < 32; ++n)
      for (unsigned k = 0; k <= n; ++k)
        CHECK(r.entry(n, k) == doctest::Approx(c.entry(n, k)).epsilon(1e-15));
    CHECK_THROWS_AS(r.entry(32, 0), std::out_of_range);
  }
  SUBCASE("stochastic rows") {
    for (unsigned n : {0u, 1u, 7u, 40u, 199u}) {
      long double ce = 0.0L, eu = 0.0L, ri = 0.0L;
      const TriangularOperator c = build_cesaro();
      const TriangularOperator e = build_euler(0.31);
      const TriangularOperator r = build_riesz([&] {
        std::vector<double> t(200);
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = 1.0 + (i % 5);
        return t;
      }());
      for (unsigned k = 0; k <= n; ++k) {
        ce += c.entry(n, k);
        eu += e.entry(n, k);
        ri += r.entry(n, k);
      }
      CHECK(static_cast<double>(ce) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(static_cast<double>(eu) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(static_cast<double>(ri) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("taylor matrix is upper triangular with infinite rows") {
    const RowFiniteMatrix t = build_taylor(0.4);
    CHECK(t.entry(2, 1) == 0.0);
    CHECK(!t.row_bound(0).has_value());
    const double q = 0.4;
    for (unsigned n = 0; n < 6; ++n)
      for (unsigned k = n; k < 12; ++k)
        CHECK(t.entry(n, k) == doctest::Approx(oracle::binomial(k, n) *
                                               std::pow(1 - q, n + 1) * std::pow(q, k - n))
                                   .epsilon(1e-12));
    // applying it must flag the cut tail
    const TruncatedSequence ones{std::vector<double>(16, 1.0), "ones", false};
    CHECK(apply(t, ones).approximate);
  }
  SUBCASE("builder dispatch and validation") {
    CHECK_THROWS_WITH_AS(build_builtin({"nope", std::nullopt, {}}),
                         doctest::Contains("unknown builtin"), std::invalid_argument);
    CHECK_THROWS_AS(build_builtin({"euler", std::nullopt, {}}), std::invalid_argument);
    CHECK_THROWS_AS(build_euler(1.5), std::domain_error);
    CHECK_THROWS_AS(build_taylor(-0.1), std::domain_error);
    CHECK_THROWS_AS(build_riesz({1.0, -2.0}), std::domain_error);
    CHECK_THROWS_AS(build_riesz({}), std::invalid_argument);
    CHECK(std::holds_alternative<TriangularOperator>(build_builtin({"cesaro", std::nullopt, {}})));
    CHECK(std::holds_alternative<RowFiniteMatrix>(build_builtin({"taylor", 0.5, {}})));
  }
}

TEST_CASE("D-side transform") {
  SUBCASE("order zero differences columns and keeps the boundary") {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::MatrixXd a(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = dist(rng);
    const RowFiniteMatrix am = RowFiniteMatrix::from_dense("a", a);
    const RowFiniteMatrix d = transform_D(am, FracOrder(0.0), 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 3; ++j) CHECK(d.entry(i, j) == doctest::Approx(a(i, j) - a(i, j + 1)));
      CHECK(d.entry(i, 3) == a(i, 3));
    }
  }
  SUBCASE("identity input at a generic order") {
    const double r = 0.37;
    const std::vector<double> cum = detail::weight_partial_sums(-r, 6);
    const RowFiniteMatrix d = transform_D(as_row_finite(build_identity()), FracOrder(r), 6);
    for (unsigned n = 0; n < 5; ++n) {
      for (unsigned k = 0; k < 5; ++k) {
        double expected = 0.0;
        if (k == n) expected = cum[n];
        if (k + 1 == n) expected = -cum[n];
        CHECK(d.entry(n, k) == doctest::Approx(expected).epsilon(1e-14));
      }
    }
  }
  SUBCASE("cesaro entry from the scaled-row table") {
    const RowFiniteMatrix d = transform_D(as_row_finite(build_cesaro()), FracOrder(0.5), 4);
    CHECK(d.entry(3, 1) == doctest::Approx(-0.09375).epsilon(1e-15));
    CHECK(d.entry(3, 3) == doctest::Approx(0.546875).epsilon(1e-15));
  }
}

TEST_CASE("E-side transform") {
  SUBCASE("integer order telescopes to the input") {
    const RowFiniteMatrix a = as_row_finite(build_cesaro());
    const RowFiniteMatrix e = transform_E(a, FracOrder(1.0), 8);
    for (unsigned n = 0; n < 8; ++n)
      for (unsigned k = 0; k < 8; ++k) CHECK(e.entry(n, k) == doctest::Approx(a.entry(n, k)));
  }
  SUBCASE("order zero accumulates columns") {
    const RowFiniteMatrix a = as_row_finite(build_cesaro());
    const RowFiniteMatrix e = transform_E(a, FracOrder(0.0), 8);
    const RowFiniteMatrix p = column_partial_sums(a, 8);
    for (unsigned n = 0; n < 8; ++n)
      for (unsigned k = 0; k < 8; ++k)
        CHECK(e.entry(n, k) == doctest::Approx(p.entry(n, k)).epsilon(1e-14));
  }
  SUBCASE("identity input exposes the partial-sum kernel") {
    const RowFiniteMatrix e = transform_E(as_row_finite(build_identity()), FracOrder(0.5), 4);
    CHECK(e.entry(2, 0) == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(e.entry(2, 1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(e.entry(2, 2) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("weight-kernel reading at integer order differences rows") {
    const RowFiniteMatrix a = as_row_finite(build_cesaro());
    const RowFiniteMatrix e = transform_E_weight_kernel(a, FracOrder(1.0), 8);
    for (unsigned n = 1; n < 8; ++n)
      for (unsigned k = 0; k < 8; ++k)
        CHECK(e.entry(n, k) == doctest::Approx(a.entry(n, k) - a.entry(n - 1, k)));
  }
  SUBCASE("the two readings agree through column partial sums") {
    const RowFiniteMatrix a = as_row_finite(build_cesaro());
    const RowFiniteMatrix lhs = transform_E(a, FracOrder(0.37), 32);
    const RowFiniteMatrix rhs =
        transform_E_weight_kernel(column_partial_sums(a, 32), FracOrder(0.37), 32);
    double worst = 0.0;
    for (unsigned n = 0; n < 32; ++n)
      for (unsigned k = 0; k < 32; ++k)
        worst = std::max(worst, std::abs(lhs.entry(n, k) - rhs.entry(n, k)));
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("worked-example row substitutions") {
  SUBCASE("euler rows of the identity recover the euler matrix") {
    const RowFiniteMatrix c = euler_rows(as_row_finite(build_identity()), 0.31);
    const TriangularOperator e = build_euler(0.31);
    for (unsigned n = 0; n < 8; ++n)
      for (unsigned k = 0; k <= n; ++k)
        CHECK(c.entry(n, k) == doctest::Approx(e.entry(n, k)).epsilon(1e-13));
  }
  SUBCASE("riesz rows of the identity recover the riesz matrix") {
    const std::vector<double> t = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0};
    const RowFiniteMatrix g = riesz_rows(as_row_finite(build_identity()), t);
    const TriangularOperator r = build_riesz(t);
    for (unsigned n = 0; n < 8; ++n)
      for (unsigned k = 0; k <= n; ++k)
        CHECK(g.entry(n, k) == doctest::Approx(r.entry(n, k)).epsilon(1e-13));
  }
  SUBCASE("taylor rows of the identity recover the taylor window") {
    const RowFiniteMatrix p = taylor_rows(as_row_finite(build_identity()), 0.4, 8);
    const RowFiniteMatrix t = build_taylor(0.4);
    CHECK(p.tail_truncated());
    for (unsigned n = 0; n < 8; ++n)
      for (unsigned k = 0; k < 8; ++k)
        CHECK(p.entry(n, k) == doctest::Approx(t.entry(n, k)).epsilon(1e-13));
  }
  SUBCASE("shifted blend mixes two consecutive rows") {
    const RowFiniteMatrix h = shifted_blend_rows(as_row_finite(build_identity()), 2.0, 3.0);
    CHECK(h.entry(0, 0) == 3.0);
    CHECK(h.entry(3, 3) == 3.0);
    CHECK(h.entry(3, 2) == 2.0);
    CHECK(h.entry(3, 1) == 0.0);
  }
  SUBCASE("harmonic tails of the identity give the cesaro entries") {
    const RowFiniteMatrix m = harmonic_tail_rows(as_row_finite(build_identity()), 8);
    const TriangularOperator c = build_cesaro();
    for (unsigned n = 0; n < 8; ++n)
      for (unsigned k = 0; k < 8; ++k)
        CHECK(m.entry(n, k) == doctest::Approx(c.entry(n, k)).epsilon(1e-14));
  }
}

TEST_CASE("window bounds are enforced") {
  const TriangularOperator composed = compose(build_cesaro(), build_cesaro(), 8);
  CHECK_THROWS_AS(composed.entry(8, 0), std::out_of_range);
  CHECK_THROWS_AS(composed.truncation(9), std::out_of_range);
  const TruncatedSequence big{std::vector<double>(9, 1.0), "x", false};
  CHECK_THROWS_AS(apply(composed, big), std::out_of_range);
}
