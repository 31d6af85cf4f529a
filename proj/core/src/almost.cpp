#include "fracseq/almost.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracseq/operators.hpp"

namespace fracseq {

MeanGrid::MeanGrid(const TruncatedSequence& x, std::size_t m_max)
    : m_max_(m_max), n_(x.size()) {
  if (m_max >= n_) {
    throw std::invalid_argument("mean grid: m_max " + std::to_string(m_max) +
                                " must be smaller than the sequence length " +
                                std::to_string(n_));
  }
  prefix_.resize(n_ + 1);
  prefix_[0] = 0.0L;
  for (std::size_t i = 0; i < n_; ++i) prefix_[i + 1] = prefix_[i] + x.values[i];
}

double MeanGrid::t(std::size_t m, std::size_t n) const {
  if (m > m_max_ || n + m >= n_) {
    throw std::out_of_range("mean grid: cell (" + std::to_string(m) + "," + std::to_string(n) +
                            ") outside the stored rectangle");
  }
  return static_cast<double>((prefix_[n + m + 1] - prefix_[n]) /
                             (static_cast<long double>(m) + 1.0L));
}

MeanGrid::Envelope MeanGrid::row_envelope(std::size_t m) const {
  if (m > m_max_) {
    throw std::out_of_range("mean grid: row " + std::to_string(m) + " beyond m_max");
  }
  const long double div = static_cast<long double>(m) + 1.0L;
  long double lo = prefix_[m + 1] - prefix_[0], hi = lo;
  for (std::size_t n = 1; n + m < n_; ++n) {
    const long double s = prefix_[n + m + 1] - prefix_[n];
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return Envelope{static_cast<double>(lo / div), static_cast<double>(hi / div)};
}

double MeanGrid::row_spread(std::size_t m) const {
  const Envelope e = row_envelope(m);
  return e.hi - e.lo;
}

double MeanGrid::sup_abs() const {
  double sup = 0.0;
  for (std::size_t m = 0; m <= m_max_; ++m) {
    const Envelope e = row_envelope(m);
    sup = std::max({sup, std::abs(e.lo), std::abs(e.hi)});
  }
  return sup;
}

MeanGrid lorentz_grid(const TruncatedSequence& x, std::size_t m_max) {
  return MeanGrid(x, m_max);
}

std::string_view to_string(AlmostVerdict v) {
  switch (v) {
    case AlmostVerdict::convergent_within_tol: return "convergent-within-tol";
    case AlmostVerdict::not_convergent_evidence: return "not-convergent-evidence";
    case AlmostVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

AlmostLimitEstimate estimate_almost_limit(const TruncatedSequence& x, std::size_t m_max,
                                          double tol) {
  const std::size_t n = x.size();
  if (2 * m_max >= n) {
    throw std::invalid_argument("estimate_almost_limit: m_max " + std::to_string(m_max) +
                                " must be below half the prefix length " + std::to_string(n));
  }
  const MeanGrid grid(x, m_max);

  AlmostLimitEstimate est;
  est.m_used = m_max;
  est.n_range = n - m_max;
  est.tolerance = tol;
  est.spread.resize(m_max + 1);
  for (std::size_t m = 0; m <= m_max; ++m) est.spread[m] = grid.row_spread(m);

  const MeanGrid::Envelope top = grid.row_envelope(m_max);
  est.value = 0.5 * (top.lo + top.hi);

  const double top_spread = est.spread[m_max];
  if (est.n_range < 2) {
    est.verdict = AlmostVerdict::inconclusive;
  } else if (top_spread <= tol) {
    est.verdict = AlmostVerdict::convergent_within_tol;
  } else if (m_max >= 1 && top_spread > kAlmostEvidenceFactor * tol &&
             top_spread >= kAlmostDecayFloor * est.spread[m_max / 2]) {
    est.verdict = AlmostVerdict::not_convergent_evidence;
  } else {
    est.verdict = AlmostVerdict::inconclusive;
  }
  return est;
}

// ---------------------------------------------------------------------------
// Generators

namespace {

TruncatedSequence block_sequence(std::vector<double> values, std::vector<std::size_t> lengths,
                                 std::vector<double> growth, std::size_t n,
                                 std::string label) {
  if (values.empty() || values.size() != lengths.size()) {
    throw std::invalid_argument("block generator: values and lengths must match and be nonempty");
  }
  if (growth.empty()) growth.assign(values.size(), 1.0);
  if (growth.size() != values.size()) {
    throw std::invalid_argument("block generator: growth factors must match values");
  }
  for (double g : growth) {
    if (!(g >= 1.0)) throw std::invalid_argument("block generator: growth factors must be >= 1");
  }
  for (std::size_t len : lengths) {
    if (len == 0) throw std::invalid_argument("block generator: block lengths must be positive");
  }
  std::vector<double> out;
  out.reserve(n);
  std::vector<double> cur(lengths.begin(), lengths.end());
  while (out.size() < n) {
    for (std::size_t b = 0; b < values.size() && out.size() < n; ++b) {
      const std::size_t len = static_cast<std::size_t>(std::llround(cur[b]));
      for (std::size_t i = 0; i < len && out.size() < n; ++i) out.push_back(values[b]);
    }
    for (std::size_t b = 0; b < values.size(); ++b) cur[b] *= growth[b];
  }
  return TruncatedSequence{std::move(out), std::move(label), false};
}

}  // namespace

TruncatedSequence make_generator(const std::string& name, const GeneratorParams& params,
                                 std::size_t n) {
  if (n == 0) throw std::invalid_argument("generator length must be at least 1");

  if (name == "alternating") {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = (k % 2 == 0) ? 1.0 : -1.0;
    return TruncatedSequence{std::move(v), "alternating", false};
  }
  if (name == "constant") {
    const double c = params.value.value_or(1.0);
    if (!std::isfinite(c)) throw std::invalid_argument("constant generator: value must be finite");
    return TruncatedSequence{std::vector<double>(n, c),
                             "constant(" + std::to_string(c) + ")", false};
  }
  if (name == "harmonic") {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = 1.0 / (static_cast<double>(k) + 1.0);
    return TruncatedSequence{std::move(v), "harmonic", false};
  }
  if (name == "zero_one_wave") {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = (k % 2 == 0) ? 0.0 : 1.0;
    return TruncatedSequence{std::move(v), "zero_one_wave", false};
  }
  if (name == "miller_orhan") {
    const std::size_t z0 = params.zeros0.value_or(1);
    const std::size_t o0 = params.ones0.value_or(1);
    return block_sequence({0.0, 1.0}, {z0, o0}, {100.0, 10.0}, n,
                          "miller_orhan(zeros0=" + std::to_string(z0) +
                              ",ones0=" + std::to_string(o0) + ")");
  }
  if (name == "d_sequence") {
    if (!params.order) throw std::invalid_argument("d_sequence generator requires an order");
    const FracOrder order(*params.order);
    TruncatedSequence wave = make_generator("zero_one_wave", {}, n);
    TruncatedSequence d = apply(build_frac_delta_inverse(order), wave);
    d.source = "d_sequence(order=" + std::to_string(order.value()) + ")";
    return d;
  }
  if (name == "block") {
    return block_sequence(params.block_values, params.block_lengths, params.block_growth, n,
                          "block");
  }
  std::string known;
  for (const std::string& g : generator_names()) {
    if (!known.empty()) known += ", ";
    known += g;
  }
  throw std::invalid_argument("unknown generator '" + name + "' (known: " + known + ")");
}

const std::vector<std::string>& generator_names() {
  static const std::vector<std::string> names = {
      "alternating", "constant", "harmonic", "zero_one_wave",
      "miller_orhan", "d_sequence", "block"};
  return names;
}

}  // namespace fracseq
