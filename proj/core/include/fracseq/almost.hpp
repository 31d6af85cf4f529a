#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracseq/sequence.hpp"

namespace fracseq {

/// Window means t(m,n) = (x_n + ... + x_{n+m}) / (m+1) over the index
/// rectangle 0 <= m <= m_max, 0 <= n <= N-m-1, backed by one pass of
/// extended-precision prefix sums so every cell costs O(1).
class MeanGrid {
 public:
  MeanGrid(const TruncatedSequence& x, std::size_t m_max);

  std::size_t m_max() const noexcept { return m_max_; }
  std::size_t sequence_length() const noexcept { return n_; }
  std::size_t row_width(std::size_t m) const { return n_ - m; }

  double t(std::size_t m, std::size_t n) const;

  struct Envelope {
    double lo, hi;
  };
  Envelope row_envelope(std::size_t m) const;
  double row_spread(std::size_t m) const;

  /// sup |t(m,n)| over every stored cell; the truncated norm estimator.
  double sup_abs() const;

 private:
  std::vector<long double> prefix_;
  std::size_t m_max_ = 0;
  std::size_t n_ = 0;
};

MeanGrid lorentz_grid(const TruncatedSequence& x, std::size_t m_max);

enum class AlmostVerdict { convergent_within_tol, not_convergent_evidence, inconclusive };
std::string_view to_string(AlmostVerdict v);

/// Finite-truncation diagnostic for the uniform-in-n limit of window means.
/// `value` is the midpoint of the top-row envelope, so a convergent verdict
/// (spread(m_max) <= tol) implies |t(m_max,n) - value| <= tol/2 for every
/// evaluated n. This is evidence, not a decision procedure: whether an
/// infinite sequence almost converges cannot be decided from a prefix.
struct AlmostLimitEstimate {
  double value = 0.0;
  std::vector<double> spread;  // spread[m], 0 <= m <= m_used
  AlmostVerdict verdict = AlmostVerdict::inconclusive;
  std::size_t m_used = 0;
  std::size_t n_range = 0;  // window positions evaluated at m_used
  double tolerance = 0.0;
};

/// Verdict rule, with kEvidenceFactor = 10 and kDecayFloor = 1/4:
///   convergent-within-tol   iff spread(m_max) <= tol;
///   not-convergent-evidence iff spread(m_max) > 10*tol and
///                                spread(m_max) >= spread(m_max/2)/4;
///   inconclusive otherwise (including a degenerate n-range).
/// Requires m_max < N/2 so the top row still ranges over at least half the
/// prefix; violating that is a size error.
AlmostLimitEstimate estimate_almost_limit(const TruncatedSequence& x, std::size_t m_max,
                                          double tol);

inline constexpr double kAlmostEvidenceFactor = 10.0;
inline constexpr double kAlmostDecayFloor = 0.25;

/// Named deterministic sequence prefixes.
///   alternating            1, -1, 1, -1, ...
///   constant(value)        value, value, ...
///   harmonic               1/(k+1)
///   zero_one_wave          0, 1, 0, 1, ...
///   miller_orhan(zeros0, ones0)
///       alternating blocks of 0s and 1s; zero-block lengths grow by a
///       factor of 100 per cycle, one-block lengths by 10; initial lengths
///       default to 1 and 1.
///   d_sequence(order)      the inverse-difference image of the 0/1 wave,
///                          whose forward transform is the wave again.
///   block(values, lengths, growth)
///       general block machinery: cycle through `values` emitting blocks of
///       the current lengths, then scale each length by its growth factor.
struct GeneratorParams {
  std::optional<double> order;
  std::optional<double> value;
  std::optional<std::size_t> zeros0;
  std::optional<std::size_t> ones0;
  std::vector<double> block_values;
  std::vector<std::size_t> block_lengths;
  std::vector<double> block_growth;
};

TruncatedSequence make_generator(const std::string& name, const GeneratorParams& params,
                                 std::size_t n);

const std::vector<std::string>& generator_names();

}  // namespace fracseq
