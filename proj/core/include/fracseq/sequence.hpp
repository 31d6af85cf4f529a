#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fracseq {

/// Finite prefix (x_0, ..., x_{N-1}) of a real sequence. `source` records
/// where it came from ("explicit", a generator label, or a transform label);
/// `approximate` is set when a row-finite matrix application had to cut an
/// infinite row tail at the window edge.
struct TruncatedSequence {
  std::vector<double> values;
  std::string source = "explicit";
  bool approximate = false;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

/// Checked constructor: N >= 1 and every entry finite.
inline TruncatedSequence make_sequence(std::vector<double> values,
                                       std::string source = "explicit") {
  if (values.empty()) {
    throw std::invalid_argument("sequence must have at least one entry");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw std::invalid_argument("sequence entry " + std::to_string(i) + " is not finite");
    }
  }
  return TruncatedSequence{std::move(values), std::move(source), false};
}

}  // namespace fracseq
