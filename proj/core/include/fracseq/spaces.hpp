#pragma once

#include <string_view>

#include "fracseq/almost.hpp"
#include "fracseq/frac_coeff.hpp"
#include "fracseq/sequence.hpp"

namespace fracseq {

enum class SpaceVerdict { in_fdf, in_fdf0, evidence_against, inconclusive };
std::string_view to_string(SpaceVerdict v);

/// Membership diagnostic for the order-r almost-convergence domain: the
/// input is transformed by the order-r difference triangle and the window
/// means of the image are examined. in_fdf0 is the stronger verdict
/// (limit within tol of zero); the norm estimate is the sup of |t(m,n)|
/// over the computed grid, a lower bound on the true norm.
struct FdfReport {
  FracOrder order;
  TruncatedSequence transformed;
  AlmostLimitEstimate estimate;
  double norm_estimate = 0.0;
  SpaceVerdict verdict = SpaceVerdict::inconclusive;
};

FdfReport fdf_membership(const TruncatedSequence& x, FracOrder order, std::size_t m_max,
                         double tol);

/// sup_{m<=m_max, n} |t_{mn}(difference image of x)| — monotone
/// non-decreasing in both the prefix length and m_max.
double fdf_norm(const TruncatedSequence& x, FracOrder order, std::size_t m_max);

/// The isomorphism pair between the derived space and the almost-convergent
/// space: forward = order-r difference, inverse = order-(-r) difference.
/// Round trips are identities up to floating-point accumulation.
TruncatedSequence iso_forward(const TruncatedSequence& x, FracOrder order);
TruncatedSequence iso_inverse(const TruncatedSequence& y, FracOrder order);

}  // namespace fracseq
