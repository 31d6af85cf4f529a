#include "fracseq/spaces.hpp"

#include <cmath>

#include "fracseq/operators.hpp"

namespace fracseq {

std::string_view to_string(SpaceVerdict v) {
  switch (v) {
    case SpaceVerdict::in_fdf: return "in-fdf";
    case SpaceVerdict::in_fdf0: return "in-fdf0";
    case SpaceVerdict::evidence_against: return "evidence-against";
    case SpaceVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

FdfReport fdf_membership(const TruncatedSequence& x, FracOrder order, std::size_t m_max,
                         double tol) {
  TruncatedSequence transformed = apply(build_frac_delta(order), x);
  AlmostLimitEstimate estimate = estimate_almost_limit(transformed, m_max, tol);
  const double norm = MeanGrid(transformed, m_max).sup_abs();

  SpaceVerdict verdict = SpaceVerdict::inconclusive;
  switch (estimate.verdict) {
    case AlmostVerdict::convergent_within_tol:
      verdict = (std::abs(estimate.value) <= tol) ? SpaceVerdict::in_fdf0 : SpaceVerdict::in_fdf;
      break;
    case AlmostVerdict::not_convergent_evidence:
      verdict = SpaceVerdict::evidence_against;
      break;
    case AlmostVerdict::inconclusive:
      verdict = SpaceVerdict::inconclusive;
      break;
  }
  return FdfReport{order, std::move(transformed), std::move(estimate), norm, verdict};
}

double fdf_norm(const TruncatedSequence& x, FracOrder order, std::size_t m_max) {
  const TruncatedSequence transformed = apply(build_frac_delta(order), x);
  return MeanGrid(transformed, m_max).sup_abs();
}

TruncatedSequence iso_forward(const TruncatedSequence& x, FracOrder order) {
  return apply(build_frac_delta(order), x);
}

TruncatedSequence iso_inverse(const TruncatedSequence& y, FracOrder order) {
  return apply(build_frac_delta_inverse(order), y);
}

}  // namespace fracseq
