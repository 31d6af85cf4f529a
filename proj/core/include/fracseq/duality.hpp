#pragma once

#include <optional>
#include <string_view>

#include "fracseq/classify.hpp"
#include "fracseq/frac_coeff.hpp"
#include "fracseq/operators.hpp"
#include "fracseq/sequence.hpp"

namespace fracseq {

enum class DualKind { beta, gamma };
std::string_view to_string(DualKind k);

/// u_k = a_k * (w_0(-r) + ... + w_k(-r)): the input scaled componentwise by
/// the cumulative inverse weights.
TruncatedSequence u_transform(const TruncatedSequence& a, FracOrder order);

/// The pairing triangle built from u: difference entries u_k - u_{k+1}
/// strictly below the diagonal, u_n on the diagonal, zero above. Windowed
/// to the input length.
TriangularOperator build_v(const TruncatedSequence& a, FracOrder order);

/// Dual membership check by two independent routes.
///   route_v:      the matrix-class conditions for (f:c) (beta) or
///                 (f:linf) (gamma) evaluated on the pairing triangle;
///   route_direct: tail diagnostics on u itself — absolute differences
///                 summable (partial sums stabilize over the last quarter),
///                 plus convergence (beta) or boundedness (gamma) of u.
/// `agreement` compares the two aggregate verdicts and is empty whenever
/// either route is inconclusive.
struct DualReport {
  DualKind kind = DualKind::beta;
  double order = 0.0;
  TruncatedSequence u;
  ConditionReport route_v;
  ConditionReport route_direct;
  std::optional<bool> agreement;
};

DualReport dual_check(const TruncatedSequence& a, FracOrder order, DualKind kind, double tol);

}  // namespace fracseq
