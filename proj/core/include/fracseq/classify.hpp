#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracseq/frac_coeff.hpp"
#include "fracseq/operators.hpp"

namespace fracseq {

/// The catalog of matrix-class conditions evaluated on truncations. Ids are
/// the stable labels used in reports and in the class tables.
///
///   C20  sup_n sum_k |a_nk| < inf
///   C21  lim_n a_nk = alpha_k for each fixed k
///   C22  lim_n sum_k a_nk = alpha
///   C23  lim_n sum_k |D(a_nk - alpha_k)| = 0          (D = column difference)
///   C24  the window means of column k converge uniformly in the start index
///        to alpha_k, for each fixed k
///   C25  the window means of the row sums converge uniformly
///   C26  lim_m sum_k |D(a(n,k,m) - alpha_k)| = 0 uniformly in n,
///        a(n,k,m) = mean of a_{n..n+m,k}
///   C26x lim_m sum_k |a(n,k,m) - alpha_k| = 0 uniformly in n
///   C27  lim_n a_nk = 0 for each fixed k
///   C28  lim_n sum_k |D^2 a_nk| exists        (catalogued, used by no class)
///   C29  sup_n sum_k |s(n,k)| < inf,  s(n,k) = a_0k + ... + a_nk
///   C30  the column series sum_n a_nk converge for each fixed k
///   C31  the double series sum_n sum_k a_nk converges
///   C32  lim_n sum_k |D(s(n,k) - alpha_k)| = 0
///   C33  sup_n sum_k |D a_nk| < inf
enum class ConditionId {
  C20, C21, C22, C23, C24, C25, C26, C26x, C27, C28, C29, C30, C31, C32, C33
};

std::string_view to_string(ConditionId id);
std::optional<ConditionId> condition_from_string(std::string_view s);
std::string_view condition_description(ConditionId id);
const std::vector<ConditionId>& all_conditions();

enum class Verdict { satisfied, violated, inconclusive };
std::string_view to_string(Verdict v);

/// One evaluated condition with its two-size evidence: the tracked
/// statistic at the smaller and larger truncation. A definite verdict
/// (satisfied or violated) always carries both evidence points.
struct ConditionVerdict {
  std::string id;
  Verdict verdict = Verdict::inconclusive;
  double stat_small = 0.0;
  double stat_large = 0.0;
  std::size_t size_small = 0;
  std::size_t size_large = 0;
  double tol = 0.0;
  std::optional<double> alpha;      // inferred scalar limit, when applicable
  std::vector<double> alpha_head;   // first inferred column limits, when applicable
  std::string note;
};

struct ConditionReport {
  std::string subject;
  std::string transform;  // "", "D", or "E"
  Verdict aggregate = Verdict::inconclusive;
  std::vector<ConditionVerdict> conditions;
  bool tail_truncated = false;
};

Verdict aggregate_verdicts(const std::vector<ConditionVerdict>& conditions);

enum class SpaceId { f, fdf, c, linf, bs, cs };
std::string_view to_string(SpaceId s);
std::optional<SpaceId> space_from_string(std::string_view s);

/// A (source, target) pair from the class tables. The order is required
/// exactly when fdf appears on either side.
struct SpacePair {
  SpaceId from;
  SpaceId to;
  std::optional<FracOrder> order;
};

enum class TransformKind { none, d_transform, e_transform };

/// The table row for a pair: which conditions, on which transform of the
/// matrix, and whether the fdf-source row-membership precondition applies.
struct ClassSpec {
  std::vector<ConditionId> conditions;
  TransformKind transform = TransformKind::none;
  bool fdf_beta_precondition = false;
};

/// Throws std::invalid_argument for pairs outside the tables.
ClassSpec class_conditions(const SpacePair& pair);

struct ClassifyOptions {
  std::size_t n1 = 512;
  std::size_t n2 = 1024;
  double tol = 1e-2;
  /// The fdf-source precondition runs a dual check on every matrix row in
  /// the window by default; beta_rows caps how many and beta_length how
  /// long a row prefix each check sees.
  std::size_t beta_rows = static_cast<std::size_t>(-1);
  std::size_t beta_length = 256;
};

/// Evaluates one condition on the leading n1/n2 windows of `a`.
ConditionVerdict eval_condition_detail(ConditionId id, const RowFiniteMatrix& a,
                                       std::size_t n1, std::size_t n2, double tol);
Verdict eval_condition(ConditionId id, const RowFiniteMatrix& a, std::size_t n1,
                       std::size_t n2, double tol);

/// Evaluates several conditions against one materialized window.
std::vector<ConditionVerdict> eval_conditions(const std::vector<ConditionId>& ids,
                                              const RowFiniteMatrix& a, std::size_t n1,
                                              std::size_t n2, double tol);

/// Applies the pair's transform directive, evaluates its condition set at
/// the two truncation sizes, and aggregates: all satisfied is membership
/// evidence, any violated is non-membership evidence, otherwise
/// inconclusive. fdf sources additionally run the row dual checks.
ConditionReport classify(const RowFiniteMatrix& a, const SpacePair& pair,
                         const ClassifyOptions& opts = {});

}  // namespace fracseq
