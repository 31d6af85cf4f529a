#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <fracseq/almost.hpp>
#include <fracseq/operators.hpp>
#include <fracseq/sequence.hpp>

namespace fracseq::cli {

/// A sequence description as read from a spec file: either an explicit
/// prefix or a named generator with parameters and a length.
struct SequenceSpec {
  enum class Kind { explicit_values, generator };
  Kind kind = Kind::explicit_values;
  std::vector<double> values;
  std::string name;
  GeneratorParams params;
  std::optional<std::size_t> length;
};

/// A matrix description: a named builtin with parameters, or an explicit
/// (possibly ragged) row list. Unlisted rows of an explicit matrix are zero.
struct MatrixSpec {
  enum class Kind { builtin, explicit_rows };
  Kind kind = Kind::builtin;
  BuiltinSpec builtin;
  std::vector<std::vector<double>> rows;
};

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

SequenceSpec parse_sequence_file(const std::string& path);
MatrixSpec parse_matrix_file(const std::string& path);

/// Parse from an in-memory document; `origin` names the source in errors.
SequenceSpec parse_sequence_text(const std::string& text, const std::string& origin);
MatrixSpec parse_matrix_text(const std::string& text, const std::string& origin);

/// Resolve a --input / --matrix argument: inline JSON (leading '{'), a file
/// path, or (for matrices) a bare parameterless builtin name.
SequenceSpec load_sequence_arg(const std::string& arg);
MatrixSpec load_matrix_arg(const std::string& arg);

TruncatedSequence realize(const SequenceSpec& spec,
                          std::optional<std::size_t> length_override = std::nullopt);
AnyMatrix realize(const MatrixSpec& spec);

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// The built-in consistency suite behind `verify`. Quick mode runs the
/// operator identities, the weight oracle, the derived-space witness and
/// the grid oracle; full mode adds the block witness, the class tables,
/// the dual-route corpus and the norm properties.
std::vector<VerifyCheck> run_verify_checks(bool quick);

/// Entry point shared by the binary and the tests. Exit codes: 0 on a
/// completed run (analysis verdicts live in the report, not the code),
/// 1 on domain/parse/file errors, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracseq::cli
