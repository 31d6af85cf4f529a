#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <fracseq/classify.hpp>
#include <fracseq/duality.hpp>
#include <fracseq/spaces.hpp>

namespace fracseq::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string fmt_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw parse_error(origin + ": " + what);
}

ordered_json parse_document(const std::string& text, const std::string& origin) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(origin, std::string("malformed document: ") + e.what());
  }
}

double number_field(const ordered_json& doc, const std::string& key, const std::string& origin) {
  if (!doc.at(key).is_number()) fail(origin, "field '" + key + "' must be a number");
  return doc.at(key).get<double>();
}

std::size_t size_field(const ordered_json& doc, const std::string& key,
                       const std::string& origin) {
  if (!doc.at(key).is_number_unsigned() || doc.at(key).get<std::uint64_t>() == 0) {
    fail(origin, "field '" + key + "' must be a positive integer");
  }
  return doc.at(key).get<std::size_t>();
}

std::vector<double> number_array(const ordered_json& arr, const std::string& origin,
                                 const std::string& key) {
  if (!arr.is_array()) fail(origin, "field '" + key + "' must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      fail(origin, "field '" + key + "' entry " + std::to_string(i) + " must be a number");
    }
    out.push_back(arr[i].get<double>());
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Spec parsing

SequenceSpec parse_sequence_text(const std::string& text, const std::string& origin) {
  const ordered_json doc = parse_document(text, origin);
  if (!doc.is_object() || !doc.contains("kind")) fail(origin, "expected an object with 'kind'");
  const std::string kind = doc.at("kind").get<std::string>();

  SequenceSpec spec;
  if (kind == "explicit") {
    spec.kind = SequenceSpec::Kind::explicit_values;
    if (!doc.contains("values")) fail(origin, "explicit sequence needs 'values'");
    spec.values = number_array(doc.at("values"), origin, "values");
    if (spec.values.empty()) fail(origin, "'values' must not be empty");
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
      if (!std::isfinite(spec.values[i])) {
        fail(origin, "'values' entry " + std::to_string(i) + " is not finite");
      }
    }
    return spec;
  }
  if (kind == "generator") {
    spec.kind = SequenceSpec::Kind::generator;
    if (!doc.contains("name")) fail(origin, "generator sequence needs 'name'");
    spec.name = doc.at("name").get<std::string>();
    if (doc.contains("length")) spec.length = size_field(doc, "length", origin);
    if (doc.contains("order")) spec.params.order = number_field(doc, "order", origin);
    if (doc.contains("value")) spec.params.value = number_field(doc, "value", origin);
    if (doc.contains("zeros0")) spec.params.zeros0 = size_field(doc, "zeros0", origin);
    if (doc.contains("ones0")) spec.params.ones0 = size_field(doc, "ones0", origin);
    if (doc.contains("values")) {
      spec.params.block_values = number_array(doc.at("values"), origin, "values");
    }
    if (doc.contains("lengths")) {
      for (double v : number_array(doc.at("lengths"), origin, "lengths")) {
        if (v < 1.0 || v != std::floor(v)) fail(origin, "'lengths' must be positive integers");
        spec.params.block_lengths.push_back(static_cast<std::size_t>(v));
      }
    }
    if (doc.contains("growth")) {
      spec.params.block_growth = number_array(doc.at("growth"), origin, "growth");
    }
    bool known = false;
    for (const std::string& g : generator_names()) known = known || g == spec.name;
    if (!known) fail(origin, "unknown generator '" + spec.name + "'");
    return spec;
  }
  fail(origin, "unknown sequence kind '" + kind + "' (expected explicit or generator)");
}

MatrixSpec parse_matrix_text(const std::string& text, const std::string& origin) {
  const ordered_json doc = parse_document(text, origin);
  if (!doc.is_object() || !doc.contains("kind")) fail(origin, "expected an object with 'kind'");
  const std::string kind = doc.at("kind").get<std::string>();

  MatrixSpec spec;
  if (kind == "builtin") {
    spec.kind = MatrixSpec::Kind::builtin;
    if (!doc.contains("name")) fail(origin, "builtin matrix needs 'name'");
    spec.builtin.name = doc.at("name").get<std::string>();
    if (doc.contains("r")) {
      spec.builtin.param = number_field(doc, "r", origin);
    } else if (doc.contains("order")) {
      spec.builtin.param = number_field(doc, "order", origin);
    }
    if (doc.contains("weights")) {
      spec.builtin.weights = number_array(doc.at("weights"), origin, "weights");
    }
    return spec;
  }
  if (kind == "explicit") {
    spec.kind = MatrixSpec::Kind::explicit_rows;
    if (!doc.contains("rows") || !doc.at("rows").is_array() || doc.at("rows").empty()) {
      fail(origin, "explicit matrix needs a nonempty 'rows' array");
    }
    for (std::size_t i = 0; i < doc.at("rows").size(); ++i) {
      spec.rows.push_back(
          number_array(doc.at("rows")[i], origin, "rows[" + std::to_string(i) + "]"));
    }
    return spec;
  }
  fail(origin, "unknown matrix kind '" + kind + "' (expected builtin or explicit)");
}

SequenceSpec parse_sequence_file(const std::string& path) {
  return parse_sequence_text(read_file(path), path);
}

MatrixSpec parse_matrix_file(const std::string& path) {
  return parse_matrix_text(read_file(path), path);
}

SequenceSpec load_sequence_arg(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return parse_sequence_text(arg, "<inline>");
  if (std::filesystem::exists(arg)) return parse_sequence_file(arg);
  throw parse_error("sequence spec '" + arg +
                    "': no such file (inline JSON must start with '{')");
}

MatrixSpec load_matrix_arg(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return parse_matrix_text(arg, "<inline>");
  if (std::filesystem::exists(arg)) return parse_matrix_file(arg);
  if (arg == "identity" || arg == "cesaro") {
    MatrixSpec spec;
    spec.kind = MatrixSpec::Kind::builtin;
    spec.builtin.name = arg;
    return spec;
  }
  throw parse_error("matrix spec '" + arg +
                    "': no such file (inline JSON must start with '{'; bare names are "
                    "accepted for identity and cesaro)");
}

// ---------------------------------------------------------------------------
// Realization

TruncatedSequence realize(const SequenceSpec& spec, std::optional<std::size_t> length_override) {
  if (spec.kind == SequenceSpec::Kind::explicit_values) {
    std::vector<double> values = spec.values;
    if (length_override) {
      if (*length_override > values.size()) {
        throw parse_error("requested prefix length " + std::to_string(*length_override) +
                          " exceeds the " + std::to_string(values.size()) +
                          " explicit values");
      }
      values.resize(*length_override);
    }
    return make_sequence(std::move(values));
  }
  std::optional<std::size_t> n = length_override ? length_override : spec.length;
  if (!n) throw parse_error("generator sequence '" + spec.name + "' needs a length");
  return make_generator(spec.name, spec.params, *n);
}

AnyMatrix realize(const MatrixSpec& spec) {
  if (spec.kind == MatrixSpec::Kind::builtin) return build_builtin(spec.builtin);
  auto rows = std::make_shared<const std::vector<std::vector<double>>>(spec.rows);
  return RowFiniteMatrix::from_entries(
      "explicit",
      [rows](std::size_t n, std::size_t k) -> double {
        if (n >= rows->size() || k >= (*rows)[n].size()) return 0.0;
        return (*rows)[n][k];
      },
      [rows](std::size_t n) -> std::optional<std::size_t> {
        return n < rows->size() ? (*rows)[n].size() : 0;
      });
}

// ---------------------------------------------------------------------------
// Report rendering

namespace {

std::string classify_aggregate_label(Verdict v) {
  switch (v) {
    case Verdict::satisfied: return "membership-evidence";
    case Verdict::violated: return "non-membership-evidence";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

ordered_json condition_to_json(const ConditionVerdict& cv) {
  ordered_json j;
  j["id"] = cv.id;
  j["verdict"] = std::string(to_string(cv.verdict));
  j["stat_small"] = cv.stat_small;
  j["stat_large"] = cv.stat_large;
  j["size_small"] = cv.size_small;
  j["size_large"] = cv.size_large;
  j["tol"] = cv.tol;
  if (cv.alpha) j["alpha"] = *cv.alpha;
  if (!cv.alpha_head.empty()) j["alpha_head"] = cv.alpha_head;
  j["note"] = cv.note;
  return j;
}

void print_condition(std::ostream& out, const ConditionVerdict& cv) {
  out << "  " << std::left << std::setw(14) << cv.id << std::setw(13)
      << to_string(cv.verdict) << "stat " << fmt_double(cv.stat_small) << " -> "
      << fmt_double(cv.stat_large) << "  (" << cv.note << ")\n";
}

ordered_json report_to_json(const ConditionReport& r) {
  ordered_json j;
  j["subject"] = r.subject;
  if (!r.transform.empty()) j["transform"] = r.transform;
  j["aggregate"] = std::string(to_string(r.aggregate));
  j["tail_truncated"] = r.tail_truncated;
  j["conditions"] = ordered_json::array();
  for (const ConditionVerdict& cv : r.conditions) j["conditions"].push_back(condition_to_json(cv));
  return j;
}

ordered_json estimate_to_json(const AlmostLimitEstimate& est) {
  ordered_json j;
  j["value"] = est.value;
  j["verdict"] = std::string(to_string(est.verdict));
  j["m_used"] = est.m_used;
  j["n_range"] = est.n_range;
  j["tol"] = est.tolerance;
  j["spread_at_m_used"] = est.spread[est.m_used];
  ordered_json samples = ordered_json::array();
  for (std::size_t m = est.m_used; m > 0; m /= 2) {
    samples.push_back(ordered_json::array({m, est.spread[m]}));
    if (m == 1) break;
  }
  samples.push_back(ordered_json::array({0, est.spread[0]}));
  j["spread_samples"] = samples;
  return j;
}

void print_estimate(std::ostream& out, const AlmostLimitEstimate& est) {
  out << "value: " << fmt_double(est.value) << "\n"
      << "verdict: " << to_string(est.verdict) << "\n"
      << "m_used: " << est.m_used << "\n"
      << "n_range: " << est.n_range << "\n"
      << "tol: " << fmt_double(est.tolerance) << "\n"
      << "spread at m_used: " << fmt_double(est.spread[est.m_used]) << "\n";
  out << "spread samples:";
  for (std::size_t m = est.m_used; m > 0; m /= 2) {
    out << " [" << m << "] " << fmt_double(est.spread[m]);
    if (m == 1) break;
  }
  out << " [0] " << fmt_double(est.spread[0]) << "\n";
}

double env_tol_default(double fallback) {
  if (const char* env = std::getenv("FRACSEQ_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && std::isfinite(v) && v > 0.0) return v;
  }
  return fallback;
}

std::string sequence_values_line(const std::vector<double>& values) {
  std::string line;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) line += ' ';
    line += fmt_double(values[i]);
  }
  return line;
}

}  // namespace

// ---------------------------------------------------------------------------
// Subcommands

namespace {

int cmd_weights(double order, std::size_t count, bool json, std::ostream& out) {
  const WeightVector w = weights(FracOrder(order), count);
  if (json) {
    ordered_json j;
    j["command"] = "weights";
    j["order"] = order;
    j["count"] = count;
    j["weights"] = w.weights;
    out << j.dump(2) << "\n";
  } else {
    out << sequence_values_line(w.weights) << "\n";
  }
  return 0;
}

int cmd_apply(const std::string& matrix_arg, const std::string& input_arg,
              std::optional<std::size_t> trunc, bool json, std::ostream& out) {
  const AnyMatrix m = realize(load_matrix_arg(matrix_arg));
  const TruncatedSequence x = realize(load_sequence_arg(input_arg), trunc);
  const TruncatedSequence y = apply(m, x);
  if (json) {
    ordered_json j;
    j["command"] = "apply";
    j["matrix"] = std::visit([](const auto& mm) { return mm.name(); }, m);
    j["input"] = x.source;
    j["n"] = y.size();
    j["approximate"] = y.approximate;
    j["output"] = ordered_json{{"kind", "explicit"}, {"values", y.values}};
    out << j.dump(2) << "\n";
  } else {
    out << sequence_values_line(y.values) << "\n";
    if (y.approximate) out << "note: tail truncated at the window edge; values approximate\n";
  }
  return 0;
}

int cmd_almost(const std::string& input_arg, std::size_t m_max, double tol, bool json,
               std::ostream& out) {
  const TruncatedSequence x = realize(load_sequence_arg(input_arg));
  const AlmostLimitEstimate est = estimate_almost_limit(x, m_max, tol);
  if (json) {
    ordered_json j;
    j["command"] = "almost";
    j["input"] = x.source;
    j["n"] = x.size();
    j["estimate"] = estimate_to_json(est);
    out << j.dump(2) << "\n";
  } else {
    out << "command: almost\ninput: " << x.source << "\nn: " << x.size() << "\n";
    print_estimate(out, est);
  }
  return 0;
}

int cmd_member(double order, const std::string& input_arg, std::size_t m_max, double tol,
               bool json, std::ostream& out) {
  const TruncatedSequence x = realize(load_sequence_arg(input_arg));
  const FdfReport report = fdf_membership(x, FracOrder(order), m_max, tol);
  if (json) {
    ordered_json j;
    j["command"] = "member";
    j["order"] = order;
    j["input"] = x.source;
    j["n"] = x.size();
    j["verdict"] = std::string(to_string(report.verdict));
    j["norm_estimate"] = report.norm_estimate;
    j["estimate"] = estimate_to_json(report.estimate);
    out << j.dump(2) << "\n";
  } else {
    out << "command: member\norder: " << fmt_double(order) << "\ninput: " << x.source
        << "\nn: " << x.size() << "\nverdict: " << to_string(report.verdict)
        << "\nnorm estimate (truncation lower bound): " << fmt_double(report.norm_estimate)
        << "\n";
    print_estimate(out, report.estimate);
  }
  return 0;
}

int cmd_dual(const std::string& kind_str, double order, const std::string& input_arg, double tol,
             bool json, std::ostream& out) {
  const DualKind kind = (kind_str == "beta") ? DualKind::beta : DualKind::gamma;
  const TruncatedSequence a = realize(load_sequence_arg(input_arg));
  const DualReport report = dual_check(a, FracOrder(order), kind, tol);
  if (json) {
    ordered_json j;
    j["command"] = "dual";
    j["kind"] = std::string(to_string(kind));
    j["order"] = order;
    j["input"] = a.source;
    j["n"] = a.size();
    j["route_v"] = report_to_json(report.route_v);
    j["route_direct"] = report_to_json(report.route_direct);
    if (report.agreement) {
      j["agreement"] = *report.agreement;
    } else {
      j["agreement"] = nullptr;
    }
    out << j.dump(2) << "\n";
  } else {
    out << "command: dual\nkind: " << to_string(kind) << "\norder: " << fmt_double(order)
        << "\ninput: " << a.source << "\nn: " << a.size() << "\n";
    out << "route V (" << report.route_v.subject << "): " << to_string(report.route_v.aggregate)
        << "\n";
    for (const auto& cv : report.route_v.conditions) print_condition(out, cv);
    out << "route direct (" << report.route_direct.subject
        << "): " << to_string(report.route_direct.aggregate) << "\n";
    for (const auto& cv : report.route_direct.conditions) print_condition(out, cv);
    out << "agreement: "
        << (report.agreement ? (*report.agreement ? "true" : "false") : "non-binding") << "\n";
  }
  return 0;
}

int cmd_classify(const std::string& from_str, const std::string& to_str,
                 const std::string& matrix_arg, std::optional<double> order, std::size_t n1,
                 std::size_t n2, double tol, bool json, std::ostream& out) {
  const std::optional<SpaceId> from = space_from_string(from_str);
  const std::optional<SpaceId> to = space_from_string(to_str);
  if (!from || !to) {
    throw parse_error("unknown space '" + (!from ? from_str : to_str) +
                      "' (known: f, fdf, c, linf, bs, cs)");
  }
  SpacePair pair{*from, *to, std::nullopt};
  if (order) pair.order = FracOrder(*order);
  const RowFiniteMatrix a = as_row_finite(realize(load_matrix_arg(matrix_arg)));
  ClassifyOptions opts;
  opts.n1 = n1;
  opts.n2 = n2;
  opts.tol = tol;
  const ConditionReport report = classify(a, pair, opts);
  if (json) {
    ordered_json j;
    j["command"] = "classify";
    j["from"] = std::string(to_string(*from));
    j["to"] = std::string(to_string(*to));
    if (order) j["order"] = *order;
    j["n1"] = n1;
    j["n2"] = n2;
    j["tol"] = tol;
    j["report"] = report_to_json(report);
    j["classification"] = classify_aggregate_label(report.aggregate);
    out << j.dump(2) << "\n";
  } else {
    out << "command: classify\npair: " << to_string(*from) << " -> " << to_string(*to) << "\n";
    if (order) out << "order: " << fmt_double(*order) << "\n";
    out << "matrix: " << report.subject << "\n";
    if (!report.transform.empty()) out << "transform: " << report.transform << "\n";
    out << "windows: " << n1 << " / " << n2 << "\ntol: " << fmt_double(tol) << "\n";
    if (report.tail_truncated) out << "note: window tail truncated; evidence approximate\n";
    out << "conditions:\n";
    for (const auto& cv : report.conditions) print_condition(out, cv);
    out << "classification: " << classify_aggregate_label(report.aggregate) << "\n";
  }
  return 0;
}

int cmd_verify(bool quick, bool json, std::ostream& out) {
  const std::vector<VerifyCheck> checks = run_verify_checks(quick);
  bool all = true;
  for (const VerifyCheck& c : checks) all = all && c.pass;
  if (json) {
    ordered_json j;
    j["command"] = "verify";
    j["mode"] = quick ? "quick" : "full";
    j["checks"] = ordered_json::array();
    for (const VerifyCheck& c : checks) {
      j["checks"].push_back(
          ordered_json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    j["all_passed"] = all;
    out << j.dump(2) << "\n";
  } else {
    out << "verify (" << (quick ? "quick" : "full") << ")\n";
    for (const VerifyCheck& c : checks) {
      out << "  " << (c.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(18) << c.name
          << c.detail << "\n";
    }
    out << (all ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
  }
  return 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// Argument wiring

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fractional-order difference operators, almost-convergence diagnostics and "
               "summability matrix classification"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "emit machine-readable JSON reports");

  // weights
  double w_order = 0.0;
  std::size_t w_count = 0;
  auto* weights_cmd = app.add_subcommand("weights", "kernel weights of the difference operator");
  weights_cmd->add_option("--order", w_order, "difference order")->required();
  weights_cmd->add_option("--count", w_count, "number of weights")->required()
      ->check(CLI::PositiveNumber);

  // apply
  std::string a_matrix, a_input;
  std::size_t a_trunc = 0;
  auto* apply_cmd = app.add_subcommand("apply", "apply a matrix to a sequence prefix");
  apply_cmd->add_option("--matrix", a_matrix, "matrix spec (file, inline JSON, or bare name)")
      ->required();
  apply_cmd->add_option("--input", a_input, "sequence spec (file or inline JSON)")->required();
  apply_cmd->add_option("--trunc", a_trunc, "truncate/generate the input at this length")
      ->check(CLI::PositiveNumber);

  // almost
  std::string al_input;
  std::size_t al_mmax = 0;
  double al_tol = 0.0;
  auto* almost_cmd = app.add_subcommand("almost", "almost-limit estimate via window means");
  almost_cmd->add_option("--input", al_input, "sequence spec")->required();
  almost_cmd->add_option("--mmax", al_mmax, "largest window-mean order")->required()
      ->check(CLI::PositiveNumber);
  almost_cmd->add_option("--tol", al_tol, "uniformity tolerance (default 1e-3)");

  // member
  std::string me_input;
  double me_order = 0.0, me_tol = 0.0;
  std::size_t me_mmax = 0;
  auto* member_cmd =
      app.add_subcommand("member", "membership diagnostic for the derived spaces");
  member_cmd->add_option("--order", me_order, "difference order")->required();
  member_cmd->add_option("--input", me_input, "sequence spec")->required();
  member_cmd->add_option("--mmax", me_mmax, "largest window-mean order")->required()
      ->check(CLI::PositiveNumber);
  member_cmd->add_option("--tol", me_tol, "tolerance (default 1e-3)");

  // dual
  std::string d_kind, d_input;
  double d_order = 0.0, d_tol = 0.0;
  auto* dual_cmd = app.add_subcommand("dual", "beta/gamma dual membership by two routes");
  dual_cmd->add_option("--kind", d_kind, "beta or gamma")->required()
      ->check(CLI::IsMember({"beta", "gamma"}));
  dual_cmd->add_option("--order", d_order, "difference order")->required();
  dual_cmd->add_option("--input", d_input, "sequence spec")->required();
  dual_cmd->add_option("--tol", d_tol, "tolerance (default 1e-2)");

  // classify
  std::string c_from, c_to, c_matrix;
  double c_order = 0.0, c_tol = 0.0;
  std::size_t c_n1 = 512, c_n2 = 1024;
  auto* classify_cmd =
      app.add_subcommand("classify", "matrix class membership evidence from the tables");
  classify_cmd->add_option("--from", c_from, "source space (f, fdf, c, linf, bs, cs)")
      ->required();
  classify_cmd->add_option("--to", c_to, "target space")->required();
  classify_cmd->add_option("--matrix", c_matrix, "matrix spec")->required();
  auto* c_order_opt = classify_cmd->add_option("--order", c_order,
                                               "difference order (required when fdf appears)");
  classify_cmd->add_option("--n1", c_n1, "smaller truncation (default 512)")
      ->check(CLI::PositiveNumber);
  classify_cmd->add_option("--n2", c_n2, "larger truncation (default 1024)")
      ->check(CLI::PositiveNumber);
  classify_cmd->add_option("--tol", c_tol, "tolerance (default 1e-2)");

  // verify
  bool v_quick = false;
  auto* verify_cmd = app.add_subcommand("verify", "run the built-in consistency suite");
  verify_cmd->add_flag("--quick", v_quick, "run the quick subset");

  std::vector<const char*> argv;
  argv.push_back("fracseq");
  for (const std::string& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    // CLI11 prints help requests to out and errors to err.
    std::ostringstream msg;
    const int code = app.exit(e, out, msg);
    if (!msg.str().empty()) err << msg.str();
    return code == 0 ? 0 : 2;
  }

  try {
    if (weights_cmd->parsed()) return cmd_weights(w_order, w_count, json, out);
    if (apply_cmd->parsed()) {
      return cmd_apply(a_matrix, a_input,
                       apply_cmd->count("--trunc") ? std::optional<std::size_t>(a_trunc)
                                                   : std::nullopt,
                       json, out);
    }
    if (almost_cmd->parsed()) {
      const double tol = almost_cmd->count("--tol") ? al_tol : env_tol_default(1e-3);
      return cmd_almost(al_input, al_mmax, tol, json, out);
    }
    if (member_cmd->parsed()) {
      const double tol = member_cmd->count("--tol") ? me_tol : env_tol_default(1e-3);
      return cmd_member(me_order, me_input, me_mmax, tol, json, out);
    }
    if (dual_cmd->parsed()) {
      const double tol = dual_cmd->count("--tol") ? d_tol : env_tol_default(1e-2);
      return cmd_dual(d_kind, d_order, d_input, tol, json, out);
    }
    if (classify_cmd->parsed()) {
      const double tol = classify_cmd->count("--tol") ? c_tol : env_tol_default(1e-2);
      return cmd_classify(c_from, c_to, c_matrix,
                          c_order_opt->count() ? std::optional<double>(c_order) : std::nullopt,
                          c_n1, c_n2, tol, json, out);
    }
    if (verify_cmd->parsed()) return cmd_verify(v_quick, json, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace fracseq::cli
