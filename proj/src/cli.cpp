#include "pollardkit/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "pollardkit/bounds.hpp"
#include "pollardkit/certificate.hpp"
#include "pollardkit/error.hpp"
#include "pollardkit/io.hpp"
#include "pollardkit/lattice.hpp"
#include "pollardkit/search.hpp"
#include "pollardkit/setops.hpp"
#include "pollardkit/spectrum.hpp"

namespace pollard {

namespace {

struct Options {
  std::string group;
  std::string a;
  std::string b;
  std::size_t t = 0;
  std::string format = "text";
  std::string out;
  std::string bounds = "all";
  std::string in;
  std::string config;
  std::string mode;
  std::string summary;
  std::size_t shards = 0;
};

template <class T>
std::string join(const std::vector<T>& items, const char* sep = ",") {
  std::ostringstream s;
  for (std::size_t i = 0; i < items.size(); ++i) s << (i ? sep : "") << items[i];
  return s.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw InvalidArgument("'" + origin + "' is not valid JSON: " + e.what());
  }
}

// Writes to --out when given, else to the provided stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InvalidArgument("cannot write '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::string opt_text(const std::optional<std::int64_t>& v) {
  return v ? std::to_string(*v) : "n/a";
}

void print_report_text(std::ostream& os, const BoundReport& r) {
  auto row = [&](const char* label, const std::string& value) {
    os << std::left << std::setw(14) << label << value << '\n';
  };
  row("group", r.group().literal());
  row("A", r.set_a.literal());
  row("B", r.set_b.literal());
  row("t", std::to_string(r.t));
  if (r.normalization_shift) {
    row("shift", "a=" + std::to_string(r.normalization_shift->a.index) +
                     " b=" + std::to_string(r.normalization_shift->b.index) +
                     (r.operands_swapped ? " (operands swapped)" : ""));
  }
  row("lhs", std::to_string(r.lhs));
  row("alpha", opt_text(r.alpha));
  row("w", opt_text(r.w));
  row("mu", opt_text(r.mu));
  if (r.rhs_main) {
    row("main", "rhs " + std::to_string(*r.rhs_main) + "  slack " +
                    std::to_string(*r.slack_main) + "  strict " +
                    std::string(to_string(r.strict_case)));
  }
  if (r.rhs_green_ruzsa) {
    row("green_ruzsa", "rhs " + std::to_string(*r.rhs_green_ruzsa) + "  slack " +
                           std::to_string(*r.slack_green_ruzsa));
  }
  if (r.rhs_pollard) {
    row("pollard", "rhs " + std::to_string(*r.rhs_pollard) + "  slack " +
                       std::to_string(*r.slack_pollard));
  }
  if (r.grynkiewicz) {
    const auto& g = *r.grynkiewicz;
    row("grynkiewicz", "lhs " + std::to_string(g.lhs) + "  rhs " + std::to_string(g.rhs) +
                           "  slack " + std::to_string(g.slack) + "  |H| " +
                           std::to_string(g.period_size) + (g.n2_empty ? "  (N_2 empty)" : ""));
  }
  if (r.kneser) {
    const auto& k = *r.kneser;
    row("kneser", !k.applicable ? "not applicable  |H| " + std::to_string(k.period_size)
                                : std::string(k.holds() ? "holds" : "FAILS") + "  |H| " +
                                      std::to_string(k.period_size));
  }
  if (r.dicks_ivanov) {
    row("dicks_ivanov", "lhs " + std::to_string(r.dicks_ivanov->lhs) + "  rhs " +
                            std::to_string(r.dicks_ivanov->rhs) + "  holding " +
                            std::string(r.dicks_ivanov->holding()));
  }
  row("violations", r.violations.empty() ? "none" : join(r.violations));
}

int run_spectrum(const Options& o, std::ostream& out) {
  const auto g = parse_group_literal(o.group);
  const auto a = parse_set_literal(g, o.a);
  const auto b = parse_set_literal(g, o.b);
  const auto s = compute_spectrum(a, b);
  Sink sink(o.out, out);
  if (o.format == "json") {
    *sink << to_json(s).dump() << '\n';
    return kExitOk;
  }
  std::vector<std::size_t> sizes;
  for (std::size_t t = 1; t <= std::min(a.size(), b.size()); ++t) sizes.push_back(s.n_t_size(t));
  *sink << "group " << g.literal() << "  A = " << a.literal() << "  B = " << b.literal() << '\n'
        << "r     = " << join(s.r()) << '\n'
        << "|N_t| = " << join(sizes) << '\n'
        << "S_t   = " << join(s.partial_sums()) << '\n';
  return kExitOk;
}

int run_check(const Options& o, std::ostream& out) {
  const auto g = parse_group_literal(o.group);
  const auto a = parse_set_literal(g, o.a);
  const auto b = parse_set_literal(g, o.b);
  const auto selection = parse_bound_selection(o.bounds);
  const auto lattice = subgroup_lattice(g);
  const auto report = evaluate(a, b, o.t, lattice, selection);
  Sink sink(o.out, out);
  if (o.format == "json") {
    *sink << to_json(report).dump(2) << '\n';
  } else if (o.format == "csv") {
    *sink << report_csv_header() << '\n' << report_csv_row(report) << '\n';
  } else {
    print_report_text(*sink, report);
  }
  return report.violations.empty() ? kExitOk : kExitViolation;
}

int run_certify(const Options& o, std::ostream& out) {
  Sink sink(o.out, out);
  if (!o.in.empty()) {
    const auto doc = parse_json_text(read_file(o.in), o.in);
    const auto& body = doc.contains("certificate") ? doc.at("certificate") : doc;
    const auto root = certificate_from_json(body);
    const auto verdict = verify_certificate(root);
    Json j;
    j["verified"] = verdict.ok;
    j["path"] = verdict.path;
    j["message"] = verdict.message;
    *sink << j.dump(2) << '\n';
    return verdict.ok ? kExitOk : kExitViolation;
  }
  if (o.group.empty() || o.a.empty() || o.b.empty() || o.t == 0) {
    throw InvalidArgument("certify needs --group, --a, --b and --t (or --in)");
  }
  const auto g = parse_group_literal(o.group);
  auto a = parse_set_literal(g, o.a);
  auto b = parse_set_literal(g, o.b);
  if (a.empty() || b.empty()) throw InvalidArgument("operands must be nonempty");
  if (o.t > std::min(a.size(), b.size())) {
    throw InvalidArgument("t = " + std::to_string(o.t) + " exceeds min(|A|,|B|)");
  }
  const NormalizationShift shift{a.first(), b.first()};
  a = translate(a, g.neg(shift.a));
  b = translate(b, g.neg(shift.b));
  const bool swapped = a.size() < b.size();
  if (swapped) std::swap(a, b);

  const auto lattice = subgroup_lattice(g);
  const auto root = build_certificate(a, b, o.t, lattice);
  const auto verdict = verify_certificate(root, lattice);
  if (!verdict) {
    throw InternalError("built certificate failed verification at " + verdict.path + ": " +
                        verdict.message);
  }
  const auto measured = compute_spectrum(a, b).partial_sum(o.t);
  const auto rhs = main_rhs(static_cast<std::int64_t>(a.size()),
                            static_cast<std::int64_t>(b.size()),
                            static_cast<std::int64_t>(o.t), root.alpha);
  if (o.format == "text") {
    *sink << "group " << g.literal() << "  A = " << a.literal() << "  B = " << b.literal()
          << "  t = " << o.t << '\n'
          << "rhs_main " << rhs << " <= claimed " << root.claimed_bound << " <= S_t "
          << measured << '\n'
          << "nodes " << root.node_count() << "  depth " << root.depth() << "  verified\n";
    return kExitOk;
  }
  Json j;
  j["verified"] = true;
  j["rhs_main"] = rhs;
  j["measured_lhs"] = measured;
  j["normalization_shift"] = Json{{"a", shift.a.index}, {"b", shift.b.index}};
  j["operands_swapped"] = swapped;
  j["certificate"] = to_json(root);
  *sink << j.dump(2) << '\n';
  return kExitOk;
}

int run_sweep(const Options& o, std::ostream& out) {
  std::string config_path = o.config;
  if (config_path.empty()) {
    if (const char* env = std::getenv(kConfigEnvVar); env != nullptr) config_path = env;
  }
  auto config = config_path.empty() ? default_search_config()
                                    : parse_search_config(read_file(config_path));
  if (o.shards != 0) config.shards = o.shards;
  if (!o.mode.empty()) config.mode = parse_search_mode(o.mode);
  if (!o.out.empty()) config.out = o.out;

  const auto result = sweep(config);
  if (!config.out.empty()) {
    std::ofstream witnesses(config.out);
    if (!witnesses) throw InvalidArgument("cannot write '" + config.out + "'");
    write_json_lines(witnesses, result.witnesses);
  }
  Sink sink(o.summary, out);
  *sink << to_json(result.summary).dump(2) << '\n';
  return result.summary.violations == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiplicity spectra and Pollard-type bounds over finite abelian groups",
               "pollardkit"};
  app.require_subcommand(1);
  Options o;

  auto* spectrum = app.add_subcommand("spectrum", "Print r_{A,B}, |N_t| and partial sums");
  auto* check = app.add_subcommand("check", "Evaluate every applicable bound on (A, B, t)");
  auto* certify = app.add_subcommand("certify", "Build and verify an induction certificate");
  auto* sweep_cmd = app.add_subcommand("sweep", "Exhaustive search over a group catalog");

  for (auto* sub : {spectrum, check, certify}) {
    sub->add_option("--group", o.group, "Group literal, e.g. Z9 or Z2xZ6");
    sub->add_option("--a", o.a, "Set literal, e.g. 0,1,2");
    sub->add_option("--b", o.b, "Set literal, e.g. 0,1,2");
    sub->add_option("--out", o.out, "Write output to this file");
  }
  for (auto* sub : {spectrum, check}) {
    sub->get_option("--group")->required();
    sub->get_option("--a")->required();
    sub->get_option("--b")->required();
  }
  spectrum->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));
  check->add_option("--t", o.t)->required();
  check->add_option("--bounds", o.bounds, "all, or a comma list of bound names");
  check->add_option("--format", o.format)->check(CLI::IsMember({"text", "json", "csv"}));
  certify->add_option("--t", o.t);
  certify->add_option("--in", o.in, "Verify an existing certificate JSON instead");
  certify->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));
  sweep_cmd->add_option("--config", o.config, "Config file (default: $POLLARDKIT_CONFIG)");
  sweep_cmd->add_option("--shards", o.shards, "Override the shard count");
  sweep_cmd->add_option("--mode", o.mode, "verify | equality-hunt | conjecture-scan");
  sweep_cmd->add_option("--out", o.out, "Witness JSON-lines output path");
  sweep_cmd->add_option("--summary", o.summary, "Write the summary JSON here");

  std::vector<const char*> argv{"pollardkit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*spectrum) return run_spectrum(o, out);
    if (*check) return run_check(o, out);
    if (*certify) {
      if (!certify->count("--format")) o.format = "json";
      return run_certify(o, out);
    }
    return run_sweep(o, out);
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace pollard
