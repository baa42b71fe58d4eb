#include "pollardkit/io.hpp"

#include "pollardkit/error.hpp"

namespace pollard {

namespace {

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <class T>
std::optional<T> get_opt(const Json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

Json opt_bool(const std::optional<bool>& v) { return v ? Json(*v) : Json(nullptr); }

GSet set_from(const GroupSpec& g, const Json& j) {
  GSet out(g);
  for (const auto& v : j) {
    const auto i = v.get<std::uint32_t>();
    if (i >= g.order()) {
      throw InvalidArgument("set element " + std::to_string(i) + " out of range for " +
                            g.literal());
    }
    out.insert(Element{i});
  }
  return out;
}

template <class Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed JSON document: ") + e.what());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_value(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return csv_field(v.get<std::string>());
  return csv_field(v.dump());
}

Json node_to_json(const CertificateNode& n) {
  Json j;
  j["kind"] = to_string(n.kind);
  j["t"] = n.t;
  j["set_a"] = n.set_a.indices();
  j["set_b"] = n.set_b.indices();
  j["alpha"] = n.alpha;
  j["claimed_bound"] = n.claimed_bound;
  if (n.split) {
    const auto& p = *n.split;
    j["split"] = Json{{"a", p.a.index},
                      {"b", p.b.index},
                      {"v", p.v},
                      {"child_shift_a", p.child_shift_a.index},
                      {"child_shift_b", p.child_shift_b.index},
                      {"swapped", p.swapped}};
  } else {
    j["split"] = nullptr;
  }
  if (n.periodic) {
    j["periodic"] = Json{{"generated_size", n.periodic->generated_size},
                         {"coset_count", n.periodic->coset_count}};
  } else {
    j["periodic"] = nullptr;
  }
  j["children"] = Json::array();
  for (const auto& c : n.children) j["children"].push_back(node_to_json(c));
  return j;
}

CertificateNode node_from_json(const GroupSpec& g, const Json& j) {
  CertificateNode n;
  n.kind = parse_certificate_kind(j.at("kind").get<std::string>());
  n.t = j.at("t").get<std::size_t>();
  n.set_a = set_from(g, j.at("set_a"));
  n.set_b = set_from(g, j.at("set_b"));
  n.alpha = j.at("alpha").get<std::int64_t>();
  n.claimed_bound = j.at("claimed_bound").get<std::int64_t>();
  if (const auto& s = j.at("split"); !s.is_null()) {
    n.split = SplitParams{Element{s.at("a").get<std::uint32_t>()},
                          Element{s.at("b").get<std::uint32_t>()},
                          s.at("v").get<std::size_t>(),
                          Element{s.at("child_shift_a").get<std::uint32_t>()},
                          Element{s.at("child_shift_b").get<std::uint32_t>()},
                          s.at("swapped").get<bool>()};
  }
  if (const auto& p = j.at("periodic"); !p.is_null()) {
    n.periodic = PeriodicParams{p.at("generated_size").get<std::size_t>(),
                                p.at("coset_count").get<std::size_t>()};
  }
  for (const auto& c : j.at("children")) n.children.push_back(node_from_json(g, c));
  return n;
}

Json tally_to_json(const BoundTally& t) {
  return Json{{"evaluated", t.evaluated},
              {"equalities", t.equalities},
              {"violations", t.violations},
              {"min_slack", opt(t.min_slack)}};
}

}  // namespace

Json to_json(const Spectrum& s) {
  Json j;
  j["r"] = s.r();
  j["partial_sums"] = s.partial_sums();
  return j;
}

Json to_json(const BoundReport& r) {
  Json j;
  j["group"] = r.group().literal();
  j["set_a"] = r.set_a.indices();
  j["set_b"] = r.set_b.indices();
  j["t"] = r.t;
  j["lhs"] = r.lhs;
  j["alpha"] = opt(r.alpha);
  j["w"] = opt(r.w);
  j["mu"] = opt(r.mu);
  j["rhs_main"] = opt(r.rhs_main);
  j["slack_main"] = opt(r.slack_main);
  j["strict_case"] = to_string(r.strict_case);
  j["rhs_green_ruzsa"] = opt(r.rhs_green_ruzsa);
  j["slack_green_ruzsa"] = opt(r.slack_green_ruzsa);
  j["rhs_pollard"] = opt(r.rhs_pollard);
  j["slack_pollard"] = opt(r.slack_pollard);
  if (r.grynkiewicz) {
    const auto& g = *r.grynkiewicz;
    j["grynkiewicz"] = Json{{"lhs", g.lhs},
                            {"rhs", g.rhs},
                            {"slack", g.slack},
                            {"period_size", g.period_size},
                            {"n2_empty", g.n2_empty}};
  } else {
    j["grynkiewicz"] = nullptr;
  }
  if (r.kneser) {
    const auto& k = *r.kneser;
    j["kneser"] = Json{{"applicable", k.applicable},
                       {"sumset_size", k.sumset_size},
                       {"period_size", k.period_size},
                       {"ah_size", k.ah_size},
                       {"bh_size", k.bh_size},
                       {"period_nontrivial", opt_bool(k.period_nontrivial)},
                       {"kn1_holds", opt_bool(k.kn1_holds)},
                       {"kn2_holds", opt_bool(k.kn2_holds)}};
  } else {
    j["kneser"] = nullptr;
  }
  if (r.dicks_ivanov) {
    const auto& d = *r.dicks_ivanov;
    j["dicks_ivanov"] = Json{{"lhs", d.lhs},
                             {"rhs", d.rhs},
                             {"condition_i", d.condition_i},
                             {"condition_ii", d.condition_ii},
                             {"largest_coset_in_n2", d.largest_coset_in_n2},
                             {"holding", d.holding()}};
  } else {
    j["dicks_ivanov"] = nullptr;
  }
  j["violations"] = r.violations;
  if (r.normalization_shift) {
    j["normalization_shift"] =
        Json{{"a", r.normalization_shift->a.index}, {"b", r.normalization_shift->b.index}};
  } else {
    j["normalization_shift"] = nullptr;
  }
  j["operands_swapped"] = r.operands_swapped;
  return j;
}

BoundReport report_from_json(const Json& j, const Limits& limits) {
  return guarded([&] {
    BoundReport r;
    const auto g = parse_group_literal(j.at("group").get<std::string>(), limits);
    r.set_a = set_from(g, j.at("set_a"));
    r.set_b = set_from(g, j.at("set_b"));
    r.t = j.at("t").get<std::size_t>();
    r.lhs = j.at("lhs").get<std::int64_t>();
    r.alpha = get_opt<std::int64_t>(j, "alpha");
    r.w = get_opt<std::int64_t>(j, "w");
    r.mu = get_opt<std::int64_t>(j, "mu");
    r.rhs_main = get_opt<std::int64_t>(j, "rhs_main");
    r.slack_main = get_opt<std::int64_t>(j, "slack_main");
    r.strict_case = parse_strict_case(j.at("strict_case").get<std::string>());
    r.rhs_green_ruzsa = get_opt<std::int64_t>(j, "rhs_green_ruzsa");
    r.slack_green_ruzsa = get_opt<std::int64_t>(j, "slack_green_ruzsa");
    r.rhs_pollard = get_opt<std::int64_t>(j, "rhs_pollard");
    r.slack_pollard = get_opt<std::int64_t>(j, "slack_pollard");
    if (const auto& g2 = j.at("grynkiewicz"); !g2.is_null()) {
      r.grynkiewicz = GrynkiewiczResult{g2.at("lhs").get<std::int64_t>(),
                                        g2.at("rhs").get<std::int64_t>(),
                                        g2.at("slack").get<std::int64_t>(),
                                        g2.at("period_size").get<std::size_t>(),
                                        g2.at("n2_empty").get<bool>()};
    }
    if (const auto& k = j.at("kneser"); !k.is_null()) {
      KneserResult kr;
      kr.applicable = k.at("applicable").get<bool>();
      kr.sumset_size = k.at("sumset_size").get<std::size_t>();
      kr.period_size = k.at("period_size").get<std::size_t>();
      kr.ah_size = k.at("ah_size").get<std::size_t>();
      kr.bh_size = k.at("bh_size").get<std::size_t>();
      kr.period_nontrivial = get_opt<bool>(k, "period_nontrivial");
      kr.kn1_holds = get_opt<bool>(k, "kn1_holds");
      kr.kn2_holds = get_opt<bool>(k, "kn2_holds");
      r.kneser = kr;
    }
    if (const auto& d = j.at("dicks_ivanov"); !d.is_null()) {
      r.dicks_ivanov = DicksIvanovResult{d.at("lhs").get<std::int64_t>(),
                                         d.at("rhs").get<std::int64_t>(),
                                         d.at("condition_i").get<bool>(),
                                         d.at("condition_ii").get<bool>(),
                                         d.at("largest_coset_in_n2").get<std::size_t>()};
    }
    r.violations = j.at("violations").get<std::vector<std::string>>();
    if (const auto& s = j.at("normalization_shift"); !s.is_null()) {
      r.normalization_shift = NormalizationShift{Element{s.at("a").get<std::uint32_t>()},
                                                 Element{s.at("b").get<std::uint32_t>()}};
    }
    r.operands_swapped = j.at("operands_swapped").get<bool>();
    return r;
  });
}

std::string report_csv_header() {
  return "group,set_a,set_b,t,lhs,alpha,w,mu,rhs_main,slack_main,strict_case,"
         "rhs_green_ruzsa,slack_green_ruzsa,rhs_pollard,slack_pollard,grynkiewicz,kneser,"
         "dicks_ivanov,violations,normalization_shift,operands_swapped";
}

std::string report_csv_row(const BoundReport& r) {
  const Json j = to_json(r);
  std::string out;
  bool first = true;
  for (const auto& [key, value] : j.items()) {
    if (!first) out += ',';
    first = false;
    if (key == "grynkiewicz") {
      out += value.is_null() ? "" : std::to_string(value.at("slack").get<std::int64_t>());
    } else if (key == "kneser") {
      out += value.is_null() ? "" : !value.at("applicable").get<bool>() ? "n/a"
                                  : r.kneser->holds()                  ? "holds"
                                                                        : "fails";
    } else if (key == "dicks_ivanov") {
      out += value.is_null() ? "" : value.at("holding").get<std::string>();
    } else if (key == "violations") {
      std::string joined;
      for (const auto& v : r.violations) joined += (joined.empty() ? "" : ";") + v;
      out += csv_field(joined);
    } else {
      out += csv_value(value);
    }
  }
  return out;
}

Json to_json(const CertificateNode& root) {
  Json j;
  j["group"] = root.set_a.group().literal();
  const Json node = node_to_json(root);
  for (const auto& [key, value] : node.items()) j[key] = value;
  return j;
}

CertificateNode certificate_from_json(const Json& j, const Limits& limits) {
  return guarded([&] {
    const auto g = parse_group_literal(j.at("group").get<std::string>(), limits);
    return node_from_json(g, j);
  });
}

Json to_json(const SearchWitness& w) {
  Json j;
  j["group"] = w.group;
  j["set_a"] = w.set_a;
  j["set_b"] = w.set_b;
  j["t"] = w.t;
  j["lhs"] = w.lhs;
  j["alpha"] = opt(w.alpha);
  j["rhs_main"] = opt(w.rhs_main);
  j["slack_main"] = opt(w.slack_main);
  j["rhs_green_ruzsa"] = opt(w.rhs_green_ruzsa);
  j["slack_green_ruzsa"] = opt(w.slack_green_ruzsa);
  j["rhs_pollard"] = opt(w.rhs_pollard);
  j["slack_pollard"] = opt(w.slack_pollard);
  j["rhs_grynkiewicz"] = opt(w.rhs_grynkiewicz);
  j["slack_grynkiewicz"] = opt(w.slack_grynkiewicz);
  j["strict_case"] = to_string(w.strict_case);
  j["category"] = to_string(w.category);
  j["violations"] = w.violations;
  return j;
}

SearchWitness witness_from_json(const Json& j) {
  return guarded([&] {
    SearchWitness w;
    w.group = j.at("group").get<std::string>();
    w.set_a = j.at("set_a").get<std::vector<std::uint32_t>>();
    w.set_b = j.at("set_b").get<std::vector<std::uint32_t>>();
    w.t = j.at("t").get<std::size_t>();
    w.lhs = j.at("lhs").get<std::int64_t>();
    w.alpha = get_opt<std::int64_t>(j, "alpha");
    w.rhs_main = get_opt<std::int64_t>(j, "rhs_main");
    w.slack_main = get_opt<std::int64_t>(j, "slack_main");
    w.rhs_green_ruzsa = get_opt<std::int64_t>(j, "rhs_green_ruzsa");
    w.slack_green_ruzsa = get_opt<std::int64_t>(j, "slack_green_ruzsa");
    w.rhs_pollard = get_opt<std::int64_t>(j, "rhs_pollard");
    w.slack_pollard = get_opt<std::int64_t>(j, "slack_pollard");
    w.rhs_grynkiewicz = get_opt<std::int64_t>(j, "rhs_grynkiewicz");
    w.slack_grynkiewicz = get_opt<std::int64_t>(j, "slack_grynkiewicz");
    w.strict_case = parse_strict_case(j.at("strict_case").get<std::string>());
    w.category = parse_witness_category(j.at("category").get<std::string>());
    w.violations = j.at("violations").get<std::vector<std::string>>();
    return w;
  });
}

Json to_json(const SearchSummary& s) {
  Json j;
  j["mode"] = s.mode;
  j["groups"] = s.groups;
  j["pairs"] = s.pairs;
  j["instances"] = s.instances;
  j["bounds"] = Json{{"main", tally_to_json(s.main)},
                     {"green_ruzsa", tally_to_json(s.green_ruzsa)},
                     {"pollard", tally_to_json(s.pollard)},
                     {"grynkiewicz", tally_to_json(s.grynkiewicz)}};
  j["strict_instances"] = s.strict_instances;
  j["strict_failures"] = s.strict_failures;
  j["dicks_ivanov"] = Json{{"evaluated", s.dicks_ivanov_evaluated},
                           {"by_i", s.dicks_ivanov_by_i},
                           {"by_ii", s.dicks_ivanov_by_ii},
                           {"failures", s.dicks_ivanov_failures}};
  j["kneser"] = Json{{"evaluated", s.kneser_evaluated},
                     {"applicable", s.kneser_applicable},
                     {"failures", s.kneser_failures}};
  j["conjecture_regime_instances"] = s.conjecture_regime_instances;
  j["conjecture_equalities"] = s.conjecture_equalities;
  j["violations"] = s.violations;
  j["witnesses"] = s.witnesses;
  return j;
}

void write_json_lines(std::ostream& out, const std::vector<SearchWitness>& witnesses) {
  for (const auto& w : witnesses) out << to_json(w).dump() << '\n';
}

}  // namespace pollard
