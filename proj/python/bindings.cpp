#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pollardkit/bounds.hpp"
#include "pollardkit/certificate.hpp"
#include "pollardkit/error.hpp"
#include "pollardkit/io.hpp"
#include "pollardkit/lattice.hpp"
#include "pollardkit/search.hpp"
#include "pollardkit/setops.hpp"
#include "pollardkit/spectrum.hpp"

namespace py = pybind11;
using namespace pollard;

namespace {

using Indices = std::vector<std::uint32_t>;

GSet to_set(const GroupSpec& g, const Indices& xs) { return GSet::from_indices(g, xs); }

std::pair<GSet, GSet> operands(const GroupSpec& g, const Indices& a, const Indices& b) {
  auto sa = to_set(g, a);
  auto sb = to_set(g, b);
  if (sa.empty() || sb.empty()) throw InvalidArgument("operands must be nonempty");
  return {std::move(sa), std::move(sb)};
}

std::string spectrum_json(const GroupSpec& g, const Indices& a, const Indices& b) {
  const auto [sa, sb] = operands(g, a, b);
  return to_json(compute_spectrum(sa, sb)).dump();
}

std::string check_json(const GroupSpec& g, const Indices& a, const Indices& b, std::size_t t,
                       const std::string& bounds) {
  const auto [sa, sb] = operands(g, a, b);
  return to_json(evaluate(sa, sb, t, subgroup_lattice(g), parse_bound_selection(bounds))).dump();
}

// Normalizes like the command line does, then builds the certificate.
std::string certify_json(const GroupSpec& g, const Indices& a, const Indices& b, std::size_t t) {
  auto [sa, sb] = operands(g, a, b);
  sa = translate(sa, g.neg(sa.first()));
  sb = translate(sb, g.neg(sb.first()));
  if (sa.size() < sb.size()) std::swap(sa, sb);
  return to_json(build_certificate(sa, sb, t, subgroup_lattice(g))).dump();
}

py::tuple verify_json(const std::string& text) {
  const auto root = certificate_from_json(Json::parse(text));
  const auto verdict = verify_certificate(root);
  return py::make_tuple(verdict.ok, verdict.path, verdict.message);
}

py::tuple sweep_text(const std::string& config_text) {
  const auto config = parse_search_config(config_text);
  SearchResult result;
  {
    py::gil_scoped_release release;
    result = sweep(config);
  }
  std::ostringstream lines;
  write_json_lines(lines, result.witnesses);
  return py::make_tuple(to_json(result.summary).dump(), lines.str());
}

std::vector<Indices> subgroup_list(const GroupSpec& g) {
  const auto lat = subgroup_lattice(g);
  std::vector<Indices> out;
  for (const auto& h : lat.subgroups()) out.push_back(h.indices());
  return out;
}

}  // namespace

PYBIND11_MODULE(_pollardkit, m) {
  m.doc() = "Multiplicity spectra and Pollard-type bounds over finite abelian groups";

  py::register_exception<LimitExceeded>(m, "LimitExceeded", PyExc_ValueError);
  py::register_exception<GroupMismatch>(m, "GroupMismatch", PyExc_ValueError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

  py::class_<GroupSpec>(m, "Group")
      .def(py::init([](const std::string& literal) { return parse_group_literal(literal); }),
           py::arg("literal"))
      .def(py::init([](const std::vector<std::uint32_t>& factors) { return make_group(factors); }),
           py::arg("factors"))
      .def_property_readonly("order", &GroupSpec::order)
      .def_property_readonly("factors", &GroupSpec::factors)
      .def_property_readonly("literal", &GroupSpec::literal)
      .def("is_prime_order", &GroupSpec::is_prime_order)
      .def("add", [](const GroupSpec& g, std::uint32_t x, std::uint32_t y) {
        return g.add(Element{x}, Element{y}).index;
      })
      .def("neg", [](const GroupSpec& g, std::uint32_t x) { return g.neg(Element{x}).index; })
      .def("digits", [](const GroupSpec& g, std::uint32_t x) { return g.digits(Element{x}); })
      .def("__eq__", [](const GroupSpec& a, const GroupSpec& b) { return a == b; })
      .def("__repr__", [](const GroupSpec& g) { return "Group('" + g.literal() + "')"; });
  py::implicitly_convertible<std::string, GroupSpec>();

  m.def("sumset", [](const GroupSpec& g, const Indices& a, const Indices& b) {
    const auto [sa, sb] = operands(g, a, b);
    return sumset(sa, sb).indices();
  });
  m.def("translate", [](const GroupSpec& g, const Indices& a, std::uint32_t z) {
    return translate(to_set(g, a), Element{z}).indices();
  });
  m.def("period", [](const GroupSpec& g, const Indices& x) { return period(to_set(g, x)).indices(); });
  m.def("alpha", [](const GroupSpec& g, const Indices& a, const Indices& b) {
    const auto [sa, sb] = operands(g, a, b);
    return alpha(sa, sb, subgroup_lattice(g));
  });
  m.def("mu", [](const GroupSpec& g) { return mu(g, subgroup_lattice(g)); });
  m.def("subgroups", &subgroup_list);
  m.def("main_rhs", &main_rhs, py::arg("card_a"), py::arg("card_b"), py::arg("t"), py::arg("alpha"));

  m.def("_spectrum_json", &spectrum_json);
  m.def("_check_json", &check_json, py::arg("group"), py::arg("a"), py::arg("b"), py::arg("t"),
        py::arg("bounds") = "all");
  m.def("_certify_json", &certify_json);
  m.def("_verify_json", &verify_json);
  m.def("_sweep", &sweep_text);
  m.def("default_catalog", &default_catalog);
}
