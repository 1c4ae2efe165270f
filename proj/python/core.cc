#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relcx/catalog.h"

namespace py = pybind11;
using namespace relcx;

namespace
{

std::vector<Perm> to_perms(std::size_t degree, std::vector<py::object> const &gens)
{
  std::vector<Perm> out;
  for (auto const &g : gens) {
    if (py::isinstance<py::str>(g))
      out.push_back(parse_cycles(g.cast<std::string>(), degree));
    else
      out.push_back(perm_from_json(Json(g.cast<std::vector<Point>>()), degree));
  }
  return out;
}

py::int_ order_int(Order o) { return py::int_(py::str(to_string(o))); }

Budget budget(std::int64_t ms) { return Budget{0, ms}; }

std::string verify(std::string const &id, std::optional<std::int64_t> budget_ms,
                   std::optional<std::uint64_t> seed)
{
  RunOptions o;
  o.budget_ms = budget_ms;
  o.seed = seed;
  return report_json(verify_case(id, o)).dump();
}

} // namespace

PYBIND11_MODULE(_core, m)
{
  m.attr("__version__") = kVersion;

  py::class_<PermGroup>(m, "Group")
      .def(py::init([](std::size_t degree, std::vector<py::object> const &gens) {
             return PermGroup(degree, to_perms(degree, gens));
           }),
           py::arg("degree"), py::arg("generators"))
      .def_static("symmetric", &PermGroup::symmetric)
      .def_static("alternating", &PermGroup::alternating)
      .def_property_readonly("degree", &PermGroup::degree)
      .def("order", [](PermGroup const &g) { return order_int(g.order()); })
      .def("generators",
           [](PermGroup const &g) {
             std::vector<std::string> out;
             for (auto const &x : g.generators())
               out.push_back(to_cycle_string(x));
             return out;
           })
      .def("contains",
           [](PermGroup const &g, py::object const &p) {
             return g.contains(to_perms(g.degree(), {p}).front());
           })
      .def("orbit", [](PermGroup const &g, Point x) { return orbit(g, x); })
      .def("is_transitive", [](PermGroup const &g) { return is_transitive(g); })
      .def("is_2_transitive", [](PermGroup const &g) { return is_2_transitive(g); })
      .def("to_json", [](PermGroup const &g) { return group_json(g).dump(); });

  m.def("parse_group", &parse_group, "Sym<n>, Alt<n>, group JSON or a path");
  m.def(
      "action_group",
      [](std::string const &spec) {
        auto l = parse_action(spec);
        return l.action.group;
      },
      "the permutation group of an action spec");
  m.def(
      "check_binary",
      [](std::string const &spec, std::size_t max_len, std::int64_t budget_ms) {
        auto l = parse_action(spec);
        auto r = exhaustive_binary_check(l.action.group, max_len, budget(budget_ms));
        Json j{{"max_len", max_len}, {"prefixes", r.prefixes}};
        if (r.verdict == BinaryVerdict::witness)
          j["witness"] = witness_json(*r.witness, &l.action);
        j["verdict"] = r.verdict == BinaryVerdict::binary_up_to ? "binary-up-to"
                       : r.verdict == BinaryVerdict::witness    ? "witness"
                                                                : "inconclusive";
        return j.dump();
      },
      py::arg("spec"), py::arg("max_len") = 3, py::arg("budget_ms") = 0);
  m.def(
      "find_beautiful",
      [](std::string const &spec, std::uint64_t seed, std::int64_t budget_ms) -> std::string {
        auto l = parse_action(spec);
        auto c = orbit_beautiful_search(l.action.group, PoolSpec{}, seed, budget(budget_ms));
        return c ? beautiful_json(*c, &l.action).dump() : "null";
      },
      py::arg("spec"), py::arg("seed") = 1, py::arg("budget_ms") = 0);
  m.def("verify_case", &verify, py::arg("id"), py::arg("budget_ms") = std::nullopt,
        py::arg("seed") = std::nullopt);
  m.def(
      "run_all",
      [](std::string const &filter, unsigned threads) {
        RunOptions o;
        o.threads = threads;
        return summary_json(run_all(filter, o)).dump();
      },
      py::arg("filter") = "", py::arg("threads") = 1);
  m.def("list_catalog", [] { return catalog_json().dump(); });
  m.def("replay", [](std::string const &report) {
    auto r = replay(Json::parse(report));
    return py::make_tuple(r.ok, r.message);
  });
}
