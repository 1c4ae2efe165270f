#include "relcx/io.h"

#include <fstream>
#include <sstream>

namespace relcx
{

Json order_json(Order o) { return to_string(o); }

Order order_from_json(Json const &j)
{
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
    return j.get<std::uint64_t>();
  if (!j.is_string())
    throw InputError("order must be a decimal string");
  Order o = 0;
  for (char c : j.get<std::string>()) {
    if (c < '0' || c > '9')
      throw InputError("order must be a decimal string");
    o = checked_mul(o, 10) + static_cast<unsigned>(c - '0');
  }
  return o;
}

Json perm_json(Perm const &p)
{
  return {{"images", std::vector<Point>(p.images().begin(), p.images().end())},
          {"cycles", to_cycle_string(p)}};
}

Perm perm_from_json(Json const &j, std::size_t degree)
{
  try {
    if (j.is_object())
      return perm_from_json(j.contains("images") ? j.at("images") : j.at("cycles"), degree);
    if (j.is_string())
      return parse_cycles(j.get<std::string>(), degree);
    auto img = j.get<std::vector<Point>>();
    if (img.size() != degree)
      throw InputError("permutation of length " + std::to_string(img.size()) +
                       " where degree " + std::to_string(degree) + " is expected");
    return Perm(std::move(img));
  } catch (InputError const &) {
    throw;
  } catch (std::exception const &e) {
    throw InputError(std::string("bad permutation: ") + e.what());
  }
}

Json group_json(PermGroup const &g, bool with_order)
{
  Json gens = Json::array();
  for (auto const &x : g.generators())
    gens.push_back(std::vector<Point>(x.images().begin(), x.images().end()));
  Json j{{"degree", g.degree()}, {"generators", gens}};
  if (with_order) {
    try {
      j["order"] = order_json(g.order());
    } catch (std::overflow_error const &) {
      // left out; the reader recomputes the chain
    }
  }
  return j;
}

PermGroup group_from_json(Json const &j)
{
  if (!j.is_object() || !j.contains("degree") || !j.contains("generators"))
    throw InputError("group JSON needs degree and generators");
  std::size_t n = j.at("degree").get<std::size_t>();
  if (n == 0)
    throw InputError("degree must be positive");
  std::vector<Perm> gens;
  for (auto const &g : j.at("generators"))
    gens.push_back(perm_from_json(g, n));
  if (j.contains("order"))
    return PermGroup(n, std::move(gens), order_from_json(j.at("order")));
  return PermGroup(n, std::move(gens));
}

Json read_json_arg(std::string const &text)
{
  std::string t = text;
  auto first = t.find_first_not_of(" \t\n");
  if (first == std::string::npos)
    throw InputError("empty JSON argument");
  if (t[first] != '{' && t[first] != '[' && t[first] != '"') {
    std::ifstream in(t);
    if (!in)
      throw InputError("cannot read '" + t + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    t = ss.str();
  }
  try {
    return Json::parse(t);
  } catch (Json::parse_error const &e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

namespace
{

std::optional<PermGroup> named_group(std::string const &s)
{
  for (auto [prefix, alt] : {std::pair{"Sym", false}, {"Alt", true}}) {
    std::string p = prefix;
    if (s.rfind(p, 0) != 0 || s.size() == p.size())
      continue;
    std::size_t n = 0;
    for (char c : s.substr(p.size())) {
      if (c < '0' || c > '9')
        throw InputError("bad group name '" + s + "'");
      n = n * 10 + static_cast<std::size_t>(c - '0');
    }
    if (n < 1 || n > 100000)
      throw InputError("bad group name '" + s + "'");
    return alt ? PermGroup::alternating(n) : PermGroup::symmetric(n);
  }
  return std::nullopt;
}

} // namespace

PermGroup parse_group(std::string const &text)
{
  if (auto g = named_group(text))
    return *g;
  Json j = read_json_arg(text);
  if (j.is_string()) {
    if (auto g = named_group(j.get<std::string>()))
      return *g;
    throw InputError("unknown group '" + j.get<std::string>() + "'");
  }
  return group_from_json(j);
}

namespace
{

Json transporters_json(std::vector<std::pair<IndexSet, Perm>> const &ts)
{
  Json out = Json::array();
  for (auto const &[s, p] : ts)
    out.push_back({{"subset", s}, {"element", to_cycle_string(p)}});
  return out;
}

std::vector<std::pair<IndexSet, Perm>> transporters_from_json(Json const &j, std::size_t n)
{
  std::vector<std::pair<IndexSet, Perm>> out;
  for (auto const &t : j)
    out.emplace_back(t.at("subset").get<IndexSet>(), perm_from_json(t.at("element"), n));
  return out;
}

Json gens_json(std::vector<Perm> const &gens)
{
  Json out = Json::array();
  for (auto const &g : gens)
    out.push_back(to_cycle_string(g));
  return out;
}

std::vector<Perm> gens_from_json(Json const &j, std::size_t n)
{
  std::vector<Perm> out;
  for (auto const &g : j)
    out.push_back(perm_from_json(g, n));
  return out;
}

Json induced_json(InducedData const &d)
{
  return {{"stabilizer_gens", gens_json(d.stabilizer_gens)},
          {"setwise_order", order_json(d.setwise_order)},
          {"kernel_order", order_json(d.kernel_order)},
          {"induced_order", order_json(d.induced_order)},
          {"pair_orbit_count", d.pair_orbit_count}};
}

InducedData induced_from_json(Json const &j, std::size_t n)
{
  InducedData d;
  d.stabilizer_gens = gens_from_json(j.at("stabilizer_gens"), n);
  d.setwise_order = order_from_json(j.at("setwise_order"));
  d.kernel_order = order_from_json(j.at("kernel_order"));
  d.induced_order = order_from_json(j.at("induced_order"));
  d.pair_orbit_count = j.at("pair_orbit_count").get<std::size_t>();
  return d;
}

} // namespace

Json witness_json(WitnessCertificate const &c, InducedAction const *a)
{
  Json j{{"tuples", {c.i, c.j}},
         {"level", c.level},
         {"transporters", transporters_json(c.transporters)},
         {"refutation",
          {{"mode", c.refutation.mode}, {"seed", c.refutation.seed}, {"nodes", c.refutation.nodes}}}};
  if (a) {
    Json li = Json::array(), lj = Json::array();
    for (Point x : c.i)
      li.push_back(a->label(x));
    for (Point x : c.j)
      lj.push_back(a->label(x));
    j["labels"] = {li, lj};
  }
  return j;
}

WitnessCertificate witness_from_json(Json const &j, std::size_t degree)
{
  try {
    WitnessCertificate c;
    c.i = j.at("tuples").at(0).get<std::vector<Point>>();
    c.j = j.at("tuples").at(1).get<std::vector<Point>>();
    for (auto const *t : {&c.i, &c.j})
      for (Point x : *t)
        if (x >= degree)
          throw InputError("tuple entry out of range");
    c.level = j.at("level").get<std::size_t>();
    c.transporters = transporters_from_json(j.at("transporters"), degree);
    auto const &r = j.at("refutation");
    c.refutation = {r.at("mode").get<std::string>(), r.at("seed").get<std::uint64_t>(),
                    r.at("nodes").get<std::uint64_t>()};
    return c;
  } catch (Json::exception const &e) {
    throw InputError(std::string("bad witness certificate: ") + e.what());
  }
}

Json beautiful_json(BeautifulCertificate const &c, InducedAction const *a)
{
  Json j;
  if (a) {
    Json labels = Json::array();
    for (Point x : c.lambda)
      labels.push_back(a->label(x));
    j["lambda"] = labels;
  }
  j["points"] = c.lambda;
  Json d = induced_json(c.group);
  j.update(d);
  if (c.socle)
    j["socle_variant"] = induced_json(*c.socle);
  return j;
}

BeautifulCertificate beautiful_from_json(Json const &j, std::size_t degree)
{
  try {
    BeautifulCertificate c;
    c.lambda = j.at("points").get<std::vector<Point>>();
    for (Point x : c.lambda)
      if (x >= degree)
        throw InputError("Λ point out of range");
    c.group = induced_from_json(j, degree);
    if (j.contains("socle_variant"))
      c.socle = induced_from_json(j.at("socle_variant"), degree);
    return c;
  } catch (Json::exception const &e) {
    throw InputError(std::string("bad beautiful certificate: ") + e.what());
  }
}

Json model_json(ModelCertificate const &c)
{
  auto grp = [](PermGroup const &h) {
    return Json{{"generators", gens_json(h.generators())}, {"order", order_json(h.order())}};
  };
  return {{"h0", grp(c.h0)},
          {"h1", grp(c.h1)},
          {"h2", grp(c.h2)},
          {"g", to_cycle_string(c.g)},
          {"x", to_cycle_string(c.x)},
          {"y", to_cycle_string(c.y)},
          {"h0_h1_trivial", c.h0_h1_trivial},
          {"h0_h2_trivial", c.h0_h2_trivial},
          {"g_in_h0", c.g_in_h0},
          {"g_in_h2h1", c.g_in_h2h1},
          {"g_not_in_h2", c.g_not_in_h2},
          {"transporters", transporters_json(c.transporters)}};
}

ModelCertificate model_from_json(Json const &j, std::size_t n)
{
  try {
    auto grp = [n](Json const &h) {
      return PermGroup(n, gens_from_json(h.at("generators"), n), order_from_json(h.at("order")));
    };
    ModelCertificate c{grp(j.at("h0")),
                       grp(j.at("h1")),
                       grp(j.at("h2")),
                       perm_from_json(j.at("g"), n),
                       perm_from_json(j.at("x"), n),
                       perm_from_json(j.at("y"), n),
                       j.at("h0_h1_trivial").get<bool>(),
                       j.at("h0_h2_trivial").get<bool>(),
                       j.at("g_in_h0").get<bool>(),
                       j.at("g_in_h2h1").get<bool>(),
                       j.at("g_not_in_h2").get<bool>(),
                       transporters_from_json(j.at("transporters"), n)};
    return c;
  } catch (Json::exception const &e) {
    throw InputError(std::string("bad model certificate: ") + e.what());
  }
}

Json matrix_json(Mat const &m)
{
  Json rows = Json::array();
  for (unsigned i = 0; i < m.rows; ++i) {
    auto r = m.row(i);
    rows.push_back(std::vector<unsigned>(r.begin(), r.end()));
  }
  return rows;
}

Mat matrix_from_json(Json const &j)
{
  auto rows = j.get<std::vector<std::vector<unsigned>>>();
  if (rows.empty())
    throw InputError("empty matrix");
  Mat m(static_cast<unsigned>(rows.size()), static_cast<unsigned>(rows[0].size()));
  for (unsigned i = 0; i < m.rows; ++i) {
    if (rows[i].size() != m.cols)
      throw InputError("ragged matrix");
    for (unsigned k = 0; k < m.cols; ++k) {
      if (rows[i][k] >= kMaxFieldOrder)
        throw InputError("field code out of range");
      m(i, k) = static_cast<FElt>(rows[i][k]);
    }
  }
  return m;
}

namespace
{

// Adds elements normalizing the action group. With p normalizing G the
// order grows by the order of p modulo G.
void extend(InducedAction &a, std::vector<Perm> const &extra)
{
  for (auto const &p : extra) {
    if (a.group.contains(p))
      continue;
    auto gens = a.group.generators();
    for (auto const &x : gens)
      if (!a.group.contains(conjugate(x, p)))
        throw InputError("extension element does not normalize the group");
    Order k = 1;
    for (Perm pk = p; !a.group.contains(pk); pk *= p)
      ++k;
    Order o = checked_mul(a.group.order(), k);
    gens.push_back(p);
    a.group = PermGroup(a.degree(), std::move(gens), o);
    a.description += " extended";
  }
}

LoadedAction load_classical(Json const &spec)
{
  LoadedAction out;
  Family f;
  unsigned n, q;
  try {
    f = parse_family(spec.at("family").get<std::string>());
    n = spec.at("n").get<unsigned>();
    q = spec.at("q").get<unsigned>();
  } catch (Json::exception const &e) {
    throw InputError(std::string("classical spec: ") + e.what());
  } catch (std::invalid_argument const &e) {
    throw InputError(e.what());
  }
  try {
    out.classical = build_group(f, n, q);
  } catch (std::invalid_argument const &e) {
    throw InputError(e.what());
  }
  auto const &g = *out.classical;
  Json act = spec.value("action", Json{{"dim", 1}, {"class", "all"}});
  try {
    if (act.contains("dims")) {
      auto d = act.at("dims").get<std::vector<unsigned>>();
      if (d.size() != 2)
        throw InputError("dims needs two entries");
      out.subspaces = std::make_shared<SubspaceAction const>(
          pair_action(g, d[0], d[1], act.value("incident", true)));
    } else {
      out.subspaces = std::make_shared<SubspaceAction const>(subspace_action(
          g, act.value("dim", 1u), parse_class(act.value("class", std::string("all")))));
    }
  } catch (std::invalid_argument const &e) {
    throw InputError(e.what());
  } catch (std::length_error const &e) {
    throw InputError(e.what());
  }
  out.action = out.subspaces->action;
  if (spec.value("derived", false)) {
    out.action.group = derived_subgroup(out.action.group);
    out.action.description += " derived";
  }
  std::vector<Perm> extra;
  for (auto const &e : spec.value("extend", Json::array())) {
    std::string what = e.get<std::string>();
    if (what == "duality")
      extra.push_back(duality(g, *out.subspaces));
    else if (what == "frobenius")
      extra.push_back(frobenius_image(g, *out.subspaces));
    else if (what == "so")
      extra.push_back(out.subspaces->induce(outside_omega(g)));
    else
      throw InputError("unknown extension '" + what + "'");
  }
  extend(out.action, extra);
  return out;
}

} // namespace

LoadedAction load_action(Json const &spec)
{
  if (!spec.is_object())
    throw InputError("action spec must be a JSON object");
  if (spec.contains("family"))
    return load_classical(spec);
  if (!spec.contains("parent"))
    throw InputError("action spec needs a parent or a family");
  Json const &par = spec.at("parent");
  PermGroup g = par.is_string() ? parse_group(par.get<std::string>()) : group_from_json(par);
  Json act = spec.value("action", Json{{"type", "natural"}});
  std::string type = act.value("type", std::string("natural"));
  LoadedAction out;
  try {
    if (type == "natural") {
      out.action = natural_action(g);
    } else if (type == "k-subsets") {
      out.action = k_subset_action(g, act.at("k").get<std::size_t>());
    } else if (type == "partitions") {
      out.action = uniform_partition_action(g, act.at("k").get<std::size_t>());
    } else if (type == "cosets") {
      Json sub = act.at("subgroup");
      if (!sub.contains("degree"))
        sub["degree"] = g.degree();
      out.action = coset_action(g, group_from_json(sub));
    } else if (type == "restrict") {
      auto pts = act.at("points").get<std::vector<Point>>();
      auto r = restrict_to(g, pts);
      out.action = natural_action(r.induced);
      out.action.description = "restriction";
    } else {
      throw InputError("unknown action type '" + type + "'");
    }
  } catch (Json::exception const &e) {
    throw InputError(std::string("action spec: ") + e.what());
  } catch (std::length_error const &e) {
    throw InputError(e.what());
  } catch (PreconditionError const &e) {
    throw InputError(e.what());
  } catch (InputError const &) {
    throw;
  } catch (std::invalid_argument const &e) {
    throw InputError(e.what());
  }
  return out;
}

LoadedAction parse_action(std::string const &text) { return load_action(read_json_arg(text)); }

} // namespace relcx
