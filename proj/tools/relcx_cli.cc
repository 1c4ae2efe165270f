#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "relcx/catalog.h"

using namespace relcx;

namespace
{

struct Args
{
  std::string group, gens, action, set, format = "text", filter, id, strategy = "orbit-scan";
  std::size_t degree = 0, point = 1, max_len = 0;
  std::uint64_t seed = 1;
  std::int64_t budget_ms = 0;
  unsigned threads = 1;
  bool exhaustive = false;
};

void emit(Args const &a, Json const &j, std::string const &text)
{
  if (a.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

// --action, else --group or --gens with --degree on its natural domain.
LoadedAction input_action(Args const &a)
{
  if (!a.action.empty())
    return parse_action(a.action);
  if (!a.gens.empty()) {
    if (!a.degree)
      throw InputError("--gens needs --degree");
    std::vector<Perm> gens;
    std::stringstream ss(a.gens);
    std::string item;
    // Cycle strings separated by ';'.
    while (std::getline(ss, item, ';'))
      gens.push_back(perm_from_json(item, a.degree));
    LoadedAction l;
    l.action = natural_action(PermGroup(a.degree, std::move(gens)));
    return l;
  }
  if (a.group.empty())
    throw InputError("give --group, --gens or --action");
  LoadedAction l;
  l.action = natural_action(parse_group(a.group));
  return l;
}

std::vector<Point> one_based(std::string const &s, std::size_t n)
{
  std::vector<Point> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t v = 0;
    try {
      v = std::stoul(item);
    } catch (std::exception const &) {
      throw InputError("bad point '" + item + "'");
    }
    if (v < 1 || v > n)
      throw InputError("point " + item + " out of range");
    out.push_back(static_cast<Point>(v - 1));
  }
  return out;
}

std::string points_text(std::vector<Point> const &pts)
{
  std::string s;
  for (Point p : pts)
    s += (s.empty() ? "" : " ") + std::to_string(p + 1);
  return s;
}

Budget budget(Args const &a) { return Budget{0, a.budget_ms}; }

int cmd_orbit(Args const &a)
{
  auto l = input_action(a);
  auto const &g = l.action.group;
  if (a.point < 1 || a.point > g.degree())
    throw InputError("--point out of range");
  auto o = orbit(g, static_cast<Point>(a.point - 1));
  Json pts = Json::array();
  for (Point p : o)
    pts.push_back(p + 1);
  emit(a, {{"point", a.point}, {"orbit", pts}, {"size", o.size()}},
       std::to_string(o.size()) + ": " + points_text(o) + "\n");
  return 0;
}

int cmd_order(Args const &a)
{
  auto l = input_action(a);
  auto const &g = l.action.group;
  emit(a,
       {{"degree", g.degree()},
        {"order", order_json(g.order())},
        {"transitive", is_transitive(g)},
        {"two_transitive", is_2_transitive(g)}},
       to_string(g.order()) + "\n");
  return 0;
}

int cmd_stab(Args const &a)
{
  auto l = input_action(a);
  auto const &g = l.action.group;
  auto set = a.set.empty() ? std::vector<Point>{static_cast<Point>(a.point - 1)}
                           : one_based(a.set, g.degree());
  if (set.empty() || set.front() >= g.degree())
    throw InputError("bad --set or --point");
  auto r = restrict_to(g, set);
  Json gens = Json::array(), pts = Json::array();
  for (auto const &x : r.setwise.generators())
    gens.push_back(to_cycle_string(x));
  for (Point p : set)
    pts.push_back(p + 1);
  emit(a,
       {{"set", pts},
        {"setwise_order", order_json(r.setwise.order())},
        {"kernel_order", order_json(r.kernel.order())},
        {"induced_order", order_json(r.induced.order())},
        {"generators", gens}},
       "setwise " + to_string(r.setwise.order()) + ", pointwise " + to_string(r.kernel.order()) +
           ", induced " + to_string(r.induced.order()) + "\n");
  return 0;
}

int cmd_check_binary(Args const &a)
{
  auto l = input_action(a);
  auto const &act = l.action;
  std::size_t len = a.max_len ? a.max_len : std::min<std::size_t>(act.degree(), 6);
  auto r = exhaustive_binary_check(act.group, len, budget(a));
  Json j{{"degree", act.degree()}, {"max_len", len}, {"prefixes", r.prefixes}};
  std::string text;
  int code = 0;
  switch (r.verdict) {
  case BinaryVerdict::binary_up_to:
    j["verdict"] = "binary-up-to(" + std::to_string(len) + ")";
    text = "binary up to length " + std::to_string(len) + "\n";
    break;
  case BinaryVerdict::witness:
    j["verdict"] = "witness(" + std::to_string(r.witness->i.size()) + ")";
    j["witness"] = witness_json(*r.witness, &act);
    text = "witness of length " + std::to_string(r.witness->i.size()) + "\n";
    break;
  case BinaryVerdict::budget_exhausted:
    j["verdict"] = "inconclusive";
    text = "budget exhausted\n";
    code = 2;
    break;
  }
  emit(a, j, text);
  return code;
}

int cmd_find_witness(Args const &a)
{
  auto l = input_action(a);
  auto const &act = l.action;
  WitnessStrategy s;
  if (a.strategy == "orbit-scan")
    s = WitnessStrategy::orbit_scan;
  else if (a.strategy == "lemma-aux")
    s = WitnessStrategy::lemma_aux;
  else
    throw InputError("unknown strategy '" + a.strategy + "'");
  SearchStats stats;
  std::size_t len = a.max_len ? a.max_len : std::min<std::size_t>(act.degree(), 6);
  auto w = witness_search(act.group, s, a.seed, budget(a), len, &stats);
  if (!w) {
    emit(a, {{"found", false}, {"nodes", stats.nodes}, {"exhausted", stats.exhausted}},
         stats.exhausted ? "budget exhausted\n" : "no witness found\n");
    return 2;
  }
  Json j{{"found", true}, {"nodes", stats.nodes}, {"witness", witness_json(*w, &act)}};
  std::string text = "I = ", sep;
  for (Point p : w->i)
    text += sep + act.label(p), sep = " ";
  text += "\nJ = ", sep.clear();
  for (Point p : w->j)
    text += sep + act.label(p), sep = " ";
  emit(a, j, text + "\n");
  return 0;
}

int cmd_find_beautiful(Args const &a)
{
  auto l = input_action(a);
  auto const &act = l.action;
  if (a.exhaustive) {
    auto s = exhaustive_beautiful_search(act.group, 5, act.degree(), a.threads);
    Json found = Json::array();
    for (auto const &[mask, o] : s.found)
      found.push_back({{"points", mask_points(mask)}, {"induced_order", order_json(o)}});
    emit(a,
         {{"complete", s.complete}, {"subsets", s.subsets_in_range}, {"found", found}},
         std::to_string(s.found.size()) + " beautiful subsets among " +
             std::to_string(s.subsets_in_range) + "\n");
    return s.complete ? 0 : 2;
  }
  OrbitSearchStats stats;
  auto c = orbit_beautiful_search(act.group, PoolSpec{}, a.seed, budget(a), &stats);
  if (!c) {
    emit(a, {{"found", false}, {"subgroups", stats.subgroups}, {"candidates", stats.candidates}},
         "none found\n");
    return 2;
  }
  std::string text = "Λ =";
  for (Point p : c->lambda)
    text += " " + act.label(p);
  emit(a, {{"found", true}, {"certificate", beautiful_json(*c, &act)}},
       text + "\ninduced order " + to_string(c->group.induced_order) + "\n");
  return 0;
}

RunOptions run_options(Args const &a)
{
  RunOptions o;
  if (a.budget_ms)
    o.budget_ms = a.budget_ms;
  if (a.seed != 1)
    o.seed = a.seed;
  o.threads = a.threads;
  return o;
}

int cmd_verify_case(Args const &a)
{
  auto r = verify_case(a.id, run_options(a));
  auto j = report_json(r);
  emit(a, j, report_text(j));
  return static_cast<int>(r.outcome);
}

int cmd_run_all(Args const &a)
{
  auto rs = run_all(a.filter, run_options(a));
  auto s = summary_json(rs);
  emit(a, s, summary_text(s));
  int code = 0;
  for (auto const &r : rs)
    if (r.outcome == Outcome::contradicted)
      code = 1;
    else if (r.outcome == Outcome::inconclusive && code == 0)
      code = 2;
  return code;
}

int cmd_replay(Args const &a)
{
  auto j = read_json_arg(a.id);
  auto r = replay(j);
  emit(a, {{"ok", r.ok}, {"message", r.message}}, r.message + "\n");
  return r.ok ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"relational complexity toolkit"};
  app.require_subcommand(1);
  Args a;

  auto group_opts = [&](CLI::App *s) {
    s->add_option("--group", a.group, "Sym<n>, Alt<n>, group JSON or a file");
    s->add_option("--gens", a.gens, "cycle strings separated by ';'");
    s->add_option("--degree", a.degree, "degree for --gens");
    s->add_option("--action", a.action, "action spec JSON or a file");
  };
  auto common = [&](CLI::App *s) {
    s->add_option("--format", a.format)->check(CLI::IsMember({"json", "text"}));
    s->add_option("--seed", a.seed);
    s->add_option("--budget-ms", a.budget_ms);
    s->add_option("--threads", a.threads);
    s->add_option("--max-len", a.max_len);
  };

  std::vector<std::pair<CLI::App *, int (*)(Args const &)>> cmds;
  auto sub = [&](char const *name, char const *help, int (*f)(Args const &)) {
    auto *s = app.add_subcommand(name, help);
    common(s);
    cmds.emplace_back(s, f);
    return s;
  };

  auto *s = sub("orbit", "orbit of a point (1-based)", cmd_orbit);
  group_opts(s);
  s->add_option("--point", a.point);
  group_opts(sub("order", "group order", cmd_order));
  s = sub("stab", "set-wise stabilizer of --set (1-based, comma separated)", cmd_stab);
  group_opts(s);
  s->add_option("--set", a.set);
  s->add_option("--point", a.point);
  group_opts(sub("check-binary", "exhaustive binary check up to --max-len", cmd_check_binary));
  s = sub("find-witness", "search for a non-binary witness", cmd_find_witness);
  group_opts(s);
  s->add_option("--strategy", a.strategy)->check(CLI::IsMember({"orbit-scan", "lemma-aux"}));
  s = sub("find-beautiful", "search for a beautiful subset", cmd_find_beautiful);
  group_opts(s);
  s->add_flag("--exhaustive", a.exhaustive, "scan every subset (degree <= 16)");
  sub("verify-case", "run one catalog case", cmd_verify_case)->add_option("id", a.id)->required();
  sub("run-all", "run catalog cases", cmd_run_all)->add_option("--filter", a.filter, "glob on ids");
  sub("list-catalog", "list catalog cases", [](Args const &a) {
    emit(a, catalog_json(), catalog_text());
    return 0;
  });
  sub("replay", "re-check the certificate of a saved report", cmd_replay)
      ->add_option("report", a.id)
      ->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }
  try {
    for (auto const &[c, f] : cmds)
      if (c->parsed())
        return f(a);
  } catch (InputError const &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (std::invalid_argument const &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (std::length_error const &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 3;
}
