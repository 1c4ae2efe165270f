#include "relcx/catalog.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <sstream>
#include <thread>

#include "relcx/altconstruct.h"

namespace relcx
{

std::string verdict_string(Verdict const &v)
{
  switch (v.kind) {
  case Expect::beautiful:
    return "beautiful(" + std::to_string(v.value) + ")";
  case Expect::no_beautiful:
    return "no-beautiful";
  case Expect::witness:
    return "witness(" + std::to_string(v.value) + ")";
  case Expect::binary_up_to:
    return "binary-up-to(" + std::to_string(v.value) + ")";
  }
  return "?";
}

Verdict parse_verdict(std::string const &s)
{
  if (s == "no-beautiful")
    return {Expect::no_beautiful, 0};
  auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')')
    throw InputError("bad verdict '" + s + "'");
  std::string head = s.substr(0, open);
  std::size_t value = 0;
  try {
    value = std::stoul(s.substr(open + 1, s.size() - open - 2));
  } catch (std::exception const &) {
    throw InputError("bad verdict '" + s + "'");
  }
  if (head == "beautiful")
    return {Expect::beautiful, value};
  if (head == "witness")
    return {Expect::witness, value};
  if (head == "binary-up-to")
    return {Expect::binary_up_to, value};
  throw InputError("bad verdict '" + s + "'");
}

std::string method_name(Method m)
{
  switch (m) {
  case Method::binary_scan:
    return "binary-scan";
  case Method::witness_tuples:
    return "witness-tuples";
  case Method::stabilizer_model:
    return "stabilizer-model";
  case Method::beautiful_scan:
    return "subset-scan";
  case Method::construction:
    return "construction";
  case Method::orbit_search:
    return "orbit-search";
  case Method::frobenius:
    return "frobenius";
  case Method::ut_recipe:
    return "ut-recipe";
  case Method::explicit_su:
    return "explicit-su";
  }
  return "?";
}

std::string outcome_name(Outcome o)
{
  switch (o) {
  case Outcome::reproduced:
    return "reproduced";
  case Outcome::contradicted:
    return "contradicted";
  case Outcome::inconclusive:
    return "inconclusive";
  }
  return "?";
}

namespace
{

Verdict beautiful(std::size_t s) { return {Expect::beautiful, s}; }
Verdict none() { return {Expect::no_beautiful, 0}; }
Verdict witness(std::size_t l) { return {Expect::witness, l}; }
Verdict binary(std::size_t l) { return {Expect::binary_up_to, l}; }

Json natural(std::string const &g) { return {{"parent", g}}; }
Json pairs(std::string const &g) { return {{"parent", g}, {"action", {{"type", "k-subsets"}, {"k", 2}}}}; }
Json synthemes(std::string const &g)
{
  return {{"parent", g}, {"action", {{"type", "partitions"}, {"k", 2}}}};
}
Json classical(std::string const &f, unsigned n, unsigned q, Json action,
               std::vector<std::string> extend = {}, bool derived = false)
{
  Json j{{"family", f}, {"n", n}, {"q", q}, {"action", std::move(action)}};
  if (derived)
    j["derived"] = true;
  if (!extend.empty())
    j["extend"] = extend;
  return j;
}
Json dim(unsigned d, std::string const &cls) { return {{"dim", d}, {"class", cls}}; }
Json flags(bool incident) { return {{"dims", {1, 2}}, {"incident", incident}}; }

// PΓL2(8) on the projective line, 0..7 the field and 8 the point at infinity.
Json pgaml2_8()
{
  Field f(8);
  auto make = [&](auto map) {
    std::vector<Point> img(9);
    for (Point x = 0; x < 9; ++x)
      img[x] = map(x);
    return to_cycle_string(Perm(std::move(img)));
  };
  Json gens = Json::array();
  gens.push_back(make([&](Point x) { return x == 8 ? Point{8} : Point{f.add(x, 1)}; }));
  gens.push_back(make([&](Point x) { return x == 8 ? Point{8} : Point{f.mul(x, f.primitive())}; }));
  gens.push_back(make([&](Point x) { return x == 8 ? Point{0} : x == 0 ? Point{8} : Point{f.inv(x)}; }));
  gens.push_back(make([&](Point x) { return x == 8 ? Point{8} : Point{f.frobenius(x)}; }));
  return {{"degree", 9}, {"generators", gens}, {"order", "1512"}};
}

std::vector<CatalogCase> build_catalog()
{
  std::vector<CatalogCase> c;
  auto add = [&](std::string id, std::string anchor, Json action, Method m, Verdict v,
                 std::size_t degree, Json params = Json::object()) -> CatalogCase & {
    CatalogCase k;
    k.id = std::move(id);
    k.anchor = std::move(anchor);
    k.action = std::move(action);
    k.method = m;
    k.params = std::move(params);
    k.expected = v;
    k.degree = degree;
    c.push_back(std::move(k));
    return c.back();
  };
  Json six = {{"max_len", 6}};

  add("table1:line1:sym5-natural", "table 1 line 1", natural("Sym5"), Method::binary_scan,
      binary(6), 5, six);
  add("table1:line1:alt5-natural", "table 1 line 1", natural("Alt5"), Method::binary_scan,
      witness(4), 5, six);
  add("table1:line2:alt6-pairs-tuples", "table 1 line 2", pairs("Alt6"), Method::witness_tuples,
      witness(5), 15,
      {{"tuples",
        {{{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}}, {{1, 3}, {1, 2}, {1, 4}, {1, 5}, {1, 6}}}},
       {"level", 2}});
  add("table1:line2:alt5-pairs", "table 1 line 2", pairs("Alt5"), Method::beautiful_scan, none(), 10);
  add("table1:line2:sym5-pairs", "table 1 line 2", pairs("Sym5"), Method::beautiful_scan, none(), 10);
  add("table1:line2:sym6-pairs", "table 1 line 2", pairs("Sym6"), Method::beautiful_scan, none(), 15);
  add("table1:line3:alt13-model", "table 1 line 3", {{"model", "alt13"}}, Method::stabilizer_model,
      witness(3), 0);
  add("table1:line4:alt9-pgaml2-8", "table 1 line 4",
      {{"parent", "Alt9"}, {"action", {{"type", "cosets"}, {"subgroup", pgaml2_8()}}}},
      Method::binary_scan, witness(3), 120, {{"max_len", 3}});
  add("table1:line5:alt6-natural", "table 1 line 5", natural("Alt6"), Method::binary_scan,
      witness(5), 6, six);
  add("table1:line5:sym6-natural", "table 1 line 5", natural("Sym6"), Method::binary_scan,
      binary(6), 6, six);
  add("table1:line5:alt6-pairs", "table 1 line 5", pairs("Alt6"), Method::beautiful_scan, none(), 15);
  add("table1:line5:alt6-synthemes", "table 1 line 5", synthemes("Alt6"), Method::beautiful_scan,
      none(), 15);
  add("table1:line5:sym6-synthemes", "table 1 line 5", synthemes("Sym6"), Method::beautiful_scan,
      none(), 15);

  auto config = [](std::string id, std::vector<unsigned> params) {
    return Json{{"construction", std::move(id)}, {"params", std::move(params)}};
  };
  add("lemma:intrans1:fano-8-3", "fano subset", config("fano-subset", {8, 3}),
      Method::construction, beautiful(7), 56, {{"induced_order", "168"}});
  add("lemma:imprim1:petersen-10", "petersen matchings", config("petersen-matchings", {10}),
      Method::construction, beautiful(6), 945, {{"induced_order", "120"}});
  add("lemma:imprim1:matchings-8", "matchings, n = 8", synthemes("Sym8"), Method::orbit_search,
      beautiful(7), 105)
      .seed = 7;
  add("lemma:imprim2:fano-partitions-8-4", "fano partitions", config("fano-partitions", {8, 4}),
      Method::construction, beautiful(7), 35, {{"induced_order", "168"}});
  add("lemma:imprim3:three-uniform-9", "3-uniform partitions", config("three-uniform", {9}),
      Method::construction, beautiful(10), 280);
  add("lemma:aff:affine-line-7", "affine line", {{"affine-line", 7}}, Method::construction,
      beautiful(7), 120, {{"induced_order", "42"}});
  add("lemma:prod:frobenius-25", "product action", {{"frobenius", "product"}}, Method::frobenius,
      beautiful(5), 0);
  add("lemma:diag:frobenius-60", "diagonal action", {{"frobenius", "diagonal"}},
      Method::frobenius, beautiful(5), 0);

  add("table2:line1:sl2-4", "table 2 line 1", classical("SL", 2, 4, dim(1, "all")),
      Method::beautiful_scan, none(), 5);
  add("table2:line7:sp42", "table 2 line 7", classical("Sp", 4, 2, dim(1, "all"), {}, true),
      Method::beautiful_scan, none(), 15);
  add("table2:line8:sp42-lines", "table 2 line 8", classical("Sp", 4, 2, dim(2, "ti"), {}, true),
      Method::beautiful_scan, none(), 15);
  add("prop2:su3-2-nonisotropic", "SU3(2), excluded from the unitary case",
      classical("SU", 3, 2, dim(1, "nondeg")), Method::beautiful_scan, none(), 12);

  add("prop1:sl3-4-unital", "SL3(4) on incident point-line pairs",
      classical("SL", 3, 4, flags(true)), Method::ut_recipe, beautiful(9), 105,
      {{"recipe", "sl3-unital"}});
  add("prop2:su5-2-affine", "SU5(2) on nondegenerate points",
      classical("SU", 5, 2, dim(1, "nondeg")), Method::ut_recipe, beautiful(16), 176,
      {{"recipe", "su-affine"}});
  add("prop3:sp4-4-ovoid", "Sp4(4) on points", classical("Sp", 4, 4, dim(1, "all")),
      Method::ut_recipe, beautiful(16), 85, {{"recipe", "sp4-ovoid"}});
  add("prop2:su3-3-explicit", "SU3(3) on nondegenerate points",
      classical("SU", 3, 3, dim(1, "nondeg")), Method::explicit_su, beautiful(9), 63);
  add("prop2:su3-4-explicit", "SU3(4) on nondegenerate points",
      classical("SU", 3, 4, dim(1, "nondeg")), Method::explicit_su, beautiful(16), 208);
  add("prop2:su3-5-explicit", "SU3(5) on nondegenerate points",
      classical("SU", 3, 5, dim(1, "nondeg")), Method::explicit_su, beautiful(5), 525);

  Json three = {{"max_len", 3}};
  add("table3:line1:alt5", "table 3 line 1", classical("SL", 2, 4, dim(1, "all")),
      Method::binary_scan, witness(4), 5, six);
  add("table3:line1:sym5", "table 3 line 1", classical("SL", 2, 4, dim(1, "all"), {"frobenius"}),
      Method::binary_scan, binary(6), 5, six);
  add("table3:line2:sl3-2-flags-21", "table 3 line 2",
      classical("SL", 3, 2, flags(true), {"duality"}), Method::binary_scan, witness(3), 21, six);
  add("table3:line2:sl3-2-antiflags-28", "table 3 line 2",
      classical("SL", 3, 2, flags(false), {"duality"}), Method::binary_scan, witness(3), 28, six);
  add("table3:line3:psl3-3-flags-52", "table 3 line 3",
      classical("SL", 3, 3, flags(true), {"duality"}), Method::binary_scan, witness(3), 52, six);
  for (bool ext : {false, true}) {
    std::vector<std::string> e;
    if (ext)
      e.push_back("frobenius");
    std::string s = ext ? "-ext" : "";
    add("table3:line4:psu4-2-27" + s, "table 3 line 4", classical("SU", 4, 2, dim(2, "ti"), e),
        Method::binary_scan, witness(3), 27, six)
        .budget_ms = 120'000;
    add("table3:line4:psu4-2-40" + s, "table 3 line 4", classical("SU", 4, 2, dim(1, "nondeg"), e),
        Method::binary_scan, witness(3), 40, six)
        .budget_ms = 120'000;
    auto &big = add("table3:line5:psu5-2-3520" + s, "table 3 line 5",
                    classical("SU", 5, 2, dim(2, "nondeg"), e), Method::binary_scan, witness(3),
                    3520, three);
    big.budget_ms = 3'600'000;
    big.stretch = true;
  }
  add("table3:line6:alt6-15", "table 3 line 6", classical("Sp", 4, 2, dim(1, "all"), {}, true),
      Method::binary_scan, witness(3), 15, six);
  add("table3:line6:sym6-15", "table 3 line 6", classical("Sp", 4, 2, dim(1, "all")),
      Method::binary_scan, witness(3), 15, six);
  add("table3:line7:omega7-3", "table 3 line 7", classical("O", 7, 3, dim(1, "nondeg-")),
      Method::binary_scan, witness(3), 351, three)
      .budget_ms = 900'000;
  add("table3:line7:pso7-3", "table 3 line 7", classical("O", 7, 3, dim(1, "nondeg-"), {"so"}),
      Method::binary_scan, witness(3), 351, three)
      .budget_ms = 900'000;
  return c;
}

} // namespace

std::vector<CatalogCase> const &catalog()
{
  static std::vector<CatalogCase> const c = build_catalog();
  return c;
}

std::vector<CatalogNote> const &catalog_notes()
{
  static std::vector<CatalogNote> const n = {
      {"table 1 line 1", "general n: only n = 5, 6 are run"},
      {"table 1 line 2", "general n: only n = 5, 6 are run"},
      {"table 1 line 3", "general prime n: the coset space has (n-2)! points; n = 13 is run in the "
                         "stabilizer model"},
      {"table 1 line 3", "Alt(41) with a beautiful subset of size 5 and Alt(13) with none: both coset "
                         "spaces are out of reach and no construction is given; unverified"},
      {"table 1 line 4", "general socle PSL2(q): only Alt(9) on the cosets of PΓL2(8) is run"},
      {"table 2 line 2", "SL3(2) on 28 antiflags: 2^28 subsets, beyond the exhaustive scan"},
      {"table 2 line 3", "SL3(2) on 21 flags and SL3(3) on 52 flags: beyond the exhaustive scan"},
      {"table 2 line 4", "SU4(2) on 27 totally isotropic lines: beyond the exhaustive scan"},
      {"table 2 line 5", "SU4(2) on 40 nondegenerate points: beyond the exhaustive scan"},
      {"table 2 line 6", "SU5(2) on 3520 nondegenerate lines: beyond the exhaustive scan"},
      {"table 2 line 7", "Sp4(3) on 40 points: beyond the exhaustive scan"},
      {"table 2 line 9", "Omega7(3) on 351 minus-type points: beyond the exhaustive scan"},
  };
  return n;
}

CatalogCase const *find_case(std::string const &id)
{
  for (auto const &c : catalog())
    if (c.id == id)
      return &c;
  return nullptr;
}

namespace
{

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0)
{
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

// What a method produced. A failed check forces a contradiction whatever
// the verdict.
struct Run
{
  std::optional<Verdict> verdict;
  std::string detail;
  Json certificate = Json::object();
  std::uint64_t nodes = 0;
  std::vector<std::string> failed;
};

Run binary_result(InducedAction const &a, BinaryCheck const &r)
{
  Run out;
  out.nodes = r.prefixes;
  out.certificate["group"] = group_json(a.group);
  if (r.verdict == BinaryVerdict::witness) {
    out.verdict = witness(r.witness->i.size());
    out.certificate["kind"] = "witness";
    out.certificate["witness"] = witness_json(*r.witness, &a);
    out.detail = "shortest witness has length " + std::to_string(r.witness->i.size());
  } else if (r.verdict == BinaryVerdict::binary_up_to) {
    out.verdict = binary(r.max_len);
    out.certificate["kind"] = "binary-scan";
    out.certificate["max_len"] = r.max_len;
    out.certificate["prefixes"] = r.prefixes;
    out.detail = "no witness up to length " + std::to_string(r.max_len);
  } else {
    out.certificate["kind"] = "none";
    out.detail = "budget exhausted after " + std::to_string(r.prefixes) + " prefixes";
  }
  return out;
}

Run run_binary_scan(CatalogCase const &c, InducedAction const &a, Budget b)
{
  std::size_t len = c.params.value("max_len", std::min<std::size_t>(a.degree(), 6));
  return binary_result(a, exhaustive_binary_check(a.group, len, b));
}

Run run_witness_tuples(CatalogCase const &c, InducedAction const &a)
{
  std::vector<Point> t[2];
  for (int s = 0; s < 2; ++s)
    for (auto const &l : c.params.at("tuples").at(s)) {
      std::vector<std::uint32_t> set;
      for (unsigned v : l.get<std::vector<unsigned>>())
        set.push_back(v - 1);
      auto i = a.index_of(Label{set});
      if (!i)
        throw InputError("tuple entry is not a point of the action");
      t[s].push_back(static_cast<Point>(*i));
    }
  std::size_t level = c.params.value("level", 2u);
  Run out;
  out.certificate["group"] = group_json(a.group);
  auto sub = r_subtuple_complete(a.group, t[0], t[1], level);
  if (!sub.complete) {
    out.failed.push_back("the tuples are not " + std::to_string(level) + "-subtuple complete");
    return out;
  }
  auto tr = transporter(a.group, t[0], t[1]);
  out.nodes = tr.nodes;
  if (tr.element) {
    out.failed.push_back("the tuples are transportable");
    return out;
  }
  WitnessCertificate w;
  w.i = t[0];
  w.j = t[1];
  w.level = level;
  w.transporters = sub.transporters;
  w.refutation = {"transporter", c.seed, tr.nodes};
  out.verdict = witness(w.i.size());
  out.certificate["kind"] = "witness";
  out.certificate["witness"] = witness_json(w, &a);
  out.detail = std::to_string(level) + "-subtuple complete, not " + std::to_string(w.i.size()) +
               "-subtuple complete";
  return out;
}

Run run_model()
{
  std::size_t n = 13;
  std::vector<Point> pts(n);
  for (Point i = 0; i < n; ++i)
    pts[i] = i;
  Perm x = Perm::from_cycles(n, {pts});
  Perm y = conjugate(x, parse_cycles("(1 2 3)", n));
  Perm g = x * y;
  auto alt = PermGroup::alternating(n);
  auto h0 = normalizer_of_cyclic(alt, g), h1 = normalizer_of_cyclic(alt, y),
       h2 = normalizer_of_cyclic(alt, x);
  Run out;
  out.certificate["group"] = group_json(alt);
  auto m = lemma_aux_witness_stabilizer_model(alt, h0, h1, h2, g);
  if (!m.h0_h2_trivial)
    out.failed.push_back("H0 ∩ H2 is not trivial");
  out.verdict = witness(3);
  out.certificate["kind"] = "model";
  out.certificate["model"] = model_json(m);
  out.detail = "stabilizer orders " + to_string(h0.order()) + ", " + to_string(h1.order()) + ", " +
               to_string(h2.order());
  return out;
}

Run scan_result(PermGroup const &g, ExhaustiveScan const &s, std::size_t min, std::size_t max)
{
  Run out;
  out.nodes = s.subsets_in_range;
  out.certificate["kind"] = "subset-scan";
  out.certificate["group"] = group_json(g);
  out.certificate["min_size"] = min;
  out.certificate["max_size"] = max;
  out.certificate["subsets_in_range"] = s.subsets_in_range;
  out.certificate["chunks"] = s.chunks.size();
  Json found = Json::array();
  std::size_t smallest = 0;
  for (auto const &[mask, order] : s.found) {
    found.push_back({{"points", mask_points(mask)}, {"induced_order", order_json(order)}});
    auto size = static_cast<std::size_t>(std::popcount(mask));
    smallest = smallest ? std::min(smallest, size) : size;
  }
  out.certificate["found"] = found;
  if (!s.complete) {
    out.detail = "scan did not cover every subset";
    return out;
  }
  out.verdict = s.found.empty() ? none() : beautiful(smallest);
  out.detail = std::to_string(s.subsets_in_range) + " subsets of size " + std::to_string(min) +
               ".." + std::to_string(max) + " scanned, " + std::to_string(s.found.size()) +
               " beautiful";
  return out;
}

constexpr std::size_t kMinBeautiful = 5;

Run run_beautiful_scan(InducedAction const &a, unsigned threads)
{
  auto s = exhaustive_beautiful_search(a.group, kMinBeautiful, a.degree(), threads);
  return scan_result(a.group, s, kMinBeautiful, a.degree());
}

Run beautiful_result(PermGroup const &g, BeautyCheck const &b, InducedAction const *a)
{
  Run out;
  out.certificate["group"] = group_json(g);
  if (!b.certificate) {
    out.failed.push_back("not beautiful: " + b.failed);
    return out;
  }
  auto const &c = *b.certificate;
  out.verdict = beautiful(c.lambda.size());
  out.certificate["kind"] = "beautiful";
  out.certificate["beautiful"] = beautiful_json(c, a);
  out.detail = "|G_Λ| = " + to_string(c.group.setwise_order) + ", induced order " +
               to_string(c.group.induced_order);
  return out;
}

void check_induced_order(CatalogCase const &c, Run &r)
{
  if (!c.params.contains("induced_order") || !r.verdict)
    return;
  Order want = order_from_json(c.params.at("induced_order"));
  Order got = order_from_json(r.certificate.at("beautiful").at("induced_order"));
  if (want != got)
    r.failed.push_back("induced order " + to_string(got) + ", expected " + to_string(want));
}

Run run_frobenius(std::string const &which)
{
  FrobeniusSetup s = which == "product" ? product_setup() : diagonal_setup();
  auto v = frobenius_beautiful(s.g, s.m, s.candidate);
  Run out;
  out.nodes = v.scanned;
  out.certificate = {{"kind", "frobenius"},
                     {"group", group_json(s.g)},
                     {"subgroup", group_json(s.m)},
                     {"h", to_cycle_string(s.candidate.h)},
                     {"g", to_cycle_string(s.candidate.g)},
                     {"t", s.candidate.t},
                     {"k", s.candidate.k},
                     {"outcome", static_cast<int>(v.outcome)},
                     {"delta_size", v.delta_size},
                     {"k_order", order_json(v.k_order)},
                     {"k_meet_m_order", order_json(v.k_meet_m_order)},
                     {"fix_g", v.fix_g},
                     {"scanned", v.scanned}};
  out.detail = v.message;
  if (v.outcome == FrobeniusOutcome::beautiful)
    out.verdict = beautiful(v.delta_size);
  else if (v.outcome != FrobeniusOutcome::inconclusive)
    out.failed.push_back(v.message);
  return out;
}

struct Built
{
  LoadedAction loaded;
  std::vector<Point> lambda;   // construction cases only
};

Built build_action(CatalogCase const &c)
{
  Built b;
  auto const &s = c.action;
  if (s.contains("construction")) {
    auto cfg = construction(s.at("construction").get<std::string>(),
                            s.at("params").get<std::vector<unsigned>>());
    b.loaded.action = ambient_action(cfg, s.value("alternating", false));
    b.lambda = locate(b.loaded.action, cfg);
  } else if (s.contains("affine-line")) {
    auto l = affine_line_orbit(s.at("affine-line").get<unsigned>());
    b.loaded.action = std::move(*l.action);
    b.lambda = l.delta;
  } else {
    b.loaded = load_action(s);
  }
  return b;
}

UTRecipe recipe(std::string const &name, MatrixGroupSpec const &g)
{
  if (name == "su-affine")
    return su_affine_recipe(g);
  if (name == "sl3-unital")
    return sl3_unital_recipe(g);
  if (name == "sp4-ovoid")
    return sp4_ovoid_recipe(g);
  throw InputError("unknown recipe '" + name + "'");
}

Run run_case(CatalogCase const &c, RunOptions const &opts, std::int64_t budget_ms,
             std::uint64_t seed)
{
  Budget budget{0, budget_ms};
  if (c.method == Method::stabilizer_model)
    return run_model();
  if (c.method == Method::frobenius)
    return run_frobenius(c.action.at("frobenius").get<std::string>());

  Built b = build_action(c);
  auto const &a = b.loaded.action;
  Run out;
  switch (c.method) {
  case Method::binary_scan:
    out = run_binary_scan(c, a, budget);
    break;
  case Method::witness_tuples:
    out = run_witness_tuples(c, a);
    break;
  case Method::beautiful_scan:
    out = run_beautiful_scan(a, opts.threads);
    break;
  case Method::construction:
    out = beautiful_result(a.group, is_beautiful(a.group, b.lambda), &a);
    check_induced_order(c, out);
    break;
  case Method::orbit_search: {
    OrbitSearchStats stats;
    auto cert = orbit_beautiful_search(a.group, PoolSpec{}, seed, budget, &stats);
    if (cert) {
      out = beautiful_result(a.group, BeautyCheck{cert, ""}, &a);
    } else {
      out.certificate["group"] = group_json(a.group);
      out.detail = stats.exhausted ? "budget exhausted" : "pool exhausted without a hit";
    }
    out.nodes = stats.candidates;
    out.certificate["seed"] = seed;
    break;
  }
  case Method::ut_recipe: {
    auto const &g = *b.loaded.classical;
    auto r = ut_beautiful(g, *b.loaded.subspaces, recipe(c.params.at("recipe"), g));
    BeautyCheck chk{r.certificate, r.failed};
    out = beautiful_result(a.group, chk, &a);
    out.detail += ", |U| = " + to_string(r.u_order) + ", |T| = " + to_string(r.t_order) +
                  ", |H| = " + to_string(r.h_order);
    break;
  }
  case Method::explicit_su: {
    auto e = explicit_su_point_stabilizer(*b.loaded.classical, *b.loaded.subspaces);
    out = beautiful_result(a.group, e.check, &a);
    out.detail += ", variant " + std::to_string(e.variant) + ", |H| = " + to_string(e.h_order);
    break;
  }
  default:
    break;
  }
  if (c.degree && a.degree() != c.degree)
    out.failed.push_back("degree " + std::to_string(a.degree()) + ", expected " +
                         std::to_string(c.degree));
  return out;
}

} // namespace

Report verify_case(std::string const &id, RunOptions const &opts)
{
  auto const *c = find_case(id);
  if (!c)
    throw InputError("unknown case id '" + id + "'");
  return verify_case(*c, opts);
}

Report verify_case(CatalogCase const &c, RunOptions const &opts)
{
  Report r;
  r.id = c.id;
  r.expected = c.expected;
  auto t0 = Clock::now();
  Run run;
  try {
    run = run_case(c, opts, opts.budget_ms.value_or(c.budget_ms), opts.seed.value_or(c.seed));
  } catch (PreconditionError const &e) {
    run.failed.push_back(std::string("precondition: ") + e.what());
  } catch (std::length_error const &e) {
    run.detail = std::string("out of range: ") + e.what();
  }
  r.wall_ms = ms_since(t0);
  r.nodes = run.nodes;
  r.verdict = run.verdict;
  r.certificate = std::move(run.certificate);
  r.certificate["case"] = c.id;
  if (!run.failed.empty()) {
    r.outcome = Outcome::contradicted;
    std::string d;
    for (auto const &f : run.failed)
      d += (d.empty() ? "" : "; ") + f;
    r.detail = run.detail.empty() ? d : d + "; " + run.detail;
  } else {
    r.detail = run.detail;
    if (!r.verdict)
      r.outcome = Outcome::inconclusive;
    else
      r.outcome = *r.verdict == c.expected ? Outcome::reproduced : Outcome::contradicted;
  }
  return r;
}

bool glob_match(std::string const &p, std::string const &s)
{
  std::size_t i = 0, j = 0, star = std::string::npos, mark = 0;
  while (j < s.size()) {
    if (i < p.size() && (p[i] == '?' || p[i] == s[j])) {
      ++i;
      ++j;
    } else if (i < p.size() && p[i] == '*') {
      star = i++;
      mark = j;
    } else if (star != std::string::npos) {
      i = star + 1;
      j = ++mark;
    } else {
      return false;
    }
  }
  while (i < p.size() && p[i] == '*')
    ++i;
  return i == p.size();
}

std::vector<Report> run_all(std::string const &filter, RunOptions const &opts)
{
  std::vector<CatalogCase const *> picked;
  for (auto const &c : catalog())
    if (filter.empty() || glob_match(filter, c.id))
      picked.push_back(&c);
  std::vector<Report> out(picked.size());
  std::atomic<std::size_t> next{0};
  RunOptions inner = opts;
  inner.threads = 1;
  auto work = [&] {
    for (std::size_t k; (k = next++) < picked.size();)
      out[k] = verify_case(*picked[k], inner);
  };
  unsigned n = std::max(1u, std::min<unsigned>(opts.threads, picked.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t)
    pool.emplace_back(work);
  work();
  for (auto &t : pool)
    t.join();
  return out;
}

Json report_json(Report const &r)
{
  return {{"id", r.id},
          {"expected", verdict_string(r.expected)},
          {"verdict", r.verdict ? verdict_string(*r.verdict) : "inconclusive"},
          {"outcome", outcome_name(r.outcome)},
          {"detail", r.detail},
          {"wall_ms", r.wall_ms},
          {"nodes", r.nodes},
          {"version", r.version},
          {"certificate", r.certificate}};
}

Report report_from_json(Json const &j)
{
  try {
    Report r;
    r.id = j.at("id").get<std::string>();
    r.expected = parse_verdict(j.at("expected").get<std::string>());
    auto v = j.at("verdict").get<std::string>();
    if (v != "inconclusive")
      r.verdict = parse_verdict(v);
    auto o = j.at("outcome").get<std::string>();
    r.outcome = o == "reproduced"     ? Outcome::reproduced
                : o == "contradicted" ? Outcome::contradicted
                                      : Outcome::inconclusive;
    r.detail = j.value("detail", "");
    r.wall_ms = j.value("wall_ms", std::int64_t{0});
    r.nodes = j.value("nodes", std::uint64_t{0});
    r.version = j.value("version", "");
    r.certificate = j.at("certificate");
    return r;
  } catch (Json::exception const &e) {
    throw InputError(std::string("bad report: ") + e.what());
  }
}

Json summary_json(std::vector<Report> const &rs)
{
  std::size_t counts[3] = {0, 0, 0};
  Json reports = Json::array();
  for (auto const &r : rs) {
    ++counts[static_cast<int>(r.outcome)];
    reports.push_back(report_json(r));
  }
  return {{"cases", rs.size()},
          {"reproduced", counts[0]},
          {"contradicted", counts[1]},
          {"inconclusive", counts[2]},
          {"version", kVersion},
          {"reports", reports}};
}

std::string report_text(Json const &r)
{
  std::ostringstream os;
  os << r.at("id").get<std::string>() << "  expected " << r.at("expected").get<std::string>()
     << "  got " << r.at("verdict").get<std::string>() << "  "
     << r.at("outcome").get<std::string>() << "  " << r.at("wall_ms").get<std::int64_t>()
     << " ms\n";
  auto d = r.value("detail", "");
  if (!d.empty())
    os << "  " << d << "\n";
  return os.str();
}

std::string summary_text(Json const &s)
{
  std::ostringstream os;
  for (auto const &r : s.at("reports"))
    os << report_text(r);
  os << s.at("cases").get<std::size_t>() << " cases: " << s.at("reproduced").get<std::size_t>()
     << " reproduced, " << s.at("contradicted").get<std::size_t>() << " contradicted, "
     << s.at("inconclusive").get<std::size_t>() << " inconclusive\n";
  return os.str();
}

Json case_json(CatalogCase const &c)
{
  Json j{{"id", c.id},
         {"anchor", c.anchor},
         {"method", method_name(c.method)},
         {"expected", verdict_string(c.expected)},
         {"degree", c.degree},
         {"budget_ms", c.budget_ms},
         {"seed", c.seed},
         {"action", c.action}};
  if (!c.params.empty())
    j["params"] = c.params;
  if (c.stretch)
    j["stretch"] = true;
  return j;
}

Json catalog_json()
{
  Json cases = Json::array(), notes = Json::array();
  for (auto const &c : catalog())
    cases.push_back(case_json(c));
  for (auto const &n : catalog_notes())
    notes.push_back({{"row", n.row}, {"reason", n.reason}});
  return {{"cases", cases}, {"not_run", notes}};
}

std::string catalog_text()
{
  std::ostringstream os;
  std::size_t w = 0;
  for (auto const &c : catalog())
    w = std::max(w, c.id.size());
  for (auto const &c : catalog()) {
    auto v = verdict_string(c.expected);
    os << c.id << std::string(w + 2 - c.id.size(), ' ') << v
       << std::string(v.size() < 16 ? 18 - v.size() : 2, ' ') << method_name(c.method);
    if (c.degree)
      os << "  degree " << c.degree;
    if (c.stretch)
      os << "  (stretch)";
    os << "\n";
  }
  os << "\nnot run:\n";
  for (auto const &n : catalog_notes())
    os << "  " << n.row << ": " << n.reason << "\n";
  return os.str();
}

ReplayResult replay(Json const &report)
{
  ReplayResult out;
  try {
    auto const &c = report.at("certificate");
    std::string kind = c.value("kind", "none");
    if (kind == "none") {
      out.message = "no certificate to replay";
      return out;
    }
    PermGroup g = group_from_json(c.at("group"));
    std::size_t n = g.degree();
    if (kind == "witness") {
      auto w = witness_from_json(c.at("witness"), n);
      out.ok = validate_witness(g, w);
      out.verdict = witness(w.i.size());
    } else if (kind == "model") {
      out.ok = validate_model(g, model_from_json(c.at("model"), n));
      out.verdict = witness(3);
    } else if (kind == "beautiful") {
      auto b = beautiful_from_json(c.at("beautiful"), n);
      out.ok = validate_beautiful(g, b);
      out.verdict = beautiful(b.lambda.size());
    } else if (kind == "binary-scan") {
      auto len = c.at("max_len").get<std::size_t>();
      auto r = exhaustive_binary_check(g, len);
      out.ok = r.verdict == BinaryVerdict::binary_up_to &&
               r.prefixes == c.at("prefixes").get<std::uint64_t>();
      out.verdict = binary(len);
    } else if (kind == "subset-scan") {
      auto min = c.at("min_size").get<std::size_t>(), max = c.at("max_size").get<std::size_t>();
      auto s = exhaustive_beautiful_search(g, min, max);
      auto r = scan_result(g, s, min, max);
      out.ok = r.verdict && r.certificate.at("found") == c.at("found") &&
               r.certificate.at("subsets_in_range") == c.at("subsets_in_range");
      out.verdict = r.verdict;
    } else if (kind == "frobenius") {
      PermGroup m = group_from_json(c.at("subgroup"));
      FrobeniusCandidate fc{perm_from_json(c.at("h"), n), perm_from_json(c.at("g"), n),
                            c.at("t").get<unsigned>(), c.at("k").get<unsigned>()};
      auto v = frobenius_beautiful(g, m, fc);
      out.ok = static_cast<int>(v.outcome) == c.at("outcome").get<int>() &&
               v.delta_size == c.at("delta_size").get<std::size_t>() &&
               v.outcome == FrobeniusOutcome::beautiful;
      out.verdict = beautiful(v.delta_size);
    } else {
      throw InputError("unknown certificate kind '" + kind + "'");
    }
  } catch (Json::exception const &e) {
    throw InputError(std::string("bad report: ") + e.what());
  }
  out.message = out.ok ? "certificate replays" : "certificate does not replay";
  if (out.ok && report.contains("verdict") && out.verdict &&
      verdict_string(*out.verdict) != report.at("verdict").get<std::string>()) {
    out.ok = false;
    out.message = "certificate replays to " + verdict_string(*out.verdict);
  }
  return out;
}

} // namespace relcx
