#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relcx/io.h"

namespace relcx
{

inline constexpr char const *kVersion = "relcx 0.1.0";

enum class Expect
{
  beautiful,      // value: |Λ|
  no_beautiful,
  witness,        // value: shortest witness length
  binary_up_to    // value: longest length scanned
};

struct Verdict
{
  Expect kind = Expect::no_beautiful;
  std::size_t value = 0;
  bool operator==(Verdict const &) const = default;
};

std::string verdict_string(Verdict const &v);   // "witness(3)", "no-beautiful", ...
Verdict parse_verdict(std::string const &s);

enum class Method
{
  binary_scan,          // shortest witness or binary-up-to, by orbit scan
  witness_tuples,       // a fixed tuple pair
  stabilizer_model,     // Alt(13) in the stabilizer model
  beautiful_scan,       // all subsets, for no-beautiful
  construction,         // a named configuration in a standard action
  orbit_search,         // orbit search over a seeded subgroup pool
  frobenius,
  ut_recipe,
  explicit_su
};

std::string method_name(Method m);

struct CatalogCase
{
  std::string id;
  std::string anchor;
  Json action;   // an io.h action spec, or the construction inputs
  Method method = Method::binary_scan;
  Json params;
  Verdict expected;
  std::size_t degree = 0;   // 0: the domain is never built
  std::int64_t budget_ms = 600'000;
  std::uint64_t seed = 1;
  bool stretch = false;     // inconclusive passes when the budget runs out
};

// A table row left without a case.
struct CatalogNote
{
  std::string row;
  std::string reason;
};

std::vector<CatalogCase> const &catalog();
std::vector<CatalogNote> const &catalog_notes();
CatalogCase const *find_case(std::string const &id);

// Exit codes of the CLI.
enum class Outcome
{
  reproduced = 0,
  contradicted = 1,
  inconclusive = 2
};

std::string outcome_name(Outcome o);

struct Report
{
  std::string id;
  Verdict expected;
  std::optional<Verdict> verdict;   // none when inconclusive
  Outcome outcome = Outcome::inconclusive;
  std::string detail;
  Json certificate;   // self-contained: carries the group it refers to
  std::int64_t wall_ms = 0;
  std::uint64_t nodes = 0;
  std::string version = kVersion;
};

struct RunOptions
{
  std::optional<std::int64_t> budget_ms;   // overrides the case budget
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
};

// Throws InputError on an unknown id.
Report verify_case(std::string const &id, RunOptions const &opts = {});
Report verify_case(CatalogCase const &c, RunOptions const &opts = {});

// Glob over ids ('*' and '?'); empty matches all. Reports come back in
// catalog order whatever the thread count.
std::vector<Report> run_all(std::string const &filter, RunOptions const &opts = {});
bool glob_match(std::string const &pattern, std::string const &s);

Json report_json(Report const &r);
Report report_from_json(Json const &j);
Json summary_json(std::vector<Report> const &rs);
std::string report_text(Json const &report);
std::string summary_text(Json const &summary);

Json case_json(CatalogCase const &c);
Json catalog_json();
std::string catalog_text();

struct ReplayResult
{
  bool ok = false;
  std::optional<Verdict> verdict;
  std::string message;
};

// Re-checks the embedded certificate on its own.
ReplayResult replay(Json const &report);

} // namespace relcx
