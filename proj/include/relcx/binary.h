#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relcx/backtrack.h"
#include "relcx/group.h"

namespace relcx
{

// A violated hypothesis, named in the message.
struct PreconditionError : std::invalid_argument
{
  using std::invalid_argument::invalid_argument;
};

using IndexSet = std::vector<std::size_t>;

struct SubtupleCheck
{
  bool complete = false;
  std::vector<std::pair<IndexSet, Perm>> transporters;
  std::optional<IndexSet> failing;
};

// Every size-r index subset of I is carried to the matching subset of J.
SubtupleCheck r_subtuple_complete(PermGroup const &g, std::span<Point const> i,
                                  std::span<Point const> j, std::size_t r);

struct Refutation
{
  std::string mode;   // "transporter" or "stabilizer-model"
  std::uint64_t seed = 0;
  std::uint64_t nodes = 0;
};

struct WitnessCertificate
{
  std::vector<Point> i, j;
  std::size_t level = 2;
  std::vector<std::pair<IndexSet, Perm>> transporters;
  Refutation refutation;
  std::uint64_t search_nodes = 0;
  std::int64_t search_ms = 0;
};

// Replays every stored transporter and the refutation from scratch.
bool validate_witness(PermGroup const &g, WitnessCertificate const &c);

WitnessCertificate lemma_aux_witness(PermGroup const &g, Point w0, Point w1, Point w2,
                                     Perm const &x);

// Points are stood in for by their stabilizers; elements act by conjugation.
struct ModelCertificate
{
  PermGroup h0, h1, h2;
  Perm g, x, y;   // g = x y, x in H2, y in H1
  bool h0_h1_trivial = false;
  bool h0_h2_trivial = false;
  bool g_in_h0 = false;
  bool g_in_h2h1 = false;
  bool g_not_in_h2 = false;
  // The pair transporters (0,1) -> 1, (0,2) -> g, (1,2) -> y.
  std::vector<std::pair<IndexSet, Perm>> transporters;
};

ModelCertificate lemma_aux_witness_stabilizer_model(PermGroup const &g, PermGroup const &h0,
                                                    PermGroup const &h1, PermGroup const &h2,
                                                    Perm const &x);
bool validate_model(PermGroup const &g, ModelCertificate const &c);

// g in A B, enumerating the smaller factor. Returns (a, b) with g = a b.
std::optional<std::pair<Perm, Perm>> product_member(PermGroup const &a, PermGroup const &b,
                                                    Perm const &g);

// The induced group on six points; points 0..5 stand for 1..6.
std::optional<WitnessCertificate> forbidden_config_size6(PermGroup const &on_lambda);

enum class BinaryVerdict
{
  binary_up_to,
  witness,
  budget_exhausted
};

struct BinaryCheck
{
  BinaryVerdict verdict = BinaryVerdict::binary_up_to;
  std::size_t max_len = 0;
  // Shortest witness length scanned so far; the witness returned is shortest.
  std::optional<WitnessCertificate> witness;
  std::uint64_t prefixes = 0;
};

// Scans all tuple pairs up to max_len, one prefix per orbit of G on tuples
// of distinct points unless reduce is false.
BinaryCheck exhaustive_binary_check(PermGroup const &g, std::size_t max_len,
                                    Budget budget = Budget::unlimited(), bool reduce = true);

enum class WitnessStrategy
{
  orbit_scan,
  lemma_aux
};

std::optional<WitnessCertificate> witness_search(PermGroup const &g, WitnessStrategy s,
                                                 std::uint64_t seed, Budget budget,
                                                 std::size_t max_len = 3,
                                                 SearchStats *stats = nullptr);

} // namespace relcx
