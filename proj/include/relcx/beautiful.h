#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relcx/backtrack.h"
#include "relcx/group.h"

namespace relcx
{

struct InducedData
{
  std::vector<Perm> stabilizer_gens;   // generators of the set stabilizer
  Order setwise_order = 0;
  Order kernel_order = 0;
  Order induced_order = 0;
  std::size_t pair_orbit_count = 0;    // induced group on ordered pairs of Λ
};

struct BeautifulCertificate
{
  std::vector<Point> lambda;
  InducedData group;
  std::optional<InducedData> socle;
};

struct BeautyCheck
{
  std::optional<BeautifulCertificate> certificate;
  std::string failed;   // empty when certified
};

InducedData induced_data(PermGroup const &g, std::span<Point const> lambda);

// 2-transitive on Λ and of order below |Λ|!/2.
BeautyCheck is_beautiful(PermGroup const &g, std::span<Point const> lambda);
BeautyCheck is_S_beautiful(PermGroup const &g, PermGroup const &socle,
                           std::span<Point const> lambda);
// Recomputes the induced data from scratch and compares.
bool validate_beautiful(PermGroup const &g, BeautifulCertificate const &c,
                        PermGroup const *socle = nullptr);

struct ScanChunk
{
  std::uint32_t first = 0, last = 0;   // mask range, inclusive
  std::uint64_t scanned = 0;
  std::uint64_t found = 0;
};

struct ExhaustiveScan
{
  std::vector<std::pair<std::uint32_t, Order>> found;   // mask, induced order
  std::vector<ScanChunk> chunks;
  std::uint64_t subsets_in_range = 0;
  bool complete = false;   // chunks tile [0, 2^n) and every subset was visited
};

inline constexpr std::size_t kScanDegreeGuard = 16;
ExhaustiveScan exhaustive_beautiful_search(PermGroup const &g, std::size_t min_size,
                                           std::size_t max_size, unsigned threads = 1);
std::vector<Point> mask_points(std::uint32_t mask);

struct PoolSpec
{
  unsigned samples = 48;
  bool normalizers = true;
  bool centralizers = false;
  bool frobenius = true;
  bool closure = true;
  std::size_t min_size = 5;
  std::size_t max_size = 64;
  std::vector<std::vector<Perm>> extra;   // further subgroups, by generators
};

struct OrbitSearchStats
{
  std::uint64_t subgroups = 0;
  std::uint64_t candidates = 0;
  bool exhausted = false;
};

std::optional<BeautifulCertificate> orbit_beautiful_search(PermGroup const &g,
                                                           PoolSpec const &pool,
                                                           std::uint64_t seed, Budget budget,
                                                           OrbitSearchStats *stats = nullptr);

struct FrobeniusCandidate
{
  Perm h, g;
  unsigned t = 0, k = 0;
};

enum class FrobeniusOutcome
{
  beautiful,
  alternative,
  precondition_failure,
  inconclusive
};

struct FrobeniusVerdict
{
  FrobeniusOutcome outcome = FrobeniusOutcome::precondition_failure;
  std::string message;
  Order k_order = 0;
  Order k_meet_m_order = 0;
  std::size_t delta_size = 0;
  bool k_sharply_2_transitive = false;
  std::size_t fix_g = 0;
  std::optional<Perm> f;
  std::uint64_t scanned = 0;
};

// M is the stabilizer of the coset M; Λ is the natural domain of M and G.
// The coset space is never built: Δ is handled through K ∩ M.
FrobeniusVerdict frobenius_beautiful(PermGroup const &g, PermGroup const &m,
                                     FrobeniusCandidate const &c,
                                     std::size_t guard = kEnumerationGuard);

struct StabsCheck
{
  bool centralizer_fixes = false;       // C_M(H) <= G_(Λ)
  bool setwise_normalizes = false;      // G_Λ <= N_G(G_(Λ))
  std::vector<Point> lambda;
};
StabsCheck check_lemma_stabs(PermGroup const &g, PermGroup const &h, Point w);

} // namespace relcx
