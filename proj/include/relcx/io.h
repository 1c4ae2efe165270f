#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "relcx/actions.h"
#include "relcx/beautiful.h"
#include "relcx/binary.h"
#include "relcx/classical.h"

namespace relcx
{

using Json = nlohmann::ordered_json;

// Malformed input; the CLI maps it to exit code 3.
struct InputError : std::invalid_argument
{
  using std::invalid_argument::invalid_argument;
};

Json order_json(Order o);   // decimal string, exceeds 64 bits in general
Order order_from_json(Json const &j);

// {"images": [...], "cycles": "(1 2 3)"}
Json perm_json(Perm const &p);
// An image array, a cycle string, or the object above.
Perm perm_from_json(Json const &j, std::size_t degree);

// {"degree", "generators": [[...]], "order"?}. Generators may also be cycle
// strings. A given order is passed on as certified; the chain still
// verifies it. Orders beyond 128 bits are left out.
Json group_json(PermGroup const &g, bool with_order = true);
PermGroup group_from_json(Json const &j);
// "Sym5", "Alt13", a JSON text, or a path to a JSON file.
PermGroup parse_group(std::string const &text);

// {"tuples": [I, J], "level", "transporters": [{"subset", "element"}],
//  "refutation": {"mode", "seed", "nodes"}}; labels added when given.
Json witness_json(WitnessCertificate const &c, InducedAction const *a = nullptr);
WitnessCertificate witness_from_json(Json const &j, std::size_t degree);

// {"lambda": labels, "points", "stabilizer_gens", "setwise_order",
//  "kernel_order", "induced_order", "pair_orbit_count", "socle_variant"?}
Json beautiful_json(BeautifulCertificate const &c, InducedAction const *a = nullptr);
BeautifulCertificate beautiful_from_json(Json const &j, std::size_t degree);

Json model_json(ModelCertificate const &c);
ModelCertificate model_from_json(Json const &j, std::size_t degree);

// Row-major field codes.
Json matrix_json(Mat const &m);
Mat matrix_from_json(Json const &j);

// An action read from a spec. Permutation parents:
//   {"parent": "Sym6" | group, "action": {"type": "natural" | "k-subsets" |
//    "partitions" | "cosets" | "restrict", "k"?, "subgroup"?, "points"?}}
// Classical groups:
//   {"family", "n", "q", "action": {"dim", "class"} | {"dims": [d1, d2],
//    "incident"}, "derived"?, "extend"?: ["duality" | "frobenius" | "so"]}
struct LoadedAction
{
  InducedAction action;
  std::optional<MatrixGroupSpec> classical;
  std::shared_ptr<SubspaceAction const> subspaces;
};
LoadedAction load_action(Json const &spec);
LoadedAction parse_action(std::string const &text);

// A JSON value from inline text or a file path.
Json read_json_arg(std::string const &text);

} // namespace relcx
