#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hodgekit/forms.hpp"
#include "hodgekit/instance.hpp"
#include "hodgekit/matroid.hpp"
#include "hodgekit/rational.hpp"
#include "hodgekit/tropfan.hpp"
#include "json.hpp"

namespace hk {

using Json = nlohmann::ordered_json;

// Parse a file as JSON; InputError names the file and the parse failure.
Json load_json(const std::string& path);

// Scalars travel as "p/q" strings (plain "p" accepted on input).
Json rat_json(const Rat& q);
Rat rat_from_json(const Json& j, const std::string& where);
Json vec_json(const Vec& v);
Vec vec_from_json(const Json& j, const std::string& where);

// { "dim": s, "degree": n, "terms": [ {"exp": [...], "coef": "p/q"} ] }
Json form_json(const HomogeneousForm& f);
HomogeneousForm form_from_json(const Json& j);

// { "generators": [[...]] }
std::vector<Vec> cone_from_json(const Json& j);

// { "classes": [[...]] }
std::vector<Vec> collection_from_json(const Json& j);

// { "form": {...}, "nef_generators": [[...]], "interior_witness": [...],
//   "eff_generators": [ {"label": "D1", "vec": [...]} ], "label": "..." }
LorentzInstance instance_from_json(const Json& j);
Json instance_json(const LorentzInstance& inst);

// { "ground_set": n, "bases": [[...]] } or { "uniform": [r, n] }
// or { "graphic_edges": [[u, v], ...] }
Matroid matroid_from_json(const Json& j);

// { "ambient_dim": d, "rays": [ {"id": "r1", "u": [...]} ],
//   "cones": [ ["r1","r2"] ], "weights": { "r1,r2": "p/q" } }
// Cones are listed maximal; faces are closed over internally.
std::pair<MarkedFan, MinkowskiWeight> fan_from_json(const Json& j);
Json fan_json(const MarkedFan& fan, const MinkowskiWeight& weight);

}  // namespace hk
