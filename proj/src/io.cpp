#include "hodgekit/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "hodgekit/errors.hpp"

namespace hk {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object())
    throw InputError(where + ": expected an object with a '" + key + "' field");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where + ": missing field '" + key + "'");
  return *it;
}

int int_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw InputError(where + ": expected an integer");
  return j.get<int>();
}

}  // namespace

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("'" + path + "': " + e.what());
  }
}

Json rat_json(const Rat& q) { return Json(rat_str(q)); }

Rat rat_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (!j.is_string()) throw InputError(where + ": expected a rational \"p/q\" string");
  try {
    return rat_parse(j.get<std::string>());
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
}

Json vec_json(const Vec& v) {
  Json arr = Json::array();
  for (const auto& x : v) arr.push_back(rat_json(x));
  return arr;
}

Vec vec_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(rat_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

Json form_json(const HomogeneousForm& f) {
  Json j;
  j["dim"] = f.dim();
  j["degree"] = f.degree();
  Json terms = Json::array();
  for (const auto& [exp, coef] : f.terms()) {
    Json t;
    t["exp"] = exp;
    t["coef"] = rat_json(coef);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

HomogeneousForm form_from_json(const Json& j) {
  const int dim = int_from_json(field(j, "dim", "form"), "form.dim");
  const int degree = int_from_json(field(j, "degree", "form"), "form.degree");
  if (dim < 1 || degree < 0) throw InputError("form: dim/degree out of range");
  HomogeneousForm f(dim, degree);
  const Json& terms = field(j, "terms", "form");
  if (!terms.is_array()) throw InputError("form.terms: expected an array");
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string where = "form.terms[" + std::to_string(t) + "]";
    const Json& je = field(terms[t], "exp", where);
    if (!je.is_array() || (int)je.size() != dim)
      throw InputError(where + ".exp: expected " + std::to_string(dim) + " entries");
    Exponent exp;
    int total = 0;
    for (std::size_t i = 0; i < je.size(); ++i) {
      int a = int_from_json(je[i], where + ".exp[" + std::to_string(i) + "]");
      if (a < 0) throw InputError(where + ".exp: negative exponent");
      exp.push_back(a);
      total += a;
    }
    if (total != degree)
      throw InputError(where + ".exp: exponents sum to " + std::to_string(total) +
                       ", degree is " + std::to_string(degree));
    f.add_term(exp, rat_from_json(field(terms[t], "coef", where), where + ".coef"));
  }
  return f;
}

namespace {

std::vector<Vec> vec_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of vectors");
  std::vector<Vec> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(vec_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

std::vector<Vec> cone_from_json(const Json& j) {
  return vec_list(field(j, "generators", "cone"), "cone.generators");
}

std::vector<Vec> collection_from_json(const Json& j) {
  return vec_list(field(j, "classes", "collection"), "collection.classes");
}

LorentzInstance instance_from_json(const Json& j) {
  HomogeneousForm f = form_from_json(field(j, "form", "instance"));
  std::vector<Vec> nef =
      vec_list(field(j, "nef_generators", "instance"), "instance.nef_generators");
  Vec omega =
      vec_from_json(field(j, "interior_witness", "instance"), "instance.interior_witness");
  const Json& je = field(j, "eff_generators", "instance");
  if (!je.is_array()) throw InputError("instance.eff_generators: expected an array");
  std::vector<EffGenerator> eff;
  for (std::size_t i = 0; i < je.size(); ++i) {
    const std::string where = "instance.eff_generators[" + std::to_string(i) + "]";
    const Json& jl = field(je[i], "label", where);
    if (!jl.is_string()) throw InputError(where + ".label: expected a string");
    eff.push_back({jl.get<std::string>(),
                   vec_from_json(field(je[i], "vec", where), where + ".vec")});
  }
  std::string label = j.contains("label") && j["label"].is_string()
                          ? j["label"].get<std::string>()
                          : "instance";
  return build_explicit(label, f, std::move(nef), std::move(omega), std::move(eff));
}

Json instance_json(const LorentzInstance& inst) {
  Json j;
  j["label"] = inst.label();
  j["form"] = form_json(inst.F().source());
  Json nef = Json::array();
  for (const auto& g : inst.nef_generators()) nef.push_back(vec_json(g));
  j["nef_generators"] = std::move(nef);
  j["interior_witness"] = vec_json(inst.omega());
  Json eff = Json::array();
  for (const auto& e : inst.eff_generators()) {
    Json g;
    g["label"] = e.label;
    g["vec"] = vec_json(e.vec);
    eff.push_back(std::move(g));
  }
  j["eff_generators"] = std::move(eff);
  return j;
}

Matroid matroid_from_json(const Json& j) {
  if (j.contains("uniform")) {
    const Json& u = j["uniform"];
    if (!u.is_array() || u.size() != 2)
      throw InputError("matroid.uniform: expected [rank, ground_set]");
    return Matroid::uniform(int_from_json(u[0], "matroid.uniform[0]"),
                            int_from_json(u[1], "matroid.uniform[1]"));
  }
  if (j.contains("graphic_edges")) {
    const Json& ge = j["graphic_edges"];
    if (!ge.is_array()) throw InputError("matroid.graphic_edges: expected an array");
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < ge.size(); ++i) {
      const std::string where = "matroid.graphic_edges[" + std::to_string(i) + "]";
      if (!ge[i].is_array() || ge[i].size() != 2)
        throw InputError(where + ": expected [u, v]");
      edges.push_back({int_from_json(ge[i][0], where + "[0]"),
                       int_from_json(ge[i][1], where + "[1]")});
    }
    return Matroid::graphic(edges);
  }
  const int n = int_from_json(field(j, "ground_set", "matroid"), "matroid.ground_set");
  const Json& jb = field(j, "bases", "matroid");
  if (!jb.is_array()) throw InputError("matroid.bases: expected an array");
  std::vector<std::vector<int>> bases;
  for (std::size_t i = 0; i < jb.size(); ++i) {
    const std::string where = "matroid.bases[" + std::to_string(i) + "]";
    if (!jb[i].is_array()) throw InputError(where + ": expected an element list");
    std::vector<int> b;
    for (std::size_t k = 0; k < jb[i].size(); ++k)
      b.push_back(int_from_json(jb[i][k], where + "[" + std::to_string(k) + "]"));
    bases.push_back(std::move(b));
  }
  return Matroid::from_bases(n, bases);
}

std::pair<MarkedFan, MinkowskiWeight> fan_from_json(const Json& j) {
  MarkedFan fan;
  fan.ambient = int_from_json(field(j, "ambient_dim", "fan"), "fan.ambient_dim");
  const Json& jr = field(j, "rays", "fan");
  if (!jr.is_array()) throw InputError("fan.rays: expected an array");
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < jr.size(); ++i) {
    const std::string where = "fan.rays[" + std::to_string(i) + "]";
    const Json& jid = field(jr[i], "id", where);
    if (!jid.is_string()) throw InputError(where + ".id: expected a string");
    std::string id = jid.get<std::string>();
    if (index.count(id)) throw InputError(where + ".id: duplicate ray id '" + id + "'");
    Vec u = vec_from_json(field(jr[i], "u", where), where + ".u");
    if ((int)u.size() != fan.ambient)
      throw InputError(where + ".u: expected " + std::to_string(fan.ambient) +
                       " coordinates");
    index[id] = (int)fan.ray_ids.size();
    fan.ray_ids.push_back(std::move(id));
    fan.markings.push_back(std::move(u));
  }

  auto cone_of_ids = [&](const Json& jc, const std::string& where) {
    if (!jc.is_array()) throw InputError(where + ": expected a ray id list");
    std::vector<int> cone;
    for (std::size_t k = 0; k < jc.size(); ++k) {
      if (!jc[k].is_string()) throw InputError(where + ": ray ids are strings");
      auto it = index.find(jc[k].get<std::string>());
      if (it == index.end())
        throw InputError(where + ": unknown ray id '" + jc[k].get<std::string>() + "'");
      cone.push_back(it->second);
    }
    std::sort(cone.begin(), cone.end());
    if (std::adjacent_find(cone.begin(), cone.end()) != cone.end())
      throw InputError(where + ": repeated ray");
    return cone;
  };

  const Json& jc = field(j, "cones", "fan");
  if (!jc.is_array()) throw InputError("fan.cones: expected an array");
  int dim = 0;
  std::vector<std::vector<int>> maximal;
  for (std::size_t i = 0; i < jc.size(); ++i) {
    auto cone = cone_of_ids(jc[i], "fan.cones[" + std::to_string(i) + "]");
    dim = std::max(dim, (int)cone.size());
    maximal.push_back(std::move(cone));
  }
  fan.dim = dim;
  for (const auto& cone : maximal) {
    // close over faces: every nonempty subset
    const std::size_t n = cone.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> face;
      for (std::size_t b = 0; b < n; ++b)
        if (mask & (1u << b)) face.push_back(cone[b]);
      fan.cones.insert(std::move(face));
    }
  }

  MinkowskiWeight weight;
  weight.k = dim;
  const Json& jw = field(j, "weights", "fan");
  if (!jw.is_object()) throw InputError("fan.weights: expected an object");
  for (auto it = jw.begin(); it != jw.end(); ++it) {
    std::stringstream ss(it.key());
    Json ids = Json::array();
    std::string part;
    while (std::getline(ss, part, ',')) ids.push_back(part);
    auto cone = cone_of_ids(ids, "fan.weights['" + it.key() + "']");
    if ((int)cone.size() != dim)
      throw InputError("fan.weights['" + it.key() + "']: not a maximal cone");
    if (!fan.has_cone(cone))
      throw InputError("fan.weights['" + it.key() + "']: cone not in the fan");
    Rat w = rat_from_json(it.value(), "fan.weights['" + it.key() + "']");
    if (w != 0) weight.w[cone] = w;
  }
  return {std::move(fan), std::move(weight)};
}

Json fan_json(const MarkedFan& fan, const MinkowskiWeight& weight) {
  Json j;
  j["ambient_dim"] = fan.ambient;
  Json rays = Json::array();
  for (std::size_t i = 0; i < fan.nrays(); ++i) {
    Json r;
    r["id"] = fan.ray_ids[i];
    r["u"] = vec_json(fan.markings[i]);
    rays.push_back(std::move(r));
  }
  j["rays"] = std::move(rays);
  Json cones = Json::array();
  for (const auto& cone : fan.cones_of_dim(fan.dim)) {
    Json c = Json::array();
    for (int r : cone) c.push_back(fan.ray_ids[r]);
    cones.push_back(std::move(c));
  }
  j["cones"] = std::move(cones);
  Json w = Json::object();
  for (const auto& [cone, val] : weight.w) {
    std::string key;
    for (std::size_t i = 0; i < cone.size(); ++i) {
      if (i) key += ",";
      key += fan.ray_ids[cone[i]];
    }
    w[key] = rat_json(val);
  }
  j["weights"] = std::move(w);
  return j;
}

}  // namespace hk
