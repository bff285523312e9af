#include "hodgekit/instance.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

#include "hodgekit/errors.hpp"
#include "hodgekit/exactlin.hpp"
#include "hodgekit/parallel.hpp"

namespace hk {

namespace {

std::string vec_brief(const Vec& v) { return vec_str(v); }

// All products F(T, g_{i_1}, ..., g_{i_{n-1}}) over multisets of nef
// generators, by shared-prefix derivative chains. Returns the first
// violation as (eff index, multiset) if any value is negative.
struct PairingViolation {
  std::size_t eff_index = 0;
  std::vector<std::size_t> multiset;
};

std::optional<PairingViolation> pairing_check(const HomogeneousForm& f,
                                              const std::vector<Vec>& nef,
                                              const std::vector<EffGenerator>& eff) {
  const int n = f.degree();
  const mpz_class nfact = factorial((unsigned)n);
  std::vector<std::optional<PairingViolation>> found(eff.size());
  parallel_for(eff.size(), [&](std::size_t t) {
    HomogeneousForm h = f.directional_derivative(eff[t].vec);
    std::vector<std::size_t> stack;
    std::optional<PairingViolation> bad;
    std::function<void(const HomogeneousForm&, std::size_t)> walk =
        [&](const HomogeneousForm& cur, std::size_t start) {
          if (bad) return;
          if ((int)stack.size() == n - 1) {
            Rat value = cur.coefficient(Exponent(cur.dim(), 0));
            value /= Rat(nfact);
            if (sgn(value) < 0) bad = PairingViolation{t, stack};
            return;
          }
          for (std::size_t i = start; i < nef.size() && !bad; ++i) {
            stack.push_back(i);
            walk(cur.directional_derivative(nef[i]), i);
            stack.pop_back();
          }
        };
    walk(h, 0);
    found[t] = bad;
  });
  for (const auto& bad : found)
    if (bad) return bad;
  return std::nullopt;
}

}  // namespace

LorentzInstance LorentzInstance::make(std::string label, const HomogeneousForm& f,
                                      std::vector<Vec> nef_generators,
                                      Vec interior_witness,
                                      std::vector<EffGenerator> eff_generators,
                                      std::optional<FanContext> fan) {
  const int s = f.dim();
  const int n = f.degree();
  if (n < 1) throw InputError("instance: the degree form must have degree at least one");
  if (f.is_zero()) throw InputError("instance: the degree form is zero");
  if (nef_generators.empty()) throw InputError("instance: no nef generators");
  if (eff_generators.empty()) throw InputError("instance: no effective generators");
  if ((int)interior_witness.size() != s)
    throw InputError("instance: interior witness has the wrong dimension");
  for (const auto& g : nef_generators)
    if ((int)g.size() != s)
      throw InputError("instance: nef generator has the wrong dimension");
  for (const auto& e : eff_generators)
    if ((int)e.vec.size() != s)
      throw InputError("instance: effective generator has the wrong dimension");

  PolarizedForm F(f);
  if (sgn(F.eval_multi({{interior_witness, n}})) <= 0)
    throw InputError("instance '" + label +
                     "': the form is not positive at the interior witness");

  if (n >= 2) {
    LorentzVerdict verdict = is_c_lorentzian(f, nef_generators);
    if (!verdict.ok)
      throw InputError("instance '" + label +
                       "': the form is not lorentzian on the nef cone: " + verdict.reason);
  } else {
    for (const auto& g : nef_generators)
      if (sgn(f.eval(g)) < 0)
        throw InputError("instance '" + label +
                         "': degree-one form is negative at a nef generator");
  }

  std::vector<Vec> eff_vecs;
  eff_vecs.reserve(eff_generators.size());
  for (const auto& e : eff_generators) eff_vecs.push_back(e.vec);
  for (std::size_t i = 0; i < nef_generators.size(); ++i)
    if (!cone_coefficients(eff_vecs, nef_generators[i]))
      throw InputError("instance '" + label + "': nef generator " + std::to_string(i) +
                       " = " + vec_brief(nef_generators[i]) +
                       " is not a nonnegative combination of the effective family");

  if (auto bad = pairing_check(f, nef_generators, eff_generators)) {
    std::ostringstream os;
    os << "instance '" << label << "': effective generator '"
       << eff_generators[bad->eff_index].label
       << "' pairs negatively with nef generators (";
    for (std::size_t k = 0; k < bad->multiset.size(); ++k)
      os << (k ? ", " : "") << bad->multiset[k];
    os << ")";
    throw InputError(os.str());
  }

  return LorentzInstance(std::move(label), std::move(F), std::move(nef_generators),
                         std::move(interior_witness), std::move(eff_generators),
                         std::move(fan));
}

std::optional<Vec> LorentzInstance::certify_nef(const Vec& v) const {
  if ((int)v.size() != dim())
    throw InputError("certify_nef: vector has the wrong dimension");
  return cone_coefficients(nef_, v);
}

LorentzInstance build_diagonal_torus(int d) {
  if (d < 2) throw InputError("diagonal torus model needs dimension at least two");
  Exponent e(d, 1);
  HomogeneousForm f = HomogeneousForm::monomial(d, e, Rat(1));
  std::vector<Vec> nef;
  std::vector<EffGenerator> eff;
  for (int i = 0; i < d; ++i) {
    nef.push_back(unit_vec(d, i));
    eff.push_back({"e" + std::to_string(i + 1), unit_vec(d, i)});
  }
  Vec omega(d, Rat(1));
  return LorentzInstance::make("diagonal-torus-" + std::to_string(d), f, std::move(nef),
                               std::move(omega), std::move(eff));
}

namespace {

int tri_index(int d, int i, int j) {
  // row-major upper triangle: (0,0),(0,1),...,(0,d-1),(1,1),...
  if (i > j) std::swap(i, j);
  return i * d - i * (i - 1) / 2 + (j - i);
}

HomogeneousForm symmetric_det_form(int d) {
  const int s = d * (d + 1) / 2;
  HomogeneousForm f(s, d);
  std::vector<int> perm(d);
  for (int i = 0; i < d; ++i) perm[i] = i;
  do {
    int inv = 0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        if (perm[i] > perm[j]) ++inv;
    Exponent e(s, 0);
    for (int i = 0; i < d; ++i) ++e[tri_index(d, i, perm[i])];
    f.add_term(e, (inv % 2 == 0) ? Rat(1) : Rat(-1));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return f;
}

}  // namespace

LorentzInstance build_symmetric_torus(int d) {
  if (d < 2) throw InputError("symmetric torus model needs dimension at least two");
  const int s = d * (d + 1) / 2;
  HomogeneousForm f = symmetric_det_form(d);

  std::vector<Vec> nef;
  std::vector<EffGenerator> eff;
  auto push = [&](const std::string& label, const Vec& v) {
    nef.push_back(v);
    eff.push_back({label, v});
  };
  for (int i = 0; i < d; ++i)
    push("E" + std::to_string(i + 1) + std::to_string(i + 1), unit_vec(s, tri_index(d, i, i)));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Vec base = vec_add(unit_vec(s, tri_index(d, i, i)), unit_vec(s, tri_index(d, j, j)));
      Vec off = unit_vec(s, tri_index(d, i, j));
      std::string ij = std::to_string(i + 1) + std::to_string(j + 1);
      push("E" + ij + "+", vec_add(base, off));
      push("E" + ij + "-", vec_sub(base, off));
    }

  Vec omega(s, Rat(0));
  for (int i = 0; i < d; ++i) omega[tri_index(d, i, i)] = 1;
  return LorentzInstance::make("symmetric-torus-" + std::to_string(d), f, std::move(nef),
                               std::move(omega), std::move(eff));
}

LorentzInstance build_from_fan(const MarkedFan& fan, const MinkowskiWeight& omega,
                               const std::optional<Vec>& suggested_ample,
                               const std::string& label) {
  FanLorentzReport report = lorentzian_fan_check(fan, omega, suggested_ample);
  if (!report.ok) {
    std::string where;
    if (!report.failed_tau.empty()) {
      std::ostringstream os;
      os << " at star of {";
      for (std::size_t i = 0; i < report.failed_tau.size(); ++i)
        os << (i ? "," : "") << fan.ray_ids[report.failed_tau[i]];
      os << "}";
      where = os.str();
    }
    throw InputError("fan instance '" + label +
                     "': fan is not lorentzian: " + report.reason + where);
  }

  DivisorSpace ds = divisor_space(fan);
  HomogeneousForm vol = volume_form(fan, omega, ds);
  AmpleFamily fam = ample_generators(fan, suggested_ample);
  if (!fam.found)
    throw InputError("fan instance '" + label + "': no certified ample base class");

  std::vector<Vec> nef;
  std::set<Vec> seen;
  auto add_nef = [&](const Vec& v) {
    if (seen.insert(v).second) nef.push_back(v);
  };
  for (const auto& cls : fam.classes) add_nef(ds.project(cls));
  for (std::size_t r = 0; r < fan.nrays(); ++r) {
    Vec phi = unit_vec(fan.nrays(), r);
    if (is_nef(fan, phi).ok) add_nef(ds.project(phi));
  }

  Vec witness = ds.project(fam.base);
  std::vector<EffGenerator> eff;
  for (std::size_t r = 0; r < fan.nrays(); ++r)
    eff.push_back({fan.ray_ids[r], ds.project(unit_vec(fan.nrays(), r))});

  FanContext ctx{fan, omega, ds};
  return LorentzInstance::make(label, vol, std::move(nef), std::move(witness),
                               std::move(eff), std::move(ctx));
}

LorentzInstance build_explicit(const std::string& label, const HomogeneousForm& f,
                               std::vector<Vec> nef_generators, Vec interior_witness,
                               std::vector<EffGenerator> eff_generators) {
  return LorentzInstance::make(label, f, std::move(nef_generators),
                               std::move(interior_witness), std::move(eff_generators));
}

NefCollection NefCollection::make(const LorentzInstance& inst, std::vector<Vec> classes) {
  if ((int)classes.size() > inst.degree())
    throw InputError("nef collection: more classes than the form degree");
  NefCollection out;
  out.instance = &inst;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto cert = inst.certify_nef(classes[i]);
    if (!cert)
      throw InputError("nef collection: class " + std::to_string(i) + " = " +
                       vec_str(classes[i]) + " is not certified nef");
    out.certificates.push_back(*cert);
  }
  out.classes = std::move(classes);
  return out;
}

Vec NefCollection::subset_sum(unsigned mask) const {
  Vec v = zero_vec(instance->dim());
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (mask & (1u << i)) v = vec_add(v, classes[i]);
  return v;
}

}  // namespace hk
