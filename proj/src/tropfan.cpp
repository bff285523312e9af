#include "hodgekit/tropfan.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hodgekit/errors.hpp"
#include "hodgekit/exactlin.hpp"
#include "hodgekit/parallel.hpp"

namespace hk {

namespace {

std::string cone_label(const std::vector<int>& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + "}";
}

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<int> set_difference(const std::vector<int>& a,
                                const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

// Positive rational multiple of v that is integral with content 1.
Vec primitive_integral(const Vec& v) {
  mpz_class den_lcm = 1;
  for (const Rat& e : v) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                                 e.get_den().get_mpz_t());
  mpz_class content = 0;
  for (const Rat& e : v) {
    mpz_class scaled = e.get_num() * (den_lcm / e.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled.get_mpz_t());
  }
  if (content == 0) throw InputError("cannot primitivize the zero vector");
  Rat scale = Rat(den_lcm) / Rat(content);
  return vec_scale(scale, v);
}

std::vector<Vec> markings_of(const MarkedFan& fan, const std::vector<int>& cone) {
  std::vector<Vec> out;
  out.reserve(cone.size());
  for (int r : cone) out.push_back(fan.markings[r]);
  return out;
}

void check_phi(const MarkedFan& fan, const Vec& phi) {
  if (phi.size() != fan.nrays())
    throw InputError("class must assign one value per ray");
}

void check_weight_shape(const MarkedFan& fan, const MinkowskiWeight& omega) {
  if (omega.k < 0 || omega.k > fan.dim)
    throw InputError("weight dimension outside the fan");
  for (const auto& [cone, wt] : omega.w) {
    if (omega.k == 0) {
      if (!cone.empty()) throw InputError("zero-dimensional weight must sit at the origin");
      continue;
    }
    if ((int)cone.size() != omega.k || !fan.has_cone(cone))
      throw InputError("weight on " + cone_label(cone) + " which is not a fan cone of dimension " +
                       std::to_string(omega.k));
    (void)wt;
  }
}

// Accumulated divisor data at one codimension-one cone.
struct WallSum {
  Rat phi_total;
  Vec vec_total;
};

std::map<std::vector<int>, WallSum> wall_sums(const MarkedFan& fan,
                                              const MinkowskiWeight& omega,
                                              const Vec* phi) {
  std::map<std::vector<int>, WallSum> acc;
  for (const auto& [cone, wt] : omega.w) {
    if (wt == 0) continue;
    for (std::size_t i = 0; i < cone.size(); ++i) {
      std::vector<int> tau = cone;
      int extra = tau[i];
      tau.erase(tau.begin() + i);
      auto& slot = acc[tau];
      if (slot.vec_total.empty()) slot.vec_total = zero_vec(fan.ambient);
      slot.vec_total = vec_add(slot.vec_total, vec_scale(wt, fan.markings[extra]));
      if (phi) slot.phi_total += wt * (*phi)[extra];
    }
  }
  return acc;
}

MinkowskiWeight divisor_core(const MarkedFan& fan, const Vec& phi,
                             const MinkowskiWeight& omega, bool check_input) {
  check_phi(fan, phi);
  check_weight_shape(fan, omega);
  if (omega.k < 1) throw InputError("weight is already zero-dimensional");
  if (!fan.lattice_markings())
    throw InputError("divisor requires primitive integral markings");
  if (check_input) {
    BalanceResult in = check_balanced(fan, omega);
    if (!in.ok)
      throw InputError("divisor input is not balanced at " + cone_label(in.tau));
  }

  MinkowskiWeight out;
  out.k = omega.k - 1;
  for (auto& [tau, sum] : wall_sums(fan, omega, &phi)) {
    Rat linear_part;
    if (tau.empty()) {
      if (!vec_is_zero(sum.vec_total))
        throw TheoremViolation("balanced weight with nonzero ray sum");
    } else {
      auto coeffs = express_in(markings_of(fan, tau), sum.vec_total);
      if (!coeffs)
        throw TheoremViolation("balancing vector left the span of " + cone_label(tau));
      for (std::size_t i = 0; i < tau.size(); ++i)
        linear_part += (*coeffs)[i] * phi[tau[i]];
    }
    Rat wt = sum.phi_total - linear_part;
    if (wt != 0) out.w[tau] = wt;
  }

  BalanceResult recheck = check_balanced(fan, out);
  if (!recheck.ok)
    throw TheoremViolation("divisor output failed balancing at " + cone_label(recheck.tau));
  return out;
}

// Shared body of is_nef / is_ample.
PosResult positivity_check(const MarkedFan& fan, const Vec& phi, bool strict) {
  check_phi(fan, phi);
  std::vector<std::vector<int>> taus;
  taus.push_back({});
  for (const auto& c : fan.cones) taus.push_back(c);

  std::vector<std::optional<ConeCert>> certs(taus.size());
  std::vector<char> good(taus.size(), 0);
  parallel_for(taus.size(), [&](std::size_t t) {
    const auto& tau = taus[t];
    std::vector<LinCon> cons;
    for (int r : tau) cons.push_back({fan.markings[r], phi[r], Rel::Eq});
    for (int r : set_difference(fan.neighborhood_rays(tau), tau)) {
      // <x, u_r> <= phi_r, strictly below off tau in the ample case
      cons.push_back({vec_scale(Rat(-1), fan.markings[r]), -phi[r],
                      strict ? Rel::Gt : Rel::Ge});
    }
    LpResult lp = lp_feasible(cons, fan.ambient);
    if (lp.feasible) {
      good[t] = 1;
      certs[t] = ConeCert{tau, lp.witness};
    }
  });

  PosResult res;
  for (std::size_t t = 0; t < taus.size(); ++t) {
    if (!good[t]) {
      res.ok = false;
      res.failed_cone = taus[t];
      res.certificates.clear();
      return res;
    }
    res.certificates.push_back(*certs[t]);
  }
  res.ok = true;
  return res;
}

}  // namespace

std::vector<std::vector<int>> MarkedFan::cones_of_dim(int k) const {
  std::vector<std::vector<int>> out;
  for (const auto& c : cones)
    if ((int)c.size() == k) out.push_back(c);
  return out;
}

std::vector<int> MarkedFan::neighborhood_rays(const std::vector<int>& tau) const {
  std::set<int> acc(tau.begin(), tau.end());
  for (const auto& c : cones)
    if (is_subset(tau, c)) acc.insert(c.begin(), c.end());
  return std::vector<int>(acc.begin(), acc.end());
}

bool MarkedFan::lattice_markings() const {
  for (const Vec& u : markings) {
    mpz_class content = 0;
    for (const Rat& e : u) {
      if (e.get_den() != 1) return false;
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), e.get_num().get_mpz_t());
    }
    if (content != 1) return false;
  }
  return true;
}

ValidateResult validate(const MarkedFan& fan) {
  ValidateResult res;
  auto fail = [&](std::string what, std::vector<int> a, std::vector<int> b) {
    res.ok = false;
    res.violation = FanViolation{std::move(what), std::move(a), std::move(b)};
  };

  if (fan.ambient < 0 || fan.dim < 0 || fan.ray_ids.size() != fan.nrays()) {
    fail("inconsistent fan header", {}, {});
    return res;
  }
  for (std::size_t r = 0; r < fan.nrays(); ++r) {
    if ((int)fan.markings[r].size() != fan.ambient || vec_is_zero(fan.markings[r])) {
      fail("ray marking has the wrong shape or is zero", {(int)r}, {});
      return res;
    }
  }

  std::vector<char> used(fan.nrays(), 0);
  for (const auto& c : fan.cones) {
    if (c.empty() || !std::is_sorted(c.begin(), c.end()) ||
        std::adjacent_find(c.begin(), c.end()) != c.end() || c.front() < 0 ||
        c.back() >= (int)fan.nrays()) {
      fail("malformed cone", c, {});
      return res;
    }
    for (int r : c) used[r] = 1;
  }
  for (std::size_t r = 0; r < fan.nrays(); ++r) {
    if (!used[r]) {
      fail("ray belongs to no cone", {(int)r}, {});
      return res;
    }
  }

  // Face closure: every nonempty proper subset is again a cone.
  for (const auto& c : fan.cones) {
    if (c.size() < 2) continue;
    for (unsigned mask = 1; mask + 1 < (1u << c.size()); ++mask) {
      std::vector<int> face;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (mask & (1u << i)) face.push_back(c[i]);
      if (!fan.cones.count(face)) {
        fail("face of a cone is missing from the fan", c, face);
        return res;
      }
    }
  }

  // Simpliciality: markings of each cone are linearly independent.
  for (const auto& c : fan.cones) {
    if (rank_rows(markings_of(fan, c)) != (int)c.size()) {
      fail("cone markings are linearly dependent", c, {});
      return res;
    }
  }

  // Purity: every inclusion-maximal cone has the declared dimension.
  for (const auto& c : fan.cones) {
    if ((int)c.size() == fan.dim) continue;
    bool covered = false;
    for (const auto& d : fan.cones) {
      if (d.size() == c.size() + 1 && is_subset(c, d)) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      fail("maximal cone of the wrong dimension", c, {});
      return res;
    }
  }
  if (fan.cones.empty() && fan.dim != 0) {
    fail("empty fan declared with positive dimension", {}, {});
    return res;
  }

  // Pairwise intersections meet along the common face: feasibility of a
  // functional vanishing on the shared rays and strictly separating the rest.
  std::vector<std::vector<int>> all(fan.cones.begin(), fan.cones.end());
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) pairs.push_back({i, j});

  std::vector<char> bad(pairs.size(), 0);
  parallel_for(pairs.size(), [&](std::size_t p) {
    const auto& a = all[pairs[p].first];
    const auto& b = all[pairs[p].second];
    if (is_subset(a, b) || is_subset(b, a)) return;
    std::vector<int> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(common));
    std::vector<LinCon> cons;
    for (int r : common) cons.push_back({fan.markings[r], Rat(0), Rel::Eq});
    for (int r : set_difference(a, common))
      cons.push_back({vec_scale(Rat(-1), fan.markings[r]), Rat(0), Rel::Gt});
    for (int r : set_difference(b, common))
      cons.push_back({fan.markings[r], Rat(0), Rel::Gt});
    if (!lp_feasible(cons, fan.ambient).feasible) bad[p] = 1;
  });
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (bad[p]) {
      fail("cones do not intersect in a common face", all[pairs[p].first],
           all[pairs[p].second]);
      return res;
    }
  }

  res.ok = true;
  return res;
}

BalanceResult check_balanced(const MarkedFan& fan, const MinkowskiWeight& omega) {
  check_weight_shape(fan, omega);
  BalanceResult res;
  if (omega.k == 0) {
    res.ok = true;
    return res;
  }
  for (auto& [tau, sum] : wall_sums(fan, omega, nullptr)) {
    bool fine = tau.empty() ? vec_is_zero(sum.vec_total)
                            : in_span(markings_of(fan, tau), sum.vec_total);
    if (!fine) {
      res.ok = false;
      res.tau = tau;
      res.defect = sum.vec_total;
      return res;
    }
  }
  res.ok = true;
  return res;
}

Vec pl_basis_class(const MarkedFan& fan, int ray) {
  if (ray < 0 || ray >= (int)fan.nrays()) throw InputError("ray index out of range");
  return unit_vec(fan.nrays(), ray);
}

Vec pl_linear_class(const MarkedFan& fan, const Vec& functional) {
  if ((int)functional.size() != fan.ambient)
    throw InputError("functional must live in the ambient space");
  Vec out;
  out.reserve(fan.nrays());
  for (const Vec& u : fan.markings) out.push_back(dot(functional, u));
  return out;
}

MinkowskiWeight divisor(const MarkedFan& fan, const Vec& phi,
                        const MinkowskiWeight& omega) {
  return divisor_core(fan, phi, omega, true);
}

Rat degree(const MarkedFan& fan, const MinkowskiWeight& omega,
           const std::vector<Vec>& classes) {
  if ((int)classes.size() != omega.k)
    throw InputError("degree needs exactly one class per weight dimension");
  if (omega.k == 0) {
    check_weight_shape(fan, omega);
    return omega.at({});
  }
  MinkowskiWeight cur = divisor_core(fan, classes[0], omega, true);
  for (std::size_t i = 1; i < classes.size(); ++i)
    cur = divisor_core(fan, classes[i], cur, false);
  return cur.at({});
}

PosResult is_nef(const MarkedFan& fan, const Vec& phi) {
  return positivity_check(fan, phi, false);
}

PosResult is_ample(const MarkedFan& fan, const Vec& phi) {
  return positivity_check(fan, phi, true);
}

StarFan star_fan(const MarkedFan& fan, const MinkowskiWeight& omega,
                 const std::vector<int>& tau) {
  if (!fan.has_cone(tau))
    throw InputError("star requested at " + cone_label(tau) + " which is not a cone");
  if (omega.k != fan.dim)
    throw InputError("star fan needs the top-dimensional weight");

  // Quotient coordinates: RREF the markings of tau and keep the free columns.
  std::vector<Vec> rr = rref_rows(markings_of(fan, tau));
  if ((int)rr.size() != (int)tau.size())
    throw InputError("star cone has dependent markings");
  std::vector<int> pivots;
  for (const Vec& row : rr) {
    int p = 0;
    while (row[p] == 0) ++p;
    pivots.push_back(p);
  }
  std::vector<char> is_pivot(fan.ambient, 0);
  for (int p : pivots) is_pivot[p] = 1;
  std::vector<int> free_cols;
  for (int j = 0; j < fan.ambient; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);

  auto project = [&](const Vec& x) {
    Vec y = x;
    for (std::size_t i = 0; i < rr.size(); ++i)
      y = vec_sub(y, vec_scale(x[pivots[i]], rr[i]));
    Vec out;
    out.reserve(free_cols.size());
    for (int j : free_cols) out.push_back(y[j]);
    return out;
  };

  StarFan star;
  star.tau = tau;
  star.fan.ambient = (int)free_cols.size();
  star.fan.dim = fan.dim - (int)tau.size();

  // Star rays: neighborhood rays off tau, merged by primitive image.
  std::map<Vec, int> index_by_marking;
  std::vector<int> star_of_source((int)fan.nrays(), -1);
  for (int r : set_difference(fan.neighborhood_rays(tau), tau)) {
    Vec img = primitive_integral(project(fan.markings[r]));
    auto it = index_by_marking.find(img);
    if (it == index_by_marking.end()) {
      int id = (int)star.fan.markings.size();
      index_by_marking[img] = id;
      star.fan.markings.push_back(img);
      star.fan.ray_ids.push_back(fan.ray_ids[r]);
      star.source_ray.push_back(r);
      star_of_source[r] = id;
    } else {
      star_of_source[r] = it->second;
    }
  }

  for (const auto& c : fan.cones) {
    if (c == tau || !is_subset(tau, c)) continue;
    std::vector<int> img;
    for (int r : set_difference(c, tau)) img.push_back(star_of_source[r]);
    std::sort(img.begin(), img.end());
    if (std::adjacent_find(img.begin(), img.end()) != img.end())
      throw TheoremViolation("star collapses two rays of one cone");
    star.fan.cones.insert(img);
  }

  // Direct weight transfer; valid when the quotient preserves primitivity,
  // which the balancing recheck below certifies.
  star.weight.k = star.fan.dim;
  for (const auto& [cone, wt] : omega.w) {
    if (!is_subset(tau, cone)) continue;
    std::vector<int> img;
    for (int r : set_difference(cone, tau)) img.push_back(star_of_source[r]);
    std::sort(img.begin(), img.end());
    if (star.weight.w.count(img))
      throw TheoremViolation("distinct maximal cones share one star image");
    if (wt != 0) star.weight.w[img] = wt;
  }

  // Normalize the induced weight: integral values of content 1.
  if (!star.weight.w.empty()) {
    mpz_class den_lcm = 1, content = 0;
    for (const auto& [c, wt] : star.weight.w)
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), wt.get_den().get_mpz_t());
    for (const auto& [c, wt] : star.weight.w) {
      mpz_class scaled = wt.get_num() * (den_lcm / wt.get_den());
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled.get_mpz_t());
    }
    Rat scale = Rat(den_lcm) / Rat(content);
    for (auto& [c, wt] : star.weight.w) wt *= scale;
  }

  ValidateResult vr = validate(star.fan);
  if (!vr.ok)
    throw TheoremViolation("star fan failed validation: " + vr.violation->what);
  BalanceResult br = check_balanced(star.fan, star.weight);
  if (!br.ok)
    throw TheoremViolation("induced star weight is not balanced at " + cone_label(br.tau));
  return star;
}

Vec DivisorSpace::project(const Vec& per_ray) const {
  Vec y = per_ray;
  for (std::size_t i = 0; i < lin_rref.size(); ++i)
    y = vec_sub(y, vec_scale(per_ray[pivot_rays[i]], lin_rref[i]));
  Vec out;
  out.reserve(free_rays.size());
  for (int j : free_rays) out.push_back(y[j]);
  return out;
}

Vec DivisorSpace::section(const Vec& coords) const {
  if (coords.size() != free_rays.size())
    throw InputError("coordinate vector does not match the divisor space");
  Vec out = zero_vec(pivot_rays.size() + free_rays.size());
  for (std::size_t j = 0; j < free_rays.size(); ++j) out[free_rays[j]] = coords[j];
  return out;
}

DivisorSpace divisor_space(const MarkedFan& fan) {
  std::vector<Vec> rows;
  for (int j = 0; j < fan.ambient; ++j) {
    Vec row;
    row.reserve(fan.nrays());
    for (const Vec& u : fan.markings) row.push_back(u[j]);
    rows.push_back(row);
  }
  DivisorSpace ds;
  ds.lin_rref = rref_rows(rows);
  std::vector<char> is_pivot(fan.nrays(), 0);
  for (const Vec& row : ds.lin_rref) {
    int p = 0;
    while (row[p] == 0) ++p;
    ds.pivot_rays.push_back(p);
    is_pivot[p] = 1;
  }
  for (std::size_t j = 0; j < fan.nrays(); ++j)
    if (!is_pivot[j]) ds.free_rays.push_back((int)j);
  return ds;
}

HomogeneousForm volume_form(const MarkedFan& fan, const MinkowskiWeight& omega,
                            const DivisorSpace& ds) {
  if (omega.k != fan.dim)
    throw InputError("volume form needs the top-dimensional weight");
  int n = fan.dim;
  int q = (int)ds.dim();
  if (n == 0) {
    check_weight_shape(fan, omega);
    return HomogeneousForm::monomial(q, Exponent(q, 0), omega.at({}));
  }
  BalanceResult in = check_balanced(fan, omega);
  if (!in.ok)
    throw InputError("volume form input is not balanced at " + cone_label(in.tau));

  // deg((sum_j y_j D_j)^n) expanded over shared monomial prefixes: one
  // divisor application per distinct non-decreasing index sequence.
  std::vector<HomogeneousForm> parts(q, HomogeneousForm(q, n));
  parallel_for(q, [&](std::size_t first) {
    HomogeneousForm& acc = parts[first];
    std::function<void(std::size_t, int, const MinkowskiWeight&, Exponent&)> walk =
        [&](std::size_t j, int depth, const MinkowskiWeight& cur, Exponent& beta) {
          MinkowskiWeight next =
              divisor_core(fan, pl_basis_class(fan, ds.free_rays[j]), cur, false);
          if (next.w.empty() && depth < n) return;
          ++beta[j];
          if (depth == n) {
            Rat deg_val = next.at({});
            if (deg_val != 0) {
              Rat mult = Rat(factorial((unsigned)n));
              for (int e : beta)
                if (e > 1) mult /= Rat(factorial((unsigned)e));
              acc.add_term(beta, mult * deg_val);
            }
          } else {
            for (std::size_t j2 = j; j2 < (std::size_t)q; ++j2)
              walk(j2, depth + 1, next, beta);
          }
          --beta[j];
        };
    Exponent beta(q, 0);
    walk(first, 1, omega, beta);
  });

  HomogeneousForm vol(q, n);
  for (const auto& part : parts)
    for (const auto& [exp, coef] : part.terms()) vol.add_term(exp, coef);
  return vol;
}

AmpleFamily ample_generators(const MarkedFan& fan,
                             const std::optional<Vec>& suggested) {
  AmpleFamily fam;
  std::vector<Vec> candidates;
  candidates.push_back(Vec(fan.nrays(), Rat(1)));
  if (suggested) {
    check_phi(fan, *suggested);
    candidates.push_back(*suggested);
  }
  for (const Vec& cand : candidates) {
    if (is_ample(fan, cand).ok) {
      fam.found = true;
      fam.base = cand;
      break;
    }
  }
  if (!fam.found) return fam;

  fam.classes.push_back(fam.base);
  for (std::size_t r = 0; r < fan.nrays(); ++r) {
    for (Rat sign : {Rat(1), Rat(-1)}) {
      Rat t(1);
      for (int halving = 0; halving < 7; ++halving, t /= 2) {
        Vec cand = fam.base;
        cand[r] += sign * t;
        if (is_ample(fan, cand).ok) {
          fam.classes.push_back(cand);
          break;
        }
      }
    }
  }
  return fam;
}

FanLorentzReport lorentzian_fan_check(const MarkedFan& fan,
                                      const MinkowskiWeight& omega,
                                      const std::optional<Vec>& suggested_ample) {
  FanLorentzReport rep;
  ValidateResult vr = validate(fan);
  if (!vr.ok) {
    rep.reason = "fan validation failed: " + vr.violation->what;
    return rep;
  }
  if (!fan.lattice_markings()) {
    rep.reason = "markings are not primitive integral";
    return rep;
  }
  if (omega.k != fan.dim)
    throw InputError("lorentzian check needs the top-dimensional weight");
  BalanceResult br = check_balanced(fan, omega);
  if (!br.ok) {
    rep.reason = "weight is not balanced";
    rep.failed_tau = br.tau;
    return rep;
  }

  std::vector<std::vector<int>> taus;
  taus.push_back({});
  for (const auto& c : fan.cones) taus.push_back(c);

  for (const auto& tau : taus) {
    ++rep.cones_checked;
    auto fail = [&](std::string why) {
      rep.ok = false;
      rep.reason = std::move(why);
      rep.failed_tau = tau;
    };

    StarFan star = star_fan(fan, omega, tau);
    int n = star.fan.dim;
    if (n == 0) {
      if (star.weight.at({}) <= 0) {
        fail("nonpositive point weight");
        return rep;
      }
      continue;
    }

    std::optional<Vec> star_suggested;
    if (suggested_ample) {
      check_phi(fan, *suggested_ample);
      Vec s;
      s.reserve(star.fan.nrays());
      for (int src : star.source_ray) s.push_back((*suggested_ample)[src]);
      star_suggested = s;
    }
    AmpleFamily fam = ample_generators(star.fan, star_suggested);
    if (!fam.found) {
      fail("no certified ample base class at this cone");
      return rep;
    }
    rep.family_sizes.push_back(fam.classes.size());

    DivisorSpace ds = divisor_space(star.fan);
    HomogeneousForm vol = volume_form(star.fan, star.weight, ds);
    std::vector<Vec> gens;
    gens.reserve(fam.classes.size());
    for (const Vec& a : fam.classes) gens.push_back(ds.project(a));

    if (n == 1) {
      for (const Vec& g : gens) {
        if (vol.eval(g) <= 0) {
          fail("nonpositive degree on a certified ample class");
          return rep;
        }
      }
      continue;
    }

    if (rank_rows(gens) != (int)ds.dim()) {
      fail("certified ample family does not span the divisor space");
      return rep;
    }
    LorentzVerdict verdict = is_c_lorentzian(vol, gens);
    if (!verdict.ok) {
      rep.verdict = verdict;
      fail("volume form is not lorentzian at this cone: " + verdict.reason);
      return rep;
    }
  }

  rep.ok = true;
  return rep;
}

BergmanFan bergman(const Matroid& m) {
  int n = m.size();
  int r = m.rank();
  if (n < 1) throw InputError("bergman fan needs a nonempty ground set");

  BergmanFan bf;
  bf.fan.ambient = n - 1;
  bf.fan.dim = r - 1;

  std::vector<std::uint32_t> flats = m.proper_flats();
  std::map<std::uint32_t, int> ray_of_flat;
  for (std::uint32_t f : flats) {
    int id = (int)bf.fan.markings.size();
    ray_of_flat[f] = id;
    bf.ray_flats.push_back(f);
    Vec u;
    u.reserve(n - 1);
    int has0 = (f & 1u) ? 1 : 0;
    for (int i = 1; i < n; ++i) {
      int hasi = (f >> i) & 1u;
      u.push_back(Rat(hasi - has0));
    }
    bf.fan.markings.push_back(u);
    std::string id_str = "F";
    for (int i = 0; i < n; ++i)
      if ((f >> i) & 1u) id_str += (id_str.size() == 1 ? "" : "_") + std::to_string(i);
    bf.fan.ray_ids.push_back(id_str);
    int fsize = std::popcount(f);
    bf.suggested_ample.push_back(Rat(fsize * (n - fsize)));
  }

  for (int k = 1; k <= r - 1; ++k) {
    for (const auto& flag : m.flags_of_proper_flats(k)) {
      std::vector<int> cone;
      for (std::uint32_t f : flag) cone.push_back(ray_of_flat.at(f));
      std::sort(cone.begin(), cone.end());
      bf.fan.cones.insert(cone);
    }
  }

  bf.weight.k = r - 1;
  if (r - 1 == 0) {
    bf.weight.w[{}] = 1;
  } else {
    for (const auto& c : bf.fan.cones_of_dim(r - 1)) bf.weight.w[c] = 1;
  }

  ValidateResult vr = validate(bf.fan);
  if (!vr.ok)
    throw TheoremViolation("bergman fan failed validation: " + vr.violation->what);
  BalanceResult br = check_balanced(bf.fan, bf.weight);
  if (!br.ok)
    throw TheoremViolation("bergman fan weight is not balanced at " + cone_label(br.tau));
  return bf;
}

}  // namespace hk
