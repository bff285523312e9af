#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hodgekit/forms.hpp"
#include "hodgekit/matroid.hpp"
#include "hodgekit/rational.hpp"

namespace hk {

// Simplicial fan with one marking vector per ray. Cones are sorted lists of
// ray indices; the set is kept closed under taking subsets (faces), the
// origin is implicit and written as the empty list. Pure of dimension `dim`.
struct MarkedFan {
  int ambient = 0;
  int dim = 0;
  std::vector<std::string> ray_ids;  // stable external names
  std::vector<Vec> markings;
  std::set<std::vector<int>> cones;  // nonempty cones only

  std::size_t nrays() const { return markings.size(); }
  bool has_cone(const std::vector<int>& c) const {
    return c.empty() || cones.count(c) != 0;
  }
  std::vector<std::vector<int>> cones_of_dim(int k) const;
  // Rays of every cone containing tau (tau's own rays included).
  std::vector<int> neighborhood_rays(const std::vector<int>& tau) const;
  // All markings integral with content 1 (divisor/degree precondition).
  bool lattice_markings() const;
};

struct FanViolation {
  std::string what;
  std::vector<int> cone_a, cone_b;
};

struct ValidateResult {
  bool ok = false;
  std::optional<FanViolation> violation;
};

// Face closure, pairwise-intersection-is-a-face (by strict-separation
// feasibility), simpliciality via marking independence, purity.
ValidateResult validate(const MarkedFan& fan);

// Weight on the k-dimensional cones; zero weights are never stored.
struct MinkowskiWeight {
  int k = 0;
  std::map<std::vector<int>, Rat> w;

  Rat at(const std::vector<int>& cone) const {
    auto it = w.find(cone);
    return it == w.end() ? Rat(0) : it->second;
  }
};

struct BalanceResult {
  bool ok = false;
  std::vector<int> tau;  // offending codimension-one cone
  Vec defect;            // the vector that failed span membership
};

// Exact balancing of omega at every cone of dimension k-1: the weighted sum
// of the opposite markings lies in the span of tau's markings.
BalanceResult check_balanced(const MarkedFan& fan, const MinkowskiWeight& omega);

// PL classes are value-per-ray vectors; two representatives differing by a
// globally linear function (v -> <v, u_rho> per ray) denote the same class.
Vec pl_basis_class(const MarkedFan& fan, int ray);  // value 1 at one ray
Vec pl_linear_class(const MarkedFan& fan, const Vec& functional);

// One tropical divisor step: weights on dim-k cones become weights on
// dim-(k-1) cones, w'(tau) = sum_{sigma > tau} w(sigma) phi(u_{sigma\tau})
// minus the tau-linear extension of phi applied to the balancing vector.
// Input must be balanced; the output is re-verified before returning.
MinkowskiWeight divisor(const MarkedFan& fan, const Vec& phi,
                        const MinkowskiWeight& omega);

// Iterated divisor down to the origin; classes.size() must equal omega.k.
Rat degree(const MarkedFan& fan, const MinkowskiWeight& omega,
           const std::vector<Vec>& classes);

struct ConeCert {
  std::vector<int> cone;
  Vec functional;  // linear witness found by the LP
};

struct PosResult {
  bool ok = false;
  std::vector<ConeCert> certificates;            // one per cone on success
  std::optional<std::vector<int>> failed_cone;   // first failing cone otherwise
};

// Nef: at every cone tau some linear functional matches phi on tau's
// markings and stays <= phi on the neighborhood rays. Ample: strictly < phi
// off tau.
PosResult is_nef(const MarkedFan& fan, const Vec& phi);
PosResult is_ample(const MarkedFan& fan, const Vec& phi);

struct StarFan {
  std::vector<int> tau;
  MarkedFan fan;            // quotient fan with primitive integral markings
  MinkowskiWeight weight;   // induced top weight, integral with content 1
  std::vector<int> source_ray;  // star ray index -> original ray index
};

StarFan star_fan(const MarkedFan& fan, const MinkowskiWeight& omega,
                 const std::vector<int>& tau);

// Coordinates on PL(fan)/L(fan): kill the span of the linear classes by
// pinning its RREF pivot rays; the remaining "free" rays give the basis.
struct DivisorSpace {
  std::vector<Vec> lin_rref;  // RREF basis of the linear-class subspace
  std::vector<int> pivot_rays, free_rays;

  std::size_t dim() const { return free_rays.size(); }
  Vec project(const Vec& per_ray) const;   // class -> quotient coordinates
  Vec section(const Vec& coords) const;    // representative on the free rays
};

DivisorSpace divisor_space(const MarkedFan& fan);

// vol(y) = degree of (sum_j y_j D_{free_j})^n, assembled from iterated
// divisors over shared monomial prefixes.
HomogeneousForm volume_form(const MarkedFan& fan, const MinkowskiWeight& omega,
                            const DivisorSpace& ds);

struct AmpleFamily {
  bool found = false;
  Vec base;                 // ample base class (per-ray values)
  std::vector<Vec> classes; // base plus its certified perturbations
};

// Base candidate search (all-ones, then the suggestion) followed by +-t D_rho
// perturbations with halving t, every member certified by is_ample.
AmpleFamily ample_generators(const MarkedFan& fan,
                             const std::optional<Vec>& suggested);

struct FanLorentzReport {
  bool ok = false;
  std::string reason;
  std::vector<int> failed_tau;
  std::optional<LorentzVerdict> verdict;  // failing certificate, if any
  long cones_checked = 0;
  // per-tau sizes of the certified ample families, in check order
  std::vector<std::size_t> family_sizes;
};

// For every cone tau (origin included): build the star, find an ample
// family, and certify the star's volume polynomial over the cone it spans.
// Zero- and one-dimensional stars reduce to positive weight / positive
// linear degree.
FanLorentzReport lorentzian_fan_check(const MarkedFan& fan,
                                      const MinkowskiWeight& omega,
                                      const std::optional<Vec>& suggested_ample);

struct BergmanFan {
  MarkedFan fan;
  MinkowskiWeight weight;             // constant 1 on maximal cones
  Vec suggested_ample;                // per-ray |F| (|E|-|F|)
  std::vector<std::uint32_t> ray_flats;  // ray index -> flat bitmask
};

// Rays are the proper flats with markings e_F reduced modulo the all-ones
// vector (coordinates x_i - x_0, i = 1..n-1), cones follow the flag
// complex, and the weight is 1 everywhere.
BergmanFan bergman(const Matroid& m);

}  // namespace hk
