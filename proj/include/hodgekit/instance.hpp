#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hodgekit/forms.hpp"
#include "hodgekit/rational.hpp"
#include "hodgekit/tropfan.hpp"

namespace hk {

struct EffGenerator {
  std::string label;
  Vec vec;
};

// Carried by instances built from a fan so later checks can certify
// ampleness of classes through the fan's own linear programs.
struct FanContext {
  MarkedFan fan;
  MinkowskiWeight weight;
  DivisorSpace space;
};

// A vector space with a Lorentzian degree form, a nef cone given by finitely
// many generators, an interior witness, and a finite effective generating
// family. All construction invariants are enforced eagerly:
//   - the form is positive at the witness and certified Lorentzian on the
//     cone of the nef generators (linear positivity when the degree is one),
//   - every nef generator is a nonnegative combination of the effective
//     family,
//   - every effective generator pairs nonnegatively with every (n-1)-fold
//     product of nef generators.
class LorentzInstance {
 public:
  static LorentzInstance make(std::string label, const HomogeneousForm& f,
                              std::vector<Vec> nef_generators,
                              Vec interior_witness,
                              std::vector<EffGenerator> eff_generators,
                              std::optional<FanContext> fan = std::nullopt);

  int dim() const { return F_.dim(); }
  int degree() const { return F_.degree(); }
  const PolarizedForm& F() const { return F_; }
  const std::vector<Vec>& nef_generators() const { return nef_; }
  const Vec& omega() const { return omega_; }
  const std::vector<EffGenerator>& eff_generators() const { return eff_; }
  const std::string& label() const { return label_; }
  const std::optional<FanContext>& fan() const { return fan_; }

  // Nonnegative coefficients over the nef generators, if any.
  std::optional<Vec> certify_nef(const Vec& v) const;

 private:
  LorentzInstance(std::string label, PolarizedForm F, std::vector<Vec> nef,
                  Vec omega, std::vector<EffGenerator> eff,
                  std::optional<FanContext> fan)
      : label_(std::move(label)),
        F_(std::move(F)),
        nef_(std::move(nef)),
        omega_(std::move(omega)),
        eff_(std::move(eff)),
        fan_(std::move(fan)) {}

  std::string label_;
  PolarizedForm F_;
  std::vector<Vec> nef_;
  Vec omega_;
  std::vector<EffGenerator> eff_;
  std::optional<FanContext> fan_;
};

// f = x_1 ... x_d on the nonnegative orthant; nef and effective data are the
// coordinate directions.
LorentzInstance build_diagonal_torus(int d);

// f = det on real symmetric d x d matrices in the coordinates x_{ij}, i <= j
// (row-major upper triangle); the nef/effective family is the rank-one
// spanning set {E_ii} and {E_ii + E_jj +- (E_ij + E_ji)}.
LorentzInstance build_symmetric_torus(int d);

// Divisor-class space of a certified Lorentzian fan: coordinates from the
// deterministic echelon complement, degree form from iterated divisors, nef
// generators from the certified ample family plus the nef ray classes,
// effective family {D_rho}.
LorentzInstance build_from_fan(const MarkedFan& fan, const MinkowskiWeight& omega,
                               const std::optional<Vec>& suggested_ample,
                               const std::string& label = "fan");

// Explicit data; equivalent to make() with an instance label.
LorentzInstance build_explicit(const std::string& label, const HomogeneousForm& f,
                               std::vector<Vec> nef_generators, Vec interior_witness,
                               std::vector<EffGenerator> eff_generators);

// A tuple of certified nef classes L_1..L_m with their cone certificates.
struct NefCollection {
  const LorentzInstance* instance = nullptr;
  std::vector<Vec> classes;
  std::vector<Vec> certificates;

  static NefCollection make(const LorentzInstance& inst, std::vector<Vec> classes);
  int m() const { return (int)classes.size(); }
  // Sum of the classes indexed by the bits of mask.
  Vec subset_sum(unsigned mask) const;
};

}  // namespace hk
