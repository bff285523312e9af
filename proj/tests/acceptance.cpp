// Acceptance gate: one pass/fail line per criterion, exit 0 only when all
// nine hold. Every comparison is exact; no tolerances anywhere.
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hodgekit/exactlin.hpp"
#include "hodgekit/forms.hpp"
#include "hodgekit/hodge.hpp"
#include "hodgekit/instance.hpp"
#include "hodgekit/matroid.hpp"
#include "hodgekit/rational.hpp"
#include "hodgekit/tropfan.hpp"

using namespace hk;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void req(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

const LorentzInstance& dt3() {
  static LorentzInstance i = build_diagonal_torus(3);
  return i;
}
const LorentzInstance& dt4() {
  static LorentzInstance i = build_diagonal_torus(4);
  return i;
}
const LorentzInstance& dt5() {
  static LorentzInstance i = build_diagonal_torus(5);
  return i;
}
const LorentzInstance& sym3() {
  static LorentzInstance i = build_symmetric_torus(3);
  return i;
}
const BergmanFan& u45() {
  static BergmanFan b = bergman(Matroid::uniform(4, 5));
  return b;
}
const LorentzInstance& fan45() {
  static LorentzInstance i =
      build_from_fan(u45().fan, u45().weight, u45().suggested_ample, "bergman-u45");
  return i;
}

// Random nef class built from at most two generators; returns zero often
// enough that the sweeps hit the degenerate side of every dichotomy.
Vec sparse_nef_combo(SweepRng& rng, const LorentzInstance& inst) {
  Vec out = zero_vec(inst.dim());
  const auto& gens = inst.nef_generators();
  const int picks = (int)rng.next_int(0, 2);
  for (int i = 0; i < picks; ++i) {
    const Vec& g = gens[(std::size_t)rng.next_int(0, (long)gens.size() - 1)];
    out = vec_add(out, vec_scale(Rat(rng.next_int(1, 3)), g));
  }
  return out;
}

// Complete simplicial fan on the octants of R^3 (three projective lines);
// every coordinate divisor is nef, none is big.
std::pair<MarkedFan, MinkowskiWeight> octant_fan() {
  MarkedFan fan;
  fan.ambient = 3;
  fan.dim = 3;
  for (int axis = 0; axis < 3; ++axis)
    for (int sign = 0; sign < 2; ++sign) {
      fan.ray_ids.push_back("x" + std::to_string(axis + 1) + (sign ? "-" : "+"));
      Vec u = zero_vec(3);
      u[axis] = sign ? -1 : 1;
      fan.markings.push_back(std::move(u));
    }
  MinkowskiWeight w;
  w.k = 3;
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2)
      for (int s3 = 0; s3 < 2; ++s3) {
        std::vector<int> cone = {s1, 2 + s2, 4 + s3};
        for (unsigned mask = 1; mask < 8; ++mask) {
          std::vector<int> face;
          for (int b = 0; b < 3; ++b)
            if (mask & (1u << b)) face.push_back(cone[b]);
          fan.cones.insert(std::move(face));
        }
        w.w[cone] = 1;
      }
  return {std::move(fan), std::move(w)};
}

void criterion1() {
  auto col = NefCollection::make(dt3(), {Vec{1, 1, 0}});
  auto ker = kernel(col);
  req(ker == std::vector<Vec>{Vec{1, -1, 0}}, "kernel basis is not {(1,-1,0)}");
  auto ve = v_eff(col);
  req(ve.basis.empty() && ve.members.empty(), "V_eff is not trivial");
  req(degenerate_pair(col, Vec{1, 0, 0}, Vec{0, 1, 0}),
      "degenerate pair (e1,e2) rejected");
  auto probe = v_deg_probe(col);
  req(same_span(probe.basis, ker), "degeneration probe span differs from the kernel");
  req(!hl_check(col).hard_lefschetz, "hard Lefschetz verdict must be negative");
}

void criterion2() {
  auto clean = hl_check(NefCollection::make(dt3(), {Vec{1, 1, 1}}));
  req(clean.hard_lefschetz && clean.kernel_is_veff && clean.hypothesis_confirmed,
      "interior class on the 3-torus must be clean");

  SweepRng rng(sweep_seed() ^ 0xacc2ull);
  for (int t = 0; t < 50; ++t) {
    const LorentzInstance& inst = (t % 2) ? dt5() : dt4();
    std::vector<Vec> classes;
    for (int i = 0; i < inst.degree() - 2; ++i) {
      Vec L;
      for (int j = 0; j < inst.dim(); ++j) L.push_back(Rat(rng.next_int(1, 4)));
      classes.push_back(std::move(L));
    }
    auto rep = hl_check(NefCollection::make(inst, classes));
    req(rep.hypothesis_confirmed,
        "nd ordering unconfirmed for a strictly positive collection");
    req(rep.kernel_is_veff, "kernel differs from the effective span");
  }
}

void criterion3() {
  const BergmanFan& b = u45();
  const LorentzInstance& inst = fan45();
  const DivisorSpace& ds = inst.fan()->space;

  AmpleFamily fam = ample_generators(b.fan, b.suggested_ample);
  req(fam.found && fam.classes.size() >= 20, "fewer than 20 ample classes found");
  for (int i = 0; i < 20; ++i) {
    const Vec& phi = fam.classes[(std::size_t)i];
    req(is_ample(b.fan, phi).ok, "ampleness LP failed on a family member");
    auto col = NefCollection::make(inst, {ds.project(phi)});
    req(kernel(col).empty(), "nontrivial kernel for an ample class");
    req(v_eff(col).basis.empty(), "nontrivial effective span for an ample class");
  }

  auto maximal = b.fan.cones_of_dim(b.fan.dim);
  req(maximal.size() == 60, "U(4,5) Bergman fan must have 60 maximal cones");
  for (const auto& sigma : maximal) {
    std::vector<Vec> classes;
    for (int r : sigma) classes.push_back(pl_basis_class(b.fan, r));
    req(b.weight.at(sigma) == 1, "U(4,5) weights are all one");
    req(degree(b.fan, b.weight, classes) == b.weight.at(sigma),
        "flag-monomial degree differs from the cone weight");
  }
}

void criterion4() {
  for (auto [r, n] : {std::pair{2, 3}, std::pair{3, 4}}) {
    BergmanFan b = bergman(Matroid::uniform(r, n));
    req(lorentzian_fan_check(b.fan, b.weight, b.suggested_ample).ok,
        "fan check failed on U(" + std::to_string(r) + "," + std::to_string(n) + ")");
  }
  req(lorentzian_fan_check(u45().fan, u45().weight, u45().suggested_ample).ok,
      "fan check failed on U(4,5)");

  for (int d : {3, 4, 5}) {
    HomogeneousForm f = HomogeneousForm::monomial(d, Exponent(d, 1), Rat(1));
    std::vector<Vec> gens;
    for (int i = 0; i < d; ++i) gens.push_back(unit_vec(d, i));
    req(is_c_lorentzian(f, gens).ok,
        "diagonal determinant form rejected at d = " + std::to_string(d));
  }

  auto squares = HomogeneousForm::monomial(2, {2, 0}, Rat(1))
                     .plus(HomogeneousForm::monomial(2, {0, 2}, Rat(1)));
  auto bad = is_c_lorentzian(squares, {unit_vec(2, 0), unit_vec(2, 1)});
  req(!bad.ok && bad.hessian_failure.has_value(),
      "x1^2 + x2^2 must fail with a Hessian witness");
  const auto& inertia = bad.hessian_failure->second;
  req(inertia.pos == 2 && inertia.neg == 0 && inertia.zero == 0,
      "Hessian witness signature must be (2,0,0)");
}

void criterion5() {
  SweepRng rng(sweep_seed() ^ 0xacc5ull);
  for (const LorentzInstance* pi : {&dt3(), &dt4(), &sym3(), &fan45()}) {
    const LorentzInstance& inst = *pi;
    int positives = 0, zeros = 0;
    for (int t = 0; t < 200; ++t) {
      std::vector<Vec> alphas;
      for (int k = 0; k < inst.degree(); ++k)
        alphas.push_back(sparse_nef_combo(rng, inst));
      auto rep = nonvanishing(inst, alphas);  // agreement asserted inside too
      req(rep.positive == rep.criterion,
          "direct positivity disagrees with the nd-subset criterion");
      (rep.positive ? positives : zeros) += 1;
    }
    req(positives > 0 && zeros > 0,
        "sweep must exercise both outcomes on " + inst.label());
  }
}

void criterion6() {
  SweepRng rng(sweep_seed() ^ 0xacc6ull);
  for (const LorentzInstance* pi : {&dt3(), &dt4(), &sym3(), &fan45()}) {
    const LorentzInstance& inst = *pi;
    const Vec& w0 = inst.omega();
    std::vector<Vec> witnesses = {
        vec_scale(Rat(2), w0), vec_add(w0, inst.nef_generators().front()),
        vec_add(vec_scale(Rat(3), w0), inst.nef_generators().back())};
    for (int t = 0; t < 10; ++t)
      req(nd_witness_independence(inst, sparse_nef_combo(rng, inst), witnesses),
          "nd depends on the interior witness on " + inst.label());
    for (int t = 0; t < 100; ++t) {
      auto s = nd_submodularity(inst, sparse_nef_combo(rng, inst),
                                sparse_nef_combo(rng, inst),
                                sparse_nef_combo(rng, inst));
      req(s.holds, "nd submodularity violated on " + inst.label());
    }
  }
}

void criterion7() {
  auto col3 = NefCollection::make(dt3(), {Vec{1, 1, 0}});
  req(classify(col3).status == Criticality::CRITICAL, "DT3 collection must be critical");
  for (const Vec& a : kernel(col3)) {
    auto cert = local_hii(col3, 1, a);
    req(cert.ok, "solver reported INCONSISTENT on DT3: " + cert.failure);
  }
  auto known3 = local_hii(col3, 1, Vec{1, -1, 0});
  req(known3.eff_values == std::vector<Rat>{Rat(0), Rat(0), Rat(-1, 3)},
      "DT3 certificate is not (0, 0, 1/3)");

  Vec L = {1, 1, 1, 0};
  auto col4 = NefCollection::make(dt4(), {L, L});
  req(classify(col4).status == Criticality::CRITICAL, "DT4 collection must be critical");
  for (const Vec& a : kernel(col4))
    for (int r = 1; r <= 2; ++r) {
      auto cert = local_hii(col4, r, a);
      req(cert.ok, "solver reported INCONSISTENT on DT4: " + cert.failure);
    }
  auto known4 = local_hii(col4, 1, Vec{1, -1, 0, 0});
  req(known4.eff_values == std::vector<Rat>{Rat(0), Rat(0), Rat(0), Rat(-1, 12)},
      "DT4 certificate is not (0, 0, 0, 1/12)");

  // critical fan instance: pull two point classes back from the octant fan's
  // projective-line factors; the sum has top power zero but positive square
  auto [fan, weight] = octant_fan();
  req(validate(fan).ok, "octant fan is not a fan");
  req(check_balanced(fan, weight).ok, "octant fan weight is unbalanced");
  LorentzInstance cube = build_from_fan(fan, weight, std::nullopt, "p1-cube");
  Vec per_ray = zero_vec((int)fan.nrays());
  per_ray[0] = 1;  // D at the ray x1+
  per_ray[2] = 1;  // D at the ray x2+
  Vec Lq = cube.fan()->space.project(per_ray);
  auto colf = NefCollection::make(cube, {Lq});
  req(classify(colf).status == Criticality::CRITICAL,
      "octant fan collection must be critical");
  auto kerf = kernel(colf);
  req(kerf.size() == 1, "octant fan kernel must be a line");
  for (const Vec& a : kerf) {
    auto cert = local_hii(colf, 1, a);
    req(cert.ok, "solver reported INCONSISTENT on the fan instance: " + cert.failure);
    for (const Rat& val : cert.eff_values) req(sgn(val) <= 0, "positive effective value");
  }
}

void criterion8() {
  auto rep = logconcavity(dt3(), Vec{1, 1, 1}, Vec{1, 1, 0});
  req(rep.a == std::vector<Rat>{Rat(0), Rat(1, 3), Rat(2, 3), Rat(1)},
      "DT3 product sequence is not (0, 1/3, 2/3, 1)");
  req(rep.logconcave, "DT3 product sequence must be log-concave");

  auto col = NefCollection::make(dt3(), {Vec{1, 1, 1}});
  auto eq = hodge_index_extremal(col, Vec{2, 2, 0}, Vec{1, 1, 0});
  req(eq.equality && eq.c.has_value() && *eq.c == 2, "equality case must give c = 2");
  req(eq.has_decomposition && eq.decomposition.empty(),
      "divisor correction must be empty");

  SweepRng rng(sweep_seed() ^ 0xacc8ull);
  for (int t = 0; t < 100; ++t) {
    const LorentzInstance& inst = (t % 2) ? dt4() : dt3();
    auto r = logconcavity(inst, sparse_nef_combo(rng, inst),
                          sparse_nef_combo(rng, inst));
    req(r.logconcave, "a_k^2 >= a_{k-1} a_{k+1} violated");
    for (const auto& ex : r.extremals)
      req(ex.prop.status != PropStatus::NOT_APPLICABLE,
          "detected equality without a proportionality certificate");
  }
}

void criterion9() {
  // the determinant model restricted to diagonal matrices is the product model
  SweepRng rng(sweep_seed() ^ 0xacc9ull);
  auto lift = [](const Vec& a) {
    Vec v = zero_vec(6);
    v[0] = a[0];
    v[3] = a[1];
    v[5] = a[2];
    return v;
  };
  for (int t = 0; t < 100; ++t) {
    std::vector<Vec> triple, lifted;
    for (int k = 0; k < 3; ++k) {
      Vec a;
      for (int j = 0; j < 3; ++j) a.push_back(Rat(rng.next_int(0, 3)));
      lifted.push_back(lift(a));
      triple.push_back(std::move(a));
    }
    req(sym3().F().eval(lifted) == dt3().F().eval(triple),
        "determinant restriction disagrees with the product model");
  }

  // hand-checked degrees on the U(2,3) fan: every ray class has degree one
  BergmanFan b23 = bergman(Matroid::uniform(2, 3));
  for (int r = 0; r < (int)b23.fan.nrays(); ++r)
    req(degree(b23.fan, b23.weight, {pl_basis_class(b23.fan, r)}) == 1,
        "U(2,3) ray class degree must be 1");

  // alpha powers against the unsigned reduced characteristic polynomial
  auto degree_sequence = [](const BergmanFan& bf) {
    Vec alpha(bf.fan.nrays(), Rat(0)), beta(bf.fan.nrays(), Rat(0));
    for (std::size_t r = 0; r < bf.fan.nrays(); ++r) {
      if (bf.ray_flats[r] & 1u)
        alpha[r] = 1;  // flats through element 0
      else
        beta[r] = 1;
    }
    std::vector<Rat> out;
    for (int k = 0; k <= bf.fan.dim; ++k) {
      std::vector<Vec> classes(bf.fan.dim - k, alpha);
      classes.insert(classes.end(), k, beta);
      out.push_back(degree(bf.fan, bf.weight, classes));
    }
    return out;
  };
  auto unsigned_reduced = [](const Matroid& m) {
    std::vector<Rat> out;
    for (const auto& c : m.reduced_characteristic_polynomial())
      out.push_back(Rat(abs(c)));
    return out;
  };
  req(degree_sequence(b23) == unsigned_reduced(Matroid::uniform(2, 3)),
      "U(2,3) degree sequence mismatch");
  req(degree_sequence(bergman(Matroid::uniform(3, 4))) ==
          unsigned_reduced(Matroid::uniform(3, 4)),
      "U(3,4) degree sequence mismatch");
}

}  // namespace

int main() {
  struct Criterion {
    int num;
    const char* title;
    void (*fn)();
  };
  const Criterion table[] = {
      {1, "torus model kernel reproduction", criterion1},
      {2, "supercritical collections: kernel equals effective span", criterion2},
      {3, "ample classes and flag degrees on the U(4,5) Bergman fan", criterion3},
      {4, "Lorentzian certification of fans and forms", criterion4},
      {5, "nonvanishing criterion agreement", criterion5},
      {6, "witness independence and submodularity of nd", criterion6},
      {7, "local Hodge index certificates on critical collections", criterion7},
      {8, "log-concavity and extremal decompositions", criterion8},
      {9, "independent oracle equivalences", criterion9},
  };

  int failed = 0;
  for (const auto& c : table) {
    try {
      c.fn();
      std::cout << "[PASS] criterion " << c.num << ": " << c.title << std::endl;
    } catch (const std::exception& e) {
      ++failed;
      std::cout << "[FAIL] criterion " << c.num << ": " << c.title << " -- " << e.what()
                << std::endl;
    }
  }
  if (failed)
    std::cout << failed << " of 9 criteria failed" << std::endl;
  else
    std::cout << "all 9 criteria passed" << std::endl;
  return failed ? 1 : 0;
}
