#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "hodgekit/errors.hpp"
#include "hodgekit/forms.hpp"

using namespace hk;

namespace {

HomogeneousForm product_of_coordinates(int dim) {
  Exponent e(dim, 1);
  return HomogeneousForm::monomial(dim, e, Rat(1));
}

Vec v(std::initializer_list<int> xs) {
  Vec r;
  for (int x : xs) r.push_back(Rat(x));
  return r;
}

// independent reference: inclusion-exclusion over argument subsets,
// F = (1/n!) sum_{S nonempty} (-1)^{n-|S|} f(sum_{i in S} v_i)
Rat polarization_reference(const HomogeneousForm& f, const std::vector<Vec>& args) {
  const int n = f.degree();
  Rat total(0);
  for (unsigned mask = 1; mask < (1u << args.size()); ++mask) {
    Vec w = zero_vec(f.dim());
    int bits = 0;
    for (std::size_t i = 0; i < args.size(); ++i)
      if (mask & (1u << i)) {
        w = vec_add(w, args[i]);
        ++bits;
      }
    Rat term = f.eval(w);
    if ((n - bits) % 2 == 1) term = -term;
    total += term;
  }
  return total / Rat(factorial(static_cast<unsigned>(n)));
}

HomogeneousForm random_form(SweepRng& rng, int dim, int degree, int nterms) {
  HomogeneousForm f(dim, degree);
  for (int t = 0; t < nterms; ++t) {
    Exponent e(dim, 0);
    for (int d = 0; d < degree; ++d)
      ++e[static_cast<std::size_t>(rng.next_int(0, dim - 1))];
    f.add_term(e, rng.next_rat(-3, 3));
  }
  return f;
}

}  // namespace

TEST_CASE("form arithmetic and evaluation") {
  auto f = product_of_coordinates(3);
  CHECK(f.eval(v({1, 2, 3})) == 6);
  CHECK(f.eval(v({1, 1, 0})) == 0);

  auto g = f.plus(HomogeneousForm::monomial(3, {3, 0, 0}, Rat(2)));
  CHECK(g.eval(v({1, 2, 3})) == 8);
  CHECK(g.minus(f).eval(v({2, 9, 9})) == 16);
  CHECK(f.scaled(Rat(-2)).eval(v({1, 2, 3})) == -12);

  auto x1 = HomogeneousForm::monomial(2, {1, 0}, Rat(1));
  auto x2 = HomogeneousForm::monomial(2, {0, 1}, Rat(1));
  auto prod = x1.plus(x2).times(x1.minus(x2));
  CHECK(prod == HomogeneousForm::monomial(2, {2, 0}, Rat(1))
                    .plus(HomogeneousForm::monomial(2, {0, 2}, Rat(-1))));

  CHECK_THROWS_AS(HomogeneousForm(2, 2).add_term({1, 0}, Rat(1)), InputError);
  CHECK_THROWS_AS(f.eval(v({1, 2})), InputError);
}

TEST_CASE("derivatives shrink degree exactly") {
  auto f = product_of_coordinates(3);
  auto d = f.directional_derivative(v({1, 1, 1}));
  CHECK(d.degree() == 2);
  CHECK(d.terms().size() == 3);
  CHECK(d.coefficient({1, 1, 0}) == 1);
  auto p = f.partial_derivative(2);
  CHECK(p == HomogeneousForm::monomial(3, {1, 1, 0}, Rat(1)));

  // cancellation: d/dx of x^2 - 2xy at direction (1,1)
  auto q = HomogeneousForm::monomial(2, {2, 0}, Rat(1))
               .plus(HomogeneousForm::monomial(2, {1, 1}, Rat(-2)));
  auto dq = q.directional_derivative(v({1, 1}));
  CHECK(dq.coefficient({1, 0}) == 0);  // 2x - 2x cancels
  CHECK(dq.coefficient({0, 1}) == -2);
}

TEST_CASE("polarization of the coordinate product") {
  auto F = polarize(product_of_coordinates(3));
  CHECK(F.eval({v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1})}) == Rat(1, 6));
  Vec w = v({1, 2, 3});
  CHECK(F.eval({w, w, w}) == 6);

  auto cube = polarize(HomogeneousForm::monomial(1, {3}, Rat(1)));
  CHECK(cube.eval({v({2}), v({3}), v({5})}) == 30);

  CHECK_THROWS_AS(polarize(HomogeneousForm(2, 0)), InputError);
  CHECK_THROWS_AS(F.eval({w, w}), InputError);
}

TEST_CASE("repeated arguments via multiplicities") {
  auto F = polarize(product_of_coordinates(3));
  Vec L = v({1, 1, 0});
  Vec omega = v({1, 1, 1});
  CHECK(F.eval_multi({{L, 2}, {omega, 1}}) == Rat(1, 3));
  CHECK(F.eval_multi({{L, 3}}) == 0);

  auto F4 = polarize(product_of_coordinates(4));
  Vec L4 = v({1, 1, 1, 0});
  CHECK(F4.eval_multi({{L4, 2}, {v({0, 0, 0, 1}), 1}, {v({1, 0, 0, 0}), 1}}) ==
        Rat(1, 12));
  CHECK_THROWS_AS(F4.eval_multi({{L4, 2}}), InputError);
  CHECK_THROWS_AS(F.eval_multi({{L, 2}, {omega, 2}}), InputError);
}

TEST_CASE("polarization matches the inclusion-exclusion reference") {
  SweepRng rng(sweep_seed());
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_form(rng, 3, 3, 4);
    if (f.is_zero()) continue;
    auto F = polarize(f);
    std::vector<Vec> args;
    for (int k = 0; k < 3; ++k) {
      Vec a(3);
      for (auto& x : a) x = rng.next_rat(-2, 2);
      args.push_back(a);
    }
    CHECK(F.eval(args) == polarization_reference(f, args));
    // identity: all arguments equal gives back f
    CHECK(F.eval({args[0], args[0], args[0]}) == f.eval(args[0]));
  }
}

TEST_CASE("polarization is symmetric and multilinear") {
  SweepRng rng(sweep_seed() ^ 0x5151ull);
  auto f = random_form(rng, 3, 3, 5);
  f.add_term({1, 1, 1}, Rat(1));  // keep it nonzero
  auto F = polarize(f);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<Vec> args;
    for (int k = 0; k < 3; ++k) {
      Vec a(3);
      for (auto& x : a) x = rng.next_rat(-2, 2);
      args.push_back(a);
    }
    Rat base = F.eval(args);
    auto perm = args;
    std::swap(perm[0], perm[2]);
    CHECK(F.eval(perm) == base);
    std::swap(perm[0], perm[1]);
    CHECK(F.eval(perm) == base);

    Rat a = rng.next_rat(-2, 2), b = rng.next_rat(-2, 2);
    Vec w(3);
    for (auto& x : w) x = rng.next_rat(-2, 2);
    Vec mix = vec_add(vec_scale(a, args[0]), vec_scale(b, w));
    Rat lhs = F.eval({mix, args[1], args[2]});
    Rat rhs = a * F.eval({args[0], args[1], args[2]}) + b * F.eval({w, args[1], args[2]});
    CHECK(lhs == rhs);
  }
}

TEST_CASE("quadratic form slices") {
  auto F = polarize(product_of_coordinates(3));
  Vec omega = v({1, 1, 1});
  Mat q = quad_form(F, {omega});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(q.at(i, j) == (i == j ? Rat(0) : Rat(1, 6)));
  CHECK(signature(q) == Inertia{1, 2, 0});

  Mat qe = quad_form(F, {v({0, 0, 1})});
  CHECK(qe.at(0, 1) == Rat(1, 6));
  CHECK(qe.at(1, 0) == Rat(1, 6));
  CHECK(qe.at(0, 0) == 0);
  CHECK(qe.at(2, 2) == 0);
  CHECK(signature(qe) == Inertia{1, 1, 1});

  auto diff = HomogeneousForm::monomial(2, {2, 0}, Rat(1))
                  .plus(HomogeneousForm::monomial(2, {0, 2}, Rat(-1)));
  Mat qd = quad_form(polarize(diff), {});
  CHECK(qd.at(0, 0) == 1);
  CHECK(qd.at(1, 1) == -1);
  CHECK(qd.at(0, 1) == 0);

  CHECK_THROWS_AS(quad_form(F, {omega, omega}), InputError);
}

TEST_CASE("quadratic form agrees with polarized evaluations") {
  SweepRng rng(sweep_seed() ^ 0xf00dull);
  auto f = random_form(rng, 3, 4, 6);
  f.add_term({2, 1, 1}, Rat(2));
  auto F = polarize(f);
  Vec r1 = v({1, 2, 0}), r2 = v({0, 1, 1});
  Mat q = quad_form(F, {r1, r2});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(q.at(i, j) == F.eval({unit_vec(3, i), unit_vec(3, j), r1, r2}));
}

TEST_CASE("index inequality gap on the coordinate product") {
  auto F = polarize(product_of_coordinates(3));
  Vec omega = v({1, 1, 1}), L = v({1, 1, 0});
  auto g = index_gap(F, omega, L, {omega});
  CHECK(g.holds);
  CHECK(g.gap == Rat(1, 9));

  auto eq = index_gap(F, L, L, {omega});
  CHECK(eq.holds);
  CHECK(eq.gap == 0);

  auto prop = index_gap(F, v({2, 2, 0}), L, {omega});
  CHECK(prop.holds);
  CHECK(prop.gap == 0);
}

TEST_CASE("exchange property of supports") {
  CHECK(is_m_convex({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}).ok);
  CHECK(is_m_convex({{2, 0, 1}}).ok);
  CHECK(is_m_convex({}).ok);

  auto bad = is_m_convex({{2, 0}, {0, 2}});
  REQUIRE_FALSE(bad.ok);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->alpha == Exponent{0, 2});
  CHECK(bad.witness->beta == Exponent{2, 0});
  CHECK(bad.witness->coord == 1);
  // the witness re-checks as a genuine violation
  CHECK(bad.witness->alpha[bad.witness->coord] > bad.witness->beta[bad.witness->coord]);

  // the full degree-2 simplex in three variables is exchange-closed
  std::vector<Exponent> simplex;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b <= 2; ++b) simplex.push_back({a, b, 2 - a - b});
  CHECK(is_m_convex(simplex).ok);

  CHECK_THROWS_AS(is_m_convex({{1, 0}, {1, 1}}), InputError);
}

TEST_CASE("orthant test certifies and refutes") {
  auto elem2 = HomogeneousForm::monomial(3, {1, 1, 0}, Rat(1))
                   .plus(HomogeneousForm::monomial(3, {0, 1, 1}, Rat(1)))
                   .plus(HomogeneousForm::monomial(3, {1, 0, 1}, Rat(1)));
  auto good = is_lorentzian_orthant(elem2);
  CHECK(good.ok);
  CHECK(good.coefficients_checked == 3);
  CHECK(good.hessians_checked == 1);

  auto squares = HomogeneousForm::monomial(2, {2, 0}, Rat(1))
                     .plus(HomogeneousForm::monomial(2, {0, 2}, Rat(1)));
  auto bad = is_lorentzian_orthant(squares);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.hessian_failure.has_value());
  CHECK(bad.hessian_failure->second.pos == 2);
  CHECK(bad.hessian_failure->second.neg == 0);

  // passes every Hessian sweep (each partial has at most one positive
  // eigenvalue) but the support is not M-convex
  auto gapped = HomogeneousForm::monomial(3, {2, 1, 0}, Rat(1))
                    .plus(HomogeneousForm::monomial(3, {0, 0, 3}, Rat(1)));
  auto bade = is_lorentzian_orthant(gapped);
  CHECK_FALSE(bade.ok);
  CHECK(bade.exchange_failure.has_value());

  // M-convex support but positive-definite Hessian
  auto pd = squares.plus(HomogeneousForm::monomial(2, {1, 1}, Rat(1)));
  auto badh = is_lorentzian_orthant(pd);
  CHECK_FALSE(badh.ok);
  REQUIRE(badh.hessian_failure.has_value());
  CHECK(badh.hessian_failure->second.pos == 2);

  auto square = HomogeneousForm::monomial(2, {2, 0}, Rat(1))
                    .plus(HomogeneousForm::monomial(2, {1, 1}, Rat(2)))
                    .plus(HomogeneousForm::monomial(2, {0, 2}, Rat(1)));
  CHECK(is_lorentzian_orthant(square).ok);  // (x1+x2)^2, inertia (1,0,1)

  auto neg = HomogeneousForm::monomial(2, {1, 1}, Rat(-1));
  auto badc = is_lorentzian_orthant(neg);
  CHECK_FALSE(badc.ok);
  REQUIRE(badc.negative_coefficient.has_value());
  CHECK(badc.negative_coefficient->second == -1);

  CHECK_THROWS_AS(is_lorentzian_orthant(HomogeneousForm::monomial(2, {1, 0}, Rat(1))),
                  InputError);
}

TEST_CASE("substitution along generators") {
  auto f = product_of_coordinates(3);
  std::vector<Vec> id = {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1})};
  CHECK(pullback(f, id) == f);

  std::vector<Vec> gens = {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({1, 1, 1})};
  auto g = pullback(f, gens);
  CHECK(g.dim() == 4);
  CHECK(g.coefficient({1, 1, 1, 0}) == 1);
  CHECK(g.coefficient({0, 0, 0, 3}) == 1);
  CHECK(g.coefficient({1, 0, 0, 2}) == 1);
  CHECK(g.coefficient({3, 0, 0, 0}) == 0);

  SweepRng rng(sweep_seed() ^ 0x77ull);
  for (int trial = 0; trial < 10; ++trial) {
    Vec y(4);
    for (auto& x : y) x = rng.next_rat(-2, 2);
    Vec lifted = zero_vec(3);
    for (std::size_t i = 0; i < gens.size(); ++i)
      lifted = vec_add(lifted, vec_scale(y[i], gens[i]));
    CHECK(g.eval(y) == f.eval(lifted));
  }
}

TEST_CASE("cone test on the coordinate product") {
  auto f = product_of_coordinates(3);
  std::vector<Vec> id = {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1})};
  auto ok = is_c_lorentzian(f, id);
  CHECK(ok.ok);
  CHECK(ok.interior_value == Rat(1));
  CHECK(ok.zero_coefficients_allowed);  // sparse pullback leaves simplex gaps

  std::vector<Vec> wide = {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({1, 1, 1})};
  CHECK(is_c_lorentzian(f, wide).ok);

  std::vector<Vec> flipped = {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, -1})};
  auto bad = is_c_lorentzian(f, flipped);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.negative_coefficient.has_value());
  CHECK(bad.negative_coefficient->second == -1);

  CHECK_THROWS_AS(is_c_lorentzian(f, {v({1, 0, 0}), v({0, 1, 0})}), InputError);
}

TEST_CASE("cone test is invariant under relabeling and rescaling") {
  auto f = product_of_coordinates(3);
  std::vector<Vec> gens = {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({1, 1, 1})};
  REQUIRE(is_c_lorentzian(f, gens).ok);

  std::vector<Vec> shuffled = {gens[3], gens[1], gens[0], gens[2]};
  CHECK(is_c_lorentzian(f, shuffled).ok);

  std::vector<Vec> scaled = gens;
  scaled[0] = vec_scale(Rat(3), scaled[0]);
  scaled[3] = vec_scale(Rat(1, 2), scaled[3]);
  CHECK(is_c_lorentzian(f, scaled).ok);
}

TEST_CASE("certified cones yield hyperbolic slices and nonnegative gaps") {
  auto f = product_of_coordinates(3);
  std::vector<Vec> gens = {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({1, 1, 1})};
  REQUIRE(is_c_lorentzian(f, gens).ok);
  auto F = polarize(f);
  SweepRng rng(sweep_seed() ^ 0xc0deull);
  for (int trial = 0; trial < 25; ++trial) {
    auto sample = [&] {
      Vec w = zero_vec(3);
      for (const auto& u : gens)
        w = vec_add(w, vec_scale(Rat(rng.next_int(0, 3)), u));
      return w;
    };
    Vec a = sample(), b = sample(), c = sample();
    CHECK(signature(quad_form(F, {c})).pos <= 1);
    CHECK(index_gap(F, a, b, {c}).holds);
  }
}
