#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hodgekit/errors.hpp"
#include "hodgekit/exactlin.hpp"

using namespace hk;

namespace {

Mat sym(const std::vector<Vec>& rows) { return Mat::from_rows(rows); }

Vec v(std::initializer_list<int> xs) {
  Vec r;
  for (int x : xs) r.push_back(Rat(x));
  return r;
}

}  // namespace

TEST_CASE("signature of definite and indefinite matrices") {
  CHECK(signature(Mat::identity(3)) == Inertia{3, 0, 0});
  CHECK(signature(Mat(4, 4)) == Inertia{0, 0, 4});

  Mat neg = Mat::identity(2);
  neg.at(0, 0) = -1;
  neg.at(1, 1) = -5;
  CHECK(signature(neg) == Inertia{0, 2, 0});

  // diag(2, -3, 0)
  Mat d(3, 3);
  d.at(0, 0) = 2;
  d.at(1, 1) = -3;
  CHECK(signature(d) == Inertia{1, 1, 1});
}

TEST_CASE("signature splits hyperbolic blocks exactly") {
  // all-ones off the diagonal: eigenvalues 2, -1, -1
  Mat j = sym({v({0, 1, 1}), v({1, 0, 1}), v({1, 1, 0})});
  CHECK(signature(j) == Inertia{1, 2, 0});

  Mat h = sym({v({0, 0, 1}), v({0, 0, 0}), v({1, 0, 0})});
  CHECK(signature(h) == Inertia{1, 1, 1});

  Mat h2 = sym({v({0, 1}), v({1, 0})});
  CHECK(signature(h2) == Inertia{1, 1, 0});
}

TEST_CASE("signature rejects non-symmetric input") {
  Mat m(2, 2);
  m.at(0, 1) = 1;
  CHECK_THROWS_AS(signature(m), InputError);
}

TEST_CASE("signature is a congruence invariant") {
  SweepRng rng(sweep_seed());
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3;
    Mat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Rat x = rng.next_rat(-3, 3);
        a.at(i, j) = x;
        a.at(j, i) = x;
      }
    // random invertible P: identity plus a few elementary operations
    Mat p = Mat::identity(n);
    for (int k = 0; k < 4; ++k) {
      std::size_t i = static_cast<std::size_t>(rng.next_int(0, n - 1));
      std::size_t j = static_cast<std::size_t>(rng.next_int(0, n - 1));
      if (i == j) continue;
      Rat c = rng.next_rat(-2, 2);
      for (std::size_t col = 0; col < n; ++col) p.at(i, col) += c * p.at(j, col);
    }
    Mat b = p.transpose().mul(a).mul(p);
    CHECK(signature(a) == signature(b));
  }
}

TEST_CASE("rref is canonical and rank counts pivots") {
  std::vector<Vec> rows = {v({2, 4, 6}), v({1, 2, 3}), v({0, 1, 1})};
  auto rr = rref_rows(rows);
  REQUIRE(rr.size() == 2);
  CHECK(rr[0] == v({1, 0, 1}));
  CHECK(rr[1] == v({0, 1, 1}));
  CHECK(rank_rows(rows) == 2);
  CHECK(rank(Mat::from_rows(rows)) == 2);
  CHECK(rank(Mat::identity(5)) == 5);
  CHECK(rank(Mat(3, 4)) == 0);
}

TEST_CASE("echelon basis normalizes leads without back substitution") {
  // order and scaling are fixed by the pipeline, not by RREF
  auto b = echelon_basis({v({-2, 2, 0}), v({0, 0, 3})});
  REQUIRE(b.size() == 2);
  CHECK(b[0] == v({1, -1, 0}));
  CHECK(b[1] == v({0, 0, 1}));

  auto b2 = echelon_basis({v({-1, 0, 1, 0}), v({-1, 1, 0, 0})});
  REQUIRE(b2.size() == 2);
  CHECK(b2[0] == v({1, 0, -1, 0}));
  CHECK(b2[1] == v({0, 1, -1, 0}));

  SweepRng rng(sweep_seed() ^ 0x9e3779b97f4a7c15ull);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Vec> rows;
    for (int i = 0; i < 4; ++i) {
      Vec w(5);
      for (auto& x : w) x = rng.next_rat(-3, 3);
      rows.push_back(w);
    }
    auto e = echelon_basis(rows);
    CHECK(same_span(e, rows));
    CHECK(static_cast<int>(e.size()) == rank_rows(rows));
    for (std::size_t i = 0; i < e.size(); ++i) {
      std::size_t lead = 0;
      while (lead < e[i].size() && e[i][lead] == 0) ++lead;
      REQUIRE(lead < e[i].size());
      CHECK(e[i][lead] == 1);
      if (i > 0) {
        std::size_t prev = 0;
        while (prev < e[i - 1].size() && e[i - 1][prev] == 0) ++prev;
        CHECK(prev < lead);
      }
    }
  }
}

TEST_CASE("nullspace produces the canonical kernel basis") {
  // rows x3 = 0 and x1 + x2 = 0
  Mat q = sym({v({0, 0, 1}), v({0, 0, 1}), v({1, 1, 0})});
  auto ker = nullspace(q);
  REQUIRE(ker.size() == 1);
  CHECK(ker[0] == v({1, -1, 0}));

  Mat q4 = sym({v({0, 0, 0, 1}), v({0, 0, 0, 1}), v({0, 0, 0, 1}), v({1, 1, 1, 0})});
  auto ker4 = nullspace(q4);
  REQUIRE(ker4.size() == 2);
  CHECK(ker4[0] == v({1, -1, 0, 0}));
  CHECK(ker4[1] == v({0, 1, -1, 0}));

  auto full = nullspace(Mat(2, 2));
  REQUIRE(full.size() == 2);
  CHECK(full[0] == v({1, 0}));
  CHECK(full[1] == v({0, 1}));

  CHECK(nullspace(Mat::identity(3)).empty());
}

TEST_CASE("nullspace vectors annihilate the matrix") {
  SweepRng rng(sweep_seed() ^ 0x1234567ull);
  for (int trial = 0; trial < 25; ++trial) {
    Mat m(3, 5);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 5; ++j) m.at(i, j) = rng.next_rat(-2, 2);
    auto ker = nullspace(m);
    CHECK(static_cast<int>(ker.size()) == 5 - rank(m));
    for (const auto& w : ker) CHECK(vec_is_zero(m.mul(w)));
  }
}

TEST_CASE("span membership and span equality") {
  std::vector<Vec> basis = {v({1, 0, 1}), v({0, 1, 1})};
  CHECK(in_span(basis, v({1, 1, 2})));
  CHECK(in_span(basis, v({0, 0, 0})));
  CHECK_FALSE(in_span(basis, v({0, 0, 1})));
  CHECK(in_span({}, v({0, 0})));
  CHECK_FALSE(in_span({}, v({1, 0})));

  CHECK(same_span(basis, {v({1, 1, 2}), v({1, -1, 0}), v({2, 0, 2})}));
  CHECK_FALSE(same_span(basis, {v({1, 0, 1})}));
}

TEST_CASE("express_in returns exact coefficients") {
  std::vector<Vec> gens = {v({1, 0}), v({0, 1}), v({1, 1})};
  auto c = express_in(gens, v({2, 3}));
  REQUIRE(c.has_value());
  Vec rec(2, Rat(0));
  for (std::size_t i = 0; i < gens.size(); ++i)
    rec = vec_add(rec, vec_scale((*c)[i], gens[i]));
  CHECK(rec == v({2, 3}));

  CHECK_FALSE(express_in({v({1, 1, 0})}, v({1, 0, 0})).has_value());
}

TEST_CASE("solve_affine honors pinned coordinates") {
  Mat m = Mat::from_rows({v({1, 1, 0}), v({0, 1, 1})});
  auto z = solve_affine(m, v({3, 5}), {{0, Rat(1)}});
  REQUIRE(z.has_value());
  CHECK(*z == v({1, 2, 3}));

  // with every coordinate pinned, a consistent system returns them unchanged
  Mat none(0, 3);
  auto all = solve_affine(none, {}, {{0, Rat(4)}, {1, Rat(-1)}, {2, Rat(7)}});
  REQUIRE(all.has_value());
  CHECK(*all == v({4, -1, 7}));

  // minimal support: non-pivot free coordinates stay zero
  auto sparse = solve_affine(Mat::from_rows({v({1, 1, 1})}), v({5}), {});
  REQUIRE(sparse.has_value());
  CHECK(*sparse == v({5, 0, 0}));

  auto bad = solve_affine(Mat::from_rows({v({1, 0}), v({1, 0})}), v({1, 2}), {});
  CHECK_FALSE(bad.has_value());

  auto pinned_bad =
      solve_affine(Mat::from_rows({v({1, 0})}), v({1}), {{0, Rat(2)}});
  CHECK_FALSE(pinned_bad.has_value());
}

TEST_CASE("linear feasibility with weak bounds") {
  std::vector<LinCon> cons = {
      {v({1, 0}), Rat(1), Rel::Ge},   // x >= 1
      {v({-1, 0}), Rat(-2), Rel::Ge}, // x <= 2
      {v({0, 1}), Rat(0), Rel::Ge},
  };
  auto r = lp_feasible(cons, 2);
  REQUIRE(r.feasible);
  CHECK(r.witness[0] >= 1);
  CHECK(r.witness[0] <= 2);

  cons.push_back({v({-1, 0}), Rat(0), Rel::Gt});  // x < 0, contradiction
  CHECK_FALSE(lp_feasible(cons, 2).feasible);
}

TEST_CASE("linear feasibility distinguishes strict from weak") {
  // x >= 1 and x <= 1 is satisfiable only at the boundary point
  std::vector<LinCon> weak = {
      {v({1}), Rat(1), Rel::Ge},
      {v({-1}), Rat(-1), Rel::Ge},
  };
  auto r = lp_feasible(weak, 1);
  REQUIRE(r.feasible);
  CHECK(r.witness[0] == 1);

  std::vector<LinCon> strict = {
      {v({1}), Rat(1), Rel::Gt},
      {v({-1}), Rat(-1), Rel::Ge},
  };
  CHECK_FALSE(lp_feasible(strict, 1).feasible);

  std::vector<LinCon> open = {
      {v({1}), Rat(0), Rel::Gt},
      {v({-1}), Rat(-1), Rel::Gt},
  };
  auto o = lp_feasible(open, 1);
  REQUIRE(o.feasible);
  CHECK(o.witness[0] > 0);
  CHECK(o.witness[0] < 1);
}

TEST_CASE("linear feasibility handles equalities and empty systems") {
  std::vector<LinCon> cons = {
      {v({1, 1, 0}), Rat(4), Rel::Eq},
      {v({0, 1, -1}), Rat(0), Rel::Eq},
      {v({0, 0, 1}), Rat(3), Rel::Ge},
      {v({1, 0, 0}), Rat(0), Rel::Ge},
  };
  auto r = lp_feasible(cons, 3);
  REQUIRE(r.feasible);
  CHECK(r.witness[0] + r.witness[1] == 4);
  CHECK(r.witness[1] == r.witness[2]);
  CHECK(r.witness[2] >= 3);

  auto empty = lp_feasible({}, 4);
  REQUIRE(empty.feasible);
  CHECK(empty.witness == v({0, 0, 0, 0}));

  std::vector<LinCon> contradictory_eqs = {
      {v({1, 1}), Rat(1), Rel::Eq},
      {v({2, 2}), Rat(3), Rel::Eq},
  };
  CHECK_FALSE(lp_feasible(contradictory_eqs, 2).feasible);
}

TEST_CASE("feasibility witnesses satisfy every original constraint") {
  SweepRng rng(sweep_seed() ^ 0xabcdefull);
  int feasible_seen = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<LinCon> cons;
    const std::size_t nv = 3;
    const int nc = static_cast<int>(rng.next_int(2, 6));
    for (int i = 0; i < nc; ++i) {
      LinCon c;
      c.a = Vec(nv);
      for (auto& x : c.a) x = Rat(rng.next_int(-2, 2));
      c.b = rng.next_rat(-3, 3);
      long kind = rng.next_int(0, 2);
      c.rel = kind == 0 ? Rel::Eq : (kind == 1 ? Rel::Ge : Rel::Gt);
      cons.push_back(std::move(c));
    }
    auto r = lp_feasible(cons, nv);  // witness is verified internally
    if (r.feasible) ++feasible_seen;
  }
  CHECK(feasible_seen > 0);
}

TEST_CASE("cone membership with nonnegative coefficients") {
  std::vector<Vec> gens = {v({1, 0}), v({0, 1}), v({1, 1})};
  auto c = cone_coefficients(gens, v({2, 3}));
  REQUIRE(c.has_value());
  Vec rec(2, Rat(0));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    CHECK((*c)[i] >= 0);
    rec = vec_add(rec, vec_scale((*c)[i], gens[i]));
  }
  CHECK(rec == v({2, 3}));

  CHECK_FALSE(cone_coefficients(gens, v({-1, 0})).has_value());
  CHECK_FALSE(cone_coefficients({v({1, 1})}, v({1, 2})).has_value());
}

TEST_CASE("nonnegative solving scales past fourier-motzkin") {
  // x1 - x3 = 1, x2 + x3 = 2 with x >= 0
  Mat m = Mat::from_rows({v({1, 0, -1}), v({0, 1, 1})});
  auto x = nonneg_solve(m, v({1, 2}));
  REQUIRE(x.has_value());
  CHECK(m.mul(*x) == v({1, 2}));

  CHECK_FALSE(nonneg_solve(m, v({1, -3})).has_value());
  CHECK_FALSE(nonneg_solve(Mat::from_rows({v({1, 1, 1})}), v({-1})).has_value());

  // a wide random membership family: nonneg combinations must come back
  // certified, points pushed outside the cone must be rejected
  SweepRng rng(sweep_seed() ^ 0x5151ull);
  const std::size_t dim = 6, g = 24;
  std::vector<Vec> gens;
  for (std::size_t j = 0; j < g; ++j) {
    Vec u(dim);
    for (auto& e : u) e = Rat(rng.next_int(0, 3));
    gens.push_back(u);
  }
  for (int trial = 0; trial < 20; ++trial) {
    Vec target = zero_vec(dim);
    for (std::size_t j = 0; j < g; ++j)
      if (rng.next_int(0, 1)) target = vec_add(target, vec_scale(rng.next_rat(0, 2), gens[j]));
    auto c = cone_coefficients(gens, target);
    REQUIRE(c.has_value());
    Vec rec = zero_vec(dim);
    for (std::size_t j = 0; j < g; ++j) {
      CHECK((*c)[j] >= 0);
      rec = vec_add(rec, vec_scale((*c)[j], gens[j]));
    }
    CHECK(rec == target);
  }
  Vec outside = zero_vec(dim);
  outside[0] = -1;
  CHECK_FALSE(cone_coefficients(gens, outside).has_value());
}
