#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hodgekit/rational.hpp"

namespace hk {

class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

  static Mat identity(std::size_t n);
  static Mat from_rows(const std::vector<Vec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec mul(const Vec& v) const;      // M v
  Mat mul(const Mat& other) const;  // M other
  Mat transpose() const;
  bool is_symmetric() const;
  bool is_zero() const;

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> data_;
};

struct Inertia {
  int pos = 0, neg = 0, zero = 0;
  bool operator==(const Inertia& o) const {
    return pos == o.pos && neg == o.neg && zero == o.zero;
  }
};

// Inertia of a symmetric matrix by exact congruence diagonalization.
// Diagonal pivots are taken in lowest-index order; when every remaining
// diagonal entry vanishes but an off-diagonal entry survives, a rank-two
// hyperbolic block is split off, contributing (1,1,0).
Inertia signature(const Mat& m);

// Unique reduced row echelon form of the row space (zero rows dropped).
std::vector<Vec> rref_rows(std::vector<Vec> rows);

// Canonical basis used for all reported kernels and spans: forward Gaussian
// elimination of the given spanning vectors with each leading entry
// normalized to +1, rows ordered by leading column (echelon, pivot-normalized,
// no back-substitution).
std::vector<Vec> echelon_basis(std::vector<Vec> rows);

// Canonical nullspace basis of m (echelon_basis of the free-variable vectors
// of the RREF, ordered by free column).
std::vector<Vec> nullspace(const Mat& m);

int rank(const Mat& m);
int rank_rows(const std::vector<Vec>& rows);

bool in_span(const std::vector<Vec>& basis, const Vec& v);
bool same_span(const std::vector<Vec>& a, const std::vector<Vec>& b);
// Coefficients expressing v over the given (not necessarily independent)
// vectors, deterministic lowest-index pivots; nullopt if v is outside the span.
std::optional<Vec> express_in(const std::vector<Vec>& vectors, const Vec& v);

// Solve m z = b with the coordinates listed in `fixed` pinned; free
// coordinates take the minimal-support solution under lowest-index pivot
// order (non-pivot free coordinates are zero). nullopt = inconsistent.
std::optional<Vec> solve_affine(const Mat& m, const Vec& b,
                                const std::map<std::size_t, Rat>& fixed);

enum class Rel { Eq, Ge, Gt };  // a·x = b, a·x >= b, a·x > b

struct LinCon {
  Vec a;
  Rat b;
  Rel rel;
};

struct LpResult {
  bool feasible = false;
  Vec witness;  // verified against every constraint when feasible
};

// Exact feasibility for mixed strict/non-strict linear systems via equality
// substitution followed by Fourier–Motzkin elimination; the witness is
// re-substituted into the original constraints before returning.
LpResult lp_feasible(const std::vector<LinCon>& cons, std::size_t nvars);

// Some x >= 0 with m x = b, by exact phase-one simplex under Bland's rule.
// Scales to many variables where Fourier–Motzkin would blow up.
std::optional<Vec> nonneg_solve(const Mat& m, const Vec& b);

// Nonnegative coefficients lambda with sum lambda_i gens[i] = v, if any.
std::optional<Vec> cone_coefficients(const std::vector<Vec>& gens, const Vec& v);

}  // namespace hk
