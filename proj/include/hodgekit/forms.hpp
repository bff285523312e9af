#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hodgekit/exactlin.hpp"
#include "hodgekit/rational.hpp"

namespace hk {

using Exponent = std::vector<int>;

// Sparse homogeneous polynomial with exact rational coefficients. Every
// stored exponent vector sums to the degree; zero coefficients are dropped.
class HomogeneousForm {
 public:
  HomogeneousForm() = default;
  HomogeneousForm(int dim, int degree) : dim_(dim), degree_(degree) {}
  static HomogeneousForm monomial(int dim, const Exponent& exp, const Rat& coef);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::map<Exponent, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rat coefficient(const Exponent& exp) const;

  // Accumulating insert; cancellation to zero removes the term.
  void add_term(const Exponent& exp, const Rat& coef);

  Rat eval(const Vec& v) const;
  HomogeneousForm directional_derivative(const Vec& v) const;
  HomogeneousForm partial_derivative(std::size_t i) const;

  HomogeneousForm plus(const HomogeneousForm& o) const;
  HomogeneousForm minus(const HomogeneousForm& o) const;
  HomogeneousForm scaled(const Rat& c) const;
  HomogeneousForm times(const HomogeneousForm& o) const;

  bool operator==(const HomogeneousForm& o) const {
    return dim_ == o.dim_ && degree_ == o.degree_ && terms_ == o.terms_;
  }

 private:
  int dim_ = 0;
  int degree_ = 0;
  std::map<Exponent, Rat> terms_;
};

// Complete polarization F(v_1,...,v_n) = (1/n!) D_{v_1}...D_{v_n} f,
// evaluated by iterated directional differentiation. Symmetric and
// multilinear by construction; F(v,...,v) = f(v). A small evaluation cache
// keyed by the argument multiset is kept behind a mutex and behaves as if
// absent.
class PolarizedForm {
 public:
  explicit PolarizedForm(HomogeneousForm f);
  PolarizedForm(const PolarizedForm& o) : f_(o.f_) {}
  PolarizedForm& operator=(const PolarizedForm& o);

  const HomogeneousForm& source() const { return f_; }
  int dim() const { return f_.dim(); }
  int degree() const { return f_.degree(); }

  // Exactly n arguments.
  Rat eval(const std::vector<Vec>& args) const;
  // Arguments with multiplicities; multiplicities must sum to n.
  Rat eval_multi(const std::vector<std::pair<Vec, int>>& args) const;

 private:
  Rat eval_sorted(std::vector<Vec> args) const;

  HomogeneousForm f_;
  mutable std::mutex mu_;
  mutable std::map<std::string, Rat> cache_;
};

PolarizedForm polarize(const HomogeneousForm& f);

// Symmetric matrix Q(i,j) = F(e_i, e_j, rest...); requires n-2 rest vectors.
Mat quad_form(const PolarizedForm& F, const std::vector<Vec>& rest);

// Hessian of a quadratic form: H(i,j) = d_i d_j q.
Mat hessian_of_quadratic(const HomogeneousForm& q);

struct GapResult {
  bool holds = false;
  Rat gap;  // F(v1,v2,rest)^2 - F(v1,v1,rest) F(v2,v2,rest)
};

// Quadratic index inequality between two directions against a fixed rest
// tuple; holds iff gap >= 0.
GapResult index_gap(const PolarizedForm& F, const Vec& v1, const Vec& v2,
                    const std::vector<Vec>& rest);

struct MConvexWitness {
  Exponent alpha, beta;
  int coord = 0;  // 0-based index i with alpha[i] > beta[i] and no valid exchange
};

struct MConvexResult {
  bool ok = false;
  std::optional<MConvexWitness> witness;
};

// Exchange property over a set of equal-degree exponent vectors: for all
// alpha, beta and i with alpha[i] > beta[i] there is j with alpha[j] < beta[j]
// and alpha - e_i + e_j in the set. The witness is the first violation in
// (alpha, beta, i) scan order over the sorted support.
MConvexResult is_m_convex(const std::vector<Exponent>& support);

struct LorentzVerdict {
  bool ok = false;
  std::string reason;  // empty on success, short failure class otherwise
  std::optional<std::pair<Exponent, Rat>> negative_coefficient;
  std::optional<MConvexWitness> exchange_failure;
  // multi-index of the order-(n-2) partial whose Hessian has 2+ positive
  // eigenvalues, with the offending inertia
  std::optional<std::pair<Exponent, Inertia>> hessian_failure;
  std::optional<Rat> interior_value;  // value at the interior witness, if evaluated
  long coefficients_checked = 0;
  long hessians_checked = 0;
  // cone test only: some pullback coefficients vanish (boundary generators);
  // nonnegativity plus interior strict positivity is certified instead
  bool zero_coefficients_allowed = false;
};

// Orthant test, exact in every step: nonnegative coefficients, M-convex
// support, and every order-(n-2) partial derivative has a Hessian with at
// most one positive eigenvalue. Degree >= 2 required.
LorentzVerdict is_lorentzian_orthant(const HomogeneousForm& f);

// Substitution g(y) = f(sum_i y_i gens[i]).
HomogeneousForm pullback(const HomogeneousForm& f, const std::vector<Vec>& gens);

// Cone test over the polyhedral cone spanned by the generators: pull back
// along the generator matrix, require nonnegative coefficients, run the
// orthant checks on the pullback, and certify strict positivity at the
// interior witness w = sum_i gens[i]. Generators must span the ambient space.
LorentzVerdict is_c_lorentzian(const HomogeneousForm& f,
                               const std::vector<Vec>& cone_generators);

}  // namespace hk
