#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hodgekit/rational.hpp"

namespace hk {

// Loopless matroid on ground set {0,...,n-1}, n <= 16, with bases as the
// primary representation (validated against the exchange axiom) and
// everything else derived. Subsets travel as bitmasks.
class Matroid {
 public:
  static Matroid from_bases(int n, const std::vector<std::vector<int>>& bases);
  static Matroid uniform(int r, int n);
  // Ground set = edge list positions; bases = maximal spanning forests.
  static Matroid graphic(const std::vector<std::pair<int, int>>& edges);

  int size() const { return n_; }
  int rank() const { return rank_; }
  const std::vector<std::uint32_t>& bases() const { return bases_; }

  int rank_of(std::uint32_t subset) const;
  int rank_of(const std::vector<int>& subset) const;
  std::uint32_t closure(std::uint32_t subset) const;

  // All flats including the empty set and the ground set, ordered by size
  // then lexicographically as sorted element lists.
  const std::vector<std::uint32_t>& flats() const { return flats_; }
  std::vector<std::uint32_t> proper_flats() const;

  // Strictly increasing chains of k proper flats; 1 <= k <= rank-1.
  std::vector<std::vector<std::uint32_t>> flags_of_proper_flats(int k) const;

  // Coefficients of the characteristic polynomial, highest power first
  // (e.g. lambda^2 - 3 lambda + 2 -> [1, -3, 2]).
  std::vector<mpz_class> characteristic_polynomial() const;
  // The quotient by (lambda - 1); exact for loopless matroids.
  std::vector<mpz_class> reduced_characteristic_polynomial() const;

  static std::vector<int> mask_to_elements(std::uint32_t mask);
  static std::string mask_str(std::uint32_t mask);

 private:
  Matroid() = default;
  void finish_construction();  // validates axioms, computes flats

  int n_ = 0;
  int rank_ = 0;
  std::vector<std::uint32_t> bases_;
  std::vector<std::uint32_t> flats_;
};

}  // namespace hk
