#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace hk {

// Exact rational scalar. mpq_class keeps values canonical (gcd 1, positive
// denominator) through arithmetic; parsing canonicalizes explicitly.
using Rat = mpq_class;
using Vec = std::vector<Rat>;

Rat rat_parse(const std::string& s);
std::string rat_str(const Rat& q);
int sgn(const Rat& q);
Rat rat_abs(const Rat& q);

mpz_class factorial(unsigned n);

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Rat& c, const Vec& v);
Rat dot(const Vec& a, const Vec& b);
bool vec_is_zero(const Vec& v);
Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);
std::string vec_str(const Vec& v);
Vec vec_parse(const std::string& csv);  // "1,-1/2,0"

// Deterministic RNG for the randomized property sweeps. Seeded from
// HODGEKIT_SEED when set, otherwise a fixed default.
std::uint64_t sweep_seed();

class SweepRng {
 public:
  explicit SweepRng(std::uint64_t seed);
  SweepRng();  // sweep_seed()
  std::uint64_t next();
  // Uniform integer in [lo, hi].
  long next_int(long lo, long hi);
  // Random small rational p/q with p in [lo,hi], q in [1,qmax].
  Rat next_rat(long lo, long hi, long qmax = 4);

 private:
  std::uint64_t state_;
};

}  // namespace hk
