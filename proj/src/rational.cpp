#include "hodgekit/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

#include "hodgekit/errors.hpp"

namespace hk {

Rat rat_parse(const std::string& s) {
  if (s.empty()) throw InputError("empty rational literal");
  std::size_t slash = s.find('/');
  auto check_int = [&](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (part[0] == '+' || part[0] == '-')) i = 1;
    if (i >= part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!check_int(num, true) || !check_int(den, false))
    throw InputError("bad rational literal: " + s);
  Rat q;
  if (mpq_set_str(q.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0)
    throw InputError("bad rational literal: " + s);
  if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
    throw InputError("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string rat_str(const Rat& q) { return q.get_str(); }

int sgn(const Rat& q) { return ::sgn(q); }

Rat rat_abs(const Rat& q) { return ::sgn(q) < 0 ? Rat(-q) : q; }

mpz_class factorial(unsigned n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Vec vec_add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec vec_scale(const Rat& c, const Vec& v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

Rat dot(const Vec& a, const Vec& b) {
  Rat r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

bool vec_is_zero(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

Vec zero_vec(std::size_t n) { return Vec(n, Rat(0)); }

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n, Rat(0));
  v[i] = 1;
  return v;
}

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += rat_str(v[i]);
  }
  return s + ")";
}

Vec vec_parse(const std::string& csv) {
  Vec out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t a = tok.find_first_not_of(" \t");
    std::size_t b = tok.find_last_not_of(" \t");
    if (a == std::string::npos) throw InputError("empty vector entry");
    out.push_back(rat_parse(tok.substr(a, b - a + 1)));
  }
  if (out.empty()) throw InputError("empty vector literal");
  return out;
}

std::uint64_t sweep_seed() {
  if (const char* e = std::getenv("HODGEKIT_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(e, &end, 10);
    if (end && *end == '\0') return v;
  }
  return 20260816ull;
}

SweepRng::SweepRng(std::uint64_t seed) : state_(seed ? seed : 1) {}
SweepRng::SweepRng() : SweepRng(sweep_seed()) {}

std::uint64_t SweepRng::next() {
  // splitmix64
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

long SweepRng::next_int(long lo, long hi) {
  return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rat SweepRng::next_rat(long lo, long hi, long qmax) {
  long p = next_int(lo, hi);
  long q = next_int(1, qmax);
  Rat r(p, q);
  r.canonicalize();
  return r;
}

}  // namespace hk
