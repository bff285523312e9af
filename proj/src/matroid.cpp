#include "hodgekit/matroid.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "hodgekit/errors.hpp"

namespace hk {

namespace {

int popcount(std::uint32_t m) { return std::popcount(m); }

std::uint32_t mask_of(const std::vector<int>& elements, int n) {
  std::uint32_t m = 0;
  for (int e : elements) {
    if (e < 0 || e >= n) throw InputError("element out of range");
    if (m & (1u << e)) throw InputError("repeated element in subset");
    m |= 1u << e;
  }
  return m;
}

}  // namespace

Matroid Matroid::from_bases(int n, const std::vector<std::vector<int>>& bases) {
  if (n < 1 || n > 16) throw InputError("ground set size must be in 1..16");
  if (bases.empty()) throw InputError("a matroid needs at least one basis");
  Matroid m;
  m.n_ = n;
  for (const auto& b : bases) m.bases_.push_back(mask_of(b, n));
  std::sort(m.bases_.begin(), m.bases_.end());
  m.bases_.erase(std::unique(m.bases_.begin(), m.bases_.end()), m.bases_.end());
  m.finish_construction();
  return m;
}

Matroid Matroid::uniform(int r, int n) {
  if (n < 1 || n > 16) throw InputError("ground set size must be in 1..16");
  if (r < 1 || r > n) throw InputError("uniform rank must be in 1..n");
  Matroid m;
  m.n_ = n;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    if (popcount(mask) == r) m.bases_.push_back(mask);
  m.finish_construction();
  return m;
}

Matroid Matroid::graphic(const std::vector<std::pair<int, int>>& edges) {
  const int ne = static_cast<int>(edges.size());
  if (ne < 1 || ne > 16) throw InputError("edge count must be in 1..16");
  int nv = 0;
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0) throw InputError("negative vertex id");
    if (u == v) throw InputError("self-loop edge is a matroid loop");
    nv = std::max(nv, std::max(u, v) + 1);
  }
  // spanning forests: independent edge sets of maximal size
  auto forest_rank = [&](std::uint32_t mask) {
    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int r = 0;
    for (int e = 0; e < ne; ++e) {
      if (!(mask & (1u << e))) continue;
      int a = find(edges[e].first), b = find(edges[e].second);
      if (a == b) return -1;  // cycle: not independent
      parent[a] = b;
      ++r;
    }
    return r;
  };
  int best = 0;
  std::vector<std::uint32_t> indep;
  for (std::uint32_t mask = 0; mask < (1u << ne); ++mask) {
    int r = forest_rank(mask);
    if (r < 0) continue;
    if (r > best) {
      best = r;
      indep.clear();
    }
    if (r == best) indep.push_back(mask);
  }
  Matroid m;
  m.n_ = ne;
  m.bases_ = std::move(indep);
  m.finish_construction();
  return m;
}

void Matroid::finish_construction() {
  rank_ = popcount(bases_[0]);
  std::uint32_t covered = 0;
  for (auto b : bases_) {
    if (popcount(b) != rank_) throw InputError("bases differ in size");
    covered |= b;
  }
  if (covered != (1u << n_) - 1)
    throw InputError("loop detected: element missing from every basis");
  // exchange axiom: for b1, b2 and x in b1\b2 there is y in b2\b1 with
  // b1 - x + y a basis
  for (auto b1 : bases_) {
    for (auto b2 : bases_) {
      std::uint32_t only1 = b1 & ~b2, only2 = b2 & ~b1;
      for (int x = 0; x < n_; ++x) {
        if (!(only1 & (1u << x))) continue;
        bool ok = false;
        for (int y = 0; y < n_ && !ok; ++y) {
          if (!(only2 & (1u << y))) continue;
          std::uint32_t cand = (b1 & ~(1u << x)) | (1u << y);
          ok = std::binary_search(bases_.begin(), bases_.end(), cand);
        }
        if (!ok) throw InputError("basis exchange axiom fails");
      }
    }
  }
  for (std::uint32_t mask = 0; mask < (1u << n_); ++mask)
    if (closure(mask) == mask) flats_.push_back(mask);
  auto by_size_then_lex = [this](std::uint32_t a, std::uint32_t b) {
    int pa = popcount(a), pb = popcount(b);
    if (pa != pb) return pa < pb;
    return mask_to_elements(a) < mask_to_elements(b);
  };
  std::sort(flats_.begin(), flats_.end(), by_size_then_lex);
}

int Matroid::rank_of(std::uint32_t subset) const {
  if (subset >= (1u << n_)) throw InputError("subset out of range");
  int best = 0;
  for (auto b : bases_) best = std::max(best, popcount(b & subset));
  return best;
}

int Matroid::rank_of(const std::vector<int>& subset) const {
  return rank_of(mask_of(subset, n_));
}

std::uint32_t Matroid::closure(std::uint32_t subset) const {
  const int r = rank_of(subset);
  std::uint32_t cl = subset;
  for (int e = 0; e < n_; ++e)
    if (!(subset & (1u << e)) && rank_of(subset | (1u << e)) == r) cl |= 1u << e;
  return cl;
}

std::vector<std::uint32_t> Matroid::proper_flats() const {
  std::vector<std::uint32_t> out;
  const std::uint32_t full = (1u << n_) - 1;
  for (auto f : flats_)
    if (f != 0 && f != full) out.push_back(f);
  return out;
}

std::vector<std::vector<std::uint32_t>> Matroid::flags_of_proper_flats(int k) const {
  if (k < 1 || k > rank_ - 1) throw InputError("flag length out of range");
  auto proper = proper_flats();
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> chain;
  // proper flats are size-sorted, so extensions always sit later in the list
  std::function<void(std::size_t)> extend = [&](std::size_t from) {
    if (static_cast<int>(chain.size()) == k) {
      out.push_back(chain);
      return;
    }
    for (std::size_t i = from; i < proper.size(); ++i) {
      if (!chain.empty()) {
        std::uint32_t prev = chain.back();
        if ((prev & proper[i]) != prev || prev == proper[i]) continue;
      }
      chain.push_back(proper[i]);
      extend(i + 1);
      chain.pop_back();
    }
  };
  extend(0);
  return out;
}

std::vector<mpz_class> Matroid::characteristic_polynomial() const {
  // deletion-contraction on the minor lattice; a minor is (deleted mask,
  // contracted mask) with rank r(S | C) = r(S union C) - r(C)
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<mpz_class>> memo;
  const std::uint32_t full = (1u << n_) - 1;

  auto add_into = [](std::vector<mpz_class>& acc, const std::vector<mpz_class>& p,
                     int shift, const mpz_class& scale) {
    // acc += scale * p * lambda^shift, coefficients lowest power first
    if (acc.size() < p.size() + shift) acc.resize(p.size() + shift, 0);
    for (std::size_t i = 0; i < p.size(); ++i) acc[i + shift] += scale * p[i];
  };

  std::function<std::vector<mpz_class>(std::uint32_t, std::uint32_t)> chi =
      [&](std::uint32_t del, std::uint32_t con) -> std::vector<mpz_class> {
    auto key = std::make_pair(del, con);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::uint32_t ground = full & ~del & ~con;
    std::vector<mpz_class> result;
    if (ground == 0) {
      result = {1};  // empty matroid, lowest power first
    } else {
      int e = std::countr_zero(ground);
      std::uint32_t eb = 1u << e;
      int rc = rank_of(con);
      auto minor_rank = [&](std::uint32_t s) { return rank_of(s | con) - rc; };
      if (minor_rank(eb) == 0) {
        result.clear();  // a loop kills the polynomial
      } else if (minor_rank(ground & ~eb) < minor_rank(ground)) {
        // coloop: (lambda - 1) * chi(contract e)
        auto sub = chi(del, con | eb);
        std::vector<mpz_class> acc;
        add_into(acc, sub, 1, 1);
        add_into(acc, sub, 0, -1);
        result = acc;
      } else {
        auto d = chi(del | eb, con);
        auto c = chi(del, con | eb);
        std::vector<mpz_class> acc;
        add_into(acc, d, 0, 1);
        add_into(acc, c, 0, -1);
        result = acc;
      }
    }
    memo[key] = result;
    return result;
  };

  auto low_first = chi(0, 0);
  while (!low_first.empty() && low_first.back() == 0) low_first.pop_back();
  std::vector<mpz_class> high_first(low_first.rbegin(), low_first.rend());
  if (high_first.empty()) high_first = {0};
  return high_first;
}

std::vector<mpz_class> Matroid::reduced_characteristic_polynomial() const {
  auto chi = characteristic_polynomial();
  // synthetic division by (lambda - 1)
  std::vector<mpz_class> q;
  mpz_class carry = 0;
  for (std::size_t i = 0; i + 1 < chi.size(); ++i) {
    carry = chi[i] + carry;
    q.push_back(carry);
  }
  mpz_class remainder = chi.empty() ? mpz_class(0) : chi.back() + carry;
  if (remainder != 0)
    throw TheoremViolation("characteristic polynomial of a loopless matroid "
                           "must vanish at 1");
  return q;
}

std::vector<int> Matroid::mask_to_elements(std::uint32_t mask) {
  std::vector<int> out;
  for (int e = 0; e < 32; ++e)
    if (mask & (1u << e)) out.push_back(e);
  return out;
}

std::string Matroid::mask_str(std::uint32_t mask) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int e : mask_to_elements(mask)) {
    if (!first) os << ",";
    os << e;
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace hk
