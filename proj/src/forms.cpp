#include "hodgekit/forms.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

#include "hodgekit/errors.hpp"
#include "hodgekit/parallel.hpp"

namespace hk {

namespace {

Rat rat_pow(const Rat& b, int e) {
  Rat r(1);
  for (int k = 0; k < e; ++k) r *= b;
  return r;
}

Rat beta_factorial(const Exponent& beta) {
  mpz_class z(1);
  for (int b : beta) z *= factorial(static_cast<unsigned>(b));
  return Rat(z);
}

void check_exponent(const Exponent& e, int dim, int degree) {
  if (static_cast<int>(e.size()) != dim) throw InputError("exponent arity mismatch");
  long s = 0;
  for (int a : e) {
    if (a < 0) throw InputError("negative exponent");
    s += a;
  }
  if (s != degree) throw InputError("exponent degree mismatch");
}

mpz_class simplex_count(std::size_t nvars, int degree) {
  // number of exponent vectors in nvars variables of the given total degree
  mpz_class z;
  mpz_bin_uiui(z.get_mpz_t(), static_cast<unsigned long>(nvars) + degree - 1,
               static_cast<unsigned long>(degree));
  return z;
}

}  // namespace

HomogeneousForm HomogeneousForm::monomial(int dim, const Exponent& exp, const Rat& coef) {
  int degree = 0;
  for (int a : exp) degree += a;
  HomogeneousForm f(dim, degree);
  f.add_term(exp, coef);
  return f;
}

Rat HomogeneousForm::coefficient(const Exponent& exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? Rat(0) : it->second;
}

void HomogeneousForm::add_term(const Exponent& exp, const Rat& coef) {
  check_exponent(exp, dim_, degree_);
  if (coef == 0) return;
  auto [it, fresh] = terms_.emplace(exp, coef);
  if (!fresh) {
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  }
}

Rat HomogeneousForm::eval(const Vec& v) const {
  if (static_cast<int>(v.size()) != dim_) throw InputError("evaluation arity mismatch");
  Rat total(0);
  for (const auto& [exp, c] : terms_) {
    Rat t = c;
    for (int i = 0; i < dim_ && t != 0; ++i)
      if (exp[i] > 0) t *= rat_pow(v[i], exp[i]);
    total += t;
  }
  return total;
}

HomogeneousForm HomogeneousForm::directional_derivative(const Vec& v) const {
  if (static_cast<int>(v.size()) != dim_) throw InputError("derivative arity mismatch");
  if (degree_ == 0) return HomogeneousForm(dim_, 0);
  HomogeneousForm out(dim_, degree_ - 1);
  for (const auto& [exp, c] : terms_) {
    for (int i = 0; i < dim_; ++i) {
      if (exp[i] == 0 || v[i] == 0) continue;
      Exponent e = exp;
      --e[i];
      out.add_term(e, c * exp[i] * v[i]);
    }
  }
  return out;
}

HomogeneousForm HomogeneousForm::partial_derivative(std::size_t i) const {
  if (static_cast<int>(i) >= dim_) throw InputError("partial index out of range");
  if (degree_ == 0) return HomogeneousForm(dim_, 0);
  HomogeneousForm out(dim_, degree_ - 1);
  for (const auto& [exp, c] : terms_) {
    if (exp[i] == 0) continue;
    Exponent e = exp;
    --e[i];
    out.add_term(e, c * exp[i]);
  }
  return out;
}

HomogeneousForm HomogeneousForm::plus(const HomogeneousForm& o) const {
  if (dim_ != o.dim_ || degree_ != o.degree_) throw InputError("form shape mismatch");
  HomogeneousForm out = *this;
  for (const auto& [exp, c] : o.terms_) out.add_term(exp, c);
  return out;
}

HomogeneousForm HomogeneousForm::minus(const HomogeneousForm& o) const {
  return plus(o.scaled(Rat(-1)));
}

HomogeneousForm HomogeneousForm::scaled(const Rat& c) const {
  HomogeneousForm out(dim_, degree_);
  if (c == 0) return out;
  for (const auto& [exp, k] : terms_) out.terms_.emplace(exp, k * c);
  return out;
}

HomogeneousForm HomogeneousForm::times(const HomogeneousForm& o) const {
  if (dim_ != o.dim_) throw InputError("form dimension mismatch");
  HomogeneousForm out(dim_, degree_ + o.degree_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Exponent e = ea;
      for (int i = 0; i < dim_; ++i) e[i] += eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

PolarizedForm::PolarizedForm(HomogeneousForm f) : f_(std::move(f)) {
  if (f_.degree() < 1) throw InputError("polarization needs degree >= 1");
}

PolarizedForm& PolarizedForm::operator=(const PolarizedForm& o) {
  if (this != &o) {
    std::lock_guard<std::mutex> lk(mu_);
    f_ = o.f_;
    cache_.clear();
  }
  return *this;
}

Rat PolarizedForm::eval(const std::vector<Vec>& args) const {
  if (static_cast<int>(args.size()) != degree())
    throw InputError("polarized form needs exactly n arguments");
  for (const auto& a : args)
    if (static_cast<int>(a.size()) != dim())
      throw InputError("polarized argument arity mismatch");
  return eval_sorted(args);
}

Rat PolarizedForm::eval_multi(const std::vector<std::pair<Vec, int>>& args) const {
  long total = 0;
  std::vector<Vec> flat;
  for (const auto& [v, mult] : args) {
    if (mult < 0) throw InputError("negative multiplicity");
    total += mult;
    for (int k = 0; k < mult; ++k) flat.push_back(v);
  }
  if (total != degree()) throw InputError("multiplicities must sum to the degree");
  return eval(flat);
}

Rat PolarizedForm::eval_sorted(std::vector<Vec> args) const {
  std::vector<std::string> parts;
  parts.reserve(args.size());
  for (const auto& a : args) parts.push_back(vec_str(a));
  std::sort(parts.begin(), parts.end());
  std::string key;
  for (const auto& p : parts) {
    key += p;
    key += ';';
  }
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  HomogeneousForm cur = f_;
  for (const auto& a : args) {
    cur = cur.directional_derivative(a);
    if (cur.is_zero()) break;
  }
  Rat val(0);
  if (!cur.is_zero()) val = cur.terms().begin()->second;
  val /= Rat(factorial(static_cast<unsigned>(degree())));
  {
    std::lock_guard<std::mutex> lk(mu_);
    cache_.emplace(std::move(key), val);
  }
  return val;
}

PolarizedForm polarize(const HomogeneousForm& f) { return PolarizedForm(f); }

Mat hessian_of_quadratic(const HomogeneousForm& q) {
  if (q.degree() != 2) throw InputError("hessian needs a quadratic");
  const int s = q.dim();
  Mat h(s, s);
  for (const auto& [exp, c] : q.terms()) {
    int i = -1, j = -1;
    for (int k = 0; k < s; ++k) {
      if (exp[k] == 2) i = j = k;
      if (exp[k] == 1) (i < 0 ? i : j) = k;
    }
    if (i == j) {
      h.at(i, i) = 2 * c;
    } else {
      h.at(i, j) = c;
      h.at(j, i) = c;
    }
  }
  return h;
}

Mat quad_form(const PolarizedForm& F, const std::vector<Vec>& rest) {
  const int n = F.degree();
  if (static_cast<int>(rest.size()) != n - 2)
    throw InputError("quad_form needs exactly n-2 rest vectors");
  HomogeneousForm cur = F.source();
  for (const auto& v : rest) {
    if (static_cast<int>(v.size()) != F.dim())
      throw InputError("quad_form argument arity mismatch");
    cur = cur.directional_derivative(v);
  }
  Mat h = hessian_of_quadratic(cur);
  const Rat scale = Rat(1) / Rat(factorial(static_cast<unsigned>(n)));
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) h.at(i, j) *= scale;
  return h;
}

GapResult index_gap(const PolarizedForm& F, const Vec& v1, const Vec& v2,
                    const std::vector<Vec>& rest) {
  std::vector<std::pair<Vec, int>> base;
  for (const auto& r : rest) base.emplace_back(r, 1);
  auto with = [&](const Vec& a, const Vec& b) {
    auto args = base;
    args.emplace_back(a, 1);
    args.emplace_back(b, 1);
    return F.eval_multi(args);
  };
  Rat f12 = with(v1, v2);
  Rat f11 = with(v1, v1);
  Rat f22 = with(v2, v2);
  GapResult r;
  r.gap = f12 * f12 - f11 * f22;
  r.holds = r.gap >= 0;
  return r;
}

namespace {

bool packed_fits(int s, int n) { return s <= 16 && n <= 14; }

std::uint64_t pack_exponent(const Exponent& e) {
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < e.size(); ++i)
    k |= static_cast<std::uint64_t>(e[i]) << (4 * i);
  return k;
}

}  // namespace

MConvexResult is_m_convex(const std::vector<Exponent>& support_in) {
  auto support = support_in;
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  if (support.empty()) return {true, {}};
  const int s = static_cast<int>(support[0].size());
  long n = 0;
  for (int a : support[0]) n += a;
  for (const auto& e : support) {
    if (static_cast<int>(e.size()) != s) throw InputError("mixed exponent arity");
    long t = 0;
    for (int a : e) {
      if (a < 0) throw InputError("negative exponent");
      t += a;
    }
    if (t != n) throw InputError("mixed total degrees");
  }
  if (s == 0 || support.size() == 1) return {true, {}};
  // the full integer simplex is exchange-closed; recognizing it by count
  // skips the quadratic pair sweep for dense supports
  if (mpz_cmp_ui(simplex_count(s, static_cast<int>(n)).get_mpz_t(),
                 static_cast<unsigned long>(support.size())) == 0)
    return {true, {}};

  const bool packed = packed_fits(s, static_cast<int>(n));
  std::unordered_set<std::uint64_t> packed_set;
  std::set<Exponent> plain_set;
  if (packed)
    for (const auto& e : support) packed_set.insert(pack_exponent(e));
  else
    plain_set.insert(support.begin(), support.end());

  auto contains_shift = [&](const Exponent& a, int i, int j) {
    if (packed) {
      std::uint64_t k = pack_exponent(a);
      k -= std::uint64_t(1) << (4 * i);
      k += std::uint64_t(1) << (4 * j);
      return packed_set.count(k) != 0;
    }
    Exponent e = a;
    --e[i];
    ++e[j];
    return plain_set.count(e) != 0;
  };

  std::vector<std::optional<MConvexWitness>> found(support.size());
  parallel_for(support.size(), [&](std::size_t ai) {
    const Exponent& a = support[ai];
    for (std::size_t bi = 0; bi < support.size() && !found[ai]; ++bi) {
      if (bi == ai) continue;
      const Exponent& b = support[bi];
      for (int i = 0; i < s && !found[ai]; ++i) {
        if (a[i] <= b[i]) continue;
        bool exchanged = false;
        for (int j = 0; j < s; ++j) {
          if (a[j] >= b[j]) continue;
          if (contains_shift(a, i, j)) {
            exchanged = true;
            break;
          }
        }
        if (!exchanged) found[ai] = MConvexWitness{a, b, i};
      }
    }
  });
  for (const auto& w : found)
    if (w) return {false, w};
  return {true, {}};
}

HomogeneousForm pullback(const HomogeneousForm& f, const std::vector<Vec>& gens) {
  const std::size_t m = gens.size();
  if (m == 0) throw InputError("pullback needs at least one generator");
  for (const auto& g : gens)
    if (static_cast<int>(g.size()) != f.dim())
      throw InputError("generator arity mismatch");
  const int n = f.degree();
  HomogeneousForm out(static_cast<int>(m), n);
  if (n == 0) {
    if (!f.is_zero()) out.add_term(Exponent(m, 0), f.terms().begin()->second);
    return out;
  }

  struct Dfs {
    const std::vector<Vec>& gens;
    int n;
    std::vector<std::pair<Exponent, Rat>>& out;
    void run(const HomogeneousForm& cur, int depth, std::size_t min_idx,
             Exponent& beta) {
      if (depth == n) {
        // n directional derivatives of a degree-n form leave a constant
        Rat val = cur.terms().begin()->second;
        out.emplace_back(beta, val / beta_factorial(beta));
        return;
      }
      for (std::size_t j = min_idx; j < gens.size(); ++j) {
        HomogeneousForm d = cur.directional_derivative(gens[j]);
        if (d.is_zero()) continue;
        ++beta[j];
        run(d, depth + 1, j, beta);
        --beta[j];
      }
    }
  };

  std::vector<std::vector<std::pair<Exponent, Rat>>> parts(m);
  parallel_for(m, [&](std::size_t i0) {
    HomogeneousForm d = f.directional_derivative(gens[i0]);
    if (d.is_zero()) return;
    Exponent beta(m, 0);
    beta[i0] = 1;
    Dfs dfs{gens, n, parts[i0]};
    dfs.run(d, 1, i0, beta);
  });
  for (const auto& part : parts)
    for (const auto& [beta, c] : part) out.add_term(beta, c);
  return out;
}

namespace {

struct HessianScan {
  long checked = 0;
  std::optional<std::pair<Exponent, Inertia>> fail;
};

struct HessianDfs {
  int s, n;
  HessianScan& part;
  void run(const HomogeneousForm& cur, int depth, std::size_t min_idx,
           Exponent& gamma) {
    if (part.fail) return;
    if (depth == n - 2) {
      ++part.checked;
      Inertia sig = signature(hessian_of_quadratic(cur));
      if (sig.pos > 1) part.fail = std::make_pair(gamma, sig);
      return;
    }
    for (std::size_t j = min_idx; j < static_cast<std::size_t>(s); ++j) {
      HomogeneousForm d = cur.partial_derivative(j);
      if (d.is_zero()) continue;
      ++gamma[j];
      run(d, depth + 1, j, gamma);
      --gamma[j];
    }
  }
};

HessianScan scan_hessians(const HomogeneousForm& f) {
  const int s = f.dim(), n = f.degree();
  if (n == 2) {
    HessianScan r;
    r.checked = 1;
    Inertia sig = signature(hessian_of_quadratic(f));
    if (sig.pos > 1) r.fail = std::make_pair(Exponent(s, 0), sig);
    return r;
  }
  std::vector<HessianScan> parts(s);
  parallel_for(static_cast<std::size_t>(s), [&](std::size_t i0) {
    HomogeneousForm d = f.partial_derivative(i0);
    if (d.is_zero()) return;
    Exponent gamma(s, 0);
    gamma[i0] = 1;
    HessianDfs dfs{s, n, parts[i0]};
    dfs.run(d, 1, i0, gamma);
  });
  HessianScan total;
  for (const auto& p : parts) {
    total.checked += p.checked;
    if (!total.fail && p.fail) total.fail = p.fail;
  }
  return total;
}

}  // namespace

LorentzVerdict is_lorentzian_orthant(const HomogeneousForm& f) {
  if (f.degree() < 2) throw InputError("orthant test needs degree >= 2");
  LorentzVerdict v;
  for (const auto& [exp, c] : f.terms()) {
    if (c < 0) {
      v.reason = "negative coefficient";
      v.negative_coefficient = std::make_pair(exp, c);
      return v;
    }
  }
  v.coefficients_checked = static_cast<long>(f.terms().size());
  // Hessians before the support sweep so the classic quadratic failures
  // (e.g. x1^2 + x2^2) surface the signature witness.
  auto hs = scan_hessians(f);
  v.hessians_checked = hs.checked;
  if (hs.fail) {
    v.reason = "partial derivative Hessian has two positive eigenvalues";
    v.hessian_failure = hs.fail;
    return v;
  }
  std::vector<Exponent> support;
  support.reserve(f.terms().size());
  for (const auto& [exp, c] : f.terms()) support.push_back(exp);
  auto mc = is_m_convex(support);
  if (!mc.ok) {
    v.reason = "support fails the exchange property";
    v.exchange_failure = mc.witness;
    return v;
  }
  v.ok = true;
  return v;
}

LorentzVerdict is_c_lorentzian(const HomogeneousForm& f,
                               const std::vector<Vec>& cone_generators) {
  if (cone_generators.empty()) throw InputError("cone test needs generators");
  for (const auto& g : cone_generators)
    if (static_cast<int>(g.size()) != f.dim())
      throw InputError("generator arity mismatch");
  if (rank_rows(cone_generators) != f.dim())
    throw InputError("cone generators do not span the ambient space");
  if (f.degree() < 2) throw InputError("cone test needs degree >= 2");

  LorentzVerdict v;
  HomogeneousForm g = pullback(f, cone_generators);
  for (const auto& [exp, c] : g.terms()) {
    if (c < 0) {
      v.reason = "negative pullback coefficient";
      v.negative_coefficient = std::make_pair(exp, c);
      return v;
    }
  }
  v.coefficients_checked = static_cast<long>(g.terms().size());
  v.zero_coefficients_allowed =
      mpz_cmp_ui(simplex_count(cone_generators.size(), f.degree()).get_mpz_t(),
                 static_cast<unsigned long>(g.terms().size())) > 0;

  auto hs = scan_hessians(g);
  v.hessians_checked = hs.checked;
  if (hs.fail) {
    v.reason = "pullback partial Hessian has two positive eigenvalues";
    v.hessian_failure = hs.fail;
    return v;
  }
  std::vector<Exponent> support;
  support.reserve(g.terms().size());
  for (const auto& [exp, c] : g.terms()) support.push_back(exp);
  auto mc = is_m_convex(support);
  if (!mc.ok) {
    v.reason = "pullback support fails the exchange property";
    v.exchange_failure = mc.witness;
    return v;
  }

  Vec w = zero_vec(f.dim());
  for (const auto& u : cone_generators) w = vec_add(w, u);
  Rat val = f.eval(w);
  v.interior_value = val;
  if (!(val > 0)) {
    v.reason = "not strictly positive at the interior witness";
    return v;
  }
  v.ok = true;
  return v;
}

}  // namespace hk
