#include "hodgekit/exactlin.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hodgekit/errors.hpp"

namespace hk {

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows) {
  if (rows.empty()) return Mat(0, 0);
  Mat m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Vec Mat::row(std::size_t i) const {
  Vec r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

Vec Mat::mul(const Vec& v) const {
  if (v.size() != cols_) throw InputError("matrix-vector size mismatch");
  Vec r(rows_, Rat(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != 0 && v[j] != 0) r[i] += at(i, j) * v[j];
  return r;
}

Mat Mat::mul(const Mat& o) const {
  if (cols_ != o.rows_) throw InputError("matrix-matrix size mismatch");
  Mat r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      if (at(i, k) != 0)
        for (std::size_t j = 0; j < o.cols_; ++j)
          if (o.at(k, j) != 0) r.at(i, j) += at(i, k) * o.at(k, j);
  return r;
}

Mat Mat::transpose() const {
  Mat r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool Mat::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

bool Mat::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

Inertia signature(const Mat& m) {
  if (!m.is_symmetric()) throw InputError("signature requires a symmetric matrix");
  std::size_t n = m.rows();
  Mat a = m;
  std::vector<bool> active(n, true);
  Inertia out;
  std::size_t remaining = n;
  while (remaining > 0) {
    std::size_t piv = n;
    for (std::size_t k = 0; k < n; ++k)
      if (active[k] && a.at(k, k) != 0) {
        piv = k;
        break;
      }
    if (piv < n) {
      const Rat d = a.at(piv, piv);
      out.pos += sgn(d) > 0 ? 1 : 0;
      out.neg += sgn(d) < 0 ? 1 : 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!active[i] || i == piv || a.at(i, piv) == 0) continue;
        const Rat f = a.at(i, piv) / d;
        for (std::size_t j = 0; j < n; ++j)
          if (active[j] && j != piv) a.at(i, j) -= f * a.at(piv, j);
        a.at(i, piv) = 0;
      }
      for (std::size_t j = 0; j < n; ++j)
        if (active[j] && j != piv) a.at(piv, j) = 0;
      active[piv] = false;
      --remaining;
      continue;
    }
    // all active diagonal entries vanish; look for a surviving off-diagonal
    std::size_t hi = n, hj = n;
    for (std::size_t i = 0; i < n && hi == n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j)
        if (active[j] && a.at(i, j) != 0) {
          hi = i;
          hj = j;
          break;
        }
    }
    if (hi == n) {
      out.zero += static_cast<int>(remaining);
      break;
    }
    // rank-two hyperbolic split: block [[0,b],[b,0]] contributes (1,1,0);
    // remaining entries get the exact Schur complement.
    const Rat b = a.at(hi, hj);
    out.pos += 1;
    out.neg += 1;
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == hi || k == hj) continue;
      for (std::size_t l = 0; l < n; ++l) {
        if (!active[l] || l == hi || l == hj) continue;
        a.at(k, l) -= (a.at(k, hi) * a.at(l, hj) + a.at(k, hj) * a.at(l, hi)) / b;
      }
    }
    active[hi] = active[hj] = false;
    remaining -= 2;
  }
  return out;
}

namespace {

int leading_col(const Vec& v) {
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0) return static_cast<int>(j);
  return -1;
}

}  // namespace

std::vector<Vec> rref_rows(std::vector<Vec> rows) {
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [](const Vec& v) { return vec_is_zero(v); }),
             rows.end());
  if (rows.empty()) return rows;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = rows.size();
    for (std::size_t i = r; i < rows.size(); ++i)
      if (rows[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const Rat p = rows[r][c];
    for (std::size_t j = 0; j < cols; ++j) rows[r][j] /= p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rat f = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [](const Vec& v) { return vec_is_zero(v); }),
             rows.end());
  return rows;
}

std::vector<Vec> echelon_basis(std::vector<Vec> rows) {
  std::vector<Vec> out;  // kept sorted by leading column, leads normalized to 1
  for (auto& v : rows) {
    for (const auto& r : out) {
      int lc = leading_col(r);
      if (lc >= 0 && v[static_cast<std::size_t>(lc)] != 0) {
        const Rat f = v[static_cast<std::size_t>(lc)];
        for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * r[j];
      }
    }
    int lc = leading_col(v);
    if (lc < 0) continue;
    const Rat p = v[static_cast<std::size_t>(lc)];
    for (std::size_t j = 0; j < v.size(); ++j) v[j] /= p;
    auto pos = std::upper_bound(out.begin(), out.end(), lc,
                                [](int c, const Vec& w) { return c < leading_col(w); });
    out.insert(pos, v);
  }
  return out;
}

std::vector<Vec> nullspace(const Mat& m) {
  const std::size_t cols = m.cols();
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  auto rr = rref_rows(std::move(rows));
  std::vector<int> pivot_of_row(rr.size());
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t i = 0; i < rr.size(); ++i) {
    pivot_of_row[i] = leading_col(rr[i]);
    is_pivot[static_cast<std::size_t>(pivot_of_row[i])] = true;
  }
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(cols, Rat(0));
    v[f] = 1;
    for (std::size_t i = 0; i < rr.size(); ++i)
      v[static_cast<std::size_t>(pivot_of_row[i])] = -rr[i][f];
    basis.push_back(std::move(v));
  }
  return echelon_basis(std::move(basis));
}

int rank(const Mat& m) {
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rank_rows(rows);
}

int rank_rows(const std::vector<Vec>& rows) {
  return static_cast<int>(rref_rows(rows).size());
}

bool in_span(const std::vector<Vec>& basis, const Vec& v) {
  if (vec_is_zero(v)) return true;
  auto a = rref_rows(basis);
  auto b = a;
  b.push_back(v);
  return a.size() == rref_rows(b).size();
}

bool same_span(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  return rref_rows(a) == rref_rows(b);
}

std::optional<Vec> express_in(const std::vector<Vec>& vectors, const Vec& v) {
  const std::size_t g = vectors.size();
  const std::size_t d = v.size();
  Mat m(d, g);
  for (std::size_t j = 0; j < g; ++j) {
    if (vectors[j].size() != d) throw InputError("express_in: size mismatch");
    for (std::size_t i = 0; i < d; ++i) m.at(i, j) = vectors[j][i];
  }
  return solve_affine(m, v, {});
}

std::optional<Vec> solve_affine(const Mat& m, const Vec& b,
                                const std::map<std::size_t, Rat>& fixed) {
  const std::size_t R = m.rows(), C = m.cols();
  if (b.size() != R) throw InputError("solve_affine: rhs size mismatch");
  for (const auto& [k, v] : fixed) {
    (void)v;
    if (k >= C) throw InputError("solve_affine: fixed index out of range");
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < C; ++j)
    if (!fixed.count(j)) free_cols.push_back(j);

  // reduced augmented system over the free columns
  std::vector<Vec> rows(R, Vec(free_cols.size() + 1, Rat(0)));
  for (std::size_t i = 0; i < R; ++i) {
    Rat rhs = b[i];
    for (const auto& [k, v] : fixed) rhs -= m.at(i, k) * v;
    for (std::size_t j = 0; j < free_cols.size(); ++j)
      rows[i][j] = m.at(i, free_cols[j]);
    rows[i][free_cols.size()] = rhs;
  }

  const std::size_t n = free_cols.size();
  std::size_t r = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (col, row)
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t sel = rows.size();
    for (std::size_t i = r; i < rows.size(); ++i)
      if (rows[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const Rat p = rows[r][c];
    for (std::size_t j = 0; j <= n; ++j) rows[r][j] /= p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rat f = rows[i][c];
      for (std::size_t j = 0; j <= n; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.emplace_back(c, r);
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i)
    if (rows[i][n] != 0) return std::nullopt;

  Vec z(C, Rat(0));
  for (const auto& [k, v] : fixed) z[k] = v;
  for (const auto& [c, row] : pivots) z[free_cols[c]] = rows[row][n];
  return z;
}

namespace {

struct Ineq {
  Vec a;
  Rat b;
  bool strict;
};

// scale so the first nonzero coefficient has absolute value 1 (canonical up
// to positive scaling, used for deduplication only)
Ineq normalized(Ineq c) {
  for (const auto& x : c.a) {
    if (x != 0) {
      Rat s = rat_abs(x);
      for (auto& y : c.a) y /= s;
      c.b /= s;
      break;
    }
  }
  return c;
}

bool satisfied(const LinCon& c, const Vec& w) {
  Rat lhs = dot(c.a, w);
  switch (c.rel) {
    case Rel::Eq:
      return lhs == c.b;
    case Rel::Ge:
      return lhs >= c.b;
    case Rel::Gt:
      return lhs > c.b;
  }
  return false;
}

}  // namespace

LpResult lp_feasible(const std::vector<LinCon>& original, std::size_t nvars) {
  for (const auto& c : original)
    if (c.a.size() != nvars) throw InputError("lp_feasible: constraint size mismatch");

  struct Subst {
    std::size_t var;
    Vec coeff;  // x_var = konst + coeff · x
    Rat konst;
  };
  std::vector<Subst> substs;

  std::vector<LinCon> eqs;
  std::vector<Ineq> ineqs;
  for (const auto& c : original) {
    if (c.rel == Rel::Eq)
      eqs.push_back(c);
    else
      ineqs.push_back(Ineq{c.a, c.b, c.rel == Rel::Gt});
  }

  // equality substitution
  while (!eqs.empty()) {
    LinCon e = eqs.front();
    eqs.erase(eqs.begin());
    std::size_t k = nvars;
    for (std::size_t j = 0; j < nvars; ++j)
      if (e.a[j] != 0) {
        k = j;
        break;
      }
    if (k == nvars) {
      if (e.b != 0) return {false, {}};
      continue;
    }
    Subst s;
    s.var = k;
    s.konst = e.b / e.a[k];
    s.coeff = Vec(nvars, Rat(0));
    for (std::size_t j = 0; j < nvars; ++j)
      if (j != k && e.a[j] != 0) s.coeff[j] = -e.a[j] / e.a[k];
    auto apply = [&](Vec& a, Rat& b) {
      if (a[k] == 0) return;
      const Rat f = a[k];
      a[k] = 0;
      for (std::size_t j = 0; j < nvars; ++j)
        if (s.coeff[j] != 0) a[j] += f * s.coeff[j];
      b -= f * s.konst;
    };
    for (auto& e2 : eqs) apply(e2.a, e2.b);
    for (auto& c : ineqs) apply(c.a, c.b);
    substs.push_back(std::move(s));
  }

  struct Stage {
    std::size_t var;
    std::vector<Ineq> lowers, uppers;  // original-form rows, a[var] > 0 / < 0
  };
  std::vector<Stage> stages;

  // one row per direction: parallel constraints collapse to the tightest
  // bound, which keeps the late elimination stages from exploding
  auto prune = [&](std::vector<Ineq>& cs) -> bool {
    std::vector<Ineq> kept;
    std::map<std::string, std::size_t> at;
    for (auto& c : cs) {
      bool allz = true;
      for (const auto& x : c.a)
        if (x != 0) {
          allz = false;
          break;
        }
      if (allz) {
        if (c.strict ? !(Rat(0) > c.b) : !(Rat(0) >= c.b)) return false;
        continue;
      }
      Ineq n = normalized(c);
      std::ostringstream os;
      for (const auto& x : n.a) os << rat_str(x) << ",";
      std::string key = os.str();
      auto it = at.find(key);
      if (it == at.end()) {
        at[key] = kept.size();
        kept.push_back(std::move(n));
      } else {
        Ineq& old = kept[it->second];
        if (n.b > old.b || (n.b == old.b && n.strict && !old.strict)) {
          old.b = n.b;
          old.strict = n.strict;
        }
      }
    }
    cs = std::move(kept);
    return true;
  };

  if (!prune(ineqs)) return {false, {}};

  while (true) {
    // pick the variable minimizing #lower * #upper among those present
    std::size_t best = nvars;
    long best_score = -1;
    for (std::size_t j = 0; j < nvars; ++j) {
      long np = 0, nn = 0;
      for (const auto& c : ineqs) {
        if (c.a[j] > 0) ++np;
        if (c.a[j] < 0) ++nn;
      }
      if (np + nn == 0) continue;
      long score = np * nn;
      if (best == nvars || score < best_score) {
        best = j;
        best_score = score;
      }
    }
    if (best == nvars) break;

    Stage st;
    st.var = best;
    std::vector<Ineq> rest;
    for (auto& c : ineqs) {
      if (c.a[best] > 0)
        st.lowers.push_back(std::move(c));
      else if (c.a[best] < 0)
        st.uppers.push_back(std::move(c));
      else
        rest.push_back(std::move(c));
    }
    for (const auto& lo : st.lowers) {
      for (const auto& up : st.uppers) {
        // (-up.a[k]) * lo + lo.a[k] * up, coefficient of x_k cancels
        const Rat f1 = -up.a[best];
        const Rat f2 = lo.a[best];
        Ineq nw;
        nw.a = Vec(nvars, Rat(0));
        for (std::size_t j = 0; j < nvars; ++j) nw.a[j] = f1 * lo.a[j] + f2 * up.a[j];
        nw.b = f1 * lo.b + f2 * up.b;
        nw.strict = lo.strict || up.strict;
        rest.push_back(std::move(nw));
      }
    }
    ineqs = std::move(rest);
    if (!prune(ineqs)) return {false, {}};
    stages.push_back(std::move(st));
  }

  // back-substitute a witness
  Vec w(nvars, Rat(0));
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    const Stage& st = *it;
    bool has_lo = false, has_up = false, lo_strict = false, up_strict = false;
    Rat lo, up;
    for (const auto& c : st.lowers) {
      Rat rest = c.b;
      for (std::size_t j = 0; j < nvars; ++j)
        if (j != st.var && c.a[j] != 0) rest -= c.a[j] * w[j];
      Rat v = rest / c.a[st.var];
      if (!has_lo || v > lo) {
        lo = v;
        lo_strict = c.strict;
        has_lo = true;
      } else if (v == lo && c.strict) {
        lo_strict = true;
      }
    }
    for (const auto& c : st.uppers) {
      Rat rest = c.b;
      for (std::size_t j = 0; j < nvars; ++j)
        if (j != st.var && c.a[j] != 0) rest -= c.a[j] * w[j];
      Rat v = rest / c.a[st.var];  // a[var] < 0 flips to an upper bound
      if (!has_up || v < up) {
        up = v;
        up_strict = c.strict;
        has_up = true;
      } else if (v == up && c.strict) {
        up_strict = true;
      }
    }
    Rat val = 0;
    if (has_lo && has_up) {
      if (!lo_strict)
        val = lo;
      else if (!up_strict)
        val = up == lo ? lo : up;
      else
        val = (lo + up) / 2;
      if (lo == up) val = lo;
    } else if (has_lo) {
      val = lo_strict ? lo + 1 : lo;
    } else if (has_up) {
      val = up_strict ? up - 1 : up;
    }
    w[st.var] = val;
  }
  for (auto it = substs.rbegin(); it != substs.rend(); ++it)
    w[it->var] = it->konst + dot(it->coeff, w);

  for (const auto& c : original)
    if (!satisfied(c, w))
      throw TheoremViolation("lp_feasible: witness failed verification");
  return {true, w};
}

std::optional<Vec> nonneg_solve(const Mat& m, const Vec& b) {
  const std::size_t R = m.rows(), C = m.cols();
  if (b.size() != R) throw InputError("nonneg_solve: rhs size mismatch");

  // phase-one tableau [m | I | b] with artificial basis; minimize the sum of
  // the artificials, entering restricted to the original columns
  std::vector<Vec> t(R, Vec(C + R + 1, Rat(0)));
  std::vector<std::size_t> basis(R);
  for (std::size_t i = 0; i < R; ++i) {
    const int flip = sgn(b[i]) < 0 ? -1 : 1;
    for (std::size_t j = 0; j < C; ++j) t[i][j] = flip * m.at(i, j);
    t[i][C + i] = 1;
    t[i][C + R] = flip * b[i];
    basis[i] = C + i;
  }
  Vec z(C + R + 1, Rat(0));
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j <= C + R; ++j) z[j] += t[i][j];

  while (true) {
    std::size_t enter = C;
    for (std::size_t j = 0; j < C; ++j)
      if (z[j] > 0) {
        enter = j;
        break;
      }
    if (enter == C) break;
    std::size_t row = R;
    for (std::size_t i = 0; i < R; ++i) {
      if (t[i][enter] <= 0) continue;
      if (row == R) {
        row = i;
        continue;
      }
      const Rat cur = t[i][C + R] / t[i][enter];
      const Rat best = t[row][C + R] / t[row][enter];
      if (cur < best || (cur == best && basis[i] < basis[row])) row = i;
    }
    if (row == R) break;  // unbounded column cannot improve a bounded phase
    const Rat p = t[row][enter];
    for (auto& x : t[row]) x /= p;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == row || t[i][enter] == 0) continue;
      const Rat f = t[i][enter];
      for (std::size_t j = 0; j <= C + R; ++j) t[i][j] -= f * t[row][j];
    }
    if (z[enter] != 0) {
      const Rat f = z[enter];
      for (std::size_t j = 0; j <= C + R; ++j) z[j] -= f * t[row][j];
    }
    basis[row] = enter;
  }
  if (z[C + R] != 0) return std::nullopt;

  Vec x(C, Rat(0));
  for (std::size_t i = 0; i < R; ++i)
    if (basis[i] < C) x[basis[i]] = t[i][C + R];
  for (const auto& c : x)
    if (c < 0) throw TheoremViolation("nonneg_solve: negative witness entry");
  for (std::size_t i = 0; i < R; ++i) {
    Rat lhs = 0;
    for (std::size_t j = 0; j < C; ++j) lhs += m.at(i, j) * x[j];
    if (lhs != b[i]) throw TheoremViolation("nonneg_solve: witness failed verification");
  }
  return x;
}

std::optional<Vec> cone_coefficients(const std::vector<Vec>& gens, const Vec& v) {
  const std::size_t g = gens.size();
  for (const auto& u : gens)
    if (u.size() != v.size()) throw InputError("cone_coefficients: size mismatch");
  Mat m(v.size(), g);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < g; ++j) m.at(i, j) = gens[j][i];
  return nonneg_solve(m, v);
}

}  // namespace hk
