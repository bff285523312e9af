#include "hodgekit/hodge.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>

#include "hodgekit/errors.hpp"
#include "hodgekit/tropfan.hpp"

namespace hk {

namespace {

Vec require_nef(const LorentzInstance& inst, const Vec& v, const char* who) {
  auto c = inst.certify_nef(v);
  if (!c)
    throw InputError(std::string(who) + ": class " + vec_str(v) +
                     " is not certified nef");
  return *c;
}

// nd without re-certification, for classes already known nef
int nd_core(const LorentzInstance& inst, const Vec& v) {
  const int n = inst.degree();
  for (int k = n; k >= 0; --k) {
    std::vector<std::pair<Vec, int>> args;
    if (k > 0) args.push_back({v, k});
    if (n - k > 0) args.push_back({inst.omega(), n - k});
    if (sgn(inst.F().eval_multi(args)) > 0) return k;
  }
  return 0;
}

int nd_with_witness(const LorentzInstance& inst, const Vec& v, const Vec& w) {
  const int n = inst.degree();
  for (int k = n; k >= 0; --k) {
    std::vector<std::pair<Vec, int>> args;
    if (k > 0) args.push_back({v, k});
    if (n - k > 0) args.push_back({w, n - k});
    if (sgn(inst.F().eval_multi(args)) > 0) return k;
  }
  return 0;
}

void require_collection_arity(const NefCollection& col, const char* who) {
  if (!col.instance) throw InputError(std::string(who) + ": detached collection");
  if (col.m() != col.instance->degree() - 2)
    throw InputError(std::string(who) + ": needs exactly n-2 classes, got " +
                     std::to_string(col.m()));
}

// Q(j,k) = F(classes..., omega padding..., e_j, e_k)
Mat padded_form(const LorentzInstance& inst, const std::vector<Vec>& classes) {
  const int n = inst.degree();
  if ((int)classes.size() > n - 2)
    throw InputError("padded form: more than n-2 classes");
  std::vector<Vec> rest = classes;
  while ((int)rest.size() < n - 2) rest.push_back(inst.omega());
  return quad_form(inst.F(), rest);
}

struct VEffCore {
  std::vector<Vec> basis;
  std::vector<std::string> members;
};

VEffCore veff_core(const LorentzInstance& inst, const Mat& q) {
  VEffCore out;
  std::vector<Vec> vecs;
  for (const auto& e : inst.eff_generators()) {
    if (vec_is_zero(q.mul(e.vec))) {
      out.members.push_back(e.label);
      vecs.push_back(e.vec);
    }
  }
  out.basis = echelon_basis(vecs);
  return out;
}

}  // namespace

int nd(const LorentzInstance& inst, const Vec& v) {
  require_nef(inst, v, "nd");
  return nd_core(inst, v);
}

bool nd_witness_independence(const LorentzInstance& inst, const Vec& v,
                             const std::vector<Vec>& witnesses) {
  require_nef(inst, v, "nd");
  const int base = nd_core(inst, v);
  const int n = inst.degree();
  for (const auto& w : witnesses) {
    require_nef(inst, w, "nd witness");
    if (sgn(inst.F().eval_multi({{w, n}})) <= 0)
      throw InputError("nd witness: alternative witness is not interior");
    if (nd_with_witness(inst, v, w) != base) return false;
  }
  return true;
}

SubmodularityReport nd_submodularity(const LorentzInstance& inst, const Vec& x,
                                     const Vec& y, const Vec& z) {
  require_nef(inst, x, "nd submodularity");
  require_nef(inst, y, "nd submodularity");
  require_nef(inst, z, "nd submodularity");
  SubmodularityReport r;
  r.n_xz = nd_core(inst, vec_add(x, z));
  r.n_yz = nd_core(inst, vec_add(y, z));
  r.n_xyz = nd_core(inst, vec_add(vec_add(x, y), z));
  r.n_z = nd_core(inst, z);
  r.holds = r.n_xyz + r.n_z <= r.n_xz + r.n_yz;
  return r;
}

NonvanishingReport nonvanishing(const LorentzInstance& inst,
                                const std::vector<Vec>& alphas) {
  const int n = inst.degree();
  const int m = (int)alphas.size();
  if (m > n) throw InputError("nonvanishing: more classes than the degree");
  for (const auto& a : alphas) require_nef(inst, a, "nonvanishing");

  NonvanishingReport rep;
  std::vector<std::pair<Vec, int>> args;
  for (const auto& a : alphas) args.push_back({a, 1});
  if (n - m > 0) args.push_back({inst.omega(), n - m});
  rep.value = inst.F().eval_multi(args);
  rep.positive = sgn(rep.value) > 0;

  rep.criterion = true;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    Vec sum = zero_vec(inst.dim());
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) sum = vec_add(sum, alphas[i]);
    if (nd_core(inst, sum) < std::popcount(mask)) {
      rep.criterion = false;
      rep.violating_subset = mask;
      break;
    }
  }
  if (rep.positive != rep.criterion)
    throw TheoremViolation("nonvanishing: value sign and nd criterion disagree");
  return rep;
}

CriticalityReport classify(const NefCollection& col) {
  if (!col.instance) throw InputError("classify: detached collection");
  const LorentzInstance& inst = *col.instance;
  const int m = col.m();
  CriticalityReport rep;
  rep.nd_of_subset.assign(1u << m, 0);
  for (unsigned mask = 1; mask < (1u << m); ++mask)
    rep.nd_of_subset[mask] = nd_core(inst, col.subset_sum(mask));

  bool super = true, critical = true, sub = true;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    const int size = std::popcount(mask);
    const int v = rep.nd_of_subset[mask];
    if (v < size + 2) super = false;
    if (v < size + 1) critical = false;
    if (v < size) {
      sub = false;
      if (!rep.violating) rep.violating = mask;
    }
  }

  if (super) {
    rep.status = Criticality::SUPERCRITICAL;
    return rep;
  }
  if (critical) {
    rep.status = Criticality::CRITICAL;
    std::vector<unsigned> crit;
    for (unsigned mask = 1; mask < (1u << m); ++mask)
      if (rep.nd_of_subset[mask] == std::popcount(mask) + 1) crit.push_back(mask);
    for (unsigned a : crit) {
      bool maximal = true;
      for (unsigned b : crit)
        if (a != b && (a & b) == a) {
          maximal = false;
          break;
        }
      if (maximal) rep.maximal_critical.push_back(a);
    }
    for (std::size_t i = 0; i < rep.maximal_critical.size(); ++i)
      for (std::size_t j = i + 1; j < rep.maximal_critical.size(); ++j)
        if (rep.maximal_critical[i] & rep.maximal_critical[j])
          throw TheoremViolation("classify: maximal critical subsets intersect");
    return rep;
  }
  if (sub) {
    rep.status = Criticality::SUBCRITICAL;
    unsigned u = 0;
    for (unsigned mask = 1; mask < (1u << m); ++mask)
      if (rep.nd_of_subset[mask] == std::popcount(mask)) u |= mask;
    if (rep.nd_of_subset[u] != std::popcount(u))
      throw TheoremViolation("classify: union of subcritical subsets is not subcritical");
    rep.maximal_subcritical = u;

    const int n = inst.degree();
    rep.products_nonzero = true;
    const unsigned rest_mask = ((1u << m) - 1u) & ~u;
    for (unsigned mask = rest_mask; mask; mask = (mask - 1) & rest_mask) {
      const int size = std::popcount(mask);
      std::vector<std::pair<Vec, int>> args;
      args.push_back({col.subset_sum(mask), size + 1});
      for (int j = 0; j < m; ++j)
        if (u & (1u << j)) args.push_back({col.classes[j], 1});
      const int used = size + 1 + std::popcount(u);
      if (n - used > 0) args.push_back({inst.omega(), n - used});
      if (sgn(inst.F().eval_multi(args)) == 0) {
        rep.products_nonzero = false;
        break;
      }
    }
    return rep;
  }
  rep.status = Criticality::NOT_SUBCRITICAL;
  return rep;
}

Mat intersection_form(const NefCollection& col) {
  require_collection_arity(col, "intersection form");
  return quad_form(col.instance->F(), col.classes);
}

std::vector<Vec> kernel(const NefCollection& col) {
  return nullspace(intersection_form(col));
}

VEffResult v_eff(const NefCollection& col) {
  Mat q = intersection_form(col);
  VEffCore core = veff_core(*col.instance, q);
  return VEffResult{core.basis, core.members};
}

PropResult proportionality(const Mat& q, const Vec& x, const Vec& y) {
  if (q.rows() != q.cols() || !q.is_symmetric())
    throw InputError("proportionality: form is not symmetric");
  if (x.size() != q.rows() || y.size() != q.rows())
    throw InputError("proportionality: vector dimension mismatch");
  if (signature(q).pos != 1)
    throw InputError("proportionality: needs exactly one positive eigenvalue");
  const Vec qx = q.mul(x), qy = q.mul(y);
  const Rat xx = dot(x, qx), yy = dot(y, qy), xy = dot(x, qy);
  if (sgn(xx) < 0 || sgn(yy) < 0)
    throw InputError("proportionality: needs Q(x,x) >= 0 and Q(y,y) >= 0");

  PropResult res;
  res.gap = xy * xy - xx * yy;
  if (sgn(res.gap) < 0)
    throw TheoremViolation("proportionality: reversed Cauchy-Schwarz failed");
  if (sgn(res.gap) > 0) {
    res.status = PropStatus::NOT_APPLICABLE;
    return res;
  }
  if (vec_is_zero(qx)) {
    res.status = PropStatus::KERNEL_CERT;
    res.kernel_vector = x;
    return res;
  }
  if (vec_is_zero(qy)) {
    res.status = PropStatus::KERNEL_CERT;
    res.kernel_vector = y;
    return res;
  }
  std::size_t i = 0;
  while (qx[i] == 0) ++i;
  const Rat c = qy[i] / qx[i];
  if (qy != vec_scale(c, qx))
    throw TheoremViolation("proportionality: equality without proportional forms");
  res.status = PropStatus::PROPORTIONAL;
  res.c = c;
  return res;
}

LocalHiiCertificate local_hii(const NefCollection& col, int r, const Vec& alpha) {
  require_collection_arity(col, "local hii");
  const LorentzInstance& inst = *col.instance;
  const int m = col.m();
  if (r < 1 || r > m) throw InputError("local hii: slot out of range");

  Mat q_full = intersection_form(col);
  {
    Vec qa = q_full.mul(alpha);
    for (std::size_t j = 0; j < qa.size(); ++j)
      if (qa[j] != 0)
        throw InputError("local hii: alpha is not in the kernel, F(L, alpha, e" +
                         std::to_string(j + 1) + ") = " + rat_str(qa[j]));
  }

  // omega-paired form with slot r replaced by the interior witness
  std::vector<Vec> rest;
  for (int j = 0; j < m; ++j)
    if (j != r - 1) rest.push_back(col.classes[j]);
  rest.push_back(inst.omega());
  Mat q_hat = quad_form(inst.F(), rest);

  LocalHiiCertificate cert;
  std::vector<Vec> family;
  std::vector<std::string> labels;
  for (const auto& e : inst.eff_generators()) {
    family.push_back(e.vec);
    labels.push_back(e.label);
  }
  std::vector<bool> forced_v(family.size(), false);
  if (rank_rows(family) < inst.dim()) {
    cert.augmented = true;
    for (std::size_t j = 0; j < inst.nef_generators().size(); ++j) {
      family.push_back(inst.nef_generators()[j]);
      labels.push_back("nef#" + std::to_string(j));
      forced_v.push_back(true);
    }
  }

  auto a = express_in(family, alpha);
  if (!a) throw InputError("local hii: alpha is outside the span of the family");

  std::vector<std::size_t> vc;  // family members inside ker L
  std::map<std::size_t, Rat> fixed;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!forced_v[i] && vec_is_zero(q_full.mul(family[i])))
      vc.push_back(i);
    else
      fixed[i] = (*a)[i];
  }

  // gram rows of the omega-paired form over the kernel members
  std::vector<Vec> gram_qf;
  for (const auto& f : family) gram_qf.push_back(q_hat.mul(f));
  Mat sys((std::size_t)vc.size(), family.size());
  for (std::size_t i = 0; i < vc.size(); ++i)
    for (std::size_t j = 0; j < family.size(); ++j)
      sys.at(i, j) = dot(family[vc[i]], gram_qf[j] /* column j of the gram */);
  auto z = solve_affine(sys, zero_vec(vc.size()), fixed);
  if (!z) {
    cert.ok = false;
    cert.failure =
        "restricted omega-pairing system is inconsistent: the effective "
        "pairing positivity axiom cannot hold for this family";
    return cert;
  }

  Vec beta = zero_vec(inst.dim());
  for (std::size_t i = 0; i < family.size(); ++i)
    beta = vec_add(beta, vec_scale((*z)[i], family[i]));
  cert.beta = beta;

  Vec recon = alpha;
  for (std::size_t i : vc) {
    const Rat delta = (*z)[i] - (*a)[i];
    if (delta != 0) cert.correction.push_back({labels[i], delta});
    recon = vec_add(recon, vec_scale(delta, family[i]));
  }
  cert.residual = vec_sub(recon, beta);
  if (!vec_is_zero(cert.residual))
    throw TheoremViolation("local hii: correction does not reproduce beta");

  std::vector<std::pair<Vec, int>> tail;
  for (int j = 0; j < m; ++j)
    if (j != r - 1) tail.push_back({col.classes[j], 1});
  for (const auto& e : inst.eff_generators()) {
    std::vector<std::pair<Vec, int>> args = {{e.vec, 1}, {beta, 2}};
    for (const auto& t : tail) args.push_back(t);
    Rat val = inst.F().eval_multi(args);
    if (sgn(val) > 0)
      throw TheoremViolation("local hii: -beta^2 lost effective negativity at '" +
                             e.label + "'");
    cert.eff_values.push_back(val);
  }
  cert.ok = true;
  return cert;
}

namespace {

struct DegenerateCheck {
  bool pairing;  // L.a.b = 0 and L.omega.a = L.omega.b
  bool kernel;   // L.a.b = 0 and L.(a-b) = 0 as a linear form
};

DegenerateCheck degenerate_core(const Mat& q_pad, const Vec& omega, const Vec& a,
                                const Vec& b) {
  const Vec qa = q_pad.mul(a), qb = q_pad.mul(b);
  const bool cross = sgn(dot(a, qb)) == 0;
  DegenerateCheck out;
  out.pairing = cross && dot(omega, qa) == dot(omega, qb);
  out.kernel = cross && qa == qb;
  if (out.pairing != out.kernel)
    throw TheoremViolation("degenerate pair characterizations disagree");
  return out;
}

}  // namespace

bool degenerate_pair(const NefCollection& col, const Vec& alpha, const Vec& beta) {
  if (!col.instance) throw InputError("degenerate pair: detached collection");
  const LorentzInstance& inst = *col.instance;
  require_nef(inst, alpha, "degenerate pair");
  require_nef(inst, beta, "degenerate pair");
  Mat q_pad = padded_form(inst, col.classes);
  return degenerate_core(q_pad, inst.omega(), alpha, beta).pairing;
}

VDegReport v_deg_probe(const NefCollection& col,
                       const std::optional<std::vector<Vec>>& menu) {
  if (!col.instance) throw InputError("degeneration probe: detached collection");
  const LorentzInstance& inst = *col.instance;
  VDegReport rep;

  std::vector<Vec> candidates;
  std::set<Vec> seen;
  auto add = [&](const Vec& v) {
    if (seen.insert(v).second) candidates.push_back(v);
  };
  if (menu) {
    for (const auto& v : *menu) add(v);
  } else {
    for (const auto& e : inst.eff_generators()) add(e.vec);
    for (const auto& g : inst.nef_generators()) add(g);
    const std::size_t base = candidates.size();
    const std::size_t with_sums = base + base * (base - 1) / 2;
    if (with_sums * (with_sums - 1) / 2 <= 20000) {
      for (std::size_t i = 0; i < base; ++i)
        for (std::size_t j = i + 1; j < base; ++j)
          add(vec_add(candidates[i], candidates[j]));
    } else {
      rep.sums_included = false;
    }
  }
  for (const auto& v : candidates)
    if (inst.certify_nef(v)) rep.menu.push_back(v);

  Mat q_pad = padded_form(inst, col.classes);
  std::vector<Vec> diffs;
  for (std::size_t i = 0; i < rep.menu.size(); ++i)
    for (std::size_t j = i + 1; j < rep.menu.size(); ++j) {
      if (degenerate_core(q_pad, inst.omega(), rep.menu[i], rep.menu[j]).pairing) {
        rep.pairs.push_back({i, j});
        diffs.push_back(vec_sub(rep.menu[i], rep.menu[j]));
      }
    }
  rep.basis = echelon_basis(diffs);
  return rep;
}

HlReport hl_check(const NefCollection& col) {
  require_collection_arity(col, "hard lefschetz check");
  const LorentzInstance& inst = *col.instance;
  HlReport rep;
  rep.kernel_basis = kernel(col);
  rep.veff = v_eff(col);
  rep.probe = v_deg_probe(col);
  rep.kernel_is_veff = same_span(rep.kernel_basis, rep.veff.basis);
  std::vector<Vec> joined = rep.veff.basis;
  for (const auto& v : rep.probe.basis) joined.push_back(v);
  rep.kernel_is_veff_plus_probe = same_span(rep.kernel_basis, echelon_basis(joined));
  rep.hard_lefschetz = rep.kernel_basis.empty();

  std::vector<int> nds;
  for (const auto& L : col.classes) nds.push_back(nd_core(inst, L));
  std::sort(nds.rbegin(), nds.rend());
  bool ordering = true;
  for (std::size_t i = 0; i < nds.size(); ++i)
    if (nds[i] < (int)i + 3) {
      ordering = false;
      break;
    }
  bool fan_ample = false;
  if (inst.fan()) {
    fan_ample = true;
    for (const auto& L : col.classes)
      if (!is_ample(inst.fan()->fan, inst.fan()->space.section(L)).ok) {
        fan_ample = false;
        break;
      }
  }
  rep.hypothesis_confirmed = ordering || fan_ample;
  rep.hypothesis_note = ordering          ? "nd ordering"
                        : fan_ample       ? "fan with ample classes"
                                          : "unconfirmed";
  if (rep.hypothesis_confirmed && !rep.kernel_is_veff)
    throw TheoremViolation("hard lefschetz check: kernel differs from the "
                           "effective span under a confirmed hypothesis");
  return rep;
}

FlagReport flag_collections(const NefCollection& col) {
  require_collection_arity(col, "flag analysis");
  const LorentzInstance& inst = *col.instance;
  if (classify(col).status != Criticality::SUPERCRITICAL)
    throw InputError("flag analysis needs a supercritical collection");

  const int m = col.m();
  FlagReport rep;
  std::vector<Vec> union_kernel;
  std::vector<int> perm(m);
  for (int i = 0; i < m; ++i) perm[i] = i;
  do {
    FlagCheck chk;
    std::vector<Vec> classes;
    unsigned mask = 0;
    chk.nd_ok = true;
    for (int k = 0; k < m; ++k) {
      mask |= 1u << perm[k];
      chk.flag.push_back(mask);
      Vec sum = col.subset_sum(mask);
      if (nd_core(inst, sum) < k + 3) chk.nd_ok = false;
      classes.push_back(std::move(sum));
    }
    NefCollection flag_col = NefCollection::make(inst, classes);
    std::vector<Vec> ker = kernel(flag_col);
    chk.kernel_is_veff = same_span(ker, v_eff(flag_col).basis);
    if (chk.nd_ok && !chk.kernel_is_veff)
      throw TheoremViolation("flag analysis: kernel differs from the effective "
                             "span along a flag with confirmed nd growth");
    for (const auto& v : ker) union_kernel.push_back(v);
    rep.flags.push_back(std::move(chk));
  } while (std::next_permutation(perm.begin(), perm.end()));

  rep.kernel_union_basis = echelon_basis(union_kernel);
  rep.union_is_veff = same_span(rep.kernel_union_basis, v_eff(col).basis);
  rep.all_ok = rep.union_is_veff;
  for (const auto& f : rep.flags)
    if (!f.nd_ok || !f.kernel_is_veff) rep.all_ok = false;
  return rep;
}

LogConcavityReport logconcavity(const LorentzInstance& inst, const Vec& A,
                                const Vec& B) {
  require_nef(inst, A, "logconcavity");
  require_nef(inst, B, "logconcavity");
  const int n = inst.degree();
  LogConcavityReport rep;
  for (int k = 0; k <= n; ++k) {
    std::vector<std::pair<Vec, int>> args;
    if (k > 0) args.push_back({A, k});
    if (n - k > 0) args.push_back({B, n - k});
    rep.a.push_back(inst.F().eval_multi(args));
  }
  rep.logconcave = true;
  for (int k = 1; k < n; ++k)
    if (rep.a[k] * rep.a[k] < rep.a[k - 1] * rep.a[k + 1]) rep.logconcave = false;

  for (int k = 1; k < n; ++k) {
    if (rep.a[k] * rep.a[k] != rep.a[k - 1] * rep.a[k + 1] || sgn(rep.a[k]) <= 0)
      continue;
    std::vector<Vec> rest;
    for (int i = 0; i < k - 1; ++i) rest.push_back(A);
    for (int i = 0; i < n - k - 1; ++i) rest.push_back(B);
    Mat q = quad_form(inst.F(), rest);
    ExtremalCase ex;
    ex.k = k;
    ex.prop = proportionality(q, B, A);
    if (ex.prop.status == PropStatus::PROPORTIONAL) {
      Vec diff = vec_sub(A, vec_scale(*ex.prop.c, B));
      ex.diff_in_veff_span =
          vec_is_zero(diff) || in_span(veff_core(inst, q).basis, diff);
    }
    rep.extremals.push_back(std::move(ex));
  }
  return rep;
}

HodgeIndexReport hodge_index_extremal(const NefCollection& col, const Vec& A,
                                      const Vec& B) {
  require_collection_arity(col, "hodge index");
  const LorentzInstance& inst = *col.instance;
  require_nef(inst, A, "hodge index");
  require_nef(inst, B, "hodge index");
  Mat q = intersection_form(col);
  HodgeIndexReport rep;
  rep.ab = dot(A, q.mul(B));
  rep.aa = dot(A, q.mul(A));
  rep.bb = dot(B, q.mul(B));
  rep.gap = rep.ab * rep.ab - rep.aa * rep.bb;
  if (sgn(rep.gap) < 0)
    throw TheoremViolation("hodge index: reversed Cauchy-Schwarz failed");
  rep.equality = sgn(rep.gap) == 0;
  if (!rep.equality || sgn(rep.ab) <= 0) return rep;

  rep.c = rep.ab / rep.bb;
  Vec diff = vec_sub(A, vec_scale(*rep.c, B));
  VEffCore core = veff_core(inst, q);
  std::vector<Vec> member_vecs;
  for (const auto& e : inst.eff_generators())
    if (vec_is_zero(q.mul(e.vec))) member_vecs.push_back(e.vec);
  if (vec_is_zero(diff)) {
    rep.has_decomposition = true;
    return rep;
  }
  auto coeffs = express_in(member_vecs, diff);
  if (!coeffs) return rep;
  rep.has_decomposition = true;
  for (std::size_t i = 0; i < member_vecs.size(); ++i)
    if ((*coeffs)[i] != 0) rep.decomposition.push_back({core.members[i], (*coeffs)[i]});
  return rep;
}

}  // namespace hk
