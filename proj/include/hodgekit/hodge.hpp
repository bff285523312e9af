#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hodgekit/exactlin.hpp"
#include "hodgekit/instance.hpp"
#include "hodgekit/rational.hpp"

namespace hk {

// Numerical dimension: the largest k with F(v^k, omega^{n-k}) > 0. The class
// must be certified nef, otherwise the call is rejected.
int nd(const LorentzInstance& inst, const Vec& v);

// nd computed against each alternative interior witness (every w must have
// F(w^n) > 0 and be certified nef); true when all agree with the default.
bool nd_witness_independence(const LorentzInstance& inst, const Vec& v,
                             const std::vector<Vec>& witnesses);

struct SubmodularityReport {
  bool holds = false;
  int n_xz = 0, n_yz = 0, n_xyz = 0, n_z = 0;  // nd(x+z), nd(y+z), nd(x+y+z), nd(z)
};
// nd(x+y+z) + nd(z) <= nd(x+z) + nd(y+z) for certified nef x, y, z.
SubmodularityReport nd_submodularity(const LorentzInstance& inst, const Vec& x,
                                     const Vec& y, const Vec& z);

struct NonvanishingReport {
  bool positive = false;   // F(alpha_1, ..., alpha_m, omega^{n-m}) > 0
  Rat value;
  bool criterion = false;  // nd(alpha_I) >= |I| for every nonempty subset
  std::optional<unsigned> violating_subset;  // first failing subset mask
};
// Both sides of the nonvanishing characterization; their agreement is a
// theorem and disagreement throws.
NonvanishingReport nonvanishing(const LorentzInstance& inst,
                                const std::vector<Vec>& alphas);

enum class Criticality { NOT_SUBCRITICAL, SUBCRITICAL, CRITICAL, SUPERCRITICAL };

struct CriticalityReport {
  Criticality status = Criticality::NOT_SUBCRITICAL;
  std::vector<int> nd_of_subset;  // indexed by subset mask, entry 0 is nd(0)=0
  // CRITICAL: inclusion-maximal subsets I with nd(L_I) = |I| + 1 (pairwise
  // disjoint, which is asserted)
  std::vector<unsigned> maximal_critical;
  // SUBCRITICAL: the unique maximal subset M with nd(L_M) = |M|
  std::optional<unsigned> maximal_subcritical;
  bool products_nonzero = false;  // L_I^{|I|+1} . L_M != 0 for I disjoint from M
  std::optional<unsigned> violating;  // NOT_SUBCRITICAL: first mask with nd < |I|
};
// Tiers over all nonempty subset sums: SUPERCRITICAL when nd(L_I) >= |I|+2
// throughout, CRITICAL when >= |I|+1, SUBCRITICAL when >= |I|. The empty
// collection is vacuously supercritical.
CriticalityReport classify(const NefCollection& col);

// Matrix Q(j,k) = F(L_1, ..., L_m, e_j, e_k); requires m = n-2.
Mat intersection_form(const NefCollection& col);

// Canonical basis of { v : F(L, v, .) = 0 }; requires m = n-2.
std::vector<Vec> kernel(const NefCollection& col);

struct VEffResult {
  std::vector<Vec> basis;            // echelon span of the members below
  std::vector<std::string> members;  // labels of eff generators killed by L
};
// Span of the effective generators D with F(L, D, .) = 0; requires m = n-2.
VEffResult v_eff(const NefCollection& col);

enum class PropStatus { PROPORTIONAL, KERNEL_CERT, NOT_APPLICABLE };

struct PropResult {
  PropStatus status = PropStatus::NOT_APPLICABLE;
  std::optional<Rat> c;       // Q(y,.) = c Q(x,.) when PROPORTIONAL
  Rat gap;                    // Q(x,y)^2 - Q(x,x) Q(y,y), nonnegative
  std::optional<Vec> kernel_vector;  // the argument with Q(v,.) = 0
};
// Equality analysis of the reversed Cauchy-Schwarz bound for a symmetric
// form with exactly one positive eigenvalue and Q(x,x), Q(y,y) >= 0.
PropResult proportionality(const Mat& q, const Vec& x, const Vec& y);

struct LocalHiiCertificate {
  bool ok = false;
  std::string failure;  // inconsistency report naming the violated axiom
  Vec beta;
  bool augmented = false;  // family extended by nef generators to span
  // beta - alpha over the family members in ker L, as (label, coefficient)
  std::vector<std::pair<std::string, Rat>> correction;
  // D . beta^2 . L_{\r} per effective generator, all <= 0
  std::vector<Rat> eff_values;
  Vec residual;  // alpha + correction - beta, identically zero
};
// Constructive local Hodge index decomposition at slot r (1-based) for a
// kernel class alpha: beta agrees with alpha against everything outside
// ker L, and -beta^2 . L_{\r} pairs nonnegatively with the effective family.
LocalHiiCertificate local_hii(const NefCollection& col, int r, const Vec& alpha);

// (alpha, beta) nef with L.alpha.beta = 0 and L.omega.alpha = L.omega.beta,
// padded with omega; checked against the kernel characterization
// L.(alpha - beta) = 0, whose agreement is asserted.
bool degenerate_pair(const NefCollection& col, const Vec& alpha, const Vec& beta);

struct VDegReport {
  std::vector<Vec> basis;  // echelon span of found differences (a lower bound)
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // menu indices
  std::vector<Vec> menu;   // nef classes actually probed
  bool sums_included = true;
};
// Span of alpha - beta over degenerate pairs from a finite menu; defaults to
// the effective family, the nef generators, and their pairwise sums (sums are
// dropped when the pair count would be unreasonable). Only certified nef menu
// entries are probed.
VDegReport v_deg_probe(const NefCollection& col,
                       const std::optional<std::vector<Vec>>& menu = std::nullopt);

struct HlReport {
  std::vector<Vec> kernel_basis;
  VEffResult veff;
  VDegReport probe;
  bool kernel_is_veff = false;
  bool kernel_is_veff_plus_probe = false;
  bool hard_lefschetz = false;      // kernel is trivial
  bool hypothesis_confirmed = false;  // kernel_is_veff is then a theorem
  std::string hypothesis_note;
};
// Kernel / effective-span / degeneration-span comparison. When some ordering
// gives nd(L_i) >= i+2, or the instance is a fan with every class certified
// ample, kernel = V_eff is asserted.
HlReport hl_check(const NefCollection& col);

struct FlagCheck {
  std::vector<unsigned> flag;  // nested masks I_1 < ... < I_m
  bool nd_ok = false;          // nd(L_{I_k}) >= k+2
  bool kernel_is_veff = false;
};
struct FlagReport {
  std::vector<FlagCheck> flags;
  std::vector<Vec> kernel_union_basis;
  bool union_is_veff = false;  // sum of flag kernels vs V_eff of the input
  bool all_ok = false;
};
// All full flags of subset sums of a supercritical collection; requires
// m = n-2.
FlagReport flag_collections(const NefCollection& col);

struct ExtremalCase {
  int k = 0;
  PropResult prop;
  bool diff_in_veff_span = false;  // A - cB inside span V_eff(L_k)
};
struct LogConcavityReport {
  std::vector<Rat> a;  // a_k = F(A^k, B^{n-k}), k = 0..n
  bool logconcave = false;
  std::vector<ExtremalCase> extremals;  // equality indices with a_k > 0
};
// Sequence log-concavity for certified nef A, B with extremal analysis
// through the proportionality certificate.
LogConcavityReport logconcavity(const LorentzInstance& inst, const Vec& A, const Vec& B);

struct HodgeIndexReport {
  Rat ab, aa, bb;  // A.B.L, A^2.L, B^2.L
  Rat gap;         // (A.B.L)^2 - (A^2.L)(B^2.L), nonnegative
  bool equality = false;
  std::optional<Rat> c;  // on equality with positive middle term
  bool has_decomposition = false;
  std::vector<std::pair<std::string, Rat>> decomposition;  // A - cB over eff in ker L
};
// The three products of the local Hodge index inequality for nef A, B with a
// collection of m = n-2 certified nef classes; on equality the difference
// A - cB is decomposed over the effective generators killed by L when
// possible.
HodgeIndexReport hodge_index_extremal(const NefCollection& col, const Vec& A,
                                      const Vec& B);

}  // namespace hk
