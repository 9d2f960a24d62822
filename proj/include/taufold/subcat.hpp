#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "taufold/catalog.hpp"

namespace taufold {

/// Bitset over catalog indices; the subcategory add(members).
using Mask = std::uint64_t;

inline Mask bit(int i) { return Mask{1} << i; }
inline bool has(Mask m, int i) { return (m >> i) & 1u; }
inline bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }
std::vector<int> bits(Mask m);
Mask mask_of(const std::vector<int>& idx);
/// Indices with nonzero multiplicity.
Mask support(const std::vector<int>& mult);

enum class SideKind { Tors, Torf };

enum class StepKind { Extension, Kernel, Cokernel, AdmissibleQuotient, AdmissibleSubobject };

/// Why a catalog index entered a closure. Re-derivable from the stored data via Context::revalidate.
struct Witness {
  int added = -1;
  StepKind step = StepKind::Extension;
  /// Extension: sub multiplicities. Kernel: source. Cokernel: target. Admissible steps: approximating object.
  std::vector<int> object;
  /// Extension: quotient index. Kernel: target index. Cokernel: source index. Unused for admissible steps.
  int other = -1;
  /// Coefficients over the Ext or Hom basis (extension and kernel/cokernel steps).
  std::vector<Scalar> coeffs;
  /// Admissible steps: the ambient subcategory and the approximating subcategory.
  Mask within = 0;
  Mask from = 0;
};

struct ClosureReport {
  Mask input = 0;
  Mask result = 0;
  int rounds = 0;
  int multiplicity_bound = 0;
  /// True when some step relied on the search bound mu.
  bool bounded = false;
  std::vector<Witness> witnesses;
};

struct NCokResult {
  Mask result = 0;
  /// False when the approximation route was not applicable and a bounded search was used.
  bool exact = true;
};

struct CneResult {
  bool closed = true;
  /// True when a positive answer is relative to the search bound.
  bool bounded = false;
  /// Cokernel side: M, X_0, ..., X_n with X_n -> ... -> X_0 -> M -> 0 exact. Kernel side: M, X_0, ..., X_n with
  /// 0 -> M -> X_0 -> ... -> X_n exact. Multiplicity vectors.
  std::vector<std::vector<int>> witness;
};

struct PerpChain {
  std::vector<Mask> classes;
  /// ok[i]: classes[i] is a torsion (torsion-free) class of classes[i-1]; ok[0] refers to the whole category.
  std::vector<bool> ok;
};

struct KernelSuite {
  /// (a) admissible-subobject closure in the torsion-free closure (dually quotient / torsion closure).
  Mask adm = 0;
  /// (b) closure under kernels of morphisms into the input (dually cokernels of morphisms out of it).
  Mask relative = 0;
  /// (c) kernel (cokernel) closure.
  Mask full = 0;
  bool agree = false;
  ClosureReport report;
};

/// Subcategory calculus over one catalog, with memo tables. Thread-safe.
class Context {
 public:
  explicit Context(CatalogPtr cat, int mu = 2);

  const IndecCatalog& cat() const { return *cat_; }
  const CatalogPtr& catalog() const { return cat_; }
  /// Catalog indices in label display order.
  const std::vector<int>& display_order() const { return display_order_; }
  int size() const { return cat_->size(); }
  Mask full() const;
  int mu() const { return mu_; }

  Representation assemble(const std::vector<int>& mult) const;
  std::vector<int> decompose(const Representation& m) const { return cat_->decompose(m); }
  std::string format(Mask m) const;
  std::string format_object(const std::vector<int>& mult) const;
  /// Parses "P2+S3" (also "0"); throws std::invalid_argument on unknown labels.
  Mask parse(const std::string& labels) const;

  Mask fac(Mask c) const;
  Mask sub(Mask c) const;
  Mask closure_side(Mask c, SideKind side) const { return side == SideKind::Tors ? fac(c) : sub(c); }

  ClosureReport ext_closure(Mask c) const;
  bool is_ext_closed(Mask c) const;
  /// Filtration by add(c): exact, via the submodule lattice.
  bool filt_membership(const Representation& m, Mask c) const;

  /// {M : Hom(M, X) = 0} for k = 0, Ext^k otherwise. right: {M : Ext^k(X, M) = 0}.
  Mask left_perp(Mask x, int k) const;
  Mask right_perp(Mask x, int k) const;
  int ext_k(int i, int j, int k) const;

  bool is_torsion_class(Mask c, SideKind side) const;
  /// n-fold torsion (torsion-free) closure, n >= 0 (n = 0 is the whole category).
  Mask torsion_closure(Mask c, int n, SideKind side) const;
  /// Is c a torsion (torsion-free) class of the extension-closed e?
  bool is_relative_torsion(Mask c, Mask e, SideKind side) const;
  /// c is closed under admissible quotients (subobjects) inside e; false witnesses the first failure.
  std::optional<Witness> admissible_failure(Mask c, Mask e, SideKind side) const;

  /// cok_n U (Tors) or ker_n U (Torf).
  NCokResult cok_or_ker_n(Mask u, int n, SideKind side) const;

  /// Closed under kernels (Torf) or cokernels (Tors) of morphisms inside c, exact.
  bool is_kernel_closed(Mask c, SideKind side) const;
  /// C^nE (Tors) / K^nE (Torf) closedness; n = 0 means torsion (torsion-free) class.
  CneResult is_cne_closed(Mask c, int n, SideKind side) const;
  bool is_image_closed(Mask c) const;
  bool is_ice(Mask c) const;
  bool is_serre_in(Mask c, Mask t) const;

  PerpChain perp_chain(const std::vector<Mask>& xs, SideKind side) const;

  /// Kernel-closure theorem suite (Torf) or its cokernel dual (Tors).
  KernelSuite kernel_closure_suite(Mask x, SideKind side) const;
  /// Smallest subcategory closed under kernels (Torf) or cokernels (Tors) and extensions.
  ClosureReport ke_closure(Mask x, SideKind side) const;

  Mask ext_projectives(Mask c) const;
  Mask ext_injectives(Mask c) const;
  /// Basic Ext-progenerator as a mask; nullopt when c does not have enough Ext-projectives.
  std::optional<Mask> ext_progenerator(Mask c) const;

  /// All torsion (torsion-free) classes; computed as closures of all subsets.
  std::vector<Mask> torsion_classes(SideKind side) const;
  /// n-fold classes, level 1 from level1 when given. Sorted by (popcount, value).
  std::vector<Mask> enumerate_nfold(int n, SideKind side, const std::vector<Mask>* level1 = nullptr) const;

  /// Right (left) minimal add(u)-approximation of catalog object i.
  Approximation approximation(Side side, int i, Mask u) const;
  /// Same for an arbitrary module.
  Approximation approximation(Side side, const Representation& m, Mask u) const;

  bool revalidate(const Witness& w) const;
  std::string describe(const Witness& w) const;

 private:
  struct Rule {
    Mask produced = 0;
    std::map<int, Witness> first;
    int bound = 0;
  };
  const Rule& ext_rule(int s, Mask t) const;
  /// Kernels of maps X -> Y_y (kernel) or cokernels of maps X_x -> Y (cokernel), sources/targets supported in t.
  const Rule& hom_rule(StepKind kind, int anchor, Mask t) const;
  Mask kernel_saturation(Mask x, Mask anchors, SideKind side, bool anchors_grow, ClosureReport* rep) const;
  std::optional<Witness> admissible_test(int q, Mask s, Mask e, SideKind side) const;
  CneResult chain_search(Mask c, int n, SideKind side) const;
  std::vector<std::vector<int>> smallest_hom_failure(StepKind kind, int anchor, const std::vector<int>& bound,
                                                     Mask c) const;
  Mask ext_orth(int i) const;
  Mask hom_into(int y) const;
  Mask hom_from(int x) const;

  CatalogPtr cat_;
  int mu_;
  std::vector<int> display_order_;
  mutable std::mutex mutex_;
  mutable std::map<Mask, Mask> fac_memo_, sub_memo_;
  mutable std::map<std::pair<int, Mask>, Rule> ext_rules_;
  mutable std::map<std::tuple<int, int, Mask>, Rule> hom_rules_;
  mutable std::map<std::tuple<int, int, int>, int> ext_k_memo_;
  mutable std::map<std::tuple<int, int, Mask, Mask>, std::optional<Witness>> adm_memo_;
};

}  // namespace taufold
