#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "taufold/exactmat.hpp"
#include "taufold/quiver.hpp"

namespace taufold {

/// A search or size bound was exceeded.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A theorem-level consistency check failed.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A representation of the bound quiver: one matrix per arrow, shaped dims[tgt] x dims[src].
struct Representation {
  AlgebraPtr alg;
  std::vector<int> dims;
  std::vector<Matrix> maps;

  Scalar modulus() const { return alg->modulus(); }
  int total_dim() const;
  bool is_zero() const { return total_dim() == 0; }
  /// Matrix of a path (identity for trivial paths), dims[tgt] x dims[src].
  Matrix path_action(const Path& p) const;
  /// Throws std::invalid_argument when shapes or relations fail.
  void validate() const;
  bool operator==(const Representation& o) const { return dims == o.dims && maps == o.maps; }
};

/// A module homomorphism: one matrix per vertex, shaped dims_target[v] x dims_source[v].
struct Morphism {
  std::vector<Matrix> comps;

  bool is_zero() const;
  Morphism operator+(const Morphism& o) const;
  Morphism scaled(Scalar s) const;
  std::vector<Scalar> flatten() const;
  bool operator==(const Morphism& o) const { return comps == o.comps; }
};

/// A submodule given by an RREF row basis of each vertex space.
struct Submodule {
  std::vector<Matrix> basis;

  std::vector<int> dims() const;
  int total_dim() const;
  bool operator==(const Submodule& o) const { return basis == o.basis; }
  bool operator<(const Submodule& o) const;
};

Representation zero_module(const AlgebraPtr& alg);

enum class StructuralKind { Projective, Injective, Simple };

Representation projective_module(const AlgebraPtr& alg, int v);
Representation injective_module(const AlgebraPtr& alg, int v);
Representation simple_module(const AlgebraPtr& alg, int v);
Representation structural_module(const AlgebraPtr& alg, StructuralKind kind, int v);

Representation direct_sum(const Representation& m, const Representation& n);
Representation direct_sum(const std::vector<Representation>& parts, const AlgebraPtr& alg);
Representation power(const Representation& m, int k);

/// Vector-space dual: a representation of the opposite algebra.
Representation dual(const Representation& m);

Morphism zero_morphism(const Representation& src, const Representation& tgt);
Morphism identity_morphism(const Representation& m);
Morphism compose(const Morphism& g, const Morphism& f);
bool is_homomorphism(const Representation& src, const Representation& tgt, const Morphism& f);
bool is_mono(const Morphism& f);
bool is_epi(const Morphism& f, const Representation& tgt);
bool is_iso(const Morphism& f, const Representation& src, const Representation& tgt);

/// Block morphism between direct sums; blocks[i][j] maps source part j to target part i.
Morphism block_morphism(const std::vector<Representation>& tgt_parts, const std::vector<Representation>& src_parts,
                        const std::vector<std::vector<Morphism>>& blocks);
/// Morphism from / to a direct sum assembled from components.
Morphism row_morphism(const std::vector<Morphism>& comps, const std::vector<Representation>& src_parts,
                      const Representation& tgt);
Morphism column_morphism(const std::vector<Morphism>& comps, const Representation& src,
                         const std::vector<Representation>& tgt_parts);

Submodule zero_submodule(const Representation& m);
Submodule whole_submodule(const Representation& m);
Submodule canonical_submodule(const Representation& m, const std::vector<Matrix>& spanning_rows);
bool is_submodule(const Representation& m, const Submodule& s);
Submodule generated_submodule(const Representation& m, const std::vector<Matrix>& generators);
Submodule sum(const Representation& m, const Submodule& a, const Submodule& b);
Submodule intersection(const Representation& m, const Submodule& a, const Submodule& b);
bool contains(const Submodule& big, const Submodule& small);
Submodule image(const Morphism& f, const Representation& tgt);
Submodule kernel_submodule(const Morphism& f, const Representation& src);
Submodule radical(const Representation& m);
Submodule socle(const Representation& m);

/// S as a module, with its inclusion into M.
struct SubmoduleRep {
  Representation module;
  Morphism inclusion;
};
SubmoduleRep submodule_rep(const Representation& m, const Submodule& s);

/// M/S with the canonical projection.
struct QuotientRep {
  Representation module;
  Morphism projection;
};
QuotientRep quotient_rep(const Representation& m, const Submodule& s);
Representation quotient(const Representation& m, const Submodule& s);

SubmoduleRep kernel(const Morphism& f, const Representation& src);
QuotientRep cokernel(const Morphism& f, const Representation& tgt);
SubmoduleRep image_rep(const Morphism& f, const Representation& tgt);

/// All submodules, ordered canonically. Guarded by total dimension and a result budget.
std::vector<Submodule> submodule_lattice(const Representation& m, int dim_bound = 12,
                                         std::size_t max_count = 1u << 20);

struct IsoOptions {
  std::uint64_t seed = 0x5eed;
  int random_samples = 256;
  int exhaustive_log2_limit = 20;
};

/// Throws GuardExceeded("iso test inconclusive") when neither search settles the question.
bool is_isomorphic(const Representation& m, const Representation& n, const IsoOptions& opt = {});

/// Canonical comparison used for deterministic ordering.
bool rep_less(const Representation& a, const Representation& b);

std::string dims_string(const std::vector<int>& dims);

}  // namespace taufold
