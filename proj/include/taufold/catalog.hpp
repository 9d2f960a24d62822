#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "taufold/homalg.hpp"
#include "taufold/strings.hpp"

namespace taufold {

/// Complete, canonically ordered list of indecomposables with Hom/Ext/tau tables.
class IndecCatalog {
 public:
  explicit IndecCatalog(AlgebraPtr alg);

  const AlgebraPtr& algebra() const { return alg_; }
  int size() const { return static_cast<int>(indecs_.size()); }
  const Representation& module(int i) const { return indecs_[i]; }
  const std::vector<Representation>& modules() const { return indecs_; }
  const StringWord& word(int i) const { return words_[i]; }
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  int hom_dim(int i, int j) const { return hom_dims_[i][j]; }
  int ext1_dim(int i, int j) const { return ext1_dims_[i][j]; }
  /// Catalog index of tau X_i; -1 when X_i is projective.
  int tau_of(int i) const { return tau_of_[i]; }
  const HomSpace& hom(int i, int j) const { return homs_[i][j]; }
  const std::vector<Morphism>& rad(int i, int j) const { return rad_[i][j]; }

  int projective(int v) const { return projective_[v]; }
  int injective(int v) const { return injective_[v]; }
  int simple(int v) const { return simple_[v]; }
  bool is_projective(int i) const;
  bool is_injective(int i) const;

  /// Residue scalar of an endomorphism of X_i.
  Scalar residue(int i, const Morphism& e) const;

  /// Multiplicities of the indecomposable summands of m; throws VerificationFailure("decomposition failed").
  std::vector<int> decompose(const Representation& m) const;
  /// Index of an indecomposable module, or nullopt when m is not indecomposable.
  std::optional<int> index_of(const Representation& m) const;
  /// Index of the label (e.g. "P2", "M(a.b^-1)"); nullopt when unknown.
  std::optional<int> find_label(const std::string& label) const;

  AddSet addset(const std::vector<int>& idx) const;

 private:
  void compute_tables();
  std::vector<int> multiplicities_by_pairing(const Representation& m, const std::vector<int>& candidates) const;

  AlgebraPtr alg_;
  std::vector<Representation> indecs_;
  std::vector<StringWord> words_;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> hom_dims_;
  std::vector<std::vector<int>> ext1_dims_;
  std::vector<int> tau_of_;
  std::vector<std::vector<HomSpace>> homs_;
  std::vector<std::vector<std::vector<Morphism>>> rad_;
  std::vector<std::vector<Scalar>> residue_functional_;
  std::vector<int> projective_, injective_, simple_;
  /// Inverse of the Hom-count matrix H[j][i] = dim Hom(X_j, X_i) over F_65521; multiplicities never reach
  /// the modulus, and every candidate solution is confirmed by the pairing ranks.
  std::optional<Matrix> hinv_;
};

using CatalogPtr = std::shared_ptr<const IndecCatalog>;

CatalogPtr build_catalog(const AlgebraPtr& alg);

/// Order used for catalog positions.
bool catalog_less(const Algebra& a, const Representation& x, const StringWord& wx, const Representation& y,
                  const StringWord& wy);

}  // namespace taufold
