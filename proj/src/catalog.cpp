#include "taufold/catalog.hpp"

#include <algorithm>
#include <numeric>

namespace taufold {

namespace {

constexpr Scalar kCountModulus = 65521;

}  // namespace

bool catalog_less(const Algebra& a, const Representation& x, const StringWord& wx, const Representation& y,
                  const StringWord& wy) {
  int tx = x.total_dim(), ty = y.total_dim();
  if (tx != ty) return tx < ty;
  if (x.dims != y.dims) return x.dims > y.dims;
  if (word_less(a, wx, wy)) return true;
  if (word_less(a, wy, wx)) return false;
  return x.maps < y.maps;
}

IndecCatalog::IndecCatalog(AlgebraPtr alg) : alg_(std::move(alg)) {
  validate_string_algebra(*alg_);
  std::vector<StringWord> words = enumerate_strings(*alg_);
  std::vector<std::pair<Representation, StringWord>> items;
  for (const auto& w : words) items.emplace_back(string_module(alg_, w), w);
  std::sort(items.begin(), items.end(), [&](const auto& x, const auto& y) {
    return catalog_less(*alg_, x.first, x.second, y.first, y.second);
  });
  if (items.size() > 64) throw UnsupportedAlgebra("catalog has more than 64 indecomposables");
  for (auto& [m, w] : items) {
    indecs_.push_back(std::move(m));
    words_.push_back(std::move(w));
  }
  compute_tables();
}

void IndecCatalog::compute_tables() {
  const int n = size();
  homs_.assign(n, std::vector<HomSpace>());
  hom_dims_.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      homs_[i].push_back(hom_basis(indecs_[i], indecs_[j]));
      hom_dims_[i][j] = homs_[i][j].dim();
    }
  rad_.assign(n, std::vector<std::vector<Morphism>>(n));
  residue_functional_.assign(n, {});
  for (int i = 0; i < n; ++i) {
    const Representation& x = indecs_[i];
    const int width = flat_width(x, x);
    try {
      rad_[i][i] = radical_endomorphisms(x, homs_[i][i].basis);
      RrefResult rr = rref(flattened(homs_[i][i].basis, width, x.modulus()));
      std::vector<Scalar> phi(width, 0);
      for (int k = 0; k < rr.rank; ++k)
        phi[rr.pivots[k]] = residue_scalar(x, unflatten(rr.reduced.row(k), x, x));
      residue_functional_[i] = std::move(phi);
    } catch (const std::invalid_argument&) {
      throw VerificationFailure("endomorphism ring of a string module is not split local");
    }
    for (int j = 0; j < n; ++j)
      if (j != i) rad_[i][j] = homs_[i][j].basis;
  }

  Matrix h(n, n, kCountModulus);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) h.at(j, i) = static_cast<Scalar>(hom_dims_[j][i]);
  hinv_ = inverse(h);

  const int nv = alg_->num_vertices();
  projective_.assign(nv, -1);
  injective_.assign(nv, -1);
  simple_.assign(nv, -1);
  for (int v = 0; v < nv; ++v) {
    auto p = index_of(projective_module(alg_, v));
    auto q = index_of(injective_module(alg_, v));
    auto s = index_of(simple_module(alg_, v));
    if (!p || !q || !s) throw VerificationFailure("catalog misses a structural module");
    projective_[v] = *p;
    injective_[v] = *q;
    simple_[v] = *s;
  }
  labels_.assign(n, "");
  for (int i = 0; i < n; ++i) {
    const auto& vs = alg_->quiver().vertices;
    for (int v = 0; v < nv && labels_[i].empty(); ++v)
      if (projective_[v] == i) labels_[i] = "P" + vs[v];
    for (int v = 0; v < nv && labels_[i].empty(); ++v)
      if (simple_[v] == i) labels_[i] = "S" + vs[v];
    for (int v = 0; v < nv && labels_[i].empty(); ++v)
      if (injective_[v] == i) labels_[i] = "I" + vs[v];
    if (labels_[i].empty()) labels_[i] = "M(" + word_name(*alg_, words_[i]) + ")";
  }

  tau_of_.assign(n, -1);
  ext1_dims_.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    if (!is_projective(i)) {
      auto t = index_of(tau(indecs_[i]));
      if (!t) throw VerificationFailure("tau of a non-projective indecomposable is not indecomposable");
      tau_of_[i] = *t;
    }
    for (int j = 0; j < n; ++j) ext1_dims_[i][j] = ext_dim(indecs_[i], indecs_[j], 1);
  }
}

bool IndecCatalog::is_projective(int i) const {
  return std::find(projective_.begin(), projective_.end(), i) != projective_.end();
}

bool IndecCatalog::is_injective(int i) const {
  return std::find(injective_.begin(), injective_.end(), i) != injective_.end();
}

Scalar IndecCatalog::residue(int i, const Morphism& e) const {
  const Field f(alg_->modulus());
  const auto& phi = residue_functional_[i];
  std::uint64_t acc = 0;
  std::size_t pos = 0;
  for (const auto& c : e.comps)
    for (Scalar x : c.data()) {
      if (x && phi[pos]) acc = (acc + static_cast<std::uint64_t>(x) * phi[pos]) % f.p;
      ++pos;
    }
  return static_cast<Scalar>(acc);
}

std::vector<int> IndecCatalog::multiplicities_by_pairing(const Representation& m,
                                                         const std::vector<int>& candidates) const {
  std::vector<int> mult(size(), 0);
  for (int j : candidates) {
    HomSpace into = hom_basis(indecs_[j], m);
    if (into.dim() == 0) continue;
    HomSpace out = hom_basis(m, indecs_[j]);
    if (out.dim() == 0) continue;
    Matrix pairing(into.dim(), out.dim(), alg_->modulus());
    for (int a = 0; a < into.dim(); ++a)
      for (int b = 0; b < out.dim(); ++b) pairing.at(a, b) = residue(j, compose(out.basis[b], into.basis[a]));
    mult[j] = rank(pairing);
  }
  return mult;
}

std::vector<int> IndecCatalog::decompose(const Representation& m) const {
  const int n = size();
  if (m.is_zero()) return std::vector<int>(n, 0);
  std::vector<int> candidates;
  std::vector<int> predicted;
  if (hinv_) {
    std::vector<Scalar> b(n);
    for (int i = 0; i < n; ++i) b[i] = static_cast<Scalar>(taufold::hom_dim(m, indecs_[i]));
    // m H = b  =>  m = b H^{-1}
    Matrix row(1, n, kCountModulus);
    row.set_row(0, b);
    Matrix sol = row * *hinv_;
    predicted.assign(n, 0);
    bool plausible = true;
    for (int j = 0; j < n; ++j) {
      Scalar x = sol.at(0, j);
      if (x > static_cast<Scalar>(m.total_dim())) plausible = false;
      predicted[j] = static_cast<int>(x);
      if (x) candidates.push_back(j);
    }
    if (!plausible) {
      predicted.clear();
      candidates.clear();
    }
  }
  if (predicted.empty()) {
    candidates.resize(n);
    std::iota(candidates.begin(), candidates.end(), 0);
  }
  std::vector<int> mult = multiplicities_by_pairing(m, candidates);
  std::vector<int> dims(m.dims.size(), 0);
  for (int j = 0; j < n; ++j)
    for (std::size_t v = 0; v < dims.size(); ++v) dims[v] += mult[j] * indecs_[j].dims[v];
  if (dims != m.dims || (!predicted.empty() && predicted != mult)) throw VerificationFailure("decomposition failed");
  return mult;
}

std::optional<int> IndecCatalog::index_of(const Representation& m) const {
  std::vector<int> candidates;
  for (int i = 0; i < size(); ++i)
    if (indecs_[i].dims == m.dims) candidates.push_back(i);
  if (candidates.empty()) return std::nullopt;
  std::vector<int> mult = multiplicities_by_pairing(m, candidates);
  for (int i : candidates)
    if (mult[i] == 1) return i;
  return std::nullopt;
}

std::optional<int> IndecCatalog::find_label(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

AddSet IndecCatalog::addset(const std::vector<int>& idx) const {
  AddSet add;
  for (int i : idx) add.mods.push_back(indecs_[i]);
  add.rad.assign(idx.size(), std::vector<std::vector<Morphism>>(idx.size()));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) add.rad[a][b] = rad_[idx[a]][idx[b]];
  return add;
}

CatalogPtr build_catalog(const AlgebraPtr& alg) { return std::make_shared<const IndecCatalog>(alg); }

}  // namespace taufold
