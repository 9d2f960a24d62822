#include "taufold/rep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "taufold/homalg.hpp"

namespace taufold {

int Representation::total_dim() const { return std::accumulate(dims.begin(), dims.end(), 0); }

Matrix Representation::path_action(const Path& p) const {
  Matrix acc = Matrix::identity(dims[p.src], modulus());
  for (int a : p.arrows) acc = maps[a] * acc;
  return acc;
}

void Representation::validate() const {
  if (!alg) throw std::invalid_argument("representation without algebra");
  if (static_cast<int>(dims.size()) != alg->num_vertices()) throw std::invalid_argument("dimension vector length mismatch");
  if (static_cast<int>(maps.size()) != alg->num_arrows()) throw std::invalid_argument("arrow matrix count mismatch");
  for (int a = 0; a < alg->num_arrows(); ++a) {
    const Arrow& ar = alg->arrow(a);
    if (maps[a].rows() != dims[ar.tgt] || maps[a].cols() != dims[ar.src] || maps[a].modulus() != modulus())
      throw std::invalid_argument("arrow matrix for '" + ar.name + "' has the wrong shape");
  }
  for (const auto& rel : alg->relations()) {
    Path p{alg->arrow(rel.front()).src, alg->arrow(rel.back()).tgt, rel};
    if (!path_action(p).is_zero()) throw std::invalid_argument("representation violates relation " + alg->path_name(p));
  }
}

bool Morphism::is_zero() const {
  for (const auto& c : comps)
    if (!c.is_zero()) return false;
  return true;
}

Morphism Morphism::operator+(const Morphism& o) const {
  Morphism out;
  for (std::size_t v = 0; v < comps.size(); ++v) out.comps.push_back(comps[v] + o.comps[v]);
  return out;
}

Morphism Morphism::scaled(Scalar s) const {
  Morphism out;
  for (const auto& c : comps) out.comps.push_back(c.scaled(s));
  return out;
}

std::vector<Scalar> Morphism::flatten() const {
  std::vector<Scalar> out;
  for (const auto& c : comps) out.insert(out.end(), c.data().begin(), c.data().end());
  return out;
}

std::vector<int> Submodule::dims() const {
  std::vector<int> d;
  for (const auto& b : basis) d.push_back(b.rows());
  return d;
}

int Submodule::total_dim() const {
  int t = 0;
  for (const auto& b : basis) t += b.rows();
  return t;
}

bool Submodule::operator<(const Submodule& o) const {
  int a = total_dim(), b = o.total_dim();
  if (a != b) return a < b;
  return basis < o.basis;
}

Representation zero_module(const AlgebraPtr& alg) {
  Representation m{alg, std::vector<int>(alg->num_vertices(), 0), {}};
  for (int a = 0; a < alg->num_arrows(); ++a) m.maps.emplace_back(0, 0, alg->modulus());
  return m;
}

Representation projective_module(const AlgebraPtr& alg, int v) {
  Representation m{alg, {}, {}};
  const int n = alg->num_vertices();
  for (int w = 0; w < n; ++w) m.dims.push_back(static_cast<int>(alg->paths_between(v, w).size()));
  for (int a = 0; a < alg->num_arrows(); ++a) {
    const Arrow& ar = alg->arrow(a);
    Matrix mat(m.dims[ar.tgt], m.dims[ar.src], alg->modulus());
    auto arrow_idx = alg->basis_index(Path{ar.src, ar.tgt, {a}});
    const auto& from_paths = alg->paths_between(v, ar.src);
    const auto& to_paths = alg->paths_between(v, ar.tgt);
    for (std::size_t j = 0; j < from_paths.size(); ++j) {
      if (!arrow_idx) break;
      auto prod = alg->multiply(from_paths[j], *arrow_idx);
      if (!prod) continue;
      auto it = std::find(to_paths.begin(), to_paths.end(), *prod);
      mat.at(static_cast<int>(it - to_paths.begin()), static_cast<int>(j)) = 1;
    }
    m.maps.push_back(std::move(mat));
  }
  return m;
}

Representation injective_module(const AlgebraPtr& alg, int v) { return dual(projective_module(alg->op(), v)); }

Representation simple_module(const AlgebraPtr& alg, int v) {
  Representation m{alg, std::vector<int>(alg->num_vertices(), 0), {}};
  m.dims[v] = 1;
  for (int a = 0; a < alg->num_arrows(); ++a)
    m.maps.emplace_back(m.dims[alg->arrow(a).tgt], m.dims[alg->arrow(a).src], alg->modulus());
  return m;
}

Representation structural_module(const AlgebraPtr& alg, StructuralKind kind, int v) {
  switch (kind) {
    case StructuralKind::Projective:
      return projective_module(alg, v);
    case StructuralKind::Injective:
      return injective_module(alg, v);
    case StructuralKind::Simple:
      return simple_module(alg, v);
  }
  throw std::invalid_argument("unknown structural kind");
}

Representation direct_sum(const Representation& m, const Representation& n) {
  Representation s{m.alg, {}, {}};
  for (std::size_t v = 0; v < m.dims.size(); ++v) s.dims.push_back(m.dims[v] + n.dims[v]);
  for (int a = 0; a < m.alg->num_arrows(); ++a) {
    const Arrow& ar = m.alg->arrow(a);
    Matrix mat(s.dims[ar.tgt], s.dims[ar.src], m.modulus());
    mat.paste(m.maps[a], 0, 0);
    mat.paste(n.maps[a], m.dims[ar.tgt], m.dims[ar.src]);
    s.maps.push_back(std::move(mat));
  }
  return s;
}

Representation direct_sum(const std::vector<Representation>& parts, const AlgebraPtr& alg) {
  Representation acc = zero_module(alg);
  for (const auto& p : parts) acc = direct_sum(acc, p);
  return acc;
}

Representation power(const Representation& m, int k) {
  Representation acc = zero_module(m.alg);
  for (int i = 0; i < k; ++i) acc = direct_sum(acc, m);
  return acc;
}

Representation dual(const Representation& m) {
  Representation d{m.alg->op(), m.dims, {}};
  for (const auto& mat : m.maps) d.maps.push_back(mat.transpose());
  return d;
}

Morphism zero_morphism(const Representation& src, const Representation& tgt) {
  Morphism f;
  for (std::size_t v = 0; v < src.dims.size(); ++v) f.comps.emplace_back(tgt.dims[v], src.dims[v], src.modulus());
  return f;
}

Morphism identity_morphism(const Representation& m) {
  Morphism f;
  for (int d : m.dims) f.comps.push_back(Matrix::identity(d, m.modulus()));
  return f;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  Morphism h;
  for (std::size_t v = 0; v < f.comps.size(); ++v) h.comps.push_back(g.comps[v] * f.comps[v]);
  return h;
}

bool is_homomorphism(const Representation& src, const Representation& tgt, const Morphism& f) {
  if (f.comps.size() != src.dims.size()) return false;
  for (std::size_t v = 0; v < src.dims.size(); ++v)
    if (f.comps[v].rows() != tgt.dims[v] || f.comps[v].cols() != src.dims[v]) return false;
  for (int a = 0; a < src.alg->num_arrows(); ++a) {
    const Arrow& ar = src.alg->arrow(a);
    if (tgt.maps[a] * f.comps[ar.src] != f.comps[ar.tgt] * src.maps[a]) return false;
  }
  return true;
}

bool is_mono(const Morphism& f) {
  for (const auto& c : f.comps)
    if (rank(c) != c.cols()) return false;
  return true;
}

bool is_epi(const Morphism& f, const Representation& tgt) {
  for (std::size_t v = 0; v < f.comps.size(); ++v)
    if (rank(f.comps[v]) != tgt.dims[v]) return false;
  return true;
}

bool is_iso(const Morphism& f, const Representation& src, const Representation& tgt) {
  if (src.dims != tgt.dims) return false;
  for (const auto& c : f.comps)
    if (!is_invertible(c)) return false;
  return true;
}

Morphism block_morphism(const std::vector<Representation>& tgt_parts, const std::vector<Representation>& src_parts,
                        const std::vector<std::vector<Morphism>>& blocks) {
  const AlgebraPtr& alg = !tgt_parts.empty() ? tgt_parts[0].alg : src_parts.at(0).alg;
  const int n = alg->num_vertices();
  Morphism f;
  for (int v = 0; v < n; ++v) {
    int rows = 0, cols = 0;
    for (const auto& t : tgt_parts) rows += t.dims[v];
    for (const auto& s : src_parts) cols += s.dims[v];
    Matrix mat(rows, cols, alg->modulus());
    int r0 = 0;
    for (std::size_t i = 0; i < tgt_parts.size(); ++i) {
      int c0 = 0;
      for (std::size_t j = 0; j < src_parts.size(); ++j) {
        mat.paste(blocks[i][j].comps[v], r0, c0);
        c0 += src_parts[j].dims[v];
      }
      r0 += tgt_parts[i].dims[v];
    }
    f.comps.push_back(std::move(mat));
  }
  return f;
}

Morphism row_morphism(const std::vector<Morphism>& comps, const std::vector<Representation>& src_parts,
                      const Representation& tgt) {
  if (src_parts.empty()) return zero_morphism(zero_module(tgt.alg), tgt);
  return block_morphism({tgt}, src_parts, {comps});
}

Morphism column_morphism(const std::vector<Morphism>& comps, const Representation& src,
                         const std::vector<Representation>& tgt_parts) {
  if (tgt_parts.empty()) return zero_morphism(src, zero_module(src.alg));
  std::vector<std::vector<Morphism>> blocks;
  for (const auto& c : comps) blocks.push_back({c});
  return block_morphism(tgt_parts, {src}, blocks);
}

Submodule zero_submodule(const Representation& m) {
  Submodule s;
  for (int d : m.dims) s.basis.emplace_back(0, d, m.modulus());
  return s;
}

Submodule whole_submodule(const Representation& m) {
  Submodule s;
  for (int d : m.dims) s.basis.push_back(Matrix::identity(d, m.modulus()));
  return s;
}

Submodule canonical_submodule(const Representation& m, const std::vector<Matrix>& spanning_rows) {
  Submodule s;
  for (std::size_t v = 0; v < m.dims.size(); ++v) s.basis.push_back(row_basis(spanning_rows[v]));
  return s;
}

bool is_submodule(const Representation& m, const Submodule& s) {
  for (int a = 0; a < m.alg->num_arrows(); ++a) {
    const Arrow& ar = m.alg->arrow(a);
    Matrix img = s.basis[ar.src] * m.maps[a].transpose();
    if (rank(s.basis[ar.tgt].stack_below(img)) != s.basis[ar.tgt].rows()) return false;
  }
  return true;
}

Submodule generated_submodule(const Representation& m, const std::vector<Matrix>& generators) {
  std::vector<Matrix> cur;
  for (std::size_t v = 0; v < m.dims.size(); ++v) cur.push_back(row_basis(generators[v]));
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < m.alg->num_arrows(); ++a) {
      const Arrow& ar = m.alg->arrow(a);
      if (cur[ar.src].rows() == 0) continue;
      Matrix img = cur[ar.src] * m.maps[a].transpose();
      Matrix next = row_basis(cur[ar.tgt].stack_below(img));
      if (next.rows() != cur[ar.tgt].rows()) {
        cur[ar.tgt] = std::move(next);
        changed = true;
      }
    }
  }
  return Submodule{cur};
}

Submodule sum(const Representation& m, const Submodule& a, const Submodule& b) {
  Submodule s;
  for (std::size_t v = 0; v < m.dims.size(); ++v) s.basis.push_back(row_basis(a.basis[v].stack_below(b.basis[v])));
  return s;
}

Submodule intersection(const Representation& m, const Submodule& a, const Submodule& b) {
  Submodule s;
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    // x = u A = w B  <=>  (u, -w) in left kernel of [A; B]
    const Matrix& A = a.basis[v];
    const Matrix& B = b.basis[v];
    Matrix stacked = A.stack_below(B);
    Matrix left = kernel_basis(stacked.transpose());
    Matrix coeff = left.submatrix(0, 0, left.rows(), A.rows());
    s.basis.push_back(row_basis(coeff * A));
  }
  return s;
}

bool contains(const Submodule& big, const Submodule& small) {
  for (std::size_t v = 0; v < big.basis.size(); ++v)
    if (rank(big.basis[v].stack_below(small.basis[v])) != big.basis[v].rows()) return false;
  return true;
}

Submodule image(const Morphism& f, const Representation& tgt) {
  Submodule s;
  for (std::size_t v = 0; v < tgt.dims.size(); ++v) {
    if (f.comps[v].cols() == 0) {
      s.basis.emplace_back(0, tgt.dims[v], tgt.modulus());
      continue;
    }
    s.basis.push_back(row_basis(f.comps[v].transpose()));
  }
  return s;
}

Submodule kernel_submodule(const Morphism& f, const Representation& src) {
  Submodule s;
  for (std::size_t v = 0; v < src.dims.size(); ++v) {
    if (f.comps[v].rows() == 0) {
      s.basis.push_back(Matrix::identity(src.dims[v], src.modulus()));
      continue;
    }
    s.basis.push_back(row_basis(kernel_basis(f.comps[v])));
  }
  return s;
}

Submodule radical(const Representation& m) {
  std::vector<Matrix> gens;
  for (int d : m.dims) gens.emplace_back(0, d, m.modulus());
  for (int a = 0; a < m.alg->num_arrows(); ++a) {
    const Arrow& ar = m.alg->arrow(a);
    if (m.dims[ar.src] == 0) continue;
    gens[ar.tgt] = gens[ar.tgt].stack_below(m.maps[a].transpose());
  }
  return canonical_submodule(m, gens);
}

Submodule socle(const Representation& m) {
  Submodule s;
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    Matrix stacked(0, m.dims[v], m.modulus());
    for (int a = 0; a < m.alg->num_arrows(); ++a)
      if (m.alg->arrow(a).src == static_cast<int>(v)) stacked = stacked.stack_below(m.maps[a]);
    if (stacked.rows() == 0)
      s.basis.push_back(Matrix::identity(m.dims[v], m.modulus()));
    else
      s.basis.push_back(row_basis(kernel_basis(stacked)));
  }
  return s;
}

namespace {

// Coordinates of a row vector y in the span of an RREF basis, read at the pivot columns.
std::vector<int> pivot_columns(const Matrix& rref_basis) {
  std::vector<int> piv;
  for (int r = 0; r < rref_basis.rows(); ++r)
    for (int c = 0; c < rref_basis.cols(); ++c)
      if (rref_basis.at(r, c)) {
        piv.push_back(c);
        break;
      }
  return piv;
}

}  // namespace

SubmoduleRep submodule_rep(const Representation& m, const Submodule& s) {
  SubmoduleRep out{Representation{m.alg, s.dims(), {}}, {}};
  std::vector<std::vector<int>> piv;
  for (const auto& b : s.basis) piv.push_back(pivot_columns(b));
  for (int a = 0; a < m.alg->num_arrows(); ++a) {
    const Arrow& ar = m.alg->arrow(a);
    const Matrix& bs = s.basis[ar.src];
    const Matrix& bt = s.basis[ar.tgt];
    Matrix img = bs.rows() ? bs * m.maps[a].transpose() : Matrix(0, m.dims[ar.tgt], m.modulus());
    Matrix mat(bt.rows(), bs.rows(), m.modulus());
    for (int j = 0; j < bs.rows(); ++j)
      for (int i = 0; i < bt.rows(); ++i) mat.at(i, j) = img.at(j, piv[ar.tgt][i]);
    out.module.maps.push_back(std::move(mat));
  }
  for (const auto& b : s.basis) out.inclusion.comps.push_back(b.transpose());
  return out;
}

QuotientRep quotient_rep(const Representation& m, const Submodule& s) {
  const Field f(m.modulus());
  QuotientRep out{Representation{m.alg, {}, {}}, {}};
  std::vector<Matrix> proj, sect;
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    const Matrix& b = s.basis[v];
    std::vector<int> piv = pivot_columns(b);
    std::vector<int> pos(m.dims[v], -1);
    std::vector<int> nonpiv;
    std::vector<char> is_piv(m.dims[v], 0);
    for (int c : piv) is_piv[c] = 1;
    for (int c = 0; c < m.dims[v]; ++c)
      if (!is_piv[c]) {
        pos[c] = static_cast<int>(nonpiv.size());
        nonpiv.push_back(c);
      }
    const int q = static_cast<int>(nonpiv.size());
    Matrix pi(q, m.dims[v], m.modulus());
    Matrix sec(m.dims[v], q, m.modulus());
    for (int k = 0; k < m.dims[v]; ++k) {
      if (!is_piv[k]) {
        pi.at(pos[k], k) = 1;
        sec.at(k, pos[k]) = 1;
      }
    }
    for (std::size_t i = 0; i < piv.size(); ++i)
      for (int c : nonpiv) pi.at(pos[c], piv[i]) = f.neg(b.at(static_cast<int>(i), c));
    out.module.dims.push_back(q);
    proj.push_back(std::move(pi));
    sect.push_back(std::move(sec));
  }
  for (int a = 0; a < m.alg->num_arrows(); ++a) {
    const Arrow& ar = m.alg->arrow(a);
    out.module.maps.push_back(proj[ar.tgt] * m.maps[a] * sect[ar.src]);
  }
  out.projection.comps = std::move(proj);
  return out;
}

Representation quotient(const Representation& m, const Submodule& s) { return quotient_rep(m, s).module; }

SubmoduleRep kernel(const Morphism& f, const Representation& src) { return submodule_rep(src, kernel_submodule(f, src)); }

QuotientRep cokernel(const Morphism& f, const Representation& tgt) { return quotient_rep(tgt, image(f, tgt)); }

SubmoduleRep image_rep(const Morphism& f, const Representation& tgt) { return submodule_rep(tgt, image(f, tgt)); }

std::vector<Submodule> submodule_lattice(const Representation& m, int dim_bound, std::size_t max_count) {
  if (m.total_dim() > dim_bound)
    throw GuardExceeded("submodule lattice: total dimension " + std::to_string(m.total_dim()) + " exceeds bound " +
                        std::to_string(dim_bound));
  const Scalar p = m.modulus();
  std::set<Submodule> seen;
  std::vector<Submodule> frontier{zero_submodule(m)};
  seen.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<Submodule> next;
    for (const auto& s : frontier) {
      for (std::size_t v = 0; v < m.dims.size(); ++v) {
        const Matrix& b = s.basis[v];
        std::vector<int> piv = pivot_columns(b);
        std::vector<char> is_piv(m.dims[v], 0);
        for (int c : piv) is_piv[c] = 1;
        std::vector<int> free;
        for (int c = 0; c < m.dims[v]; ++c)
          if (!is_piv[c]) free.push_back(c);
        if (free.empty()) continue;
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < free.size(); ++i) count *= p;
        for (std::uint64_t code = 1; code < count; ++code) {
          std::uint64_t c = code;
          Matrix x(1, m.dims[v], p);
          bool lead = false;
          for (int fc : free) {
            Scalar digit = static_cast<Scalar>(c % p);
            c /= p;
            x.at(0, fc) = digit;
            if (digit) lead = true;
          }
          // Only normalized generators (first nonzero entry 1) are needed.
          if (!lead) continue;
          Scalar first = 0;
          for (int fc : free)
            if (x.at(0, fc)) {
              first = x.at(0, fc);
              break;
            }
          if (first != 1) continue;
          std::vector<Matrix> gens = s.basis;
          gens[v] = gens[v].stack_below(x);
          Submodule t = generated_submodule(m, gens);
          if (seen.insert(t).second) {
            if (seen.size() > max_count) throw GuardExceeded("submodule lattice: too many submodules");
            next.push_back(std::move(t));
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return std::vector<Submodule>(seen.begin(), seen.end());
}

bool is_isomorphic(const Representation& m, const Representation& n, const IsoOptions& opt) {
  if (m.dims != n.dims) return false;
  if (m.total_dim() == 0) return true;
  HomSpace h = hom_basis(m, n);
  const int d = h.dim();
  if (d == 0) return false;
  if (hom_dim(m, m) != d || hom_dim(n, n) != d) return false;
  const Scalar p = m.modulus();
  auto invertible = [&](const std::vector<Scalar>& coeff) {
    Morphism f = combine(h, coeff);
    for (const auto& c : f.comps)
      if (!is_invertible(c)) return false;
    return true;
  };
  std::mt19937_64 rng(opt.seed);
  std::vector<Scalar> coeff(d, 0);
  for (int s = 0; s < opt.random_samples; ++s) {
    for (auto& c : coeff) c = static_cast<Scalar>(rng() % p);
    if (invertible(coeff)) return true;
  }
  double log2_size = d * std::log2(static_cast<double>(p));
  if (log2_size > opt.exhaustive_log2_limit) throw GuardExceeded("iso test inconclusive");
  std::fill(coeff.begin(), coeff.end(), 0);
  while (true) {
    int i = 0;
    while (i < d && coeff[i] == p - 1) coeff[i++] = 0;
    if (i == d) break;
    ++coeff[i];
    if (invertible(coeff)) return true;
  }
  return false;
}

bool rep_less(const Representation& a, const Representation& b) {
  int ta = a.total_dim(), tb = b.total_dim();
  if (ta != tb) return ta < tb;
  if (a.dims != b.dims) return a.dims > b.dims;
  return a.maps < b.maps;
}

std::string dims_string(const std::vector<int>& dims) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
  os << ")";
  return os.str();
}

}  // namespace taufold
