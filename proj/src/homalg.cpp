#include "taufold/homalg.hpp"

#include <algorithm>
#include <numeric>

namespace taufold {

int flat_width(const Representation& src, const Representation& tgt) {
  int w = 0;
  for (std::size_t v = 0; v < src.dims.size(); ++v) w += src.dims[v] * tgt.dims[v];
  return w;
}

Matrix flattened(const std::vector<Morphism>& maps, int width, Scalar p) {
  Matrix out(static_cast<int>(maps.size()), width, p);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    int c = 0;
    for (const auto& comp : maps[i].comps)
      for (Scalar x : comp.data()) out.at(static_cast<int>(i), c++) = x;
  }
  return out;
}

Morphism unflatten(const std::vector<Scalar>& flat, const Representation& src, const Representation& tgt) {
  Morphism f;
  std::size_t pos = 0;
  for (std::size_t v = 0; v < src.dims.size(); ++v) {
    Matrix m(tgt.dims[v], src.dims[v], src.modulus());
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) m.at(r, c) = flat[pos++];
    f.comps.push_back(std::move(m));
  }
  return f;
}

HomSpace hom_basis(const Representation& m, const Representation& n) {
  HomSpace h{m, n, {}};
  const AlgebraPtr& alg = m.alg;
  const int nv = alg->num_vertices();
  std::vector<int> off(nv + 1, 0);
  for (int v = 0; v < nv; ++v) off[v + 1] = off[v] + n.dims[v] * m.dims[v];
  const int unknowns = off[nv];
  if (unknowns == 0) return h;
  int eqs = 0;
  for (int a = 0; a < alg->num_arrows(); ++a) eqs += n.dims[alg->arrow(a).tgt] * m.dims[alg->arrow(a).src];
  const Field f(m.modulus());
  Matrix sys(eqs, unknowns, m.modulus());
  int row = 0;
  // N_a f_s - f_t M_a = 0
  for (int a = 0; a < alg->num_arrows(); ++a) {
    const int s = alg->arrow(a).src, t = alg->arrow(a).tgt;
    const Matrix& na = n.maps[a];
    const Matrix& ma = m.maps[a];
    for (int i = 0; i < n.dims[t]; ++i) {
      for (int j = 0; j < m.dims[s]; ++j, ++row) {
        for (int k = 0; k < n.dims[s]; ++k) {
          Scalar c = na.at(i, k);
          if (c) {
            Scalar& e = sys.at(row, off[s] + k * m.dims[s] + j);
            e = f.add(e, c);
          }
        }
        for (int k = 0; k < m.dims[t]; ++k) {
          Scalar c = ma.at(k, j);
          if (c) {
            Scalar& e = sys.at(row, off[t] + i * m.dims[t] + k);
            e = f.sub(e, c);
          }
        }
      }
    }
  }
  Matrix ker = kernel_basis(sys);
  for (int r = 0; r < ker.rows(); ++r) h.basis.push_back(unflatten(ker.row(r), m, n));
  return h;
}

int hom_dim(const Representation& m, const Representation& n) { return hom_basis(m, n).dim(); }

Morphism combine(const HomSpace& h, const std::vector<Scalar>& coeff) {
  Morphism acc = zero_morphism(h.source, h.target);
  for (std::size_t k = 0; k < h.basis.size(); ++k)
    if (coeff[k]) acc = acc + h.basis[k].scaled(coeff[k]);
  return acc;
}

ProjectiveSum projective_sum(const AlgebraPtr& alg, const std::vector<int>& vertices) {
  ProjectiveSum ps{vertices, zero_module(alg)};
  for (int v : vertices) ps.module = direct_sum(ps.module, projective_module(alg, v));
  return ps;
}

namespace {

int position(const std::vector<int>& list, int x) {
  auto it = std::find(list.begin(), list.end(), x);
  if (it == list.end()) return -1;
  return static_cast<int>(it - list.begin());
}

}  // namespace

Morphism projective_map(const AlgebraPtr& alg, const std::vector<int>& src, const std::vector<int>& tgt,
                        const std::vector<std::vector<std::vector<Scalar>>>& entries) {
  const Field f(alg->modulus());
  Morphism out;
  for (int z = 0; z < alg->num_vertices(); ++z) {
    int rows = 0, cols = 0;
    for (int w : tgt) rows += static_cast<int>(alg->paths_between(w, z).size());
    for (int u : src) cols += static_cast<int>(alg->paths_between(u, z).size());
    Matrix mat(rows, cols, alg->modulus());
    int r0 = 0;
    for (std::size_t j = 0; j < tgt.size(); ++j) {
      const auto& tgt_paths = alg->paths_between(tgt[j], z);
      int c0 = 0;
      for (std::size_t i = 0; i < src.size(); ++i) {
        const auto& xs = alg->paths_between(tgt[j], src[i]);
        const auto& qs = alg->paths_between(src[i], z);
        const auto& coeff = entries[j][i];
        for (std::size_t k = 0; k < xs.size(); ++k) {
          if (!coeff[k]) continue;
          for (std::size_t q = 0; q < qs.size(); ++q) {
            auto prod = alg->multiply(xs[k], qs[q]);
            if (!prod) continue;
            int r = position(tgt_paths, *prod);
            Scalar& e = mat.at(r0 + r, c0 + static_cast<int>(q));
            e = f.add(e, coeff[k]);
          }
        }
        c0 += static_cast<int>(qs.size());
      }
      r0 += static_cast<int>(tgt_paths.size());
    }
    out.comps.push_back(std::move(mat));
  }
  return out;
}

std::vector<std::vector<std::vector<Scalar>>> projective_entries(const AlgebraPtr& alg, const std::vector<int>& src,
                                                                 const std::vector<int>& tgt, const Morphism& f) {
  std::vector<std::vector<std::vector<Scalar>>> entries(tgt.size(), std::vector<std::vector<Scalar>>(src.size()));
  for (std::size_t i = 0; i < src.size(); ++i) {
    const int u = src[i];
    // column of the trivial path e_u of summand i at vertex u
    int col = 0;
    for (std::size_t k = 0; k < i; ++k) col += static_cast<int>(alg->paths_between(src[k], u).size());
    col += position(alg->paths_between(u, u), alg->trivial_path(u));
    int r0 = 0;
    for (std::size_t j = 0; j < tgt.size(); ++j) {
      const auto& xs = alg->paths_between(tgt[j], u);
      for (std::size_t k = 0; k < xs.size(); ++k) entries[j][i].push_back(f.comps[u].at(r0 + static_cast<int>(k), col));
      r0 += static_cast<int>(xs.size());
    }
  }
  return entries;
}

ProjectiveCover projective_cover(const Representation& m) {
  const AlgebraPtr& alg = m.alg;
  Submodule rad = radical(m);
  std::vector<int> vertices;
  std::vector<std::pair<int, int>> gens;  // (vertex, coordinate)
  for (int v = 0; v < alg->num_vertices(); ++v) {
    std::vector<char> piv(m.dims[v], 0);
    const Matrix& b = rad.basis[v];
    for (int r = 0; r < b.rows(); ++r)
      for (int c = 0; c < b.cols(); ++c)
        if (b.at(r, c)) {
          piv[c] = 1;
          break;
        }
    for (int c = 0; c < m.dims[v]; ++c)
      if (!piv[c]) {
        vertices.push_back(v);
        gens.emplace_back(v, c);
      }
  }
  ProjectiveCover pc{projective_sum(alg, vertices), {}};
  for (int z = 0; z < alg->num_vertices(); ++z) {
    Matrix mat(m.dims[z], pc.cover.module.dims[z], m.modulus());
    int c0 = 0;
    for (const auto& [v, coord] : gens) {
      const auto& ps = alg->paths_between(v, z);
      for (std::size_t k = 0; k < ps.size(); ++k) {
        Matrix act = m.path_action(alg->path_basis()[ps[k]]);
        for (int r = 0; r < m.dims[z]; ++r) mat.at(r, c0 + static_cast<int>(k)) = act.at(r, coord);
      }
      c0 += static_cast<int>(ps.size());
    }
    pc.epsilon.comps.push_back(std::move(mat));
  }
  return pc;
}

Presentation min_proj_presentation(const Representation& m) {
  ProjectiveCover top = projective_cover(m);
  SubmoduleRep omega = kernel(top.epsilon, top.cover.module);
  ProjectiveCover next = projective_cover(omega.module);
  Presentation pres{top.cover, next.cover, compose(omega.inclusion, next.epsilon), top.epsilon, omega};
  return pres;
}

Representation syzygy(const Representation& m, int k) {
  Representation cur = m;
  for (int i = 0; i < k; ++i) {
    ProjectiveCover pc = projective_cover(cur);
    cur = kernel(pc.epsilon, pc.cover.module).module;
  }
  return cur;
}

int ext_dim(const Representation& m, const Representation& n, int j) {
  if (j < 1) throw std::invalid_argument("ext_dim: degree must be at least 1");
  Representation k = syzygy(m, j - 1);
  ProjectiveCover pc = projective_cover(k);
  SubmoduleRep omega = kernel(pc.epsilon, pc.cover.module);
  if (omega.module.is_zero()) return 0;
  HomSpace h_omega = hom_basis(omega.module, n);
  if (h_omega.dim() == 0) return 0;
  HomSpace h_p0 = hom_basis(pc.cover.module, n);
  std::vector<Morphism> restricted;
  for (const auto& g : h_p0.basis) restricted.push_back(compose(g, omega.inclusion));
  int r = rank(flattened(restricted, flat_width(omega.module, n), m.modulus()));
  return h_omega.dim() - r;
}

ExtensionSpace extension_space(const Representation& sub, const Representation& quot) {
  ExtensionSpace ext{sub, quot, {}};
  const AlgebraPtr& alg = sub.alg;
  const Field f(sub.modulus());
  const int na = alg->num_arrows();
  std::vector<int> off(na + 1, 0);
  for (int a = 0; a < na; ++a) off[a + 1] = off[a] + sub.dims[alg->arrow(a).tgt] * quot.dims[alg->arrow(a).src];
  const int unknowns = off[na];
  if (unknowns == 0) return ext;

  // cocycle conditions from the relations
  std::vector<std::vector<Scalar>> rows;
  for (const auto& rel : alg->relations()) {
    const int s0 = alg->arrow(rel.front()).src;
    const int tk = alg->arrow(rel.back()).tgt;
    const int out_rows = sub.dims[tk], out_cols = quot.dims[s0];
    if (out_rows == 0 || out_cols == 0) continue;
    std::vector<std::vector<Scalar>> block(static_cast<std::size_t>(out_rows) * out_cols,
                                           std::vector<Scalar>(unknowns, 0));
    for (std::size_t i = 0; i < rel.size(); ++i) {
      const int a = rel[i];
      const int s = alg->arrow(a).src, t = alg->arrow(a).tgt;
      Path after{t, tk, std::vector<int>(rel.begin() + static_cast<std::ptrdiff_t>(i) + 1, rel.end())};
      Path before{s0, s, std::vector<int>(rel.begin(), rel.begin() + static_cast<std::ptrdiff_t>(i))};
      Matrix left = sub.path_action(after);     // sub_tk x sub_t
      Matrix right = quot.path_action(before);  // quot_s x quot_s0
      for (int x = 0; x < out_rows; ++x)
        for (int r = 0; r < sub.dims[t]; ++r) {
          Scalar l = left.at(x, r);
          if (!l) continue;
          for (int c = 0; c < quot.dims[s]; ++c)
            for (int y = 0; y < out_cols; ++y) {
              Scalar rr = right.at(c, y);
              if (!rr) continue;
              Scalar& e = block[static_cast<std::size_t>(x) * out_cols + y][off[a] + r * quot.dims[s] + c];
              e = f.add(e, f.mul(l, rr));
            }
        }
    }
    for (auto& b : block) rows.push_back(std::move(b));
  }
  Matrix cocycles = rows.empty() ? Matrix::identity(unknowns, sub.modulus())
                                 : kernel_basis(Matrix::from_rows(rows, sub.modulus(), unknowns));

  // coboundaries h_t B_a - A_a h_s for elementary h
  std::vector<std::vector<Scalar>> bd;
  for (int v = 0; v < alg->num_vertices(); ++v)
    for (int r = 0; r < sub.dims[v]; ++r)
      for (int c = 0; c < quot.dims[v]; ++c) {
        std::vector<Scalar> vec(unknowns, 0);
        for (int a = 0; a < na; ++a) {
          const int s = alg->arrow(a).src, t = alg->arrow(a).tgt;
          const int cols = quot.dims[s];
          if (t == v)
            for (int y = 0; y < cols; ++y) {
              Scalar& e = vec[off[a] + r * cols + y];
              e = f.add(e, quot.maps[a].at(c, y));
            }
          if (s == v)
            for (int x = 0; x < sub.dims[t]; ++x) {
              Scalar& e = vec[off[a] + x * cols + c];
              e = f.sub(e, sub.maps[a].at(x, r));
            }
        }
        bd.push_back(std::move(vec));
      }
  Matrix boundaries = bd.empty() ? Matrix(0, unknowns, sub.modulus()) : Matrix::from_rows(bd, sub.modulus(), unknowns);
  std::vector<int> chosen = complement_rows(boundaries, cocycles);
  for (int idx : chosen) {
    std::vector<Matrix> cls;
    std::vector<Scalar> row = cocycles.row(idx);
    for (int a = 0; a < na; ++a) {
      const int s = alg->arrow(a).src, t = alg->arrow(a).tgt;
      Matrix c(sub.dims[t], quot.dims[s], sub.modulus());
      for (int x = 0; x < c.rows(); ++x)
        for (int y = 0; y < c.cols(); ++y) c.at(x, y) = row[off[a] + x * c.cols() + y];
      cls.push_back(std::move(c));
    }
    ext.classes.push_back(std::move(cls));
  }
  return ext;
}

std::vector<Matrix> combine_cocycles(const ExtensionSpace& ext, const std::vector<Scalar>& coeff) {
  const AlgebraPtr& alg = ext.sub.alg;
  std::vector<Matrix> out;
  for (int a = 0; a < alg->num_arrows(); ++a)
    out.emplace_back(ext.sub.dims[alg->arrow(a).tgt], ext.quot.dims[alg->arrow(a).src], ext.sub.modulus());
  for (std::size_t k = 0; k < ext.classes.size(); ++k) {
    if (!coeff[k]) continue;
    for (int a = 0; a < alg->num_arrows(); ++a) out[a] = out[a] + ext.classes[k][a].scaled(coeff[k]);
  }
  return out;
}

Representation middle_term(const Representation& sub, const Representation& quot, const std::vector<Matrix>& cocycle) {
  Representation e = direct_sum(sub, quot);
  const AlgebraPtr& alg = sub.alg;
  for (int a = 0; a < alg->num_arrows(); ++a) e.maps[a].paste(cocycle[a], 0, sub.dims[alg->arrow(a).src]);
  return e;
}

Representation transpose(const Representation& m) {
  const AlgebraPtr& alg = m.alg;
  AlgebraPtr op = alg->op();
  Presentation pres = min_proj_presentation(m);
  const auto& w = pres.p0.vertices;
  const auto& u = pres.p1.vertices;
  auto entries = projective_entries(alg, u, w, pres.d);
  // Hom(-, Lambda) turns d into Q0 = sum P^op_{w_j} -> Q1 = sum P^op_{u_i} with entries rev(d_ji).
  std::vector<std::vector<std::vector<Scalar>>> op_entries(u.size(), std::vector<std::vector<Scalar>>(w.size()));
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) {
      const auto& op_paths = op->paths_between(u[i], w[j]);
      std::vector<Scalar> coeff(op_paths.size(), 0);
      const auto& xs = alg->paths_between(w[j], u[i]);
      for (std::size_t k = 0; k < xs.size(); ++k) {
        if (!entries[j][i][k]) continue;
        const Path& x = alg->path_basis()[xs[k]];
        Path rev{u[i], w[j], std::vector<int>(x.arrows.rbegin(), x.arrows.rend())};
        auto idx = op->basis_index(rev);
        coeff[position(op_paths, *idx)] = entries[j][i][k];
      }
      op_entries[i][j] = std::move(coeff);
    }
  Morphism dstar = projective_map(op, w, u, op_entries);
  ProjectiveSum q1 = projective_sum(op, u);
  return cokernel(dstar, q1.module).module;
}

Representation tau(const Representation& m) { return dual(transpose(m)); }

Submodule trace(const std::vector<Representation>& us, const Representation& m) {
  std::vector<Matrix> gens;
  for (int d : m.dims) gens.emplace_back(0, d, m.modulus());
  for (const auto& u : us) {
    HomSpace h = hom_basis(u, m);
    for (const auto& f : h.basis)
      for (std::size_t v = 0; v < m.dims.size(); ++v)
        if (f.comps[v].cols() && m.dims[v]) gens[v] = gens[v].stack_below(f.comps[v].transpose());
  }
  return canonical_submodule(m, gens);
}

Submodule reject(const std::vector<Representation>& us, const Representation& m) {
  Submodule acc = whole_submodule(m);
  for (const auto& u : us) {
    HomSpace h = hom_basis(m, u);
    for (const auto& g : h.basis) acc = intersection(m, acc, kernel_submodule(g, m));
  }
  return acc;
}

namespace {

bool nilpotent(const Matrix& a) {
  if (a.rows() == 0) return true;
  Matrix p = a;
  for (int i = 1; i < a.rows(); ++i) p = p * a;
  return p.is_zero();
}

}  // namespace

Scalar residue_scalar(const Representation& x, const Morphism& e) {
  const Scalar p = x.modulus();
  const Field f(p);
  int v = -1;
  for (std::size_t w = 0; w < x.dims.size(); ++w)
    if (x.dims[w] > 0) {
      v = static_cast<int>(w);
      break;
    }
  if (v < 0) throw std::invalid_argument("residue_scalar: zero module");
  const Matrix& b = e.comps[v];
  const int d = x.dims[v];
  // Krylov sequence of the first basis vector
  Matrix krylov(0, d, p);
  std::vector<Scalar> vec(d, 0);
  vec[0] = 1;
  std::vector<Scalar> coeff;
  int k = 0;
  while (true) {
    Matrix row(1, d, p);
    row.set_row(0, vec);
    if (k > 0) {
      auto sol = solve_left(krylov, vec);
      if (sol) {
        coeff = *sol;
        break;
      }
    }
    krylov = krylov.stack_below(row);
    vec = b.apply(vec);
    ++k;
  }
  // minimal polynomial t^k - sum coeff_i t^i equals (t - l)^k = (t^q - l)^(k/q) with q the p-part of k
  int q = 1;
  while (k % (q * static_cast<int>(p)) == 0) q *= static_cast<int>(p);
  const int kp = k / q;
  Scalar c = f.neg(coeff[k - q]);  // coefficient of t^(k-q)
  Scalar lambda = f.mul(f.neg(c), f.inv(static_cast<Scalar>(kp % p)));
  for (std::size_t w = 0; w < x.dims.size(); ++w) {
    if (!x.dims[w]) continue;
    Matrix shifted = e.comps[w] - Matrix::identity(x.dims[w], p).scaled(lambda);
    if (!nilpotent(shifted)) throw std::invalid_argument("endomorphism ring is not split local");
  }
  return lambda;
}

std::vector<Morphism> radical_endomorphisms(const Representation& x, const std::vector<Morphism>& end_basis) {
  Morphism id = identity_morphism(x);
  const Field f(x.modulus());
  std::vector<Morphism> shifted;
  for (const auto& b : end_basis) shifted.push_back(b + id.scaled(f.neg(residue_scalar(x, b))));
  Matrix rb = row_basis(flattened(shifted, flat_width(x, x), x.modulus()));
  if (rb.rows() + 1 != static_cast<int>(end_basis.size()))
    throw std::invalid_argument("endomorphism ring is not split local");
  std::vector<Morphism> out;
  for (int r = 0; r < rb.rows(); ++r) out.push_back(unflatten(rb.row(r), x, x));
  return out;
}

AddSet make_addset(const std::vector<Representation>& mods) {
  AddSet add{mods, {}};
  const int n = static_cast<int>(mods.size());
  add.rad.assign(n, std::vector<std::vector<Morphism>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      HomSpace h = hom_basis(mods[i], mods[j]);
      add.rad[i][j] = i == j ? radical_endomorphisms(mods[i], h.basis) : h.basis;
    }
  return add;
}

Approximation assemble_approximation(Side side, std::vector<int> parts, std::vector<Morphism> comps,
                                     const Representation& m, const AddSet& add) {
  Approximation a;
  a.side = side;
  a.parts = std::move(parts);
  a.comps = std::move(comps);
  std::vector<Representation> mods;
  for (int i : a.parts) mods.push_back(add.mods[i]);
  a.object = direct_sum(mods, m.alg);
  a.map = side == Side::Right ? row_morphism(a.comps, mods, m) : column_morphism(a.comps, m, mods);
  return a;
}

Approximation minimal_approximation(Side side, const Representation& m, const AddSet& add) {
  const int n = add.size();
  std::vector<HomSpace> homs;
  for (int i = 0; i < n; ++i) homs.push_back(side == Side::Right ? hom_basis(add.mods[i], m) : hom_basis(m, add.mods[i]));
  std::vector<int> parts;
  std::vector<Morphism> comps;
  for (int i = 0; i < n; ++i) {
    if (homs[i].dim() == 0) continue;
    const int width = side == Side::Right ? flat_width(add.mods[i], m) : flat_width(m, add.mods[i]);
    std::vector<Morphism> radical_part;
    for (int j = 0; j < n; ++j) {
      for (const auto& g : homs[j].basis) {
        if (side == Side::Right) {
          for (const auto& r : add.rad[i][j]) radical_part.push_back(compose(g, r));
        } else {
          for (const auto& r : add.rad[j][i]) radical_part.push_back(compose(r, g));
        }
      }
    }
    Matrix base = flattened(radical_part, width, m.modulus());
    Matrix cand = flattened(homs[i].basis, width, m.modulus());
    for (int idx : complement_rows(base, cand)) {
      parts.push_back(i);
      comps.push_back(homs[i].basis[idx]);
    }
  }
  return assemble_approximation(side, std::move(parts), std::move(comps), m, add);
}

Approximation universal_approximation(Side side, const Representation& m, const AddSet& add) {
  std::vector<int> parts;
  std::vector<Morphism> comps;
  for (int i = 0; i < add.size(); ++i) {
    HomSpace h = side == Side::Right ? hom_basis(add.mods[i], m) : hom_basis(m, add.mods[i]);
    for (const auto& g : h.basis) {
      parts.push_back(i);
      comps.push_back(g);
    }
  }
  return assemble_approximation(side, std::move(parts), std::move(comps), m, add);
}

bool is_approximation(const Approximation& a, const Representation& m, const AddSet& add) {
  const int n = add.size();
  for (int i = 0; i < n; ++i) {
    const Representation& u = add.mods[i];
    int target_dim = a.side == Side::Right ? hom_dim(u, m) : hom_dim(m, u);
    if (target_dim == 0) continue;
    std::vector<Morphism> composites;
    for (std::size_t k = 0; k < a.parts.size(); ++k) {
      const Representation& part = add.mods[a.parts[k]];
      if (a.side == Side::Right) {
        for (const auto& h : hom_basis(u, part).basis) composites.push_back(compose(a.comps[k], h));
      } else {
        for (const auto& h : hom_basis(part, u).basis) composites.push_back(compose(h, a.comps[k]));
      }
    }
    const int width = a.side == Side::Right ? flat_width(u, m) : flat_width(m, u);
    if (rank(flattened(composites, width, m.modulus())) != target_dim) return false;
  }
  return true;
}

Approximation strip_to_fixpoint(const Approximation& a, const Representation& m, const AddSet& add) {
  Approximation cur = a;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = cur.parts.size(); k-- > 0;) {
      std::vector<int> parts = cur.parts;
      std::vector<Morphism> comps = cur.comps;
      parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(k));
      comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(k));
      Approximation trial = assemble_approximation(cur.side, parts, comps, m, add);
      if (is_approximation(trial, m, add)) {
        cur = std::move(trial);
        changed = true;
        break;
      }
    }
  }
  return cur;
}

std::vector<int> part_counts(const Approximation& a, int addset_size) {
  std::vector<int> counts(addset_size, 0);
  for (int i : a.parts) ++counts[i];
  return counts;
}

std::optional<int> resolution_dimension(const Representation& m, const AddSet& resolving) {
  const long long guard = static_cast<long long>(m.alg->dim()) * std::max(1, m.total_dim());
  Representation k = m;
  for (long long d = 0; d <= guard; ++d) {
    if (k.is_zero()) return static_cast<int>(d);
    Approximation a = minimal_approximation(Side::Right, k, resolving);
    if (a.object.dims == k.dims && is_iso(a.map, a.object, k)) return static_cast<int>(d);
    if (!is_epi(a.map, k)) throw std::invalid_argument("resolving set must contain every indecomposable projective");
    k = kernel(a.map, a.object).module;
  }
  return std::nullopt;
}

std::optional<int> global_dim(const AlgebraPtr& alg) {
  std::vector<Representation> proj;
  for (int v = 0; v < alg->num_vertices(); ++v) proj.push_back(projective_module(alg, v));
  AddSet add = make_addset(proj);
  int best = 0;
  for (int v = 0; v < alg->num_vertices(); ++v) {
    auto d = resolution_dimension(simple_module(alg, v), add);
    if (!d) return std::nullopt;
    best = std::max(best, *d);
  }
  return best;
}

std::optional<Morphism> factor_through_source(const Morphism& g, const Morphism& f, const Representation& b,
                                              const Representation& c) {
  HomSpace h = hom_basis(b, c);
  std::vector<Scalar> target = g.flatten();
  if (h.dim() == 0) {
    if (g.is_zero()) return zero_morphism(b, c);
    return std::nullopt;
  }
  std::vector<Morphism> comp;
  for (const auto& x : h.basis) comp.push_back(compose(x, f));
  auto sol = solve_left(flattened(comp, static_cast<int>(target.size()), b.modulus()), target);
  if (!sol) return std::nullopt;
  return combine(h, *sol);
}

std::optional<Morphism> factor_through_target(const Morphism& g, const Morphism& f, const Representation& a,
                                              const Representation& b) {
  HomSpace h = hom_basis(a, b);
  std::vector<Scalar> target = g.flatten();
  if (h.dim() == 0) {
    if (g.is_zero()) return zero_morphism(a, b);
    return std::nullopt;
  }
  std::vector<Morphism> comp;
  for (const auto& x : h.basis) comp.push_back(compose(f, x));
  auto sol = solve_left(flattened(comp, static_cast<int>(target.size()), a.modulus()), target);
  if (!sol) return std::nullopt;
  return combine(h, *sol);
}

Pushout pushout(const Morphism& f, const Morphism& g, const Representation& a, const Representation& b,
                const Representation& c) {
  const Field fld(a.modulus());
  Morphism col = column_morphism({f, g.scaled(fld.neg(1))}, a, {b, c});
  Representation bc = direct_sum(b, c);
  QuotientRep q = cokernel(col, bc);
  Morphism inc_b = block_morphism({b, c}, {b}, {{identity_morphism(b)}, {zero_morphism(b, c)}});
  Morphism inc_c = block_morphism({b, c}, {c}, {{zero_morphism(c, b)}, {identity_morphism(c)}});
  return Pushout{q.module, compose(q.projection, inc_b), compose(q.projection, inc_c)};
}

}  // namespace taufold
