#include "taufold/taufold.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <set>

namespace taufold {

namespace {

bool size_less(Mask a, Mask b) {
  int pa = std::popcount(a), pb = std::popcount(b);
  return pa != pb ? pa < pb : a < b;
}

std::vector<int> parts_to_mult(const Approximation& a, Mask u, int n) {
  const std::vector<int> idx = bits(u);
  std::vector<int> mult(n, 0);
  for (int p : a.parts) ++mult[idx[p]];
  return mult;
}

std::vector<int> unit(int n, int i) {
  std::vector<int> v(n, 0);
  v[i] = 1;
  return v;
}

Morphism block_diagonal(const Morphism& f, const Representation& src, const Representation& tgt, int copies) {
  if (copies == 0) return zero_morphism(zero_module(src.alg), zero_module(tgt.alg));
  std::vector<Representation> srcs(copies, src), tgts(copies, tgt);
  std::vector<std::vector<Morphism>> blocks(copies, std::vector<Morphism>(copies, zero_morphism(src, tgt)));
  for (int k = 0; k < copies; ++k) blocks[k][k] = f;
  return block_morphism(tgts, srcs, blocks);
}

/// P^n -> target, where copy k is comps[k] on summand parts[k] of P and zero elsewhere.
Morphism spread(const Approximation& a, const std::vector<Representation>& p_parts, const Representation& p,
                const Representation& target) {
  if (a.parts.empty()) return zero_morphism(zero_module(p.alg), target);
  std::vector<Morphism> rows;
  for (std::size_t k = 0; k < a.parts.size(); ++k) {
    std::vector<Morphism> on_p;
    for (std::size_t s = 0; s < p_parts.size(); ++s)
      on_p.push_back(static_cast<int>(s) == a.parts[k] ? a.comps[k] : zero_morphism(p_parts[s], target));
    rows.push_back(row_morphism(on_p, p_parts, target));
  }
  return row_morphism(rows, std::vector<Representation>(a.parts.size(), p), target);
}

/// Every map from (to) add(c) factors through the given map out of (into) m.
bool has_approximation_property(const Context& ctx, Side side, const Morphism& map, const Representation& object,
                                const Representation& m, Mask c) {
  for (int j : bits(c)) {
    const Representation& x = ctx.cat().module(j);
    const int want = side == Side::Left ? hom_dim(m, x) : hom_dim(x, m);
    if (!want) continue;
    std::vector<Morphism> through;
    if (side == Side::Left) {
      for (const auto& h : hom_basis(object, x).basis) through.push_back(compose(h, map));
    } else {
      for (const auto& h : hom_basis(x, object).basis) through.push_back(compose(map, h));
    }
    const int width = side == Side::Left ? flat_width(m, x) : flat_width(x, m);
    if (rank(flattened(through, width, m.modulus())) != want) return false;
  }
  return true;
}

}  // namespace

std::string bijection_name(BijectionKind k) {
  switch (k) {
    case BijectionKind::Air:
      return "air";
    case BijectionKind::Main:
      return "main";
    case BijectionKind::Hereditary:
      return "hereditary";
  }
  return {};
}

TauTheory::TauTheory(std::shared_ptr<const Context> ctx) : ctx_(std::move(ctx)) {}

bool TauTheory::is_tau_rigid(Mask u) const {
  const auto& c = cat();
  for (int i : bits(u))
    for (int j : bits(u))
      if (c.tau_of(j) >= 0 && c.hom_dim(i, c.tau_of(j)) > 0) return false;
  return true;
}

bool TauTheory::is_tau_rigid_by_fac(Mask u) const {
  const Mask f = fac(u);
  for (int i : bits(u))
    for (int j : bits(f))
      if (cat().ext1_dim(i, j)) return false;
  return true;
}

bool TauTheory::is_rigid(Mask u) const {
  for (int i : bits(u))
    for (int j : bits(u))
      if (cat().ext1_dim(i, j)) return false;
  return true;
}

namespace {

std::vector<Mask> cliques(int n, const std::function<bool(int)>& vertex_ok, const std::function<bool(int, int)>& edge) {
  std::vector<int> verts;
  for (int i = 0; i < n; ++i)
    if (vertex_ok(i)) verts.push_back(i);
  std::vector<Mask> out;
  std::function<void(std::size_t, Mask)> rec = [&](std::size_t from, Mask cur) {
    out.push_back(cur);
    for (std::size_t k = from; k < verts.size(); ++k) {
      const int v = verts[k];
      bool ok = true;
      for (int w : bits(cur))
        if (!edge(v, w)) {
          ok = false;
          break;
        }
      if (ok) rec(k + 1, cur | bit(v));
    }
  };
  rec(0, 0);
  std::sort(out.begin(), out.end(), size_less);
  return out;
}

}  // namespace

std::vector<Mask> TauTheory::tau_rigid() const {
  if (tau_rigid_) return *tau_rigid_;
  std::vector<Mask> out = cliques(
      cat().size(), [&](int i) { return is_tau_rigid(bit(i)); },
      [&](int i, int j) { return is_tau_rigid(bit(i) | bit(j)); });
  for (Mask u : out)
    if (!is_tau_rigid_by_fac(u))
      throw VerificationFailure("tau-rigidity routes disagree on " + ctx_->format(u));
  tau_rigid_ = out;
  return out;
}

std::vector<Mask> TauTheory::rigid() const {
  return cliques(
      cat().size(), [&](int i) { return is_rigid(bit(i)); }, [&](int i, int j) { return is_rigid(bit(i) | bit(j)); });
}

bool TauTheory::is_support_tau_tilting(Mask u) const {
  if (!is_tau_rigid(u)) return false;
  const bool by_progenerator = ctx_->ext_projectives(fac(u)) == u;
  std::vector<bool> supported(cat().algebra()->num_vertices(), false);
  for (int i : bits(u))
    for (std::size_t v = 0; v < supported.size(); ++v)
      if (cat().module(i).dims[v]) supported[v] = true;
  const bool by_count = std::popcount(u) == std::count(supported.begin(), supported.end(), true);
  if (by_progenerator != by_count)
    throw VerificationFailure("support tau-tilting criteria disagree on " + ctx_->format(u));
  return by_progenerator;
}

std::vector<Mask> TauTheory::support_tau_tilting() const {
  std::vector<Mask> out;
  for (Mask u : tau_rigid())
    if (is_support_tau_tilting(u)) out.push_back(u);
  return out;
}

std::vector<Mask> TauTheory::torsion_lattice() const {
  if (lattice_) return *lattice_;
  std::vector<Mask> out;
  for (Mask u : support_tau_tilting()) out.push_back(fac(u));
  std::sort(out.begin(), out.end(), size_less);
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw VerificationFailure("two support tau-tilting modules share a torsion class");
  std::set<Mask> members(out.begin(), out.end());
  for (Mask t : out)
    if (!ctx_->is_torsion_class(t, SideKind::Tors))
      throw VerificationFailure("lattice member is not a torsion class: " + ctx_->format(t));
  for (Mask a : out)
    for (Mask b : out)
      if (!members.count(a & b)) throw VerificationFailure("torsion lattice is not closed under intersection");
  lattice_ = out;
  return out;
}

std::vector<std::pair<int, int>> TauTheory::hasse(const std::vector<Mask>& lattice) {
  std::vector<std::pair<int, int>> edges;
  const int n = static_cast<int>(lattice.size());
  auto below = [&](int a, int b) { return a != b && lattice[a] != lattice[b] && subset_of(lattice[a], lattice[b]); };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!below(a, b)) continue;
      bool cover = true;
      for (int k = 0; k < n && cover; ++k)
        if (below(a, k) && below(k, b)) cover = false;
      if (cover) edges.emplace_back(a, b);
    }
  return edges;
}

Mask TauTheory::lattice_closure(Mask c) const {
  Mask r = ctx_->full();
  for (Mask t : torsion_lattice())
    if (subset_of(c, t)) r &= t;
  return r;
}

FtorsProgenerator TauTheory::ext_progenerator_ftors(Mask t) const {
  const int n = cat().size();
  std::vector<int> lam(n, 0);
  for (int v = 0; v < cat().algebra()->num_vertices(); ++v) ++lam[cat().projective(v)];
  Representation l = ctx_->assemble(lam);
  Approximation f = ctx_->approximation(Side::Left, l, t);
  FtorsProgenerator out;
  out.t0 = parts_to_mult(f, t, n);
  out.t1 = ctx_->decompose(cokernel(f.map, f.object).module);
  out.basic = support(out.t0) | support(out.t1);
  out.disjoint = (support(out.t0) & support(out.t1)) == 0;
  return out;
}

Mask TauTheory::co_bongartz(Mask u) const { return ctx_->ext_projectives(fac(u)); }

Mask TauTheory::phi(Mask c) const {
  const Mask t1 = ctx_->torsion_closure(c, 1, SideKind::Tors);
  if (t1 != lattice_closure(c)) throw VerificationFailure("torsion closure routes disagree on " + ctx_->format(c));
  return c & ctx_->ext_projectives(t1);
}

StarResult TauTheory::check_star(Mask c) const {
  const Mask p = ctx_->ext_projectives(ctx_->torsion_closure(c, 1, SideKind::Tors));
  StarResult out;
  for (int i : bits(c)) {
    Approximation a = ctx_->approximation(Side::Right, i, p);
    std::vector<int> cover = parts_to_mult(a, p, cat().size());
    if (!subset_of(support(cover), c)) {
      out.holds = false;
      out.member = i;
      out.cover = cover;
      return out;
    }
  }
  return out;
}

TwoFoldPair TauTheory::two_fold_torsion_pair(Mask u) const {
  TwoFoldPair out;
  out.t1 = fac(u);
  out.t2 = cok1(u);
  out.f1 = ctx_->right_perp(out.t1, 0);
  out.f2 = out.f1 & ctx_->right_perp(out.t2, 1);
  const Mask l1 = ctx_->left_perp(out.f1, 0);
  out.verified = out.t1 == l1 && out.t2 == (l1 & ctx_->left_perp(out.f2, 1));
  return out;
}

Cok1Progenerator TauTheory::progenerator_of_cok1(Mask u) const {
  const int n = cat().size();
  const Mask p = co_bongartz(u);
  const Mask c = cok1(u);
  std::vector<Representation> p_parts;
  for (int s : bits(p)) p_parts.push_back(cat().module(s));
  const Representation pm = direct_sum(p_parts, cat().algebra());
  Approximation f = ctx_->approximation(Side::Left, pm, c);
  QuotientRep pi = cokernel(f.map, f.object);

  Cok1Progenerator out;
  out.up = parts_to_mult(f, c, n);
  out.c1p = ctx_->decompose(pi.module);
  out.basic = support(out.up) | support(out.c1p);
  out.disjoint = (support(out.up) & support(out.c1p)) == 0;
  out.same_fac = subset_of(support(out.up), u) && fac(support(out.up)) == fac(u);
  out.matches_ext_projectives = ctx_->ext_progenerator(c) == std::optional<Mask>(out.basic);

  // For each indecomposable C: 0 -> F -> P^a -> C -> 0, push along f^a to K = Ker((U^P)^a -> C), cover K by P^b,
  // and read C off the exact sequence (U^P)^b -> (U^P)^a + (C_1^P)^b -> C -> 0.
  const Representation& up = f.object;
  out.generates = true;
  for (int ci : bits(c)) {
    const Representation& x = cat().module(ci);
    Approximation g = minimal_approximation(Side::Right, x, cat().addset(bits(p)));
    const int a = static_cast<int>(g.parts.size());
    if (a == 0 || !is_epi(g.map, x)) {
      out.generates = false;
      break;
    }
    const Representation pa = power(pm, a), upa = power(up, a);
    auto h0 = factor_through_source(spread(g, p_parts, pm, x), block_diagonal(f.map, pm, up, a), upa, x);
    if (!h0) {
      out.generates = false;
      break;
    }
    SubmoduleRep k = kernel(*h0, upa);
    Approximation g2 = minimal_approximation(Side::Right, k.module, cat().addset(bits(p)));
    const int b = static_cast<int>(g2.parts.size());
    const Representation upb = power(up, b), c1b = power(pi.module, b);
    Morphism cover = compose(k.inclusion, spread(g2, p_parts, pm, k.module));
    auto kk = factor_through_source(cover, block_diagonal(f.map, pm, up, b), upb, upa);
    if (!kk) {
      out.generates = false;
      break;
    }
    Morphism pib = block_diagonal(pi.projection, up, pi.module, b);
    Pushout po = pushout(*kk, pib, upb, upa, c1b);
    if (ctx_->decompose(po.object) != unit(n, ci)) {
      out.generates = false;
      break;
    }
    const Morphism into = column_morphism({*kk, pib}, upb, {upa, c1b});
    if (!subset_of(support(ctx_->decompose(image_rep(into, direct_sum(upa, c1b)).module)), c) ||
        !subset_of(support(out.up) | support(out.c1p), c)) {
      out.generates = false;
      break;
    }
  }
  return out;
}

std::vector<FiniteApprox> TauTheory::functorial_finiteness(Mask u) const {
  const Mask f = fac(u), c = cok1(u);
  std::vector<FiniteApprox> out;
  for (int i = 0; i < cat().size(); ++i) {
    const Representation& m = cat().module(i);
    FiniteApprox r;
    r.module = i;
    Approximation l1 = ctx_->approximation(Side::Left, m, f);
    Approximation l2 = ctx_->approximation(Side::Left, l1.object, c);
    r.left_ok = has_approximation_property(*ctx_, Side::Left, compose(l2.map, l1.map), l2.object, m, c);
    Approximation r1 = ctx_->approximation(Side::Right, m, f);
    Approximation r2 = ctx_->approximation(Side::Right, r1.object, c);
    r.right_ok = has_approximation_property(*ctx_, Side::Right, compose(r1.map, r2.map), r2.object, m, c);
    out.push_back(r);
  }
  return out;
}

BijectionReport TauTheory::verify_bijection(BijectionKind kind) const {
  const auto start = std::chrono::steady_clock::now();
  BijectionReport rep;
  rep.kind = kind;
  auto fail = [&](const std::string& what, const std::string& detail) { rep.failures.push_back({what, detail}); };
  const Context& c = *ctx_;

  if (kind == BijectionKind::Air) {
    const std::vector<Mask> st = support_tau_tilting();
    const std::vector<Mask> lat = torsion_lattice();
    rep.left_count = static_cast<int>(st.size());
    rep.right_count = static_cast<int>(lat.size());
    for (Mask u : st) {
      const Mask t = fac(u);
      rep.modules.push_back(u);
      rep.classes.push_back(t);
      if (c.ext_projectives(t) != u) fail("P(Fac U) != U", c.format(u));
    }
    for (Mask t : lat) {
      const Mask u = c.ext_projectives(t);
      if (fac(u) != t) fail("Fac P(T) != T", c.format(t));
      if (!is_support_tau_tilting(u)) fail("P(T) not support tau-tilting", c.format(t));
      FtorsProgenerator g = ext_progenerator_ftors(t);
      if (g.basic != u) fail("left-approximation progenerator differs", c.format(t));
      if (!g.disjoint) fail("ind T0 and ind T1 intersect", c.format(t));
    }
    if (c.torsion_classes(SideKind::Tors) != lat) fail("lattice differs from subset closures", "");
  } else if (kind == BijectionKind::Main) {
    const std::vector<Mask> tr = tau_rigid();
    const std::vector<Mask> lat = torsion_lattice();
    const std::vector<Mask> two = c.enumerate_nfold(2, SideKind::Tors, &lat);
    const std::set<Mask> two_set(two.begin(), two.end());
    std::set<Mask> image;
    for (Mask u : tr) {
      const Mask k = cok1(u);
      rep.modules.push_back(u);
      rep.classes.push_back(k);
      image.insert(k);
      if (!two_set.count(k)) fail("cok1 U is not a 2-fold torsion class", c.format(u));
      if (!check_star(k).holds) fail("cok1 U fails condition (*)", c.format(u));
      if (phi(k) != u) fail("Phi(cok1 U) != U", c.format(u));
      const Mask t1k = c.torsion_closure(k, 1, SideKind::Tors);
      if (t1k != fac(u)) fail("T1(cok1 U) != Fac U", c.format(u));
      if (fac(co_bongartz(u)) != t1k) fail("Fac(co-Bongartz U) != T1(cok1 U)", c.format(u));
      if (is_support_tau_tilting(u)) {
        if (k != fac(u)) fail("cok1 T != Fac T on support tau-tilting T", c.format(u));
        if (co_bongartz(u) != u) fail("co-Bongartz completion moves a support tau-tilting module", c.format(u));
      }
    }
    for (Mask t : lat)
      if (c.torsion_closure(t, 1, SideKind::Tors) != t) fail("T1 moves a torsion class", c.format(t));
    std::vector<Mask> star;
    for (Mask k : two) {
      if (check_star(k).holds) {
        star.push_back(k);
        const Mask u = phi(k);
        if (!is_tau_rigid(u)) fail("Phi(C) not tau-rigid", c.format(k));
        if (cok1(u) != k) fail("cok1(Phi(C)) != C", c.format(k));
        if (!image.count(k)) fail("class satisfying (*) outside the image of cok1", c.format(k));
      } else {
        rep.excluded.push_back(k);
        if (image.count(k)) fail("image of cok1 fails (*)", c.format(k));
      }
    }
    rep.left_count = static_cast<int>(tr.size());
    rep.right_count = static_cast<int>(star.size());
  } else {
    auto gd = global_dim(cat().algebra());
    if (!gd || *gd > 1) {
      fail("algebra is not hereditary", gd ? std::to_string(*gd) : "infinite");
    } else {
      const std::vector<Mask> rg = rigid();
      if (rg != tau_rigid()) fail("rigid and tau-rigid lists differ", "");
      if (cat().size() > 22) throw GuardExceeded("subset guard exceeded");
      std::vector<Mask> icep;
      for (Mask s = 0; s <= c.full(); ++s) {
        const bool ice = c.is_ice(s);
        const bool ce = c.is_cne_closed(s, 1, SideKind::Tors).closed;
        const bool serre = c.is_serre_in(s, c.torsion_closure(s, 1, SideKind::Tors));
        if (ice != ce || ice != serre) fail("ICE, CE and Serre-in-T1 tests disagree", c.format(s));
        if (ice && c.ext_progenerator(s)) icep.push_back(s);
        if (s == c.full()) break;
      }
      std::sort(icep.begin(), icep.end(), size_less);
      const std::set<Mask> icep_set(icep.begin(), icep.end());
      for (Mask u : rg) {
        const Mask k = cok1(u);
        rep.modules.push_back(u);
        rep.classes.push_back(k);
        if (!icep_set.count(k)) fail("cok1 U is not ICE-closed with enough Ext-projectives", c.format(u));
        if (c.ext_progenerator(k) != std::optional<Mask>(u)) fail("P(cok1 U) != U", c.format(u));
      }
      for (Mask k : icep) {
        auto p = c.ext_progenerator(k);
        if (!p || cok1(*p) != k) fail("cok1(P(C)) != C", c.format(k));
      }
      rep.left_count = static_cast<int>(rg.size());
      rep.right_count = static_cast<int>(icep.size());
    }
  }
  if (rep.left_count != rep.right_count)
    fail("side counts differ", std::to_string(rep.left_count) + " vs " + std::to_string(rep.right_count));
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace taufold
