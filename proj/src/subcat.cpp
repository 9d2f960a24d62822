#include "taufold/subcat.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "taufold/parallel.hpp"

namespace taufold {

namespace {

constexpr std::uint64_t kExtClassGuard = 4096;
constexpr std::uint64_t kHomMapGuard = 1u << 16;
constexpr std::uint64_t kSubsetGuard = 1u << 22;

std::uint64_t power_guarded(Scalar p, int e, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    r *= p;
    if (r > limit) return limit + 1;
  }
  return r;
}

/// Calls fn on every vector of F_p^dim except zero, in lexicographic order.
void for_each_nonzero(int dim, Scalar p, const std::function<void(const std::vector<Scalar>&)>& fn) {
  std::vector<Scalar> v(dim, 0);
  while (true) {
    int k = dim - 1;
    while (k >= 0 && v[k] + 1 == p) v[k--] = 0;
    if (k < 0) return;
    ++v[k];
    fn(v);
  }
}

bool popcount_less(Mask a, Mask b) {
  int pa = std::popcount(a), pb = std::popcount(b);
  return pa != pb ? pa < pb : a < b;
}

std::vector<int> mult_from_approx(const Approximation& a, const std::vector<int>& idx, int n) {
  std::vector<int> mult(n, 0);
  for (int p : a.parts) ++mult[idx[p]];
  return mult;
}

}  // namespace

std::vector<int> bits(Mask m) {
  std::vector<int> r;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1u) r.push_back(i);
  return r;
}

Mask mask_of(const std::vector<int>& idx) {
  Mask m = 0;
  for (int i : idx) m |= bit(i);
  return m;
}

Mask support(const std::vector<int>& mult) {
  Mask m = 0;
  for (std::size_t i = 0; i < mult.size(); ++i)
    if (mult[i]) m |= bit(static_cast<int>(i));
  return m;
}

Context::Context(CatalogPtr cat, int mu) : cat_(std::move(cat)), mu_(mu) {
  if (mu_ < 1) throw std::invalid_argument("multiplicity bound must be at least 1");
  // Display order: by vertex, P before S before I; other indecomposables last in catalog order.
  const int nv = cat_->algebra()->num_vertices();
  std::vector<std::tuple<int, int, int>> keys;
  for (int i = 0; i < size(); ++i) {
    std::tuple<int, int, int> key{nv, 3, i};
    for (int v = nv - 1; v >= 0; --v) {
      if (cat_->injective(v) == i) key = {v, 2, i};
      if (cat_->simple(v) == i) key = {v, 1, i};
      if (cat_->projective(v) == i) key = {v, 0, i};
    }
    keys.push_back(key);
  }
  std::sort(keys.begin(), keys.end());
  for (const auto& k : keys) display_order_.push_back(std::get<2>(k));
}

Mask Context::full() const { return size() == 64 ? ~Mask{0} : bit(size()) - 1; }

Representation Context::assemble(const std::vector<int>& mult) const {
  std::vector<Representation> parts;
  for (std::size_t i = 0; i < mult.size(); ++i)
    for (int k = 0; k < mult[i]; ++k) parts.push_back(cat_->module(static_cast<int>(i)));
  return direct_sum(parts, cat_->algebra());
}

std::string Context::format(Mask m) const {
  if (!m) return "{0}";
  std::string s = "add(";
  bool first = true;
  for (int i : display_order_) {
    if (!has(m, i)) continue;
    if (!first) s += "+";
    s += cat_->label(i);
    first = false;
  }
  return s + ")";
}

std::string Context::format_object(const std::vector<int>& mult) const {
  std::string s;
  for (int i : display_order_) {
    if (i >= static_cast<int>(mult.size()) || !mult[i]) continue;
    if (!s.empty()) s += "+";
    s += cat_->label(i);
    if (mult[i] > 1) s += "^" + std::to_string(mult[i]);
  }
  return s.empty() ? "0" : s;
}

Mask Context::parse(const std::string& labels) const {
  std::string body = labels;
  if (body.rfind("add(", 0) == 0 && body.back() == ')') body = body.substr(4, body.size() - 5);
  Mask m = 0;
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, '+')) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (tok.empty() || tok == "0") continue;
    auto i = cat_->find_label(tok);
    if (!i) throw std::invalid_argument("unknown module label: " + tok);
    m |= bit(*i);
  }
  return m;
}

Mask Context::fac(Mask c) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = fac_memo_.find(c);
    if (it != fac_memo_.end()) return it->second;
  }
  std::vector<Representation> us;
  for (int i : bits(c)) us.push_back(cat_->module(i));
  Mask r = 0;
  for (int j = 0; j < size(); ++j) {
    if (has(c, j)) {
      r |= bit(j);
      continue;
    }
    if (us.empty()) continue;
    if (trace(us, cat_->module(j)).total_dim() == cat_->module(j).total_dim()) r |= bit(j);
  }
  std::lock_guard<std::mutex> lock(mutex_);
  fac_memo_[c] = r;
  return r;
}

Mask Context::sub(Mask c) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = sub_memo_.find(c);
    if (it != sub_memo_.end()) return it->second;
  }
  std::vector<Representation> us;
  for (int i : bits(c)) us.push_back(cat_->module(i));
  Mask r = 0;
  for (int j = 0; j < size(); ++j) {
    if (has(c, j)) {
      r |= bit(j);
      continue;
    }
    if (us.empty()) continue;
    if (reject(us, cat_->module(j)).total_dim() == 0) r |= bit(j);
  }
  std::lock_guard<std::mutex> lock(mutex_);
  sub_memo_[c] = r;
  return r;
}

Mask Context::ext_orth(int s) const {
  Mask r = 0;
  for (int i = 0; i < size(); ++i)
    if (cat_->ext1_dim(s, i) > 0) r |= bit(i);
  return r;
}

Mask Context::hom_into(int y) const {
  Mask r = 0;
  for (int i = 0; i < size(); ++i)
    if (cat_->hom_dim(i, y) > 0) r |= bit(i);
  return r;
}

Mask Context::hom_from(int x) const {
  Mask r = 0;
  for (int j = 0; j < size(); ++j)
    if (cat_->hom_dim(x, j) > 0) r |= bit(j);
  return r;
}

// Extensions 0 -> A -> E -> X_s -> 0 with A supported in t. A multiplicity above dim Ext^1(X_s, X_i) lets a
// copy of X_i split off, so A = sum X_i^{dim Ext^1(X_s, X_i)} covers every middle term up to summands of A.
const Context::Rule& Context::ext_rule(int s, Mask t) const {
  t &= ext_orth(s);
  const auto key = std::make_pair(s, t);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = ext_rules_.find(key);
    if (it != ext_rules_.end()) return it->second;
  }
  Rule rule;
  std::vector<int> mult(size(), 0);
  for (int i : bits(t)) {
    mult[i] = cat_->ext1_dim(s, i);
    rule.bound = std::max(rule.bound, mult[i]);
  }
  if (t) {
    Representation a = assemble(mult);
    ExtensionSpace ext = extension_space(a, cat_->module(s));
    const Scalar p = a.modulus();
    if (power_guarded(p, ext.dim(), kExtClassGuard) > kExtClassGuard)
      throw GuardExceeded("extension class guard exceeded (dim Ext^1 = " + std::to_string(ext.dim()) + ")");
    for_each_nonzero(ext.dim(), p, [&](const std::vector<Scalar>& coeff) {
      Representation e = middle_term(a, cat_->module(s), combine_cocycles(ext, coeff));
      Mask produced = support(decompose(e));
      for (int j : bits(produced & ~rule.produced)) {
        Witness w;
        w.added = j;
        w.step = StepKind::Extension;
        w.object = mult;
        w.other = s;
        w.coeffs = coeff;
        rule.first.emplace(j, std::move(w));
      }
      rule.produced |= produced;
    });
  }
  std::lock_guard<std::mutex> lock(mutex_);
  return ext_rules_.emplace(key, std::move(rule)).first->second;
}

// Kernel: maps sum X_i^{h_i} -> X_anchor with h_i = dim Hom(X_i, X_anchor); more copies split off into the kernel.
// Cokernel: maps X_anchor -> sum X_j^{h_j} with h_j = dim Hom(X_anchor, X_j).
const Context::Rule& Context::hom_rule(StepKind kind, int anchor, Mask t) const {
  const bool ker = kind == StepKind::Kernel;
  t &= ker ? hom_into(anchor) : hom_from(anchor);
  const auto key = std::make_tuple(static_cast<int>(kind), anchor, t);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = hom_rules_.find(key);
    if (it != hom_rules_.end()) return it->second;
  }
  Rule rule;
  std::vector<int> mult(size(), 0);
  for (int i : bits(t)) {
    mult[i] = ker ? cat_->hom_dim(i, anchor) : cat_->hom_dim(anchor, i);
    rule.bound = std::max(rule.bound, mult[i]);
  }
  if (t) {
    Representation obj = assemble(mult);
    const Representation& y = cat_->module(anchor);
    HomSpace h = ker ? hom_basis(obj, y) : hom_basis(y, obj);
    const Scalar p = obj.modulus();
    if (power_guarded(p, h.dim(), kHomMapGuard) > kHomMapGuard)
      throw GuardExceeded("morphism enumeration guard exceeded (dim Hom = " + std::to_string(h.dim()) + ")");
    for_each_nonzero(h.dim(), p, [&](const std::vector<Scalar>& coeff) {
      Morphism f = combine(h, coeff);
      Representation r = ker ? kernel(f, obj).module : cokernel(f, obj).module;
      Mask produced = support(decompose(r));
      for (int j : bits(produced & ~rule.produced)) {
        Witness w;
        w.added = j;
        w.step = kind;
        w.object = mult;
        w.other = anchor;
        w.coeffs = coeff;
        rule.first.emplace(j, std::move(w));
      }
      rule.produced |= produced;
    });
  }
  std::lock_guard<std::mutex> lock(mutex_);
  return hom_rules_.emplace(key, std::move(rule)).first->second;
}

ClosureReport Context::ext_closure(Mask c) const {
  ClosureReport rep;
  rep.input = c;
  Mask s = c;
  while (true) {
    ++rep.rounds;
    Mask added = 0;
    for (int q : bits(s)) {
      const Rule& r = ext_rule(q, s);
      rep.multiplicity_bound = std::max(rep.multiplicity_bound, r.bound);
      for (int j : bits(r.produced & ~s & ~added)) rep.witnesses.push_back(r.first.at(j));
      added |= r.produced & ~s;
    }
    if (!added) break;
    s |= added;
  }
  rep.result = s;
  return rep;
}

bool Context::is_ext_closed(Mask c) const {
  for (int q : bits(c))
    if (!subset_of(ext_rule(q, c).produced, c)) return false;
  return true;
}

bool Context::filt_membership(const Representation& m, Mask c) const {
  std::map<std::vector<int>, bool> memo;
  std::function<bool(const Representation&)> rec = [&](const Representation& x) -> bool {
    if (x.is_zero()) return true;
    std::vector<int> dec = decompose(x);
    if (subset_of(support(dec), c)) return true;
    auto it = memo.find(dec);
    if (it != memo.end()) return it->second;
    bool ok = false;
    // The bottom step of a filtration can be taken indecomposable.
    for (const auto& w : submodule_lattice(x)) {
      const int d = w.total_dim();
      if (d == 0 || d == x.total_dim()) continue;
      auto idx = cat_->index_of(submodule_rep(x, w).module);
      if (!idx || !has(c, *idx)) continue;
      if (rec(quotient(x, w))) {
        ok = true;
        break;
      }
    }
    memo[dec] = ok;
    return ok;
  };
  return rec(m);
}

int Context::ext_k(int i, int j, int k) const {
  if (k == 0) return cat_->hom_dim(i, j);
  if (k == 1) return cat_->ext1_dim(i, j);
  const auto key = std::make_tuple(i, j, k);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = ext_k_memo_.find(key);
    if (it != ext_k_memo_.end()) return it->second;
  }
  int d = ext_dim(cat_->module(i), cat_->module(j), k);
  std::lock_guard<std::mutex> lock(mutex_);
  ext_k_memo_[key] = d;
  return d;
}

Mask Context::left_perp(Mask x, int k) const {
  Mask r = 0;
  for (int m = 0; m < size(); ++m) {
    bool ok = true;
    for (int i : bits(x))
      if (ext_k(m, i, k)) {
        ok = false;
        break;
      }
    if (ok) r |= bit(m);
  }
  return r;
}

Mask Context::right_perp(Mask x, int k) const {
  Mask r = 0;
  for (int m = 0; m < size(); ++m) {
    bool ok = true;
    for (int i : bits(x))
      if (ext_k(i, m, k)) {
        ok = false;
        break;
      }
    if (ok) r |= bit(m);
  }
  return r;
}

bool Context::is_torsion_class(Mask c, SideKind side) const {
  return closure_side(c, side) == c && is_ext_closed(c);
}

Approximation Context::approximation(Side side, const Representation& m, Mask u) const {
  return minimal_approximation(side, m, cat_->addset(bits(u)));
}

Approximation Context::approximation(Side side, int i, Mask u) const { return approximation(side, cat_->module(i), u); }

// For e extension-closed and summand-closed with s inside e: some conflation in e has middle term in add(s) and
// end term X_q iff the minimal approximation does, because any such map is the minimal one plus a split part.
std::optional<Witness> Context::admissible_test(int q, Mask s, Mask e, SideKind side) const {
  const auto key = std::make_tuple(q * 2 + (side == SideKind::Torf), 0, s, e);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = adm_memo_.find(key);
    if (it != adm_memo_.end()) return it->second;
  }
  std::optional<Witness> out;
  if (s) {
    const std::vector<int> idx = bits(s);
    const Representation& x = cat_->module(q);
    if (side == SideKind::Tors) {
      Approximation a = approximation(Side::Right, x, s);
      if (is_epi(a.map, x) && subset_of(support(decompose(kernel(a.map, a.object).module)), e))
        out = Witness{q, StepKind::AdmissibleQuotient, mult_from_approx(a, idx, size()), -1, {}, e, s};
    } else {
      Approximation a = approximation(Side::Left, x, s);
      if (is_mono(a.map) && subset_of(support(decompose(cokernel(a.map, a.object).module)), e))
        out = Witness{q, StepKind::AdmissibleSubobject, mult_from_approx(a, idx, size()), -1, {}, e, s};
    }
  }
  std::lock_guard<std::mutex> lock(mutex_);
  adm_memo_[key] = out;
  return out;
}

std::optional<Witness> Context::admissible_failure(Mask c, Mask e, SideKind side) const {
  for (int q : bits(e & ~c))
    if (auto w = admissible_test(q, c, e, side)) return w;
  return std::nullopt;
}

bool Context::is_relative_torsion(Mask c, Mask e, SideKind side) const {
  return subset_of(c, e) && is_ext_closed(c) && !admissible_failure(c, e, side);
}

Mask Context::torsion_closure(Mask c, int n, SideKind side) const {
  if (n < 0) throw std::invalid_argument("fold must be nonnegative");
  Mask e = full();
  if (n == 0) return e;
  Mask s = c;
  while (true) {
    Mask next = ext_closure(closure_side(s, side)).result;
    if (next == s) break;
    s = next;
  }
  for (int level = 2; level <= n; ++level) {
    e = s;
    s = c;
    while (true) {
      s = ext_closure(s).result;
      Mask added = 0;
      for (int q : bits(e & ~s))
        if (admissible_test(q, s, e, side)) added |= bit(q);
      if (!added) break;
      s |= added;
    }
  }
  return s;
}

NCokResult Context::cok_or_ker_n(Mask u, int n, SideKind side) const {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  NCokResult res;
  Mask level = closure_side(u, side);
  const std::vector<int> idx = bits(u);
  for (int k = 1; k <= n; ++k) {
    Mask next = 0;
    if (is_ext_closed(level)) {
      // Exact: the minimal approximation is an epi (mono) with syzygy in the previous level iff some map is.
      for (int i = 0; i < size(); ++i) {
        if (!u) break;
        const Representation& x = cat_->module(i);
        if (side == SideKind::Tors) {
          Approximation a = approximation(Side::Right, x, u);
          if (is_epi(a.map, x) && subset_of(support(decompose(kernel(a.map, a.object).module)), level)) next |= bit(i);
        } else {
          Approximation a = approximation(Side::Left, x, u);
          if (is_mono(a.map) && subset_of(support(decompose(cokernel(a.map, a.object).module)), level))
            next |= bit(i);
        }
      }
    } else {
      res.exact = false;
      std::vector<int> mult(size(), 0);
      std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (pos == idx.size()) {
          if (std::all_of(mult.begin(), mult.end(), [](int m) { return m == 0; })) return;
          Representation obj = assemble(mult);
          for (int i = 0; i < size(); ++i) {
            if (has(next, i)) continue;
            const Representation& x = cat_->module(i);
            HomSpace h = side == SideKind::Tors ? hom_basis(obj, x) : hom_basis(x, obj);
            if (power_guarded(obj.modulus(), h.dim(), kHomMapGuard) > kHomMapGuard)
              throw GuardExceeded("morphism enumeration guard exceeded");
            bool found = false;
            for_each_nonzero(h.dim(), obj.modulus(), [&](const std::vector<Scalar>& coeff) {
              if (found) return;
              Morphism f = combine(h, coeff);
              if (side == SideKind::Tors) {
                found = is_epi(f, x) && subset_of(support(decompose(kernel(f, obj).module)), level);
              } else {
                found = is_mono(f) && subset_of(support(decompose(cokernel(f, obj).module)), level);
              }
            });
            if (found) next |= bit(i);
          }
          return;
        }
        for (int m = 0; m <= mu_; ++m) {
          mult[idx[pos]] = m;
          rec(pos + 1);
        }
        mult[idx[pos]] = 0;
      };
      rec(0);
    }
    level = next;
  }
  res.result = level;
  return res;
}

bool Context::is_kernel_closed(Mask c, SideKind side) const {
  const StepKind kind = side == SideKind::Torf ? StepKind::Kernel : StepKind::Cokernel;
  for (int a : bits(c))
    if (!subset_of(hom_rule(kind, a, c).produced, c)) return false;
  return true;
}

CneResult Context::chain_search(Mask c, int n, SideKind side) const {
  const bool tors = side == SideKind::Tors;
  const Mask base = closure_side(c, side);
  const std::vector<int> idx = bits(c);
  struct Pair {
    std::vector<int> sub, quot;
  };
  std::vector<std::vector<int>> objects;
  std::vector<std::vector<Pair>> pairs;
  std::vector<int> mult(size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == idx.size()) {
      Representation obj = assemble(mult);
      if (obj.is_zero() || obj.total_dim() > 12) return;
      std::vector<Pair> ps;
      std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
      for (const auto& w : submodule_lattice(obj)) {
        std::vector<int> a = decompose(submodule_rep(obj, w).module);
        std::vector<int> b = decompose(quotient(obj, w));
        if (seen.emplace(a, b).second) ps.push_back(Pair{a, b});
      }
      objects.push_back(mult);
      pairs.push_back(std::move(ps));
      return;
    }
    for (int m = 0; m <= mu_; ++m) {
      mult[idx[pos]] = m;
      rec(pos + 1);
    }
    mult[idx[pos]] = 0;
  };
  rec(0);

  // level[j][v] = (object index, predecessor vector at level j-1)
  using Level = std::map<std::vector<int>, std::pair<int, std::vector<int>>>;
  std::vector<Level> levels(n + 1);
  for (int j = 1; j <= n; ++j)
    for (std::size_t o = 0; o < objects.size(); ++o)
      for (const auto& pr : pairs[o]) {
        const std::vector<int>& from = tors ? pr.sub : pr.quot;
        const std::vector<int>& to = tors ? pr.quot : pr.sub;
        bool ok = j == 1 ? subset_of(support(from), base) : levels[j - 1].count(from) > 0;
        if (ok) levels[j].emplace(to, std::make_pair(static_cast<int>(o), from));
      }
  CneResult res;
  res.bounded = true;
  for (const auto& [v, back] : levels[n]) {
    if (subset_of(support(v), c)) continue;
    res.closed = false;
    res.bounded = false;
    res.witness.push_back(v);
    std::vector<int> cur = v;
    for (int j = n; j >= 1; --j) {
      const auto& bk = levels[j].at(cur);
      res.witness.push_back(objects[bk.first]);
      cur = bk.second;
    }
    Approximation a = approximation(tors ? Side::Right : Side::Left, assemble(cur), c);
    res.witness.push_back(mult_from_approx(a, idx, size()));
    break;
  }
  return res;
}

// Shortest object (by summand count) whose map to / from X_anchor has kernel / cokernel leaving c.
// Returned as M, X_0, X_1 with the assembled object as X_0 and the anchor as X_1.
std::vector<std::vector<int>> Context::smallest_hom_failure(StepKind kind, int anchor, const std::vector<int>& bound,
                                                            Mask c) const {
  const bool ker = kind == StepKind::Kernel;
  std::vector<std::vector<int>> objects;
  std::vector<int> cur(size(), 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == size()) {
      objects.push_back(cur);
      return;
    }
    for (int m = 0; m <= bound[pos]; ++m) {
      cur[pos] = m;
      rec(pos + 1);
    }
    cur[pos] = 0;
  };
  rec(0);
  auto total = [](const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); };
  std::stable_sort(objects.begin(), objects.end(),
                   [&](const auto& x, const auto& y) { return total(x) < total(y); });
  std::vector<int> anchor_vec(size(), 0);
  anchor_vec[anchor] = 1;
  for (const auto& v : objects) {
    if (!total(v)) continue;
    Representation obj = assemble(v);
    const Representation& y = cat_->module(anchor);
    HomSpace h = ker ? hom_basis(obj, y) : hom_basis(y, obj);
    std::vector<std::vector<int>> found;
    for_each_nonzero(h.dim(), obj.modulus(), [&](const std::vector<Scalar>& coeff) {
      if (!found.empty()) return;
      Morphism f = combine(h, coeff);
      std::vector<int> m = decompose(ker ? kernel(f, obj).module : cokernel(f, obj).module);
      if (!subset_of(support(m), c)) found = {m, v, anchor_vec};
    });
    if (!found.empty()) return found;
  }
  throw VerificationFailure("kernel/cokernel witness could not be rebuilt");
}

CneResult Context::is_cne_closed(Mask c, int n, SideKind side) const {
  CneResult res;
  if (n == 0) {
    res.closed = is_torsion_class(c, side);
    return res;
  }
  if (!is_ext_closed(c)) {
    res.closed = false;
    return res;
  }
  const StepKind kind = side == SideKind::Torf ? StepKind::Kernel : StepKind::Cokernel;
  for (int a : bits(c)) {
    const Rule& r = hom_rule(kind, a, c);
    Mask bad = r.produced & ~c;
    if (!bad) continue;
    if (n == 1) {
      res.closed = false;
      res.witness = smallest_hom_failure(kind, a, r.first.at(bits(bad).front()).object, c);
      return res;
    }
    // n >= 2: closure under n-cokernels is weaker than closure under cokernels
    if (closure_side(c, side) == c) return res;
    return chain_search(c, n, side);
  }
  return res;
}

bool Context::is_image_closed(Mask c) const { return subset_of(fac(c) & sub(c), c); }

bool Context::is_ice(Mask c) const {
  return is_image_closed(c) && is_kernel_closed(c, SideKind::Tors) && is_ext_closed(c);
}

bool Context::is_serre_in(Mask c, Mask t) const {
  if (!is_ext_closed(t)) throw std::invalid_argument("ambient subcategory is not extension-closed");
  return subset_of(c, t) && is_ext_closed(c) && !admissible_failure(c, t, SideKind::Tors) &&
         !admissible_failure(c, t, SideKind::Torf);
}

PerpChain Context::perp_chain(const std::vector<Mask>& xs, SideKind side) const {
  PerpChain out;
  Mask cur = full();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const int k = static_cast<int>(i);
    Mask next = cur & (side == SideKind::Tors ? left_perp(xs[i], k) : right_perp(xs[i], k));
    bool ok = is_ext_closed(cur) && is_relative_torsion(next, cur, side);
    out.classes.push_back(next);
    out.ok.push_back(ok);
    cur = next;
  }
  return out;
}

Mask Context::kernel_saturation(Mask x, Mask anchors, SideKind side, bool anchors_grow, ClosureReport* rep) const {
  const StepKind kind = side == SideKind::Torf ? StepKind::Kernel : StepKind::Cokernel;
  Mask s = x;
  while (true) {
    if (rep) ++rep->rounds;
    Mask added = 0;
    for (int a : bits(anchors_grow ? s : anchors)) {
      const Rule& r = hom_rule(kind, a, s);
      if (rep) {
        rep->multiplicity_bound = std::max(rep->multiplicity_bound, r.bound);
        for (int j : bits(r.produced & ~s & ~added)) rep->witnesses.push_back(r.first.at(j));
      }
      added |= r.produced & ~s;
    }
    if (!added) break;
    s |= added;
  }
  return s;
}

KernelSuite Context::kernel_closure_suite(Mask x, SideKind side) const {
  KernelSuite out;
  const Mask ambient = torsion_closure(x, 1, side);
  Mask s = x;
  while (true) {
    Mask added = 0;
    for (int q : bits(ambient & ~s))
      if (admissible_test(q, s, ambient, side)) added |= bit(q);
    if (!added) break;
    s |= added;
  }
  out.adm = s;
  out.relative = kernel_saturation(x, x, side, false, nullptr);
  out.report.input = x;
  out.full = kernel_saturation(x, x, side, true, &out.report);
  out.report.result = out.full;
  out.agree = out.adm == out.relative && out.relative == out.full;
  return out;
}

ClosureReport Context::ke_closure(Mask x, SideKind side) const {
  ClosureReport rep;
  rep.input = x;
  Mask s = x;
  while (true) {
    ClosureReport e = ext_closure(s);
    rep.multiplicity_bound = std::max(rep.multiplicity_bound, e.multiplicity_bound);
    rep.witnesses.insert(rep.witnesses.end(), e.witnesses.begin(), e.witnesses.end());
    Mask next = kernel_saturation(e.result, e.result, side, true, &rep);
    rep.rounds += e.rounds;
    if (next == s) break;
    s = next;
  }
  rep.result = s;
  return rep;
}

Mask Context::ext_projectives(Mask c) const {
  Mask r = 0;
  for (int i : bits(c)) {
    bool ok = true;
    for (int j : bits(c))
      if (cat_->ext1_dim(i, j)) ok = false;
    if (ok) r |= bit(i);
  }
  return r;
}

Mask Context::ext_injectives(Mask c) const {
  Mask r = 0;
  for (int i : bits(c)) {
    bool ok = true;
    for (int j : bits(c))
      if (cat_->ext1_dim(j, i)) ok = false;
    if (ok) r |= bit(i);
  }
  return r;
}

std::optional<Mask> Context::ext_progenerator(Mask c) const {
  const Mask p = ext_projectives(c);
  for (int i : bits(c & ~p)) {
    if (!p) return std::nullopt;
    const Representation& x = cat_->module(i);
    Approximation a = approximation(Side::Right, x, p);
    if (!is_epi(a.map, x) || !subset_of(support(decompose(kernel(a.map, a.object).module)), c)) return std::nullopt;
  }
  return p;
}

std::vector<Mask> Context::torsion_classes(SideKind side) const {
  if (size() > 22) throw GuardExceeded("subset guard exceeded");
  const std::uint64_t count = std::uint64_t{1} << size();
  std::vector<Mask> found(count);
  parallel_for(static_cast<int>(count), [&](int i) { found[i] = torsion_closure(static_cast<Mask>(i), 1, side); });
  std::sort(found.begin(), found.end(), popcount_less);
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

std::vector<Mask> Context::enumerate_nfold(int n, SideKind side, const std::vector<Mask>* level1) const {
  if (n < 0) throw std::invalid_argument("fold must be nonnegative");
  if (n == 0) return {full()};
  std::vector<Mask> level = level1 ? *level1 : torsion_classes(side);
  std::uint64_t tests = 0;
  for (int k = 2; k <= n; ++k) {
    for (Mask e : level) {
      tests += std::uint64_t{1} << std::popcount(e);
      if (tests > kSubsetGuard) throw GuardExceeded("subset guard exceeded");
    }
    std::vector<std::vector<Mask>> local(level.size());
    parallel_for(static_cast<int>(level.size()), [&](int li) {
      const Mask e = level[li];
      // enumerate submasks of e, including 0 and e
      Mask s = e;
      while (true) {
        if (is_relative_torsion(s, e, side)) local[li].push_back(s);
        if (!s) break;
        s = (s - 1) & e;
      }
    });
    std::vector<Mask> next;
    for (auto& l : local) next.insert(next.end(), l.begin(), l.end());
    std::sort(next.begin(), next.end(), popcount_less);
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level = std::move(next);
  }
  std::sort(level.begin(), level.end(), popcount_less);
  return level;
}

bool Context::revalidate(const Witness& w) const {
  try {
    switch (w.step) {
      case StepKind::Extension: {
        Representation a = assemble(w.object);
        ExtensionSpace ext = extension_space(a, cat_->module(w.other));
        Representation e = middle_term(a, cat_->module(w.other), combine_cocycles(ext, w.coeffs));
        return decompose(e)[w.added] > 0;
      }
      case StepKind::Kernel:
      case StepKind::Cokernel: {
        Representation obj = assemble(w.object);
        const Representation& y = cat_->module(w.other);
        const bool ker = w.step == StepKind::Kernel;
        Morphism f = combine(ker ? hom_basis(obj, y) : hom_basis(y, obj), w.coeffs);
        Representation r = ker ? kernel(f, obj).module : cokernel(f, obj).module;
        return decompose(r)[w.added] > 0;
      }
      case StepKind::AdmissibleQuotient:
      case StepKind::AdmissibleSubobject: {
        const bool quot = w.step == StepKind::AdmissibleQuotient;
        const Mask s = w.from;
        const Representation& x = cat_->module(w.added);
        Approximation a = approximation(quot ? Side::Right : Side::Left, x, s);
        if (mult_from_approx(a, bits(s), size()) != w.object) return false;
        if (quot) return is_epi(a.map, x) && subset_of(support(decompose(kernel(a.map, a.object).module)), w.within);
        return is_mono(a.map) && subset_of(support(decompose(cokernel(a.map, a.object).module)), w.within);
      }
    }
  } catch (const std::exception&) {
    return false;
  }
  return false;
}

std::string Context::describe(const Witness& w) const {
  const std::string added = cat_->label(w.added);
  switch (w.step) {
    case StepKind::Extension: {
      Representation a = assemble(w.object);
      ExtensionSpace ext = extension_space(a, cat_->module(w.other));
      Representation e = middle_term(a, cat_->module(w.other), combine_cocycles(ext, w.coeffs));
      return "0 -> " + format_object(w.object) + " -> " + format_object(decompose(e)) + " -> " +
             cat_->label(w.other) + " -> 0 gives " + added;
    }
    case StepKind::Kernel: {
      Representation obj = assemble(w.object);
      Morphism f = combine(hom_basis(obj, cat_->module(w.other)), w.coeffs);
      return "0 -> " + format_object(decompose(kernel(f, obj).module)) + " -> " + format_object(w.object) + " -> " +
             cat_->label(w.other) + " gives " + added;
    }
    case StepKind::Cokernel: {
      Representation obj = assemble(w.object);
      Morphism f = combine(hom_basis(cat_->module(w.other), obj), w.coeffs);
      return cat_->label(w.other) + " -> " + format_object(w.object) + " -> " +
             format_object(decompose(cokernel(f, obj).module)) + " -> 0 gives " + added;
    }
    case StepKind::AdmissibleQuotient:
      return format_object(w.object) + " ->> " + added + " with kernel in " + format(w.within);
    case StepKind::AdmissibleSubobject:
      return added + " >-> " + format_object(w.object) + " with cokernel in " + format(w.within);
  }
  return {};
}

}  // namespace taufold
