#include "taufold/strings.hpp"

#include <algorithm>
#include <set>

namespace taufold {

std::vector<int> walk_vertices(const Algebra& a, const StringWord& w) {
  std::vector<int> vs{w.start};
  for (const auto& l : w.letters) {
    const Arrow& ar = a.arrow(l.arrow);
    vs.push_back(l.inverse ? ar.src : ar.tgt);
  }
  return vs;
}

StringWord inverse_word(const Algebra& a, const StringWord& w) {
  StringWord inv{walk_vertices(a, w).back(), {}};
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) inv.letters.push_back(Letter{it->arrow, !it->inverse});
  return inv;
}

bool word_less(const Algebra& a, const StringWord& x, const StringWord& y) {
  if (x.letters.empty() && y.letters.empty()) return x.start < y.start;
  auto key = [&](const Letter& l) { return std::make_pair(a.arrow(l.arrow).name, l.inverse); };
  return std::lexicographical_compare(x.letters.begin(), x.letters.end(), y.letters.begin(), y.letters.end(),
                                      [&](const Letter& p, const Letter& q) { return key(p) < key(q); });
}

std::string word_name(const Algebra& a, const StringWord& w) {
  if (w.letters.empty()) return "e" + a.quiver().vertices[w.start];
  std::string s;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) s += ".";
    s += a.arrow(w.letters[i].arrow).name;
    if (w.letters[i].inverse) s += "^-1";
  }
  return s;
}

namespace {

bool can_append(const Algebra& a, const StringWord& w, int end_vertex, const Letter& l) {
  const Arrow& ar = a.arrow(l.arrow);
  if ((l.inverse ? ar.tgt : ar.src) != end_vertex) return false;
  if (!w.letters.empty()) {
    const Letter& last = w.letters.back();
    if (last.arrow == l.arrow && last.inverse != l.inverse) return false;
  }
  // trailing run of letters with the same orientation, as an arrow path
  std::vector<int> run;
  for (auto it = w.letters.rbegin(); it != w.letters.rend() && it->inverse == l.inverse; ++it) run.push_back(it->arrow);
  std::vector<int> path;
  if (!l.inverse) {
    path.assign(run.rbegin(), run.rend());
    path.push_back(l.arrow);
    for (const auto& rel : a.relations())
      if (rel.size() <= path.size() && std::equal(rel.rbegin(), rel.rend(), path.rbegin())) return false;
  } else {
    path.push_back(l.arrow);
    path.insert(path.end(), run.begin(), run.end());
    for (const auto& rel : a.relations())
      if (rel.size() <= path.size() && std::equal(rel.begin(), rel.end(), path.begin())) return false;
  }
  return true;
}

}  // namespace

std::vector<StringWord> enumerate_strings(const Algebra& a) {
  std::size_t max_rel = 0;
  for (const auto& r : a.relations()) max_rel = std::max(max_rel, r.size());
  const int state_len = std::max<int>(1, static_cast<int>(max_rel) - 1);
  constexpr std::size_t kMaxStrings = 200000;

  std::vector<StringWord> all;
  std::vector<StringWord> frontier;
  for (int v = 0; v < a.num_vertices(); ++v) frontier.push_back(StringWord{v, {}});
  while (!frontier.empty()) {
    std::vector<StringWord> next;
    for (const auto& w : frontier) {
      all.push_back(w);
      if (all.size() > kMaxStrings) throw GuardExceeded("string enumeration exceeded its budget");
      const int end = walk_vertices(a, w).back();
      for (int arrow = 0; arrow < a.num_arrows(); ++arrow)
        for (bool inv : {false, true}) {
          Letter l{arrow, inv};
          if (!can_append(a, w, end, l)) continue;
          StringWord x = w;
          x.letters.push_back(l);
          const int n = x.length();
          if (n > state_len) {
            auto state_at = [&](int i) {
              return std::vector<Letter>(x.letters.begin() + (i - state_len), x.letters.begin() + i);
            };
            const auto last = state_at(n);
            for (int i = state_len; i < n; ++i)
              if (state_at(i) == last) throw UnsupportedAlgebra("band detected: representation-infinite");
          }
          next.push_back(std::move(x));
        }
    }
    frontier = std::move(next);
  }
  std::vector<StringWord> canon;
  for (const auto& w : all) {
    if (w.letters.empty()) {
      canon.push_back(w);
      continue;
    }
    StringWord inv = inverse_word(a, w);
    if (word_less(a, w, inv)) canon.push_back(w);
  }
  std::stable_sort(canon.begin(), canon.end(), [&](const StringWord& x, const StringWord& y) {
    if (x.length() != y.length()) return x.length() < y.length();
    return word_less(a, x, y);
  });
  return canon;
}

Representation string_module(const AlgebraPtr& alg, const StringWord& w) {
  std::vector<int> vs = walk_vertices(*alg, w);
  Representation m{alg, std::vector<int>(alg->num_vertices(), 0), {}};
  std::vector<int> local(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) local[i] = m.dims[vs[i]]++;
  for (int a = 0; a < alg->num_arrows(); ++a)
    m.maps.emplace_back(m.dims[alg->arrow(a).tgt], m.dims[alg->arrow(a).src], alg->modulus());
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    const Letter& l = w.letters[i];
    if (!l.inverse)
      m.maps[l.arrow].at(local[i + 1], local[i]) = 1;
    else
      m.maps[l.arrow].at(local[i], local[i + 1]) = 1;
  }
  return m;
}

}  // namespace taufold
