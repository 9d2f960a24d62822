#pragma once

#include <string>
#include <vector>

#include "taufold/quiver.hpp"
#include "taufold/rep.hpp"

namespace taufold {

struct Letter {
  int arrow = 0;
  bool inverse = false;

  bool operator==(const Letter& o) const { return arrow == o.arrow && inverse == o.inverse; }
};

/// A walk v_0 - l_1 - v_1 - ... - l_n - v_n. Direct letter a joins src(a) to tgt(a); inverse joins tgt(a) to src(a).
struct StringWord {
  int start = 0;
  std::vector<Letter> letters;

  int length() const { return static_cast<int>(letters.size()); }
  bool operator==(const StringWord& o) const { return start == o.start && letters == o.letters; }
};

/// Vertex sequence v_0 .. v_n of the walk.
std::vector<int> walk_vertices(const Algebra& a, const StringWord& w);
StringWord inverse_word(const Algebra& a, const StringWord& w);
/// Token order on words: trivial words by vertex order first, then by (arrow name, inverse flag) sequences.
bool word_less(const Algebra& a, const StringWord& x, const StringWord& y);
std::string word_name(const Algebra& a, const StringWord& w);

/// All strings up to inversion, canonical representatives, sorted by word_less.
/// Throws UnsupportedAlgebra when the string set is infinite (a band exists).
std::vector<StringWord> enumerate_strings(const Algebra& a);

Representation string_module(const AlgebraPtr& alg, const StringWord& w);

}  // namespace taufold
