#include <gtest/gtest.h>

#include "common.hpp"
#include "taufold/strings.hpp"

using namespace taufold;
using taufold::testutil::algebra;

TEST(Parse, PathBasisDimensions) {
  EXPECT_EQ(algebra("ex73")->dim(), 5);
  EXPECT_EQ(algebra("a2")->dim(), 3);
  EXPECT_EQ(algebra("point")->dim(), 1);
  // nak_m: m trivial paths and m - 1 arrows.
  EXPECT_EQ(algebra("nak_4")->dim(), 7);
  // linear A4: 4 + 3 + 2 + 1 paths.
  EXPECT_EQ(algebra("a4")->dim(), 10);
}

TEST(Parse, UnknownArrowInRelation) {
  try {
    parse_algebra("vertex 1\nvertex 2\narrow b : 2 -> 1\nrelation b*c\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("unknown arrow"), std::string::npos);
    EXPECT_EQ(e.line(), 4);
  }
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_algebra("vertex 1\nvertex 1\n"), ParseError);
  EXPECT_THROW(parse_algebra("vertex 1\narrow a : 1 -> 2\n"), ParseError);
  EXPECT_THROW(parse_algebra("field 4\nvertex 1\n"), ParseError);
  EXPECT_THROW(parse_algebra("vertex 1\nbogus\n"), ParseError);
  // b then a is not composable: b ends at 1, a starts at 3.
  EXPECT_THROW(parse_algebra("vertex 1\nvertex 2\nvertex 3\narrow a : 3 -> 2\narrow b : 2 -> 1\nrelation b*a\n"),
               ParseError);
  // A loop without relations generates infinitely many paths.
  EXPECT_THROW(parse_algebra("vertex 1\narrow x : 1 -> 1\n"), ParseError);
}

TEST(Parse, FieldAndComments) {
  AlgebraPtr a = parse_algebra("# comment\nfield 3\nvertex 1  # trailing\nvertex 2\narrow b : 2 -> 1\n");
  EXPECT_EQ(a->modulus(), 3u);
  EXPECT_EQ(a->dim(), 3);
}

TEST(Parse, SerializeRoundTrip) {
  for (const char* name : {"ex73", "a2", "a4", "nak_5", "point"}) {
    AlgebraPtr a = algebra(name);
    AlgebraPtr b = parse_algebra(serialize_algebra(*a));
    EXPECT_TRUE(a->same_structure(*b)) << name;
  }
}

TEST(Opposite, ReversesArrowsAndRelations) {
  AlgebraPtr a = algebra("ex73");
  AlgebraPtr o = opposite(*a);
  const auto& q = o->quiver();
  const int ia = *q.arrow_index("a"), ib = *q.arrow_index("b");
  EXPECT_EQ(q.vertices[q.arrows[ia].src], "2");
  EXPECT_EQ(q.vertices[q.arrows[ia].tgt], "3");
  EXPECT_EQ(q.vertices[q.arrows[ib].src], "1");
  EXPECT_EQ(q.vertices[q.arrows[ib].tgt], "2");
  ASSERT_EQ(o->relations().size(), 1u);
  EXPECT_EQ(o->relations()[0], (std::vector<int>{ib, ia}));
  EXPECT_EQ(o->dim(), a->dim());
  EXPECT_TRUE(opposite(*o)->same_structure(*a));
  AlgebraPtr p = algebra("point");
  EXPECT_TRUE(opposite(*p)->same_structure(*p));
}

TEST(StringCertificate, AcceptsAndRejects) {
  EXPECT_NO_THROW(validate_string_algebra(*algebra("ex73")));
  EXPECT_NO_THROW(validate_string_algebra(*algebra("nak_4")));
  AlgebraPtr fan = parse_algebra(
      "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a : 1 -> 2\narrow b : 1 -> 3\narrow c : 1 -> 4\n");
  EXPECT_THROW(validate_string_algebra(*fan), UnsupportedAlgebra);
  // Two arrows continue b without a relation.
  AlgebraPtr fork = parse_algebra(
      "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow b : 1 -> 2\narrow c : 2 -> 3\narrow d : 2 -> 4\n");
  EXPECT_THROW(validate_string_algebra(*fork), UnsupportedAlgebra);
}

TEST(Strings, Enumeration) {
  AlgebraPtr a = algebra("ex73");
  std::vector<std::string> names;
  for (const auto& w : enumerate_strings(*a)) names.push_back(word_name(*a, w));
  EXPECT_EQ(names.size(), 5u);
  EXPECT_EQ(enumerate_strings(*algebra("a2")).size(), 3u);
  EXPECT_THROW(enumerate_strings(*algebra("kronecker")), UnsupportedAlgebra);
  try {
    enumerate_strings(*algebra("kronecker"));
  } catch (const UnsupportedAlgebra& e) {
    EXPECT_NE(std::string(e.what()).find("band detected"), std::string::npos);
  }
}

TEST(Strings, ModulesOfLetters) {
  AlgebraPtr a = algebra("ex73");
  for (const auto& w : enumerate_strings(*a)) {
    Representation m = string_module(a, w);
    EXPECT_NO_THROW(m.validate());
    if (w.length() == 1 && a->arrow(w.letters[0].arrow).name == "b") {
      EXPECT_EQ(m.dims, (std::vector<int>{1, 1, 0}));
      EXPECT_TRUE(is_isomorphic(m, projective_module(a, 1)));
    }
    if (w.length() == 1 && a->arrow(w.letters[0].arrow).name == "a") {
      EXPECT_EQ(m.dims, (std::vector<int>{0, 1, 1}));
      EXPECT_TRUE(is_isomorphic(m, projective_module(a, 2)));
    }
    if (w.length() == 0) EXPECT_TRUE(is_isomorphic(m, simple_module(a, w.start)));
  }
}
