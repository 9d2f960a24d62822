#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "common.hpp"
#include "taufold/homalg.hpp"

using namespace taufold;
using taufold::testutil::context;

namespace {

constexpr std::uint32_t kSeed = 20240611;
constexpr int kSamples = 200;

/// Exhaustive masks when the catalog is small, otherwise kSamples random masks from a fixed seed.
std::vector<Mask> masks_for(const Context& ctx) {
  std::vector<Mask> out;
  if (ctx.size() <= 5) {
    for (Mask c = 0; c <= ctx.full(); ++c) out.push_back(c);
    return out;
  }
  std::mt19937_64 rng(kSeed);
  for (int s = 0; s < kSamples; ++s) out.push_back(rng() & ctx.full());
  return out;
}

bool ext1_vanishes(const IndecCatalog& cat, Mask x, const std::vector<int>& mult) {
  for (int i : bits(x))
    for (int k = 0; k < cat.size(); ++k)
      if (mult[k] && cat.ext1_dim(i, k)) return false;
  return true;
}

std::vector<int> kernel_mult(const Context& ctx, const Approximation& a) {
  return ctx.decompose(kernel(a.map, a.object).module);
}

}  // namespace

class Properties : public ::testing::TestWithParam<const char*> {
 protected:
  std::shared_ptr<const Context> ctx = context(GetParam());
  TauTheory tau{ctx};
};

TEST_P(Properties, WakamatsuKernelIsExtOrthogonal) {
  const auto& cat = ctx->cat();
  std::mt19937 rng(kSeed);
  for (Mask c : masks_for(*ctx)) {
    const Mask x = ctx->ext_closure(c).result;
    std::vector<int> targets;
    if (ctx->size() <= 5)
      for (int i = 0; i < cat.size(); ++i) targets.push_back(i);
    else
      targets.push_back(static_cast<int>(rng() % cat.size()));
    for (int i : targets) {
      Approximation a = ctx->approximation(Side::Right, i, x);
      ASSERT_TRUE(is_approximation(a, cat.module(i), cat.addset(bits(x))));
      EXPECT_TRUE(ext1_vanishes(cat, x, kernel_mult(*ctx, a))) << ctx->format(x) << " " << cat.label(i);
    }
  }
}

TEST_P(Properties, TauRigidityByTwoRoutes) {
  for (Mask u : masks_for(*ctx)) EXPECT_EQ(tau.is_tau_rigid(u), tau.is_tau_rigid_by_fac(u)) << ctx->format(u);
  // Indecomposable pairs: Hom(M, tau N) = 0 iff Ext^1(N, Fac M) = 0.
  const auto& cat = ctx->cat();
  for (int m = 0; m < cat.size(); ++m)
    for (int n = 0; n < cat.size(); ++n) {
      const bool hom_zero = cat.tau_of(n) < 0 || cat.hom_dim(m, cat.tau_of(n)) == 0;
      bool ext_zero = true;
      for (int k : bits(ctx->fac(bit(m))))
        if (cat.ext1_dim(n, k)) ext_zero = false;
      EXPECT_EQ(hom_zero, ext_zero) << cat.label(m) << " " << cat.label(n);
    }
}

TEST_P(Properties, KernelOfCok1ApproximationLiesInF2) {
  const auto& cat = ctx->cat();
  for (Mask u : tau.tau_rigid()) {
    const Mask c = tau.cok1(u);
    TwoFoldPair p = tau.two_fold_torsion_pair(u);
    for (int i = 0; i < cat.size(); ++i) {
      Approximation a = ctx->approximation(Side::Right, i, c);
      EXPECT_TRUE(subset_of(support(kernel_mult(*ctx, a)), p.f2)) << ctx->format(u) << " " << cat.label(i);
    }
  }
}

TEST_P(Properties, ClosureOperators) {
  std::vector<std::pair<std::string, std::function<Mask(Mask)>>> ops = {
      {"fac", [&](Mask c) { return ctx->fac(c); }},
      {"sub", [&](Mask c) { return ctx->sub(c); }},
      {"ext", [&](Mask c) { return ctx->ext_closure(c).result; }},
      {"T1", [&](Mask c) { return ctx->torsion_closure(c, 1, SideKind::Tors); }},
      {"F1", [&](Mask c) { return ctx->torsion_closure(c, 1, SideKind::Torf); }},
      {"T2", [&](Mask c) { return ctx->torsion_closure(c, 2, SideKind::Tors); }},
      {"F2", [&](Mask c) { return ctx->torsion_closure(c, 2, SideKind::Torf); }},
      {"KE", [&](Mask c) { return ctx->ke_closure(c, SideKind::Torf).result; }},
      {"CE", [&](Mask c) { return ctx->ke_closure(c, SideKind::Tors).result; }},
  };
  const auto ms = masks_for(*ctx);
  std::mt19937_64 rng(kSeed + 1);
  for (const auto& [name, f] : ops)
    for (std::size_t s = 0; s < ms.size(); ++s) {
      const Mask c = ms[s];
      const Mask fc = f(c);
      EXPECT_TRUE(subset_of(c, fc)) << name << " " << ctx->format(c);
      EXPECT_EQ(f(fc), fc) << name << " " << ctx->format(c);
      // A random superset, or a random partner for exhaustive runs.
      const Mask d = c | (ctx->size() <= 5 ? ms[rng() % ms.size()] : (rng() & ctx->full()));
      EXPECT_TRUE(subset_of(fc, f(d))) << name << " " << ctx->format(c) << " " << ctx->format(d);
    }
}

TEST_P(Properties, WitnessesRevalidate) {
  for (Mask c : masks_for(*ctx)) {
    for (const ClosureReport& r : {ctx->ext_closure(c), ctx->ke_closure(c, SideKind::Torf),
                                   ctx->ke_closure(c, SideKind::Tors)}) {
      EXPECT_EQ(r.input, c);
      Mask seen = c;
      for (const Witness& w : r.witnesses) {
        EXPECT_TRUE(ctx->revalidate(w)) << ctx->describe(w);
        EXPECT_TRUE(has(r.result, w.added));
        seen |= bit(w.added);
      }
      EXPECT_EQ(seen, r.result) << ctx->format(c);
    }
  }
}

TEST_P(Properties, DecomposeRoundTrip) {
  const auto& cat = ctx->cat();
  std::mt19937 rng(kSeed + 2);
  int accepted = 0;
  while (accepted < kSamples) {
    std::vector<int> mult(cat.size(), 0);
    int total = 0;
    for (int i = 0; i < cat.size(); ++i) {
      mult[i] = static_cast<int>(rng() % 3) * (rng() % 2);
      total += mult[i];
    }
    if (total > 5) continue;
    ++accepted;
    Representation m = ctx->assemble(mult);
    EXPECT_EQ(ctx->decompose(m), mult);
  }
}

INSTANTIATE_TEST_SUITE_P(Algebras, Properties, ::testing::Values("ex73", "nak_4", "a4"));
