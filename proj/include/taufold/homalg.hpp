#pragma once

#include <optional>
#include <vector>

#include "taufold/rep.hpp"

namespace taufold {

/// Basis of Hom(source, target); basis elements are canonical (kernel of the intertwiner system).
struct HomSpace {
  Representation source;
  Representation target;
  std::vector<Morphism> basis;

  int dim() const { return static_cast<int>(basis.size()); }
};

HomSpace hom_basis(const Representation& m, const Representation& n);
int hom_dim(const Representation& m, const Representation& n);
Morphism combine(const HomSpace& h, const std::vector<Scalar>& coeff);
/// Rows are flattened morphisms.
Matrix flattened(const std::vector<Morphism>& maps, int width, Scalar p);
int flat_width(const Representation& src, const Representation& tgt);
Morphism unflatten(const std::vector<Scalar>& flat, const Representation& src, const Representation& tgt);

/// Direct sum of indecomposable projectives P_{vertices[0]} + P_{vertices[1]} + ...
struct ProjectiveSum {
  std::vector<int> vertices;
  Representation module;
};
ProjectiveSum projective_sum(const AlgebraPtr& alg, const std::vector<int>& vertices);

/// Morphism between projective sums. entries[j][i] are coefficients over paths_between(tgt[j], src[i]).
Morphism projective_map(const AlgebraPtr& alg, const std::vector<int>& src, const std::vector<int>& tgt,
                        const std::vector<std::vector<std::vector<Scalar>>>& entries);
/// Inverse of projective_map: read the path coefficients of f back.
std::vector<std::vector<std::vector<Scalar>>> projective_entries(const AlgebraPtr& alg, const std::vector<int>& src,
                                                                 const std::vector<int>& tgt, const Morphism& f);

struct ProjectiveCover {
  ProjectiveSum cover;
  Morphism epsilon;
};
ProjectiveCover projective_cover(const Representation& m);

/// Minimal presentation P1 --d--> P0 --epsilon--> M --> 0.
struct Presentation {
  ProjectiveSum p0;
  ProjectiveSum p1;
  Morphism d;
  Morphism epsilon;
  SubmoduleRep syzygy;
};
Presentation min_proj_presentation(const Representation& m);
Representation syzygy(const Representation& m, int k = 1);

/// Ext^j(M, N) for j >= 1 by dimension shifting.
int ext_dim(const Representation& m, const Representation& n, int j = 1);

/// Extensions 0 -> sub -> E -> quot -> 0 as cocycles C_a : quot_src -> sub_tgt modulo coboundaries.
struct ExtensionSpace {
  Representation sub;
  Representation quot;
  /// Basis of a complement of the coboundaries inside the cocycles; one matrix per arrow.
  std::vector<std::vector<Matrix>> classes;

  int dim() const { return static_cast<int>(classes.size()); }
};
ExtensionSpace extension_space(const Representation& sub, const Representation& quot);
std::vector<Matrix> combine_cocycles(const ExtensionSpace& ext, const std::vector<Scalar>& coeff);
Representation middle_term(const Representation& sub, const Representation& quot, const std::vector<Matrix>& cocycle);

/// Auslander-Reiten translate D Tr.
Representation tau(const Representation& m);
/// Tr M as a module over the opposite algebra.
Representation transpose(const Representation& m);

Submodule trace(const std::vector<Representation>& us, const Representation& m);
Submodule reject(const std::vector<Representation>& us, const Representation& m);

/// Scalar lambda with e - lambda*1 nilpotent; throws std::invalid_argument when End(x) is not split local.
Scalar residue_scalar(const Representation& x, const Morphism& e);

/// Finite list of pairwise non-isomorphic indecomposables with local split endomorphism rings, plus radical morphism bases.
struct AddSet {
  std::vector<Representation> mods;
  /// rad[i][j] spans rad(U_i, U_j).
  std::vector<std::vector<std::vector<Morphism>>> rad;

  int size() const { return static_cast<int>(mods.size()); }
};
AddSet make_addset(const std::vector<Representation>& mods);
/// Radical basis for End(x) given a basis of End(x).
std::vector<Morphism> radical_endomorphisms(const Representation& x, const std::vector<Morphism>& end_basis);

enum class Side { Left, Right };

/// Right: object --map--> m. Left: m --map--> object. parts lists addset indices of the summands in order.
struct Approximation {
  Side side = Side::Right;
  std::vector<int> parts;
  /// Component of the map on each part.
  std::vector<Morphism> comps;
  Representation object;
  Morphism map;
};

Approximation minimal_approximation(Side side, const Representation& m, const AddSet& add);
Approximation universal_approximation(Side side, const Representation& m, const AddSet& add);
bool is_approximation(const Approximation& a, const Representation& m, const AddSet& add);
/// Removes summands while the approximation property survives, to a fixpoint.
Approximation strip_to_fixpoint(const Approximation& a, const Representation& m, const AddSet& add);
/// Number of summands of each addset member in the approximating object.
std::vector<int> part_counts(const Approximation& a, int addset_size);
/// Reassembles object and map from parts and comps.
Approximation assemble_approximation(Side side, std::vector<int> parts, std::vector<Morphism> comps,
                                     const Representation& m, const AddSet& add);

/// Smallest d with the d-th add(resolving) syzygy in add(resolving); nullopt when the guard is hit.
std::optional<int> resolution_dimension(const Representation& m, const AddSet& resolving);
/// nullopt when infinite (guard exceeded).
std::optional<int> global_dim(const AlgebraPtr& alg);

/// h with h o f = g (f: A -> B, g: A -> C, h: B -> C).
std::optional<Morphism> factor_through_source(const Morphism& g, const Morphism& f, const Representation& b,
                                              const Representation& c);
/// h with f o h = g (f: B -> C, g: A -> C, h: A -> B).
std::optional<Morphism> factor_through_target(const Morphism& g, const Morphism& f, const Representation& a,
                                              const Representation& b);

struct Pushout {
  Representation object;
  Morphism from_b;
  Morphism from_c;
};
/// Pushout of b <-f- a -g-> c.
Pushout pushout(const Morphism& f, const Morphism& g, const Representation& a, const Representation& b,
                const Representation& c);

}  // namespace taufold
