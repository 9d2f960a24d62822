#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "taufold/exactmat.hpp"

namespace taufold {

/// Thrown for malformed algebra files (line/column are 1-based; 0 when not applicable).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Input that parses but lies outside the supported algebra class.
class UnsupportedAlgebra : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Arrow {
  std::string name;
  int src = 0;
  int tgt = 0;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_arrows() const { return static_cast<int>(arrows.size()); }
  std::optional<int> vertex_index(std::string_view id) const;
  std::optional<int> arrow_index(std::string_view name) const;
};

/// A residue path: trivial when `arrows` is empty (then src == tgt).
struct Path {
  int src = 0;
  int tgt = 0;
  std::vector<int> arrows;

  int length() const { return static_cast<int>(arrows.size()); }
  bool operator==(const Path& o) const { return src == o.src && tgt == o.tgt && arrows == o.arrows; }
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Bound quiver algebra KQ/I with I generated by monomial relations.
class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  static constexpr int kPathLengthBound = 64;

  Algebra(Quiver q, std::vector<std::vector<int>> relations, Scalar p);

  const Quiver& quiver() const { return quiver_; }
  const std::vector<std::vector<int>>& relations() const { return relations_; }
  Scalar modulus() const { return p_; }
  int num_vertices() const { return quiver_.num_vertices(); }
  int num_arrows() const { return quiver_.num_arrows(); }
  const Arrow& arrow(int i) const { return quiver_.arrows[i]; }

  const std::vector<Path>& path_basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.size()); }

  /// True when the arrow sequence contains a relation as a contiguous subpath.
  bool is_zero_word(const std::vector<int>& arrows) const;
  std::optional<int> basis_index(const Path& path) const;
  /// Product of basis paths (first x, then y); nullopt when zero or not composable.
  std::optional<int> multiply(int x, int y) const;
  /// Basis indices of paths from v to w, in basis order.
  const std::vector<int>& paths_between(int v, int w) const;
  /// Basis indices of paths starting at v, in basis order.
  const std::vector<int>& paths_from(int v) const;
  int trivial_path(int v) const { return trivial_[v]; }

  std::string path_name(int basis_idx) const;
  std::string path_name(const Path& path) const;

  /// Cached opposite algebra; its opposite is this object.
  AlgebraPtr op() const;
  bool same_structure(const Algebra& o) const;

 private:
  void build_basis();

  Quiver quiver_;
  std::vector<std::vector<int>> relations_;
  Scalar p_;
  std::vector<Path> basis_;
  std::map<std::pair<int, std::vector<int>>, int> index_;
  std::vector<std::vector<std::vector<int>>> between_;
  std::vector<std::vector<int>> from_;
  std::vector<int> trivial_;

  mutable std::mutex op_mutex_;
  mutable std::shared_ptr<const Algebra> op_strong_;
  mutable std::weak_ptr<const Algebra> op_weak_;
};

AlgebraPtr parse_algebra(std::string_view text);
AlgebraPtr load_algebra(const std::string& path);
std::string serialize_algebra(const Algebra& a);
AlgebraPtr opposite(const Algebra& a);
AlgebraPtr make_algebra(Quiver q, std::vector<std::vector<int>> relations, Scalar p);

struct StringAlgebraCertificate {
  int max_in_degree = 0;
  int max_out_degree = 0;
  int max_relation_length = 0;
};

/// Throws UnsupportedAlgebra naming the violated condition.
StringAlgebraCertificate validate_string_algebra(const Algebra& a);

}  // namespace taufold
