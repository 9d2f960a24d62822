#include "taufold/quiver.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace taufold {

ParseError::ParseError(const std::string& msg, int line, int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg
                                  : msg),
      line_(line),
      column_(column) {}

std::optional<int> Quiver::vertex_index(std::string_view id) const {
  for (int i = 0; i < num_vertices(); ++i)
    if (vertices[i] == id) return i;
  return std::nullopt;
}

std::optional<int> Quiver::arrow_index(std::string_view name) const {
  for (int i = 0; i < num_arrows(); ++i)
    if (arrows[i].name == name) return i;
  return std::nullopt;
}

Algebra::Algebra(Quiver q, std::vector<std::vector<int>> relations, Scalar p)
    : quiver_(std::move(q)), relations_(std::move(relations)), p_(p) {
  Field check(p);
  (void)check;
  for (const auto& r : relations_) {
    if (r.size() < 2) throw ParseError("relation must have length at least 2", 0, 0);
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
      if (quiver_.arrows[r[i]].tgt != quiver_.arrows[r[i + 1]].src)
        throw ParseError("relation is not a composable path", 0, 0);
  }
  build_basis();
}

bool Algebra::is_zero_word(const std::vector<int>& arrows) const {
  for (const auto& rel : relations_) {
    if (rel.size() > arrows.size()) continue;
    for (std::size_t s = 0; s + rel.size() <= arrows.size(); ++s)
      if (std::equal(rel.begin(), rel.end(), arrows.begin() + static_cast<std::ptrdiff_t>(s))) return true;
  }
  return false;
}

namespace {

bool ends_with_relation(const std::vector<std::vector<int>>& rels, const std::vector<int>& w) {
  for (const auto& rel : rels) {
    if (rel.size() > w.size()) continue;
    if (std::equal(rel.begin(), rel.end(), w.end() - static_cast<std::ptrdiff_t>(rel.size()))) return true;
  }
  return false;
}

}  // namespace

void Algebra::build_basis() {
  const int n = num_vertices();
  std::vector<Path> level;
  for (int v = 0; v < n; ++v) basis_.push_back(Path{v, v, {}});
  for (int a = 0; a < num_arrows(); ++a) level.push_back(Path{arrow(a).src, arrow(a).tgt, {a}});
  auto name_less = [this](const Path& x, const Path& y) {
    for (std::size_t i = 0; i < x.arrows.size() && i < y.arrows.size(); ++i) {
      const std::string& nx = arrow(x.arrows[i]).name;
      const std::string& ny = arrow(y.arrows[i]).name;
      if (nx != ny) return nx < ny;
    }
    return x.arrows.size() < y.arrows.size();
  };
  int length = 1;
  while (!level.empty()) {
    if (length > kPathLengthBound)
      throw ParseError("non-admissible ideal: nonzero paths longer than " + std::to_string(kPathLengthBound), 0, 0);
    std::sort(level.begin(), level.end(), name_less);
    for (const auto& p : level) basis_.push_back(p);
    std::vector<Path> next;
    for (const auto& p : level) {
      for (int a = 0; a < num_arrows(); ++a) {
        if (arrow(a).src != p.tgt) continue;
        Path q = p;
        q.arrows.push_back(a);
        q.tgt = arrow(a).tgt;
        if (ends_with_relation(relations_, q.arrows)) continue;
        next.push_back(std::move(q));
      }
    }
    level = std::move(next);
    ++length;
  }
  between_.assign(n, std::vector<std::vector<int>>(n));
  from_.assign(n, {});
  trivial_.assign(n, -1);
  for (int i = 0; i < dim(); ++i) {
    const Path& p = basis_[i];
    index_[{p.src, p.arrows}] = i;
    between_[p.src][p.tgt].push_back(i);
    from_[p.src].push_back(i);
    if (p.arrows.empty()) trivial_[p.src] = i;
  }
}

std::optional<int> Algebra::basis_index(const Path& path) const {
  auto it = index_.find({path.src, path.arrows});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Algebra::multiply(int x, int y) const {
  const Path& a = basis_[x];
  const Path& b = basis_[y];
  if (a.tgt != b.src) return std::nullopt;
  if (a.arrows.empty()) return y;
  if (b.arrows.empty()) return x;
  std::vector<int> w = a.arrows;
  w.insert(w.end(), b.arrows.begin(), b.arrows.end());
  if (is_zero_word(w)) return std::nullopt;
  return basis_index(Path{a.src, b.tgt, w});
}

const std::vector<int>& Algebra::paths_between(int v, int w) const { return between_[v][w]; }
const std::vector<int>& Algebra::paths_from(int v) const { return from_[v]; }

std::string Algebra::path_name(const Path& path) const {
  if (path.arrows.empty()) return "e" + quiver_.vertices[path.src];
  std::string s;
  for (std::size_t i = 0; i < path.arrows.size(); ++i) {
    if (i) s += "*";
    s += arrow(path.arrows[i]).name;
  }
  return s;
}

std::string Algebra::path_name(int basis_idx) const { return path_name(basis_[basis_idx]); }

AlgebraPtr Algebra::op() const {
  std::lock_guard<std::mutex> lock(op_mutex_);
  if (auto o = op_weak_.lock()) return o;
  auto fresh = std::const_pointer_cast<Algebra>(opposite(*this));
  {
    std::lock_guard<std::mutex> lock2(fresh->op_mutex_);
    fresh->op_weak_ = weak_from_this();
    if (fresh->op_weak_.expired()) fresh->op_strong_ = std::make_shared<Algebra>(quiver_, relations_, p_);
  }
  op_strong_ = fresh;
  op_weak_ = fresh;
  return fresh;
}

bool Algebra::same_structure(const Algebra& o) const {
  if (p_ != o.p_ || quiver_.vertices != o.quiver_.vertices || relations_ != o.relations_) return false;
  if (quiver_.arrows.size() != o.quiver_.arrows.size()) return false;
  for (std::size_t i = 0; i < quiver_.arrows.size(); ++i) {
    const Arrow& x = quiver_.arrows[i];
    const Arrow& y = o.quiver_.arrows[i];
    if (x.name != y.name || x.src != y.src || x.tgt != y.tgt) return false;
  }
  return true;
}

AlgebraPtr make_algebra(Quiver q, std::vector<std::vector<int>> relations, Scalar p) {
  return std::make_shared<Algebra>(std::move(q), std::move(relations), p);
}

AlgebraPtr opposite(const Algebra& a) {
  Quiver q = a.quiver();
  for (auto& ar : q.arrows) std::swap(ar.src, ar.tgt);
  std::vector<std::vector<int>> rels = a.relations();
  for (auto& r : rels) std::reverse(r.begin(), r.end());
  return make_algebra(std::move(q), std::move(rels), a.modulus());
}

namespace {

struct LineScanner {
  std::string_view s;
  std::size_t pos = 0;
  int line = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  int column() const { return static_cast<int>(pos) + 1; }
  bool at_end() {
    skip_ws();
    return pos >= s.size();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, column()); }

  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string word(const char* what) {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && ident_char(s[pos])) ++pos;
    if (pos == start) fail(std::string("expected ") + what);
    return std::string(s.substr(start, pos - start));
  }
  void expect(std::string_view tok) {
    skip_ws();
    if (s.substr(pos, tok.size()) != tok) fail("expected '" + std::string(tok) + "'");
    pos += tok.size();
  }
  bool accept(std::string_view tok) {
    skip_ws();
    if (s.substr(pos, tok.size()) == tok) {
      pos += tok.size();
      return true;
    }
    return false;
  }
};

}  // namespace

AlgebraPtr parse_algebra(std::string_view text) {
  Quiver q;
  std::vector<std::vector<int>> rels;
  Scalar p = 2;
  bool field_seen = false;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++line_no;
    std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    LineScanner sc{raw, 0, line_no};
    if (!sc.at_end()) {
      int kw_col = sc.column();
      std::string kw = sc.word("keyword");
      if (kw == "field") {
        if (field_seen) throw ParseError("duplicate field declaration", line_no, kw_col);
        int num_col = (sc.skip_ws(), sc.column());
        std::string num = sc.word("prime modulus");
        if (!std::all_of(num.begin(), num.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
          throw ParseError("field modulus must be a number", line_no, num_col);
        unsigned long val = 0;
        try {
          val = std::stoul(num);
        } catch (...) {
          throw ParseError("field modulus out of range", line_no, num_col);
        }
        if (val > 65521 || !is_prime(static_cast<Scalar>(val)))
          throw ParseError("field modulus must be a prime below 65536", line_no, num_col);
        p = static_cast<Scalar>(val);
        field_seen = true;
      } else if (kw == "vertex") {
        int col = (sc.skip_ws(), sc.column());
        std::string id = sc.word("vertex id");
        if (q.vertex_index(id)) throw ParseError("duplicate vertex '" + id + "'", line_no, col);
        q.vertices.push_back(id);
      } else if (kw == "arrow") {
        int col = (sc.skip_ws(), sc.column());
        std::string name = sc.word("arrow name");
        if (q.arrow_index(name)) throw ParseError("duplicate arrow '" + name + "'", line_no, col);
        sc.expect(":");
        int scol = (sc.skip_ws(), sc.column());
        std::string src = sc.word("source vertex");
        sc.expect("->");
        int tcol = (sc.skip_ws(), sc.column());
        std::string tgt = sc.word("target vertex");
        auto si = q.vertex_index(src);
        if (!si) throw ParseError("unknown vertex '" + src + "'", line_no, scol);
        auto ti = q.vertex_index(tgt);
        if (!ti) throw ParseError("unknown vertex '" + tgt + "'", line_no, tcol);
        q.arrows.push_back(Arrow{name, *si, *ti});
      } else if (kw == "relation") {
        std::vector<int> rel;
        do {
          int col = (sc.skip_ws(), sc.column());
          std::string name = sc.word("arrow name");
          auto ai = q.arrow_index(name);
          if (!ai) throw ParseError("unknown arrow '" + name + "'", line_no, col);
          if (!rel.empty() && q.arrows[rel.back()].tgt != q.arrows[*ai].src)
            throw ParseError("non-composable relation: '" + q.arrows[rel.back()].name + "' does not end where '" + name +
                                 "' starts",
                             line_no, col);
          rel.push_back(*ai);
        } while (sc.accept("*"));
        if (rel.size() < 2) throw ParseError("relation must have length at least 2", line_no, kw_col);
        rels.push_back(std::move(rel));
      } else {
        throw ParseError("unknown keyword '" + kw + "'", line_no, kw_col);
      }
      if (!sc.at_end()) sc.fail("unexpected trailing input");
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return make_algebra(std::move(q), std::move(rels), p);
}

AlgebraPtr load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read algebra file '" + path + "'", 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_algebra(ss.str());
}

std::string serialize_algebra(const Algebra& a) {
  std::ostringstream os;
  os << "field " << a.modulus() << "\n";
  for (const auto& v : a.quiver().vertices) os << "vertex " << v << "\n";
  for (const auto& ar : a.quiver().arrows)
    os << "arrow " << ar.name << " : " << a.quiver().vertices[ar.src] << " -> " << a.quiver().vertices[ar.tgt] << "\n";
  for (const auto& r : a.relations()) {
    os << "relation ";
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "*" : "") << a.arrow(r[i]).name;
    os << "\n";
  }
  return os.str();
}

StringAlgebraCertificate validate_string_algebra(const Algebra& a) {
  StringAlgebraCertificate cert;
  const Quiver& q = a.quiver();
  std::vector<int> in(q.num_vertices(), 0), out(q.num_vertices(), 0);
  for (const auto& ar : q.arrows) {
    ++out[ar.src];
    ++in[ar.tgt];
  }
  for (int v = 0; v < q.num_vertices(); ++v) {
    if (in[v] > 2)
      throw UnsupportedAlgebra("not a string algebra: more than two arrows end at vertex " + q.vertices[v]);
    if (out[v] > 2)
      throw UnsupportedAlgebra("not a string algebra: more than two arrows start at vertex " + q.vertices[v]);
    cert.max_in_degree = std::max(cert.max_in_degree, in[v]);
    cert.max_out_degree = std::max(cert.max_out_degree, out[v]);
  }
  for (int x = 0; x < q.num_arrows(); ++x) {
    int after = 0, before = 0;
    for (int y = 0; y < q.num_arrows(); ++y) {
      if (q.arrows[x].tgt == q.arrows[y].src && !a.is_zero_word({x, y})) ++after;
      if (q.arrows[y].tgt == q.arrows[x].src && !a.is_zero_word({y, x})) ++before;
    }
    if (after > 1)
      throw UnsupportedAlgebra("not a string algebra: more than one arrow b with " + q.arrows[x].name +
                               "*b nonzero");
    if (before > 1)
      throw UnsupportedAlgebra("not a string algebra: more than one arrow c with c*" + q.arrows[x].name +
                               " nonzero");
  }
  for (const auto& r : a.relations()) cert.max_relation_length = std::max<int>(cert.max_relation_length, r.size());
  return cert;
}

}  // namespace taufold
