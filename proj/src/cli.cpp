#include "taufold/cli.hpp"

#include <algorithm>
#include <bit>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "taufold/taufold.hpp"

namespace taufold {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json subcat_json(Mask m) {
  Json j;
  j["bitset"] = m;
  j["indices"] = bits(m);
  return j;
}

Json mult_json(const std::vector<int>& mult) {
  Json j = Json::array();
  for (std::size_t i = 0; i < mult.size(); ++i)
    if (mult[i]) j.push_back({{"index", i}, {"multiplicity", mult[i]}});
  return j;
}

std::vector<int> mult_of(Mask m, int n) {
  std::vector<int> v(n, 0);
  for (int i : bits(m)) v[i] = 1;
  return v;
}

/// Aligned text table; the last column is not padded.
std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (width.size() <= c) width.push_back(0);
      width[c] = std::max(width[c], r[c].size());
    }
  std::string s;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      line += r[c];
      if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
    }
    line.erase(line.find_last_not_of(' ') + 1);
    s += line + "\n";
  }
  return s;
}

std::string side_name(SideKind s) { return s == SideKind::Tors ? "tors" : "torf"; }

std::string bound_note(bool bounded, int mu) { return bounded ? " (bound μ=" + std::to_string(mu) + ")" : ""; }

void check_budget(const Context& ctx, int free_bits, std::uint64_t budget) {
  if (free_bits >= 63 || (std::uint64_t{1} << free_bits) > budget)
    throw GuardExceeded("subset budget exceeded: 2^" + std::to_string(free_bits) + " bitsets over a catalog of " +
                        std::to_string(ctx.size()));
}

std::string dot_hasse(const Context& ctx, const std::vector<Mask>& members, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=BT;\n";
  for (Mask m : members) os << "  \"" << ctx.format(m) << "\";\n";
  for (auto [a, b] : TauTheory::hasse(members))
    os << "  \"" << ctx.format(members[a]) << "\" -> \"" << ctx.format(members[b]) << "\";\n";
  os << "}\n";
  return os.str();
}

struct Output {
  Json result = Json::object();
  std::string text;
  std::string dot;
  int code = exit_code::ok;
};

class Runner {
 public:
  Runner(const RunConfig& cfg, AlgebraPtr alg)
      : cfg_(cfg),
        alg_(std::move(alg)),
        ctx_(std::make_shared<Context>(build_catalog(alg_), cfg.mu)),
        tau_(ctx_),
        n_(ctx_->size()) {}

  const Context& ctx() const { return *ctx_; }

  Output dispatch() {
    const std::string& c = cfg_.command;
    if (c == "indecs") return indecs();
    if (c == "tau-rigid") return tau_rigid();
    if (c == "stautilt") return stautilt();
    if (c == "tors") return tors();
    if (c == "cok") return cok();
    if (c == "star") return star();
    if (c == "bijection") return bijection();
    if (c == "pair") return pair();
    if (c == "closure") return closure();
    if (c == "table1") return table1();
    throw UsageError("unknown command '" + c + "'");
  }

 private:
  std::string obj(Mask m) const { return ctx_->format_object(mult_of(m, n_)); }

  Output indecs() {
    const auto& cat = ctx_->cat();
    Output o;
    std::vector<std::vector<std::string>> rows{{"idx", "label", "dims", "tau", "kind"}};
    Json mods = Json::array();
    for (int i : ctx_->display_order()) {
      const Representation& m = cat.module(i);
      std::string dims, kind;
      for (int d : m.dims) dims += (dims.empty() ? "" : " ") + std::to_string(d);
      if (cat.is_projective(i)) kind += "proj ";
      if (cat.is_injective(i)) kind += "inj ";
      for (int v = 0; v < alg_->num_vertices(); ++v)
        if (cat.simple(v) == i) kind += "simple ";
      rows.push_back({std::to_string(i), cat.label(i), dims, cat.tau_of(i) < 0 ? "-" : cat.label(cat.tau_of(i)), kind});
    }
    for (int i = 0; i < n_; ++i) {
      const Representation& m = cat.module(i);
      Json maps = Json::array();
      for (int a = 0; a < alg_->num_arrows(); ++a)
        maps.push_back({{"arrow", alg_->arrow(a).name},
                        {"rows", m.maps[a].rows()},
                        {"cols", m.maps[a].cols()},
                        {"data", m.maps[a].data()}});
      mods.push_back({{"index", i},
                      {"label", cat.label(i)},
                      {"dims", m.dims},
                      {"maps", maps},
                      {"tau", cat.tau_of(i)},
                      {"projective", cat.is_projective(i)},
                      {"injective", cat.is_injective(i)}});
    }
    Json hom = Json::array(), ext = Json::array();
    for (int i = 0; i < n_; ++i) {
      Json hr = Json::array(), er = Json::array();
      for (int j = 0; j < n_; ++j) {
        hr.push_back(cat.hom_dim(i, j));
        er.push_back(cat.ext1_dim(i, j));
      }
      hom.push_back(hr);
      ext.push_back(er);
    }
    o.result["count"] = n_;
    o.result["modules"] = mods;
    o.result["hom_dims"] = hom;
    o.result["ext1_dims"] = ext;
    o.text = std::to_string(n_) + " indecomposable modules\n" + table(rows);
    return o;
  }

  Output tau_rigid() {
    Output o;
    const auto list = tau_.tau_rigid();
    std::vector<std::vector<std::string>> rows{{"U", "support tau-tilting", "Fac U"}};
    Json j = Json::array();
    for (Mask u : list) {
      const bool st = tau_.is_support_tau_tilting(u);
      rows.push_back({obj(u), st ? "yes" : "no", ctx_->format(tau_.fac(u))});
      j.push_back({{"module", subcat_json(u)}, {"support_tau_tilting", st}, {"fac", subcat_json(tau_.fac(u))}});
    }
    o.result["count"] = list.size();
    o.result["modules"] = j;
    o.text = std::to_string(list.size()) + " basic tau-rigid modules\n" + table(rows);
    return o;
  }

  Output stautilt() {
    Output o;
    const auto list = tau_.support_tau_tilting();
    const auto lattice = tau_.torsion_lattice();
    std::vector<std::vector<std::string>> rows{{"T", "Fac T"}};
    Json j = Json::array();
    for (Mask u : list) {
      rows.push_back({obj(u), ctx_->format(tau_.fac(u))});
      j.push_back({{"module", subcat_json(u)}, {"fac", subcat_json(tau_.fac(u))}});
    }
    Json edges = Json::array();
    for (auto [a, b] : TauTheory::hasse(lattice)) edges.push_back({subcat_json(lattice[a]), subcat_json(lattice[b])});
    o.result["count"] = list.size();
    o.result["modules"] = j;
    o.result["hasse"] = edges;
    o.text = std::to_string(list.size()) + " support tau-tilting modules\n" + table(rows);
    o.dot = dot_hasse(*ctx_, lattice, "torsion_lattice");
    return o;
  }

  Output tors() {
    Output o;
    check_budget(*ctx_, n_, cfg_.subset_budget);
    const auto list = ctx_->enumerate_nfold(cfg_.fold, cfg_.side);
    const std::string noun = std::to_string(cfg_.fold) + "-fold " +
                             (cfg_.side == SideKind::Tors ? "torsion classes" : "torsion-free classes");
    Json j = Json::array();
    o.text = std::to_string(list.size()) + " " + noun + "\n";
    for (Mask m : list) {
      o.text += "  " + ctx_->format(m) + "\n";
      j.push_back(subcat_json(m));
    }
    o.result["fold"] = cfg_.fold;
    o.result["side"] = side_name(cfg_.side);
    o.result["count"] = list.size();
    o.result["classes"] = j;
    o.dot = dot_hasse(*ctx_, list, cfg_.side == SideKind::Tors ? "tors" : "torf");
    return o;
  }

  Output cok() {
    Output o;
    const Mask u = ctx_->parse(cfg_.u);
    const NCokResult r = ctx_->cok_or_ker_n(u, cfg_.n, cfg_.side);
    const std::string op = (cfg_.side == SideKind::Tors ? "cok_" : "ker_") + std::to_string(cfg_.n);
    o.text = op + "(" + obj(u) + ") = " + ctx_->format(r.result) + bound_note(!r.exact, cfg_.mu) + "\n";
    o.result["n"] = cfg_.n;
    o.result["side"] = side_name(cfg_.side);
    o.result["module"] = subcat_json(u);
    o.result["class"] = subcat_json(r.result);
    o.result["exact"] = r.exact;
    return o;
  }

  Output star() {
    Output o;
    const Mask c = ctx_->parse(cfg_.subcat);
    check_budget(*ctx_, n_, cfg_.subset_budget);
    const auto two = ctx_->enumerate_nfold(2, SideKind::Tors);
    const bool member = std::binary_search(two.begin(), two.end(), c, [](Mask a, Mask b) {
      const int pa = std::popcount(a), pb = std::popcount(b);
      return pa != pb ? pa < pb : a < b;
    });
    const StarResult r = tau_.check_star(c);
    o.text = "C = " + ctx_->format(c) + "\n";
    o.text += std::string("2-fold torsion class: ") + (member ? "yes" : "no") + "\n";
    o.text += std::string("condition (*): ") + (r.holds ? "true" : "false") + "\n";
    o.result["class"] = subcat_json(c);
    o.result["two_fold"] = member;
    o.result["holds"] = r.holds;
    if (!r.holds) {
      o.text += "witness: (" + ctx_->cat().label(r.member) + ", " + ctx_->format_object(r.cover) + ")\n";
      o.result["witness"] = {{"member", r.member}, {"cover", mult_json(r.cover)}};
    }
    return o;
  }

  Output bijection() {
    Output o;
    BijectionKind kind;
    if (cfg_.which == "air")
      kind = BijectionKind::Air;
    else if (cfg_.which == "main")
      kind = BijectionKind::Main;
    else if (cfg_.which == "hereditary")
      kind = BijectionKind::Hereditary;
    else
      throw UsageError("unknown bijection '" + cfg_.which + "'");
    if (kind == BijectionKind::Hereditary) {
      const auto gd = global_dim(alg_);
      if (!gd || *gd > 1) throw UnsupportedAlgebra("hereditary bijection needs global dimension at most 1");
    }
    check_budget(*ctx_, n_, cfg_.subset_budget);
    const BijectionReport rep = tau_.verify_bijection(kind);
    std::string line = bijection_name(kind) + ": " + std::to_string(rep.left_count) + " ↔ " +
                       std::to_string(rep.right_count) + ", ";
    line += rep.failures.empty() ? "round-trips OK" : std::to_string(rep.failures.size()) + " failures";
    if (kind == BijectionKind::Main) {
      std::string ex;
      for (Mask m : rep.excluded) ex += (ex.empty() ? "" : ", ") + ctx_->format(m);
      line += ", excluded: " + (ex.empty() ? std::string("none") : ex);
    }
    o.text = line + "\n";
    std::vector<std::vector<std::string>> rows;
    Json pairs = Json::array();
    for (std::size_t i = 0; i < rep.modules.size(); ++i) {
      rows.push_back({"  " + obj(rep.modules[i]), "->", ctx_->format(rep.classes[i])});
      pairs.push_back({{"module", subcat_json(rep.modules[i])}, {"class", subcat_json(rep.classes[i])}});
    }
    o.text += table(rows);
    Json fails = Json::array(), ex = Json::array();
    for (const auto& f : rep.failures) {
      o.text += "FAIL " + f.what + (f.detail.empty() ? "" : ": " + f.detail) + "\n";
      fails.push_back({{"what", f.what}, {"detail", f.detail}});
    }
    for (Mask m : rep.excluded) ex.push_back(subcat_json(m));
    o.result["which"] = bijection_name(kind);
    o.result["left_count"] = rep.left_count;
    o.result["right_count"] = rep.right_count;
    o.result["pairs"] = pairs;
    o.result["excluded"] = ex;
    o.result["failures"] = fails;
    if (!rep.failures.empty()) o.code = exit_code::verification;
    return o;
  }

  Output pair() {
    Output o;
    const Mask u = ctx_->parse(cfg_.u);
    if (!tau_.is_tau_rigid(u)) throw UsageError(obj(u) + " is not tau-rigid");
    const TwoFoldPair p = tau_.two_fold_torsion_pair(u);
    const Cok1Progenerator g = tau_.progenerator_of_cok1(u);
    const auto ff = tau_.functorial_finiteness(u);
    const bool ff_ok =
        std::all_of(ff.begin(), ff.end(), [](const FiniteApprox& f) { return f.left_ok && f.right_ok; });
    const bool prog_ok = g.disjoint && g.same_fac && g.generates && g.matches_ext_projectives;
    auto yes = [](bool b) { return b ? "yes" : "no"; };
    o.text = table({{"U", obj(u)},
                    {"T2 = cok_1 U", ctx_->format(p.t2)},
                    {"T1 = Fac U", ctx_->format(p.t1)},
                    {"F2", ctx_->format(p.f2)},
                    {"F1", ctx_->format(p.f1)},
                    {"equations verified", yes(p.verified)},
                    {"co-Bongartz completion", obj(tau_.co_bongartz(u))},
                    {"U^P", ctx_->format_object(g.up)},
                    {"C_1^P", ctx_->format_object(g.c1p)},
                    {"Ext-progenerator of cok_1 U", obj(g.basic)},
                    {"summands disjoint", yes(g.disjoint)},
                    {"Fac U^P = Fac U", yes(g.same_fac)},
                    {"generates cok_1 U", yes(g.generates)},
                    {"matches Ext-projectives", yes(g.matches_ext_projectives)},
                    {"approximations through Fac U", yes(ff_ok)}});
    o.result["module"] = subcat_json(u);
    o.result["t2"] = subcat_json(p.t2);
    o.result["t1"] = subcat_json(p.t1);
    o.result["f2"] = subcat_json(p.f2);
    o.result["f1"] = subcat_json(p.f1);
    o.result["verified"] = p.verified;
    o.result["co_bongartz"] = subcat_json(tau_.co_bongartz(u));
    o.result["progenerator"] = {{"up", mult_json(g.up)},      {"c1p", mult_json(g.c1p)},
                                {"basic", subcat_json(g.basic)}, {"disjoint", g.disjoint},
                                {"same_fac", g.same_fac},       {"generates", g.generates},
                                {"matches_ext_projectives", g.matches_ext_projectives}};
    o.result["functorially_finite"] = ff_ok;
    if (!p.verified || !prog_ok || !ff_ok) o.code = exit_code::verification;
    return o;
  }

  Output closure() {
    Output o;
    const Mask c = ctx_->parse(cfg_.subcat);
    Mask r = 0;
    bool bounded = false;
    std::string name;
    const std::string n = std::to_string(cfg_.fold);
    if (cfg_.kind == "ts" || cfg_.kind == "tf") {
      const SideKind side = cfg_.kind == "ts" ? SideKind::Tors : SideKind::Torf;
      r = ctx_->torsion_closure(c, cfg_.fold, side);
      name = (side == SideKind::Tors ? "T_" : "F_") + n;
    } else if (cfg_.kind == "ke" || cfg_.kind == "ce") {
      const SideKind side = cfg_.kind == "ce" ? SideKind::Tors : SideKind::Torf;
      r = cne_closure(*ctx_, c, cfg_.fold, side, cfg_.subset_budget, &bounded);
      name = cfg_.kind == "ce" ? (cfg_.fold == 1 ? "<>_CE" : "<>_C" + n + "E") : (cfg_.fold == 1 ? "<>_KE" : "<>_K" + n + "E");
    } else {
      throw UsageError("unknown closure kind '" + cfg_.kind + "'");
    }
    o.text = name + "(" + ctx_->format(c) + ") = " + ctx_->format(r) + bound_note(bounded, cfg_.mu) + "\n";
    o.result["kind"] = cfg_.kind;
    o.result["fold"] = cfg_.fold;
    o.result["input"] = subcat_json(c);
    o.result["closure"] = subcat_json(r);
    o.result["exact"] = !bounded;
    return o;
  }

  Output table1() {
    Output o;
    check_budget(*ctx_, n_, cfg_.subset_budget);
    const auto tr = tau_.tau_rigid();
    const auto lattice = tau_.torsion_lattice();
    const auto two = ctx_->enumerate_nfold(2, SideKind::Tors, &lattice);
    std::set<Mask> image;
    std::vector<std::vector<std::string>> rows{{"basic tau-rigid module", "2-fold torsion class"}};
    Json j = Json::array();
    for (Mask u : tr) {
      const Mask k = tau_.cok1(u);
      image.insert(k);
      rows.push_back({obj(u), ctx_->format(k)});
      j.push_back({{"module", subcat_json(u)}, {"class", subcat_json(k)}});
    }
    Json extra = Json::array();
    for (Mask k : two)
      if (!image.count(k)) {
        rows.push_back({"", ctx_->format(k)});
        extra.push_back(subcat_json(k));
      }
    o.text = table(rows) + std::to_string(tr.size()) + " basic tau-rigid modules, " + std::to_string(two.size()) +
             " 2-fold torsion classes\n";
    o.result["rows"] = j;
    o.result["unmatched"] = extra;
    o.result["tau_rigid_count"] = tr.size();
    o.result["two_fold_count"] = two.size();
    return o;
  }

  const RunConfig& cfg_;
  AlgebraPtr alg_;
  std::shared_ptr<Context> ctx_;
  TauTheory tau_;
  int n_;
};

}  // namespace

Mask cne_closure(const Context& ctx, Mask c, int n, SideKind side, std::uint64_t budget, bool* bounded) {
  if (bounded) *bounded = false;
  if (n == 1) return ctx.ke_closure(c, side).result;
  // Closedness under n-cokernels (n-kernels) and extensions survives intersections.
  const Mask rest = ctx.full() & ~c;
  check_budget(ctx, std::popcount(rest), budget);
  Mask r = ctx.full();
  for (Mask s = rest;; s = (s - 1) & rest) {
    const Mask cand = c | s;
    if (subset_of(r, cand) && cand != r) {
      if (s == 0) break;
      continue;
    }
    const CneResult res = ctx.is_cne_closed(cand, n, side);
    if (res.closed) {
      r &= cand;
      if (res.bounded && bounded) *bounded = true;
    }
    if (s == 0) break;
  }
  return r;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.mu < 1) throw UsageError("--mu must be at least 1");
    if (cfg.fold < 1) throw UsageError("--fold must be at least 1");
    if (cfg.n < 1) throw UsageError("--n must be at least 1");
    AlgebraPtr alg = load_algebra(cfg.algebra_path);
    Runner runner(cfg, alg);
    const Context& ctx = runner.ctx();
    Output o = runner.dispatch();
    if (cfg.format == OutputFormat::Text) {
      out << o.text;
    } else if (cfg.format == OutputFormat::Dot) {
      if (o.dot.empty()) throw UsageError("command '" + cfg.command + "' has no DOT output");
      out << o.dot;
    } else {
      Json doc;
      doc["schema"] = "taufold.v1";
      doc["command"] = cfg.command;
      doc["config"] = {{"algebra", cfg.algebra_path}, {"fold", cfg.fold}, {"side", side_name(cfg.side)},
                       {"mu", cfg.mu},                {"seed", cfg.seed}};
      doc["algebra"] = {{"vertices", alg->quiver().vertices},
                        {"arrows", alg->num_arrows()},
                        {"modulus", alg->modulus()}};
      doc["labels"] = ctx.cat().labels();
      doc["result"] = o.result;
      out << doc.dump(2) << "\n";
    }
    return o.code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_code::parse;
  } catch (const UnsupportedAlgebra& e) {
    err << "unsupported algebra: " << e.what() << "\n";
    return exit_code::parse;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::parse;
  } catch (const GuardExceeded& e) {
    err << "guard exceeded: " << e.what() << "\n";
    return exit_code::guard;
  } catch (const VerificationFailure& e) {
    err << "verification failure: " << e.what() << "\n";
    return exit_code::verification;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_code::internal;
  }
}

}  // namespace taufold
