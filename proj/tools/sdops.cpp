// Command-line front end.  Exit codes: 0 every requested property holds,
// 1 some property fails (the report carries witnesses), 2 malformed input
// or a refused computation.

#include <cstdlib>
#include <functional>
#include <map>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdops/braid.hpp"
#include "sdops/cocycles.hpp"
#include "sdops/constructions.hpp"
#include "sdops/core.hpp"
#include "sdops/homology.hpp"
#include "sdops/io.hpp"
#include "sdops/linear.hpp"

using namespace sdops;
using nlohmann::json;
namespace lin = sdops::linear;

namespace {

struct Global {
  std::string format = "human";
  std::size_t jobs = 0;
  std::string output;
  bool unchecked = false;
  std::vector<std::string> argv;
} G;

int g_exit = 0;

// Leaf subcommand -> action, run after parsing so global flags apply first.
std::map<const CLI::App*, std::function<void()>> g_actions;
void on(const CLI::App* s, std::function<void()> f) { g_actions[s] = std::move(f); }

// Collected verdicts and artifacts of one command.
class Report {
 public:
  void verdict(const std::string& name, bool holds, const std::optional<Counterexample>& cx = std::nullopt) {
    verdicts_[name] = holds;
    human_.push_back(name + ": " + (holds ? "yes" : "no"));
    if (cx) {
      json w = {{"witness", cx->witness}, {"lhs", cx->lhs}, {"rhs", cx->rhs}, {"law", cx->law}};
      counterexamples_[name] = w;
      human_.push_back("  witness " + json(cx->witness).dump() + " law " + std::to_string(cx->law) + ": " +
                       std::to_string(cx->lhs) + " != " + std::to_string(cx->rhs));
    }
    if (!holds) ok_ = false;
  }
  void verdict(const std::string& name, const CheckResult& r) { verdict(name, r.holds, r.counterexample); }
  void info(const std::string& key, const json& value, const std::string& text = "") {
    info_[key] = value;
    human_.push_back(key + ": " + (text.empty() ? (value.is_string() ? value.get<std::string>() : value.dump()) : text));
  }
  void note(const std::string& line) { human_.push_back(line); }
  // Written to -o when given, otherwise printed (inline in json mode).
  void artifact(const std::string& key, json value) {
    if (!G.output.empty()) {
      std::string path = G.output;
      if (artifacts_written_++ > 0) path += "." + key;
      io::write_json_file(path, value);
      info_["wrote_" + key] = path;
      human_.push_back("wrote " + key + " to " + path);
    } else if (G.format == "json") {
      artifacts_[key] = std::move(value);
    } else {
      raw_.push_back(value.dump());
    }
  }
  void emit() {
    if (G.format == "json") {
      json j = {{"schema", io::schema_version}, {"command", G.argv},     {"ok", ok_},
                {"verdicts", verdicts_},         {"info", info_},         {"counterexamples", counterexamples_},
                {"artifacts", artifacts_}};
      std::cout << j.dump(1) << "\n";
    } else {
      for (auto& l : human_) std::cout << l << "\n";
      for (auto& r : raw_) std::cout << r << "\n";
    }
    if (!ok_) g_exit = 1;
  }

 private:
  json verdicts_ = json::object(), info_ = json::object(), counterexamples_ = json::object(),
       artifacts_ = json::object();
  std::vector<std::string> human_, raw_;
  bool ok_ = true;
  int artifacts_written_ = 0;
};

Verify verify_mode() { return G.unchecked ? Verify::unchecked : Verify::checked; }

OpTable load_op(const std::string& path) { return io::op_from_json(io::read_json_file(path)); }
Cochain load_cochain(const std::string& path) { return io::cochain_from_json(io::read_json_file(path)); }

std::string arity_name(std::size_t k) {
  if (k == 2) return "binary";
  if (k == 3) return "ternary";
  return std::to_string(k) + "-ary";
}

std::vector<std::int64_t> parse_ints(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    try {
      out.push_back(std::stoll(item, &used));
    } catch (const std::exception&) {
      throw InputError("bad integer '" + item + "'");
    }
    if (used != item.size()) throw InputError("bad integer '" + item + "'");
  }
  return out;
}

std::vector<Element> parse_elements(const std::string& text) {
  std::vector<Element> out;
  for (auto v : parse_ints(text)) {
    if (v < 0) throw InputError("negative entry in list");
    out.push_back(static_cast<Element>(v));
  }
  return out;
}

AbGroup parse_coeff(const std::string& text) {
  auto v = parse_ints(text);
  if (v.empty()) throw InputError("empty coefficient group");
  std::vector<std::uint64_t> f;
  for (auto x : v) {
    if (x < 1) throw InputError("coefficient orders must be positive");
    f.push_back(static_cast<std::uint64_t>(x));
  }
  return AbGroup(f);
}

struct GroupArg {
  std::string file;
  std::size_t cyclic = 0, symmetric = 0;
  void add(CLI::App* s) {
    s->add_option("--group", file, "group JSON file");
    s->add_option("--cyclic", cyclic, "use Z/n");
    s->add_option("--symmetric", symmetric, "use S_n");
  }
  FiniteGroup get() const {
    int given = !file.empty() + (cyclic > 0) + (symmetric > 0);
    if (given != 1) throw InputError("give exactly one of --group, --cyclic, --symmetric");
    if (!file.empty()) return io::group_from_json(io::read_json_file(file));
    if (cyclic) return cyclic_group(cyclic);
    return symmetric_group(symmetric);
  }
};

template <class F>
void run(F f) {
  Report r;
  f(r);
  r.emit();
}

// ---- check ----------------------------------------------------------------

void add_check(CLI::App& app) {
  auto* check = app.add_subcommand("check", "verify axioms and conditions");
  check->require_subcommand(1);

  auto file = std::make_shared<std::string>();
  auto require = std::make_shared<std::string>("shelf");
  auto* ax = check->add_subcommand("axioms", "distributivity, rack and quandle properties");
  ax->add_option("file", *file, "operation JSON")->required();
  ax->add_option("--require", *require, "property that decides the exit code")
      ->check(CLI::IsMember({"shelf", "rack", "quandle"}));
  on(ax, [=] {
    run([&](Report& r) {
      OpTable op = load_op(*file);
      std::string a = arity_name(op.arity());
      auto sd = is_nary_distributive(op);
      bool rack = sd.holds && all_translations_bijective(op);
      bool quandle = rack && is_quandle(op);
      r.info("size", op.size());
      r.info("arity", op.arity());
      r.verdict(a + " shelf", sd);
      r.info(a + " rack", rack, rack ? "yes" : "no");
      r.info(a + " quandle", quandle, quandle ? "yes" : "no");
      if ((*require == "rack" && !rack) || (*require == "quandle" && !quandle)) r.verdict("required " + *require, false);
    });
  });

  auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>();
  auto* mu = check->add_subcommand("mutual", "both exchange laws between two operations");
  mu->add_option("a", *a)->required();
  mu->add_option("b", *b)->required();
  on(mu, [=] {
    run([&](Report& r) { r.verdict("mutually distributive", are_mutually_distributive(load_op(*a), load_op(*b))); });
  });

  auto c0 = std::make_shared<std::string>(), c1 = std::make_shared<std::string>();
  auto* co = check->add_subcommand("compat", "compatibility of two ternary operations");
  co->add_option("t0", *c0)->required();
  co->add_option("t1", *c1)->required();
  on(co, [=] {
    run([&](Report& r) { r.verdict("compatible", are_compatible_ternary(load_op(*c0), load_op(*c1))); });
  });

  struct CocArgs {
    std::string op, cochain, op1, cochain1, variant = "proof";
  };
  auto ca = std::make_shared<CocArgs>();
  auto* cc = check->add_subcommand("cocycle", "2-cocycle conditions (single, mutual pair or compatible pair)");
  cc->add_option("--op", ca->op)->required();
  cc->add_option("--cochain", ca->cochain)->required();
  cc->add_option("--op1", ca->op1, "second operation for a pair");
  cc->add_option("--cochain1", ca->cochain1, "second cochain for a pair");
  cc->add_option("--variant", ca->variant, "compatibility variant for ternary pairs")
      ->check(CLI::IsMember({"proof", "literal"}));
  on(cc, [=] {
    run([&](Report& r) {
      OpTable op = load_op(ca->op);
      Cochain f = load_cochain(ca->cochain);
      if (ca->op1.empty() != ca->cochain1.empty()) throw InputError("--op1 and --cochain1 go together");
      r.verdict("2-cocycle", is_2cocycle(f, op));
      if (ca->op1.empty()) return;
      OpTable op1 = load_op(ca->op1);
      Cochain f1 = load_cochain(ca->cochain1);
      r.verdict("2-cocycle (second)", is_2cocycle(f1, op1));
      if (op.arity() == 2 && op1.arity() == 2) {
        r.verdict("mutually distributive cocycles", are_mutually_distributive_cocycles(f, f1, op, op1));
      } else if (op.arity() == 3 && op1.arity() == 3) {
        auto v = ca->variant == "literal" ? CocycleVariant::literal : CocycleVariant::proof;
        r.verdict("compatible cocycles", are_compatible_ternary_cocycles(f, f1, op, op1, v));
      } else {
        throw InputError("pairs must be both binary or both ternary");
      }
    });
  });
}

// ---- construct --------------------------------------------------------------

void emit_op(Report& r, const OpTable& op, const std::string& key = "table") {
  r.info(key + " size", op.size());
  r.info(key + " arity", op.arity());
  r.artifact(key, io::to_json(op));
}

void add_construct(CLI::App& app) {
  auto* con = app.add_subcommand("construct", "build operation tables");
  con->require_subcommand(1);

  struct Args {
    std::size_t modulus = 0, arity = 2, size = 0, n = 1;
    std::string coeffs, op, op0, op1, cochain, cochain1, rack, word, automorphism, action, p;
    GroupArg group;
  };
  auto A = std::make_shared<Args>();

  auto* af = con->add_subcommand("affine", "c_1 x_1 + ... + (1 - sum) x_k mod N");
  af->add_option("--modulus", A->modulus)->required();
  af->add_option("--arity", A->arity);
  af->add_option("--coeffs", A->coeffs, "comma separated, k-1 values")->required();
  on(af, [=] { run([&](Report& r) { emit_op(r, affine_op(A->modulus, A->arity, parse_ints(A->coeffs))); }); });

  auto* di = con->add_subcommand("dihedral", "x * y = 2y - x mod n");
  di->add_option("--size", A->size)->required();
  on(di, [=] { run([&](Report& r) { emit_op(r, dihedral_quandle(A->size)); }); });

  auto* pr = con->add_subcommand("projection", "W(x, ...) = x");
  pr->add_option("--size", A->size)->required();
  pr->add_option("--arity", A->arity);
  on(pr, [=] { run([&](Report& r) { emit_op(r, projection_op(A->size, A->arity)); }); });

  for (std::string name : {"conj", "core", "heap"}) {
    auto* g = con->add_subcommand(name, name + " operation of a group");
    A->group.add(g);
    on(g, [=] {
      run([&](Report& r) {
        FiniteGroup grp = A->group.get();
        emit_op(r, name == "conj" ? conj_quandle(grp) : name == "core" ? core_quandle(grp) : heap_op(grp));
      });
    });
  }

  auto* al = con->add_subcommand("alexander", "x * y = f(x y^-1) y for an automorphism f");
  A->group.add(al);
  al->add_option("--automorphism", A->automorphism, "images of 0..n-1")->required();
  on(al, [=] {
    run([&](Report& r) { emit_op(r, generalized_alexander(A->group.get(), parse_elements(A->automorphism))); });
  });

  auto* pw = con->add_subcommand("power", "W^n(x, y) = W(W^(n-1)(x, y), y)");
  pw->add_option("--op", A->op)->required();
  pw->add_option("--n", A->n)->required();
  on(pw, [=] { run([&](Report& r) { emit_op(r, power_op(load_op(A->op), A->n)); }); });

  auto pair_cmd = [&](const std::string& name, const std::string& help,
                      std::function<OpTable(const OpTable&, const OpTable&)> f) {
    auto* s = con->add_subcommand(name, help);
    s->add_option("--op0", A->op0)->required();
    s->add_option("--op1", A->op1)->required();
    on(s, [=] { run([&](Report& r) { emit_op(r, f(load_op(A->op0), load_op(A->op1))); }); });
  };
  pair_cmd("f", "T(x, y0, y1) = (x *0 y0) *1 y1",
           [](const OpTable& a, const OpTable& b) { return f_functor(a, b, verify_mode()); });
  pair_cmd("g", "(x0, x1) * (y0, y1) = (T0(x0, y0, y1), T1(x1, y0, y1))",
           [](const OpTable& a, const OpTable& b) { return g_functor(a, b, verify_mode()); });
  pair_cmd("double-binary", "binary doubling on X^2",
           [](const OpTable& a, const OpTable& b) { return doubling_binary(a, b, verify_mode()); });
  pair_cmd("double-ternary", "ternary doubling on X^2",
           [](const OpTable& a, const OpTable& b) { return doubling_ternary(a, b, verify_mode()); });
  pair_cmd("compose", "Wn(Wm(x, y), z)",
           [](const OpTable& a, const OpTable& b) { return compose_mn(a, b, verify_mode()); });
  pair_cmd("monoid-product", "W(W'(x, y), y)", [](const OpTable& a, const OpTable& b) { return monoid_product(a, b); });

  auto* pp = con->add_subcommand("product-pair", "mutually distributive pair on X x Y");
  pp->add_option("--op0", A->op0)->required();
  pp->add_option("--op1", A->op1)->required();
  on(pp, [=] {
    run([&](Report& r) {
      auto [a, b] = product_mutual_pair(load_op(A->op0), load_op(A->op1), verify_mode());
      emit_op(r, a, "op0");
      emit_op(r, b, "op1");
    });
  });

  auto* au = con->add_subcommand("augmented", "T(x, y0, y1) = x . p(y0, y1)");
  au->add_option("--size", A->size)->required();
  A->group.add(au);
  au->add_option("--action", A->action, "action[x*|G|+g], comma separated")->required();
  au->add_option("--p", A->p, "p[y0*size+y1], comma separated")->required();
  on(au, [=] {
    run([&](Report& r) {
      emit_op(r, augmented_ternary(A->size, A->group.get(), parse_elements(A->action), parse_elements(A->p),
                                   verify_mode()));
    });
  });

  auto* ex = con->add_subcommand("extend", "abelian extension by a cochain (or a mutual pair)");
  ex->add_option("--op", A->op)->required();
  ex->add_option("--cochain", A->cochain)->required();
  ex->add_option("--op1", A->op1, "second operation of a mutual pair");
  ex->add_option("--cochain1", A->cochain1);
  on(ex, [=] {
    run([&](Report& r) {
      if (A->op1.empty()) {
        emit_op(r, extend(load_op(A->op), load_cochain(A->cochain), verify_mode()));
        return;
      }
      auto [a, b] = extend_mutual_pair(load_op(A->op), load_op(A->op1), load_cochain(A->cochain),
                                       load_cochain(A->cochain1), verify_mode());
      emit_op(r, a, "op0");
      emit_op(r, b, "op1");
    });
  });

  auto* tw = con->add_subcommand("twist", "hat^b(x, y) = hat(x, y^b) through a rack");
  tw->add_option("--op", A->op, "operation to twist")->required();
  tw->add_option("--rack", A->rack, "binary rack acting on tuples")->required();
  tw->add_option("--word", A->word, "braid word like 1,-1")->required();
  on(tw, [=] {
    run([&](Report& r) {
      OpTable hat = load_op(A->op);
      BraidWord b = parse_braid_word(hat.arity() - 1, A->word);
      emit_op(r, twist_op(hat, load_op(A->rack), b, verify_mode()));
    });
  });
}

// ---- homology / cohomology ------------------------------------------------

void refuse_large(const LabeledComplex& c, std::size_t n) {
  std::uint64_t g = 0;
  try {
    g = c.generators(n + 1);
  } catch (const std::exception&) {
    throw InputError("degree " + std::to_string(n) + " refused: generator count overflows");
  }
  if (g > max_generators)
    throw InputError("degree " + std::to_string(n) + " refused: C_" + std::to_string(n + 1) + " has " +
                     std::to_string(g) + " generators (limit " + std::to_string(max_generators) + ")");
}

std::string group_text(const std::vector<std::uint64_t>& orders) {
  if (orders.empty()) return "0";
  std::map<std::uint64_t, int> count;
  std::string s;
  for (auto o : orders) ++count[o];
  for (auto& [o, k] : count) {
    if (!s.empty()) s += " + ";
    s += "(Z/" + std::to_string(o) + ")" + (k > 1 ? "^" + std::to_string(k) : "");
  }
  return s;
}

std::string homology_text(const HomologyResult& h) {
  if (!h.integral) return group_text(h.finite);
  std::string s = h.betti ? "Z^" + std::to_string(h.betti) : "";
  for (auto& t : h.torsion) s += (s.empty() ? "" : " + ") + ("Z/" + t.str());
  return s.empty() ? "0" : s;
}

void add_homology(CLI::App& app) {
  struct Args {
    std::vector<std::string> ops;
    std::size_t degree = 2;
    std::string coeff = "Z";
  };
  auto A = std::make_shared<Args>();
  auto* h = app.add_subcommand("homology", "H_n of a rack or of a mutually distributive system");
  h->add_option("--op", A->ops, "operation JSON (repeat for a system)")->required();
  h->add_option("--degree", A->degree)->required();
  h->add_option("--coeff", A->coeff, "Z or a modulus");
  on(h, [=] {
    run([&](Report& r) {
      OpSystem sys;
      for (auto& f : A->ops) sys.push_back(load_op(f));
      LabeledComplex c(sys, verify_mode());
      refuse_large(c, A->degree);
      std::uint64_t d = 0;
      if (A->coeff != "Z") {
        auto v = parse_ints(A->coeff);
        if (v.size() != 1 || v[0] < 1) throw InputError("--coeff is Z or a positive modulus");
        d = static_cast<std::uint64_t>(v[0]);
      }
      auto res = homology(c, A->degree, d);
      r.info("generators", c.generators(A->degree));
      r.info("H_" + std::to_string(A->degree), io::to_json(res), homology_text(res));
    });
  });

  auto B = std::make_shared<Args>();
  auto* co = app.add_subcommand("cohomology", "H^n with finite coefficients, solved explicitly");
  co->add_option("--op", B->ops)->required();
  co->add_option("--degree", B->degree)->required();
  co->add_option("--coeff", B->coeff, "modulus or comma separated cyclic orders")->required();
  on(co, [=] {
    run([&](Report& r) {
      OpSystem sys;
      for (auto& f : B->ops) sys.push_back(load_op(f));
      LabeledComplex c(sys, verify_mode());
      refuse_large(c, B->degree);
      AbGroup a = parse_coeff(B->coeff);
      auto s = cohomology_solve(c, B->degree, a);
      std::string n = std::to_string(B->degree);
      r.info("cocycle orders", s.cocycle_orders, group_text(s.cocycle_orders));
      r.info("coboundary generators", s.coboundaries.size());
      r.info("H^" + n, s.quotient, group_text(s.quotient));
      if (a.rank() == 1) {
        auto u = cohomology(c, B->degree, a.factors()[0]);
        r.verdict("agrees with universal coefficients", to_invariant_factors(u.finite) == s.quotient);
      }
      json cocycles = json::array();
      for (auto& lc : s.cocycles) {
        json blocks = json::array();
        for (auto& b : lc) blocks.push_back(io::to_json(b));
        cocycles.push_back(blocks);
      }
      if (!G.output.empty() || G.format == "json")
        r.artifact("cocycles", {{"orders", s.cocycle_orders}, {"cocycles", cocycles}});
    });
  });
}

// ---- cocycle ----------------------------------------------------------------

void add_cocycle(CLI::App& app) {
  auto* cy = app.add_subcommand("cocycle", "cocycle solving, extensions and classes");
  cy->require_subcommand(1);
  struct Args {
    std::string op, op1, cochain, cochain1, coeff = "2", ses, cyclic_ses, variant = "proof";
    std::size_t degree = 2;
  };
  auto A = std::make_shared<Args>();

  auto* ck = cy->add_subcommand("check", "2-cocycle condition");
  ck->add_option("--op", A->op)->required();
  ck->add_option("--cochain", A->cochain)->required();
  ck->add_option("--degree", A->degree);
  on(ck, [=] {
    run([&](Report& r) {
      OpTable op = load_op(A->op);
      Cochain f = load_cochain(A->cochain);
      if (A->degree == 2) {
        r.verdict("2-cocycle", is_2cocycle(f, op));
      } else {
        r.verdict(std::to_string(A->degree) + "-cocycle", is_cocycle_of_degree(f, op, A->degree));
      }
    });
  });

  auto* so = cy->add_subcommand("solve", "all 2-cocycles (or cocycle pairs) with given coefficients");
  so->add_option("--op", A->op)->required();
  so->add_option("--op1", A->op1, "second operation: mutual pair or compatible pair");
  so->add_option("--coeff", A->coeff);
  so->add_option("--degree", A->degree);
  so->add_option("--variant", A->variant)->check(CLI::IsMember({"proof", "literal"}));
  on(so, [=] {
    run([&](Report& r) {
      OpTable op = load_op(A->op);
      AbGroup a = parse_coeff(A->coeff);
      if (A->degree != 2) {
        LabeledComplex c({op}, verify_mode());
        refuse_large(c, A->degree);
        auto s = cohomology_solve(c, A->degree, a);
        r.info("cocycle orders", s.cocycle_orders, group_text(s.cocycle_orders));
        r.info("H^" + std::to_string(A->degree), s.quotient, group_text(s.quotient));
        return;
      }
      CocycleSpace s;
      if (A->op1.empty()) {
        s = solve_2cocycles(op, a);
      } else {
        OpTable op1 = load_op(A->op1);
        if (op.arity() == 2 && op1.arity() == 2) {
          s = solve_mutual_cocycle_pairs(op, op1, a);
        } else if (op.arity() == 3 && op1.arity() == 3) {
          auto v = A->variant == "literal" ? CocycleVariant::literal : CocycleVariant::proof;
          s = solve_compatible_cocycle_pairs(op, op1, a, v);
        } else {
          throw InputError("pairs must be both binary or both ternary");
        }
      }
      r.info("generator orders", s.orders, group_text(s.orders));
      if (auto n = s.count()) r.info("solutions", *n);
      r.artifact("space", io::to_json(s));
    });
  });

  auto* ex = cy->add_subcommand("extend", "abelian extension by a cochain");
  ex->add_option("--op", A->op)->required();
  ex->add_option("--cochain", A->cochain)->required();
  on(ex, [=] { run([&](Report& r) { emit_op(r, extend(load_op(A->op), load_cochain(A->cochain), verify_mode())); }); });

  auto* th = cy->add_subcommand("three-from-ses", "3-cocycle from a short exact sequence of coefficients");
  th->add_option("--op", A->op)->required();
  th->add_option("--cochain", A->cochain, "2-cocycle with values in the quotient")->required();
  th->add_option("--ses", A->ses, "sequence JSON");
  th->add_option("--cyclic-ses", A->cyclic_ses, "h,a for 0 -> Z/h -> Z/(ha) -> Z/a -> 0");
  on(th, [=] {
    run([&](Report& r) {
      Ses s;
      if (!A->ses.empty() == !A->cyclic_ses.empty()) throw InputError("give exactly one of --ses, --cyclic-ses");
      if (!A->ses.empty()) {
        s = io::ses_from_json(io::read_json_file(A->ses));
      } else {
        auto v = parse_ints(A->cyclic_ses);
        if (v.size() != 2 || v[0] < 1 || v[1] < 1) throw InputError("--cyclic-ses takes h,a");
        s = cyclic_ses(static_cast<std::uint64_t>(v[0]), static_cast<std::uint64_t>(v[1]));
      }
      OpTable op = load_op(A->op);
      Cochain alpha = three_cocycle_from_ses(load_cochain(A->cochain), op, s, verify_mode());
      r.verdict("3-cocycle", is_cocycle_of_degree(alpha, op, 3));
      r.info("alpha is zero", alpha.is_zero(), alpha.is_zero() ? "yes" : "no");
      r.artifact("alpha", io::to_json(alpha));
    });
  });

  auto* ch = cy->add_subcommand("cohomologous", "psi1 - psi2 = delta eta ?");
  ch->add_option("--op", A->op)->required();
  ch->add_option("--cochain", A->cochain)->required();
  ch->add_option("--cochain1", A->cochain1)->required();
  on(ch, [=] {
    run([&](Report& r) {
      auto eta = cocycles_cohomologous(load_cochain(A->cochain), load_cochain(A->cochain1), load_op(A->op));
      r.verdict("cohomologous", eta.has_value());
      if (eta) r.artifact("eta", io::to_json(*eta));
    });
  });
}

// ---- chainmap / braid ---------------------------------------------------------

void add_chainmap(CLI::App& app) {
  auto* cm = app.add_subcommand("chainmap", "chain map from the ternary complex of F(op0, op1)");
  cm->require_subcommand(1);
  auto pair = std::make_shared<std::vector<std::string>>();
  auto degree = std::make_shared<std::size_t>(0);
  auto* v = cm->add_subcommand("verify", "F_1 d = d F_2 and F_2 d = d F_3");
  v->add_option("--pair", *pair)->expected(2)->required();
  v->add_option("--export-degree", *degree, "also export F_n as a matrix");
  on(v, [=] {
    run([&](Report& r) {
      OpTable a = load_op((*pair)[0]), b = load_op((*pair)[1]);
      r.verdict("chain map", verify_chain_map(a, b));
      if (*degree) r.artifact("F", io::to_json(chain_map_F(a, b, *degree)));
    });
  });
}

void add_braid(CLI::App& app) {
  auto* br = app.add_subcommand("braid", "braid group actions through a rack");
  br->require_subcommand(1);
  struct Args {
    std::string op, rack, word, tuple;
    std::size_t strands = 3;
  };
  auto A = std::make_shared<Args>();

  auto* act = br->add_subcommand("act", "apply a braid word to a tuple");
  act->add_option("--op", A->op)->required();
  act->add_option("--word", A->word)->required();
  act->add_option("--tuple", A->tuple)->required();
  on(act, [=] {
    run([&](Report& r) {
      Tuple x = parse_elements(A->tuple);
      OpTable op = load_op(A->op);
      Tuple y = braid_act(op, parse_braid_word(x.size(), A->word), x);
      r.info("image", y);
    });
  });

  auto* rel = br->add_subcommand("relations", "braid relations on X^m");
  rel->add_option("--op", A->op)->required();
  rel->add_option("--strands", A->strands);
  on(rel, [=] { run([&](Report& r) { r.verdict("braid relations", verify_braid_relations(load_op(A->op), A->strands)); }); });

  auto* eq = br->add_subcommand("equivariance", "x^b * y = (x * y)^b");
  eq->add_option("--rack", A->rack)->required();
  eq->add_option("--op", A->op)->required();
  on(eq, [=] { run([&](Report& r) { r.verdict("equivariant", verify_equivariance(load_op(A->rack), load_op(A->op))); }); });

  auto* tw = br->add_subcommand("twist", "hat^b(x, y) = hat(x, y^b)");
  tw->add_option("--op", A->op)->required();
  tw->add_option("--rack", A->rack)->required();
  tw->add_option("--word", A->word)->required();
  on(tw, [=] {
    run([&](Report& r) {
      OpTable hat = load_op(A->op), star = load_op(A->rack);
      OpTable t = twist_op(hat, star, parse_braid_word(hat.arity() - 1, A->word), verify_mode());
      r.verdict(arity_name(t.arity()) + " shelf", is_nary_distributive(t));
      r.verdict("mutually distributive with the input", are_mutually_distributive(hat, t));
      emit_op(r, t);
    });
  });
}

// ---- linear -----------------------------------------------------------------

void lin_verdict(Report& r, const std::string& name, const lin::LinCheck& c) {
  r.verdict(name, c.holds);
  if (!c.holds && c.column) r.note("  first failing basis input " + std::to_string(*c.column) + " (" + c.law + ")");
}

void add_linear(CLI::App& app) {
  auto* li = app.add_subcommand("linear", "self-distributive objects in vector spaces");
  li->require_subcommand(1);
  struct Args {
    std::uint64_t field = 2;
    std::string object, lie = "nonabelian2";
    std::size_t abelian_dim = 1;
    GroupArg group;
  };
  auto A = std::make_shared<Args>();
  auto field = [A] { return A->field == 0 ? lin::Field::rationals() : lin::Field::prime(A->field); };

  auto* sd = li->add_subcommand("check-sd", "distributivity diagram of an object file");
  sd->add_option("--object", A->object)->required();
  on(sd, [=] {
    run([&](Report& r) {
      auto obj = io::sd_object_from_json(io::read_json_file(A->object), Verify::unchecked);
      r.info("dimension", obj.comonoid.dim);
      r.info("arity", obj.arity);
      lin_verdict(r, "self-distributive", lin::check_nary_sd(obj));
    });
  });

  auto* lie = li->add_subcommand("lie", "k + L from a Lie algebra, and its doubling");
  lie->add_option("--field", A->field, "prime, or 0 for Q");
  lie->add_option("--algebra", A->lie, "nonabelian2, abelian, or a JSON file");
  lie->add_option("--dim", A->abelian_dim, "dimension of the abelian algebra");
  on(lie, [=] {
    run([&](Report& r) {
      lin::Field f = field();
      lin::LieAlgebraObject l = A->lie == "nonabelian2" ? lin::nonabelian_lie2(f)
                                : A->lie == "abelian"    ? lin::abelian_lie(f, A->abelian_dim)
                                                         : io::lie_from_json(io::read_json_file(A->lie));
      auto q = lin::lie_to_binary_sd(l, Verify::unchecked);
      lin_verdict(r, "binary self-distributive", lin::check_nary_sd(q));
      lin_verdict(r, "switching identities", lin::switching_identities_check(q));
      auto t = lin::categorical_double(q, Verify::unchecked);
      lin_verdict(r, "ternary self-distributive", lin::check_nary_sd(t));
      r.verdict("doubling equals closed formula", t.W == lin::lie_ternary_formula(l));
      r.artifact("binary", io::to_json(q));
      r.artifact("ternary", io::to_json(t));
    });
  });

  for (std::string name : {"heap", "adjoint"}) {
    auto* s = li->add_subcommand(name, name == "heap" ? "x S(y) z on a group algebra"
                                                      : "S(z1) S(y1) x y2 z2 on a group algebra");
    s->add_option("--field", A->field);
    A->group.add(s);
    on(s, [=] {
      run([&](Report& r) {
        auto h = lin::group_algebra_hopf(A->group.get(), field());
        auto obj = name == "heap" ? lin::hopf_heap(h, Verify::unchecked) : lin::hopf_adjoint_ternary(h, Verify::unchecked);
        r.info("dimension", h.dim);
        lin_verdict(r, "ternary self-distributive", lin::check_nary_sd(obj));
        r.artifact(name, io::to_json(obj));
      });
    });
  }

  auto* au = li->add_subcommand("augmented", "p = m (S (x) 1) on a group algebra acting on itself");
  au->add_option("--field", A->field);
  A->group.add(au);
  on(au, [=] {
    run([&](Report& r) {
      auto h = lin::group_algebra_hopf(A->group.get(), field());
      lin::LinMap p = lin::compose(h.mult, lin::tensor(h.antipode, lin::LinMap::identity(h.field, {h.dim})));
      try {
        auto rep = lin::check_augmented_hopf(p, h, h.comonoid(), h.mult);
        r.verdict("augmented ternary shelf", rep.holds);
        if (!rep.holds) r.note("  failing: " + rep.failure);
        if (rep.derived) {
          r.verdict("induced operation equals the heap", rep.derived->W == lin::hopf_heap(h, Verify::unchecked).W);
          r.artifact("derived", io::to_json(*rep.derived));
        }
      } catch (const lin::NotCoalgebraMorphism&) {
        r.verdict("coalgebra morphism", false);
      }
    });
  });
}

// ---- enumerate ----------------------------------------------------------------

void add_enumerate(CLI::App& app) {
  struct Args {
    std::size_t size = 2, arity = 2;
    std::string structure = "shelf";
    bool affine = false, pairs = false;
  };
  auto A = std::make_shared<Args>();
  auto* en = app.add_subcommand("enumerate", "exhaustive lists of operations on tiny carriers");
  en->add_option("--size", A->size)->required();
  en->add_option("--arity", A->arity);
  en->add_option("--structure", A->structure)->check(CLI::IsMember({"shelf", "rack", "quandle"}));
  en->add_flag("--affine", A->affine, "affine operations only (any size)");
  en->add_flag("--pairs", A->pairs, "mutually distributive ordered pairs of the listed operations");
  on(en, [=] {
    run([&](Report& r) {
      Structure s = A->structure == "rack" ? Structure::rack : A->structure == "quandle" ? Structure::quandle
                                                                                         : Structure::shelf;
      std::vector<OpTable> ops;
      if (A->affine) {
        for (auto& op : enumerate_affine(A->size, A->arity))
          if (has_structure(op, s)) ops.push_back(op);
      } else {
        ops = enumerate_operations(A->size, A->arity, s);
      }
      r.info("operations", ops.size());
      json list = json::array();
      if (A->pairs) {
        auto pr = mutual_pairs(ops);
        r.info("mutual pairs", pr.size());
        for (auto& [a, b] : pr) list.push_back({io::to_json(a), io::to_json(b)});
      } else {
        for (auto& op : ops) list.push_back(io::to_json(op));
      }
      r.artifact("list", list);
    });
  });
}

}  // namespace

int main(int argc, char** argv) {
  G.argv.assign(argv + 1, argv + argc);
  CLI::App app{"sdops: self-distributive operations on finite carriers"};
  app.require_subcommand(1);
  app.add_option("--format", G.format, "human or json")->check(CLI::IsMember({"human", "json"}));
  app.add_option("--jobs", G.jobs, "worker threads (default: SDOPS_JOBS or hardware)");
  app.add_option("-o,--output", G.output, "write the produced artifact here");
  app.add_flag("--unchecked", G.unchecked, "skip hypothesis checks in constructions");
  app.fallthrough();
  add_check(app);
  add_construct(app);
  add_homology(app);
  add_cocycle(app);
  add_chainmap(app);
  add_braid(app);
  add_linear(app);
  add_enumerate(app);

  try {
    app.parse(argc, argv);
    if (G.jobs) {
      set_default_jobs(G.jobs);
    } else if (const char* env = std::getenv("SDOPS_JOBS")) {
      std::size_t used = 0;
      std::string v = env;
      unsigned long n = 0;
      try {
        n = std::stoul(v, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != v.size() || n == 0) throw InputError("SDOPS_JOBS must be a positive integer");
      set_default_jobs(n);
    }
    const CLI::App* leaf = &app;
    while (!leaf->get_subcommands().empty()) leaf = leaf->get_subcommands().front();
    auto it = g_actions.find(leaf);
    if (it == g_actions.end()) throw InputError("incomplete command");
    it->second();
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis fails: " << e.what() << "\n";
    if (e.witness()) std::cerr << "  witness " << json(e.witness()->witness).dump() << "\n";
    return 1;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return g_exit;
}
