// mdh: densities, verification suites, correlators and intersection tables from the command line.
// Every command prints one JSON document. Exit codes: 0 pass, 1 verification failure,
// 2 usage error, 3 provider coverage error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>

#include "mdh/derivation.hpp"
#include "mdh/errors.hpp"
#include "mdh/suites.hpp"
#include "mdh/tau.hpp"

using namespace mdh;

namespace {

enum Exit { exit_pass = 0, exit_fail = 1, exit_usage = 2, exit_coverage = 3 };

struct Common {
  bool pretty = false;
  std::string tables;
  int gmax = 1;
  std::optional<long> m_min, m_max;
  std::optional<int> n_max, eps_order, hbar_order;
  std::uint64_t seed = default_seed;
};

void emit(const Json& j, const Common& c) { std::cout << (c.pretty ? j.dump(2) : j.dump()) << "\n"; }

TruncationSpec window_from(const Common& c) {
  TruncationSpec t = genus_window(c.gmax);
  if (c.m_min) t.m_min = *c.m_min;
  if (c.m_max) t.m_max = *c.m_max;
  if (c.n_max) t.n_max = *c.n_max;
  if (c.eps_order) t.eps_order = *c.eps_order;
  if (c.hbar_order) t.hbar_order = *c.hbar_order;
  t.validate();
  return t;
}

std::shared_ptr<const IntegralProvider> provider_from(const Common& c) {
  return c.tables.empty() ? default_provider() : default_provider(c.tables);
}

void add_window_flags(CLI::App* app, Common& c) {
  app->add_option("--gmax", c.gmax, "largest genus (sets eps/hbar orders)")->check(CLI::Range(0, 4));
  app->add_option("--mmin", c.m_min, "smallest q index in the window");
  app->add_option("--mmax", c.m_max, "largest q index in the window");
  app->add_option("--nmax", c.n_max, "largest q-degree in the window")->check(CLI::PositiveNumber);
  app->add_option("--eps-order", c.eps_order, "eps truncation order")->check(CLI::NonNegativeNumber);
  app->add_option("--hbar-order", c.hbar_order, "hbar truncation order")->check(CLI::NonNegativeNumber);
}

// Coefficient of eps^e hbar^h as a plain u-polynomial, rendered as text.
std::string slice_text(const UPolynomial& p, int e, int h) {
  UPolynomial out(p.bounds());
  for (const auto& [mon, c] : p.terms()) out.add_term(mon, c.coeff(e, h));
  return out.str();
}

Json slices_json(const UPolynomial& p) {
  std::set<std::pair<int, int>> idx;
  for (const auto& [mon, c] : p.terms())
    for (const auto& [i, v] : c.terms()) idx.insert({i.eps, i.hbar});
  Json out = Json::array();
  for (const auto& [e, h] : idx) out.push_back(Json{{"eps", e}, {"hbar", h}, {"u", slice_text(p, e, h)}});
  return out;
}

std::string upper(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

CycleKind kind_arg(const std::string& s) { return cycle_kind_from_string(upper(s)); }
Shape family_arg(const std::string& s) { return shape_from_string(upper(s)); }

DensitySpec density_spec(const Common& c, const std::string& kind, const std::string& family, int d) {
  DensitySpec s;
  s.kind = kind_arg(kind);
  s.family = family_arg(family);
  s.d = d;
  s.trunc = window_from(c);
  s.provider = provider_from(c);
  s.gmax = c.gmax;
  s.validate();
  return s;
}

struct DensityArgs {
  std::string kind = "md", family = "h";
  int d = 0;
};

int cmd_density(const DensityArgs& a, const Common& c) {
  DensitySpec s = density_spec(c, a.kind, a.family, a.d);
  std::vector<std::string> flags;
  UPolynomial u = density_u(s, &flags);
  QElement q = phi_to_q(u, s.trunc);
  Json out{{"command", "density"},
           {"kind", to_string(s.kind)},
           {"family", to_string(s.family)},
           {"d", s.d},
           {"gmax", s.gmax},
           {"window", to_json(s.trunc)},
           {"u", to_json(u)},
           {"u_slices", slices_json(u)},
           {"q", to_json(q)},
           {"drops", q.drops()},
           {"flags", flags}};
  try {
    UPolynomial back = recognize_u(q);
    out["u_reconstructed"] = back == u;
  } catch (const NotInImageError&) {
    out["u_reconstructed"] = false;
  } catch (const WindowError&) {
    out["u_reconstructed"] = false;
  }
  emit(out, c);
  return exit_pass;
}

}  // namespace

namespace {

struct VerifyArgs {
  std::string suite;
  std::string kind = "md";
  std::optional<int> d, d1, d2, d_max;
  int g = 1, l = 0, n = 2, count = -1;
  long A_max = 12;
};

const std::vector<std::string> verify_suites{"commutator",  "ehrhart",     "bracket-axioms", "degree-law",
                                             "integrability", "tau-symmetry", "main-theorem",  "dr1-link",
                                             "degree-zero"};

std::vector<int> d_range(const VerifyArgs& a, std::optional<int> one, int lo, int hi_default) {
  if (one) return {*one};
  std::vector<int> out;
  for (int d = lo; d <= a.d_max.value_or(hi_default); ++d) out.push_back(d);
  return out;
}

std::vector<Report> run_suite(const VerifyArgs& a, const Common& c) {
  const std::string& s = a.suite;
  if (s == "ehrhart") return {run_ehrhart_suite(c.n_max.value_or(4), a.d_max.value_or(4), a.A_max)};
  if (s == "commutator") {
    TruncationSpec t;
    t.m_min = c.m_min.value_or(-6);
    t.m_max = c.m_max.value_or(6);
    t.n_max = c.n_max.value_or(8);
    t.hbar_order = c.hbar_order.value_or(3);
    t.validate();
    return {run_commutator_suite(c.seed, a.count < 0 ? 200 : a.count, t, t.hbar_order)};
  }
  if (s == "bracket-axioms") return {run_bracket_axioms_suite(c.seed, a.count < 0 ? 50 : a.count)};
  if (s == "degree-law") return {run_degree_law_suite(c.seed, a.count < 0 ? 200 : a.count)};
  if (s == "main-theorem") {
    auto p = provider_from(c);
    return {verify_main_theorem(a.g, a.d.value_or(0), a.l, a.n, *p, *p)};
  }
  DensitySpec base = density_spec(c, a.kind, "h", 0);
  std::vector<Report> out;
  if (s == "integrability" || s == "tau-symmetry") {
    for (int d1 : d_range(a, a.d1, 0, 3))
      for (int d2 : d_range(a, a.d2, 0, 3)) {
        if (!a.d1 && !a.d2 && d2 < d1) continue;
        out.push_back(s == "integrability" ? verify_integrability(d1, d2, base) : verify_tau_symmetry(d1, d2, base));
      }
    return out;
  }
  if (s == "dr1-link")
    for (int d : d_range(a, a.d, -1, 2)) out.push_back(verify_dr1_link(d, base));
  if (s == "degree-zero")
    for (int d : d_range(a, a.d, -1, 2)) out.push_back(verify_degree_zero(d, base));
  return out;
}

int cmd_verify(const VerifyArgs& a, const Common& c) {
  std::vector<Report> reports = run_suite(a, c);
  Json list = Json::array(), inconclusive = Json::array();
  int pass = 0, fail = 0, unknown = 0;
  for (const Report& r : reports) {
    list.push_back(r.to_json());
    if (r.verdict == Verdict::pass) ++pass;
    else if (r.verdict == Verdict::fail) ++fail;
    else {
      ++unknown;
      inconclusive.push_back(r.to_json());
    }
  }
  Json out{{"command", "verify"},
           {"suite", a.suite},
           {"summary", {{"pass", pass}, {"fail", fail}, {"inconclusive", unknown}}},
           {"reports", list},
           {"inconclusive", inconclusive}};
  emit(out, c);
  return fail == 0 && unknown == 0 && pass > 0 ? exit_pass : exit_fail;
}

}  // namespace

namespace {

struct CorrelatorArgs {
  std::string model = "wk";
  std::vector<int> d;
  int g = 0, l = 0;
  std::string batch;
};

int cmd_correlator(const CorrelatorArgs& a, const Common& c) {
  auto p = provider_from(c);
  if (!a.batch.empty()) {
    std::ifstream in(a.batch);
    if (!in) throw std::invalid_argument("cannot open " + a.batch);
    emit(Json{{"command", "correlator"}, {"results", correlator_batch(Json::parse(in), p)}}, c);
    return exit_pass;
  }
  CorrelatorQuery q{model_from_string(a.model), a.d, a.g, a.l};
  std::optional<TruncationSpec> w;
  if (c.m_min || c.m_max || c.n_max || c.eps_order || c.hbar_order) {
    TruncationSpec t = correlator_window(q);
    if (c.m_min) t.m_min = *c.m_min;
    if (c.m_max) t.m_max = *c.m_max;
    if (c.n_max) t.n_max = *c.n_max;
    if (c.eps_order) t.eps_order = *c.eps_order;
    if (c.hbar_order) t.hbar_order = *c.hbar_order;
    w = t;
  }
  CorrelatorResult r = correlator(q, p, w);
  Json out{{"command", "correlator"}, {"model", to_string(q.model)}, {"d", q.d}, {"g", q.g}};
  if (q.model == Model::QWK) {
    out["l"] = q.l;
    out["on_gate"] = q.on_gate();
  }
  out["value"] = r.value.get_str();
  out["window"] = to_json(r.window);
  out["drops"] = r.drops;
  emit(out, c);
  return exit_pass;
}

struct TableArgs {
  std::vector<std::string> files;
  std::string kind = "md", family = "h", output;
  int g = 0, n = 1, psi = 0, lam = 0, d_max = 7;
};

int cmd_table_check(const TableArgs& a, const Common& c) {
  Json out{{"command", "table check"}, {"files", Json::array()}};
  for (const std::string& f : a.files) {
    IntegralTable t = IntegralTable::load(f);
    out["files"].push_back(Json{{"path", f}, {"entries", t.entries().size()}});
  }
  emit(out, c);
  return exit_pass;
}

int cmd_table_get(const TableArgs& a, const Common& c) {
  IntegralKey key{kind_arg(a.kind), family_arg(a.family), a.g, a.n, a.psi, a.lam};
  ProvidedPolynomial e = provider_from(c)->get(key);
  emit(Json{{"command", "table get"},
            {"key", key.str()},
            {"poly", to_json(e.poly)},
            {"provenance", to_string(e.provenance)},
            {"source", e.source}},
       c);
  return exit_pass;
}

int cmd_table_derive(const TableArgs& a, const Common& c) {
  StandardProvider genus01;
  Json log;
  IntegralTable t = derive_genus2_md_table(a.d_max, genus01, &log);
  if (!a.output.empty()) t.save(a.output);
  emit(Json{{"command", "table derive"}, {"entries", t.entries().size()}, {"output", a.output}, {"log", log}}, c);
  return exit_pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact workbench for meromorphic-differential and DR hierarchies"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_flag("--pretty", c.pretty, "indented JSON");
  app.add_option("--tables", c.tables, "directory of intersection tables (default: $MDH_TABLE_DIR)");
  app.add_option("--seed", c.seed, "seed for randomized corpora");

  DensityArgs da;
  auto* density = app.add_subcommand("density", "build a hamiltonian density");
  density->add_option("--kind", da.kind, "md, dr or dr1");
  density->add_option("--family", da.family, "h or g");
  density->add_option("--d", da.d, "index d")->required();
  add_window_flags(density, c);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", va.suite, "suite name")->required()->check(CLI::IsMember(verify_suites));
  verify->add_option("--kind", va.kind, "md, dr or dr1");
  verify->add_option("--d", va.d, "index d");
  verify->add_option("--d1", va.d1, "first index");
  verify->add_option("--d2", va.d2, "second index");
  verify->add_option("--dmax", va.d_max, "largest index swept");
  verify->add_option("--g", va.g, "genus (main-theorem)");
  verify->add_option("--l", va.l, "lambda power (main-theorem)");
  verify->add_option("--n", va.n, "number of m-variables (main-theorem)");
  verify->add_option("--Amax", va.A_max, "largest A (ehrhart)");
  verify->add_option("--count", va.count, "corpus size");
  add_window_flags(verify, c);

  CorrelatorArgs ca;
  auto* corr = app.add_subcommand("correlator", "tau-function correlator");
  corr->add_option("--model", ca.model, "wk, bgw or qwk");
  corr->add_option("--d", ca.d, "insertions d_1 ... d_n");
  corr->add_option("--g", ca.g, "genus");
  corr->add_option("--l", ca.l, "Hodge split index (qwk)");
  corr->add_option("--batch", ca.batch, "JSON file with a list of queries");
  add_window_flags(corr, c);

  TableArgs ta;
  auto* table = app.add_subcommand("table", "intersection tables");
  table->require_subcommand(1);
  auto* tcheck = table->add_subcommand("check", "load table files and check their invariants");
  tcheck->add_option("files", ta.files, "table files")->required()->check(CLI::ExistingFile);
  auto* tget = table->add_subcommand("get", "look up one intersection polynomial");
  tget->add_option("--kind", ta.kind, "md, dr or dr1");
  tget->add_option("--family", ta.family, "h or g");
  tget->add_option("--g", ta.g, "genus");
  tget->add_option("--n", ta.n, "number of m-variables")->required();
  tget->add_option("--psi", ta.psi, "psi power");
  tget->add_option("--lam", ta.lam, "lambda index");
  auto* tderive = table->add_subcommand("derive", "derive genus-2 MD tables");
  tderive->add_option("--dmax", ta.d_max, "largest d")->check(CLI::Range(-1, 8));
  tderive->add_option("-o,--output", ta.output, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_pass : exit_usage;
  }

  try {
    if (*density) return cmd_density(da, c);
    if (*verify) return cmd_verify(va, c);
    if (*corr) {
      if (ca.batch.empty() && ca.d.empty()) throw std::invalid_argument("correlator needs --d or --batch");
      return cmd_correlator(ca, c);
    }
    if (*tcheck) return cmd_table_check(ta, c);
    if (*tget) return cmd_table_get(ta, c);
    if (*tderive) return cmd_table_derive(ta, c);
  } catch (const CoverageError& e) {
    std::cerr << "coverage: " << e.what() << "\n";
    return exit_coverage;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency: " << e.what() << "\n";
    return exit_fail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
