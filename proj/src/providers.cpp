#include "mdh/providers.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "mdh/errors.hpp"

namespace mdh {

std::string to_string(CycleKind k) {
  switch (k) {
    case CycleKind::MD: return "MD";
    case CycleKind::DR: return "DR";
    case CycleKind::DR1: return "DR1";
  }
  return "?";
}

std::string to_string(Shape s) { return s == Shape::H ? "H" : "G"; }

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::paper: return "paper";
    case Provenance::derived: return "derived";
    case Provenance::external: return "external";
  }
  return "?";
}

CycleKind cycle_kind_from_string(const std::string& s) {
  if (s == "MD") return CycleKind::MD;
  if (s == "DR") return CycleKind::DR;
  if (s == "DR1") return CycleKind::DR1;
  throw std::invalid_argument("unknown cycle kind: " + s);
}

Shape shape_from_string(const std::string& s) {
  if (s == "H") return Shape::H;
  if (s == "G") return Shape::G;
  throw std::invalid_argument("unknown shape: " + s);
}

Provenance provenance_from_string(const std::string& s) {
  if (s == "paper") return Provenance::paper;
  if (s == "derived") return Provenance::derived;
  if (s == "external") return Provenance::external;
  throw std::invalid_argument("unknown provenance: " + s);
}

bool IntegralKey::saturates() const {
  int N = markings();
  if (2 * g - 2 + N <= 0) return false;
  if (lam < 0 || lam > g || psi_pow < 0) return false;
  return psi_pow + lam == 2 * g - 3 + N;
}

std::string IntegralKey::str() const {
  std::ostringstream os;
  os << "(" << to_string(kind) << ", " << to_string(shape) << ", g=" << g << ", n=" << n << ", psi_pow=" << psi_pow
     << ", lam=" << lam << ")";
  return os.str();
}

std::vector<Polynomial> key_profile(const IntegralKey& key) {
  const int n = key.n;
  Polynomial sum(n, Basis::monomial);
  std::vector<Polynomial> vars;
  for (int i = 0; i < n; ++i) {
    vars.push_back(Polynomial::variable(n, i));
    sum += vars.back();
  }
  std::vector<Polynomial> prof;
  if (key.kind == CycleKind::DR) {
    if (key.shape == Shape::H) {
      prof.push_back(Polynomial(n, Basis::monomial));
      prof.insert(prof.end(), vars.begin(), vars.end());
      prof.push_back(-sum);
    } else {
      prof.push_back(-sum);
      prof.insert(prof.end(), vars.begin(), vars.end());
    }
  } else {
    if (key.shape == Shape::H) {
      prof.push_back(Polynomial::constant(n, -1));
      prof.insert(prof.end(), vars.begin(), vars.end());
      prof.push_back(Polynomial::constant(n, 2 * key.g - 1) - sum);
    } else {
      prof.push_back(Polynomial::constant(n, 2 * key.g - 2) - sum);
      prof.insert(prof.end(), vars.begin(), vars.end());
    }
  }
  return prof;
}

Polynomial genus0(const IntegralKey& key) {
  if (key.g != 0) throw std::invalid_argument("genus0 needs g = 0: " + key.str());
  if (key.lam != 0) throw std::invalid_argument("lambda classes vanish in genus 0: " + key.str());
  Basis b = key.kind == CycleKind::DR ? Basis::monomial : Basis::falling;
  if (!key.saturates()) return Polynomial(key.n, b);
  return Polynomial::constant(key.n, 1, b);
}

Rational psi_genus01(int g, const std::vector<int>& dlist) {
  if (g != 0 && g != 1) throw std::invalid_argument("psi_genus01 supports genus 0 and 1");
  const int n = static_cast<int>(dlist.size());
  if (2 * g - 2 + n <= 0) return 0;
  for (int d : dlist)
    if (d < 0) return 0;
  int total = std::accumulate(dlist.begin(), dlist.end(), 0);
  if (total != 3 * g - 3 + n) return 0;
  if (g == 0) {
    Rational r = factorial(n - 3);
    for (int d : dlist) r /= factorial(d);
    return r;
  }
  if (n == 1) return Rational(1, 24);
  // String equation on a tau_0, otherwise dilaton on a tau_1; one of them exists since sum d = n.
  for (int i = 0; i < n; ++i) {
    if (dlist[i] != 0) continue;
    std::vector<int> rest(dlist);
    rest.erase(rest.begin() + i);
    Rational r = 0;
    for (std::size_t j = 0; j < rest.size(); ++j) {
      if (rest[j] == 0) continue;
      --rest[j];
      r += psi_genus01(1, rest);
      ++rest[j];
    }
    return r;
  }
  for (int i = 0; i < n; ++i) {
    if (dlist[i] != 1) continue;
    std::vector<int> rest(dlist);
    rest.erase(rest.begin() + i);
    return Rational(2 * g - 2 + n - 1) * psi_genus01(1, rest);
  }
  throw std::logic_error("psi_genus01: no string or dilaton reduction applies");
}

namespace {

/// Coefficients c_k of sinh(z/2)/(z/2) = sum c_k z^{2k}.
Rational sinh_coeff(int k) { return Rational(1) / (Rational(mpz_class(1) << (2 * k)) * factorial(2 * k + 1)); }

}  // namespace

Polynomial dr_top_psi(int g, const std::vector<Polynomial>& profile) {
  if (profile.empty()) throw std::invalid_argument("dr_top_psi needs a marked point");
  const int nv = profile[0].nvars();
  // Series in z^2 with polynomial coefficients, truncated at z^{2g}.
  std::vector<Polynomial> acc(g + 1, Polynomial(nv, Basis::monomial));
  acc[0] = Polynomial::constant(nv, 1);
  for (std::size_t i = 1; i < profile.size(); ++i) {
    Polynomial a2 = profile[i].to_monomial() * profile[i].to_monomial();
    std::vector<Polynomial> factor(g + 1, Polynomial(nv, Basis::monomial));
    Polynomial apow = Polynomial::constant(nv, 1);
    for (int k = 0; k <= g; ++k) {
      factor[k] = apow * sinh_coeff(k);
      apow = apow * a2;
    }
    std::vector<Polynomial> next(g + 1, Polynomial(nv, Basis::monomial));
    for (int k = 0; k <= g; ++k)
      for (int j = 0; j + k <= g; ++j) next[k + j] += acc[k] * factor[j];
    acc = std::move(next);
  }
  // Reciprocal of sinh(z/2)/(z/2).
  std::vector<Rational> inv(g + 1);
  inv[0] = 1;
  for (int k = 1; k <= g; ++k) {
    Rational s = 0;
    for (int j = 1; j <= k; ++j) s += sinh_coeff(j) * inv[k - j];
    inv[k] = -s;
  }
  Polynomial out(nv, Basis::monomial);
  for (int k = 0; k <= g; ++k) out += acc[k] * inv[g - k];
  return out;
}

Polynomial genus1_dr_profile(const std::vector<Polynomial>& profile, int psi_pow, int lam) {
  const int N = static_cast<int>(profile.size());
  if (N == 0) throw std::invalid_argument("genus-1 DR needs a marked point");
  const int nv = profile[0].nvars();
  Polynomial out(nv, Basis::monomial);
  if (lam < 0 || lam > 1 || psi_pow < 0 || psi_pow + lam + 1 != N) return out;
  auto sq = [](const Polynomial& p) { return p.to_monomial() * p.to_monomial(); };
  const Rational l1(1, 24);

  // DR_1(a) = -lambda_1 + sum a_i^2/2 psi_i - 1/2 sum_{|S|>=2} a_S^2 delta_0^S, S on the rational component.
  if (lam == 0) out += Polynomial::constant(nv, -l1);
  for (int i = 0; i < N; ++i) {
    Rational w;
    if (lam == 1) {
      w = l1 * factorial(N - 1) / (factorial(i == 0 ? psi_pow + 1 : psi_pow));
    } else {
      std::vector<int> d(N, 0);
      d[0] = psi_pow;
      d[i] += 1;
      w = psi_genus01(1, d);
    }
    out += sq(profile[i]) * (w / 2);
  }
  // S containing marking 0 contributes only when it is everything, leaving a one-pointed genus-1 component.
  if (lam == 1 && psi_pow == N - 2) {
    Polynomial all(nv, Basis::monomial);
    for (const auto& a : profile) all += a.to_monomial();
    out -= sq(all) * (l1 / 2);
  }
  // S = {i, j} away from 0: a rational bubble, the psi and lambda classes live on the genus-1 side.
  if (N < 3) return out;
  Rational w;
  if (lam == 1) {
    w = l1;
  } else {
    std::vector<int> d(N - 1, 0);
    d[0] = psi_pow;
    w = psi_genus01(1, d);
  }
  for (int i = 1; i < N; ++i)
    for (int j = i + 1; j < N; ++j) out -= sq(profile[i] + profile[j]) * (w / 2);
  return out;
}

Polynomial genus1_dr(const IntegralKey& key) {
  if (key.g != 1) throw std::invalid_argument("genus1_dr needs g = 1: " + key.str());
  IntegralKey k = key;
  k.kind = CycleKind::DR;
  if (!k.saturates()) return Polynomial(key.n, Basis::monomial);
  return genus1_dr_profile(key_profile(k), key.psi_pow, key.lam);
}

Polynomial genus1_md(const IntegralKey& key) {
  if (key.g != 1) throw std::invalid_argument("genus1_md needs g = 1: " + key.str());
  IntegralKey k = key;
  k.kind = CycleKind::MD;
  if (!k.saturates()) return Polynomial(key.n, Basis::falling);
  // In genus 1 the twisted DR cycle equals DR; subtract the genus-0 term carrying one extra (-2)-marking.
  Polynomial p = genus1_dr_profile(key_profile(k), key.psi_pow, key.lam);
  if (key.lam == 1) {
    IntegralKey k0{CycleKind::MD, key.shape, 0, key.n + 1, key.psi_pow, 0};
    if (k0.saturates()) p -= Polynomial::constant(key.n, Rational(1, 24));
  }
  return p.to_falling();
}

void IntegralTable::check_invariants(const IntegralKey& key, const Polynomial& p) {
  if (p.nvars() != key.n)
    throw TableError("entry " + key.str() + " has " + std::to_string(p.nvars()) + " variables");
  if (p.degree() > 2 * key.g) throw TableError("entry " + key.str() + " has degree above 2g");
  if (key.kind == CycleKind::DR && p.basis() != Basis::monomial)
    throw TableError("DR entry " + key.str() + " must be in the monomial basis");
  if (key.kind != CycleKind::DR && p.basis() != Basis::falling)
    throw TableError("entry " + key.str() + " must be in the falling-factorial basis");
  if (key.kind == CycleKind::MD && key.shape == Shape::H && !p.is_zero() && !p.to_falling().is_homogeneous(2 * key.g))
    throw TableError("MD shape-H entry " + key.str() + " is not homogeneous of factorial degree 2g");
}

void IntegralTable::insert(const IntegralKey& key, ProvidedPolynomial entry) {
  check_invariants(key, entry.poly);
  auto it = entries_.find(key);
  if (it != entries_.end()) {
    if (!(it->second.poly == entry.poly)) throw TableError("conflicting entries for " + key.str());
    return;
  }
  entries_.emplace(key, std::move(entry));
}

IntegralTable IntegralTable::from_json(const Json& j) {
  IntegralTable t;
  for (const auto& e : j.at("entries")) {
    IntegralKey key{cycle_kind_from_string(e.at("kind")), shape_from_string(e.at("shape")), e.at("g").get<int>(),
                    e.at("n").get<int>(),                  e.at("psi_pow").get<int>(),       e.at("lam").get<int>()};
    t.insert(key, {polynomial_from_json(e.at("poly")), provenance_from_string(e.at("provenance")),
                   e.value("source", std::string())});
  }
  return t;
}

IntegralTable IntegralTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TableError("cannot open table " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw TableError("malformed table " + path + ": " + e.what());
  }
  return from_json(j);
}

Json IntegralTable::to_json() const {
  Json entries = Json::array();
  for (const auto& [k, e] : entries_) {
    entries.push_back(Json{{"kind", mdh::to_string(k.kind)},
                           {"shape", mdh::to_string(k.shape)},
                           {"g", k.g},
                           {"n", k.n},
                           {"psi_pow", k.psi_pow},
                           {"lam", k.lam},
                           {"poly", mdh::to_json(e.poly)},
                           {"provenance", mdh::to_string(e.provenance)},
                           {"source", e.source}});
  }
  return Json{{"entries", entries}};
}

void IntegralTable::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw TableError("cannot write table " + path);
  out << to_json().dump(1) << "\n";
}

const ProvidedPolynomial& table_lookup(const IntegralTable& t, const IntegralKey& key) {
  auto it = t.entries().find(key);
  if (it == t.entries().end()) throw CoverageError("no table entry for " + key.str());
  return it->second;
}

Polynomial md_with_double_poles(const IntegralProvider& mdp, const IntegralKey& key, int k) {
  IntegralKey big = key;
  big.kind = CycleKind::MD;
  big.n = key.n + k;
  Polynomial p = mdp.polynomial(big);
  std::vector<Polynomial> images;
  for (int i = 0; i < key.n; ++i) images.push_back(Polynomial::variable(key.n, i));
  for (int i = 0; i < k; ++i) images.push_back(Polynomial::constant(key.n, -2));
  return p.compose(images).to_falling();
}

Polynomial dr1_from_md(const IntegralProvider& mdp, const IntegralKey& key) {
  Polynomial out(key.n, Basis::falling);
  for (int k = 0; k <= std::min(key.g, key.lam); ++k) {
    IntegralKey lower{CycleKind::MD, key.shape, key.g - k, key.n, key.psi_pow, key.lam - k};
    mpz_class p24 = 1;
    for (int i = 0; i < k; ++i) p24 *= 24;
    Rational w = Rational(1) / (factorial(k) * Rational(p24));
    out += md_with_double_poles(mdp, lower, k) * w;
  }
  return out.to_falling();
}

void StandardProvider::attach(IntegralTable t) {
  std::lock_guard lock(mutex_);
  tables_.push_back(std::move(t));
  cache_.clear();
}

ProvidedPolynomial StandardProvider::get(const IntegralKey& key) const {
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  ProvidedPolynomial r = compute(key);
  std::lock_guard lock(mutex_);
  return cache_.emplace(key, std::move(r)).first->second;
}

ProvidedPolynomial StandardProvider::compute(const IntegralKey& key) const {
  if (key.g < 0 || key.n < 0 || key.lam < 0)
    throw std::invalid_argument("invalid integral key " + key.str());
  Basis b = key.kind == CycleKind::DR ? Basis::monomial : Basis::falling;
  if (!key.saturates()) return {Polynomial(key.n, b), Provenance::derived, "dimension"};
  {
    std::lock_guard lock(mutex_);
    for (const auto& t : tables_)
      if (t.contains(key)) return table_lookup(t, key);
  }
  if (key.g == 0) return {genus0(key), Provenance::paper, "genus0"};
  switch (key.kind) {
    case CycleKind::DR:
      if (key.g == 1) return {genus1_dr(key), Provenance::derived, "genus1-dr"};
      if (key.lam == 0) return {dr_top_psi(key.g, key_profile(key)), Provenance::derived, "dr-top-psi"};
      break;
    case CycleKind::MD:
      if (key.g == 1) return {genus1_md(key), Provenance::derived, "genus1-md"};
      break;
    case CycleKind::DR1:
      return {dr1_from_md(*this, key), Provenance::derived, "dr1-from-md"};
  }
  throw CoverageError("no provider entry for " + key.str());
}

std::shared_ptr<StandardProvider> default_provider(const std::optional<std::string>& table_dir) {
  std::string dir;
  if (table_dir) {
    dir = *table_dir;
  } else if (const char* env = std::getenv("MDH_TABLE_DIR")) {
    dir = env;
  } else {
    dir = MDH_DATA_DIR;
  }
  auto p = std::make_shared<StandardProvider>();
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    if (table_dir) throw TableError("table directory not found: " + dir);
    return p;
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) p->attach(IntegralTable::load(f.string()));
  return p;
}

}  // namespace mdh
