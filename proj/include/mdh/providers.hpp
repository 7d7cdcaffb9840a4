#pragma once

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mdh/json_io.hpp"
#include "mdh/polynomial.hpp"

namespace mdh {

enum class CycleKind { MD, DR, DR1 };
enum class Shape { H, G };
enum class Provenance { paper, derived, external };

std::string to_string(CycleKind k);
std::string to_string(Shape s);
std::string to_string(Provenance p);
CycleKind cycle_kind_from_string(const std::string& s);
Shape shape_from_string(const std::string& s);
Provenance provenance_from_string(const std::string& s);

/// Integral of psi_0^{psi_pow} lambda_lam over a cycle with n free markings.
/// Shape H: profile (-1, m_1..m_n, 2g-1-sum m). Shape G: profile (2g-2-sum m, m_1..m_n).
struct IntegralKey {
  CycleKind kind = CycleKind::MD;
  Shape shape = Shape::H;
  int g = 0;
  int n = 0;
  int psi_pow = 0;
  int lam = 0;

  auto operator<=>(const IntegralKey&) const = default;
  /// Total number of markings on the moduli space.
  int markings() const { return shape == Shape::H ? n + 2 : n + 1; }
  /// psi_pow + lam equals the dimension of the cycle.
  bool saturates() const;
  std::string str() const;
};

struct ProvidedPolynomial {
  Polynomial poly;
  Provenance provenance = Provenance::derived;
  std::string source;
};

/// Free variables of a key's profile, as affine polynomials in m_1..m_n (monomial basis).
std::vector<Polynomial> key_profile(const IntegralKey& key);

Polynomial genus0(const IntegralKey& key);

/// Pure psi integral over the moduli space of genus 0 or 1 curves with |dlist| markings.
Rational psi_genus01(int g, const std::vector<int>& dlist);

/// int_{DR_g(a_0..a_{N-1})} psi_0^{2g-3+N}: the top psi power on the first marking, any genus.
Polynomial dr_top_psi(int g, const std::vector<Polynomial>& profile);

/// Genus-1 DR integral psi_0^p lambda_l over an arbitrary affine profile (monomial basis).
Polynomial genus1_dr_profile(const std::vector<Polynomial>& profile, int psi_pow, int lam);

Polynomial genus1_dr(const IntegralKey& key);
Polynomial genus1_md(const IntegralKey& key);

class IntegralTable {
 public:
  /// Checks the load-time invariants and inserts (replacing an equal key is allowed only with an equal value).
  void insert(const IntegralKey& key, ProvidedPolynomial entry);
  const std::map<IntegralKey, ProvidedPolynomial>& entries() const { return entries_; }
  bool contains(const IntegralKey& key) const { return entries_.count(key) > 0; }

  static IntegralTable from_json(const Json& j);
  static IntegralTable load(const std::string& path);
  Json to_json() const;
  void save(const std::string& path) const;

  static void check_invariants(const IntegralKey& key, const Polynomial& p);

 private:
  std::map<IntegralKey, ProvidedPolynomial> entries_;
};

const ProvidedPolynomial& table_lookup(const IntegralTable& t, const IntegralKey& key);

class IntegralProvider {
 public:
  virtual ~IntegralProvider() = default;
  /// Throws CoverageError when the key cannot be served.
  virtual ProvidedPolynomial get(const IntegralKey& key) const = 0;
  Polynomial polynomial(const IntegralKey& key) const { return get(key).poly; }
};

/// MD key with k extra (-2)-markings, evaluated back on the original n variables.
Polynomial md_with_double_poles(const IntegralProvider& mdp, const IntegralKey& key, int k);

Polynomial dr1_from_md(const IntegralProvider& mdp, const IntegralKey& key);

/// Analytic genus 0 and 1, top-psi DR at any genus, and attached tables for the rest.
/// Results are memoized; concurrent lookups are safe.
class StandardProvider : public IntegralProvider {
 public:
  StandardProvider() = default;
  explicit StandardProvider(std::vector<IntegralTable> tables) : tables_(std::move(tables)) {}

  void attach(IntegralTable t);
  ProvidedPolynomial get(const IntegralKey& key) const override;

 private:
  ProvidedPolynomial compute(const IntegralKey& key) const;

  std::vector<IntegralTable> tables_;
  mutable std::mutex mutex_;
  mutable std::map<IntegralKey, ProvidedPolynomial> cache_;
};

/// Provider with the tables found in a directory (or the shipped data directory).
std::shared_ptr<StandardProvider> default_provider(const std::optional<std::string>& table_dir = std::nullopt);

}  // namespace mdh
