#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mdh/json_io.hpp"
#include "mdh/loopspace.hpp"
#include "mdh/providers.hpp"
#include "mdh/urep.hpp"

namespace mdh {

struct DensitySpec {
  CycleKind kind = CycleKind::MD;
  Shape family = Shape::H;
  int d = 0;
  TruncationSpec trunc;
  std::shared_ptr<const IntegralProvider> provider;
  /// Largest genus included; -1 means hbar_order + eps_order/2.
  int gmax = -1;

  int genus_max() const;
  void validate() const;
  DensitySpec with_d(int d2) const;
  DensitySpec with_kind(CycleKind k) const;
  DensitySpec with_family(Shape s) const;
};

/// Truncation whose eps/hbar orders hold genus <= gmax densities and their commutators.
TruncationSpec genus_window(int gmax, long m_lo = -6, long m_hi = 6, int n_max = 6);

/// Exact u-side density. Pieces that are not assembled (G-family n=0 holomorphic terms) are
/// reported in `flags` when given.
UPolynomial density_u(const DensitySpec& spec, std::vector<std::string>* flags = nullptr);

/// q-side density: density_u mapped through the bridge and truncated to the window.
QElement build_density(const DensitySpec& spec);
QElement hamiltonian(const DensitySpec& spec);

/// q_{-2} -> q_{-2} - eps^2/24 (along the unit), i.e. u -> u + eps^2/(24 x^2).
QElement dr1_substitute(const QElement& f);
UPolynomial dr1_substitute_u(const UPolynomial& p);

enum class Verdict { pass, fail, inconclusive };
std::string to_string(Verdict v);

struct Report {
  std::string check;
  Verdict verdict = Verdict::inconclusive;
  std::string witness;
  Json window = Json::object();
  std::size_t drops = 0;
  /// Largest hbar + eps/2 weight compared.
  int max_order = -1;
  Json details = Json::object();

  bool passed() const { return verdict == Verdict::pass; }
  Json to_json() const;
};

/// Slices with hbar + eps/2 <= max_weight.
UPolynomial weight_slice(const UPolynomial& p, int max_weight);

Report verify_integrability(int d1, int d2, const DensitySpec& base);
Report verify_tau_symmetry(int d1, int d2, const DensitySpec& base);
Report verify_main_theorem(int g, int d, int l, int n, const IntegralProvider& md, const IntegralProvider& dr);
Report verify_degree_zero(int d, const DensitySpec& base);
Report verify_dr1_link(int d, const DensitySpec& base);

}  // namespace mdh
