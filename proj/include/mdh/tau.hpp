#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mdh/hierarchy.hpp"

namespace mdh {

enum class Model { WK, BGW, QWK };
std::string to_string(Model m);
Model model_from_string(const std::string& s);

enum class BracketMode { classical, quantum };

struct CorrelatorQuery {
  Model model = Model::WK;
  std::vector<int> d;
  int g = 0;
  /// Hodge split index, QWK only.
  int l = 0;

  void validate() const;
  /// Sum d_i = 4g - 2 + n - l.
  bool on_gate() const;
};

/// Smallest window the query needs: m in [-(2g+1), 2g+1], n_max = 2g + n, and the eps/hbar
/// orders of the extraction.
TruncationSpec correlator_window(const CorrelatorQuery& q);

/// Nested bracket of MD densities, u-side: {...{h_{d_1-1}, h_{d_2}-bar}..., h_{d_n}-bar}
/// (classical: hbar^0 densities, Poisson bracket) or the commutator nesting of H_d (quantum).
UPolynomial iterated_bracket_u(const std::vector<int>& d, BracketMode mode, const DensitySpec& base);
/// The same bracket pushed through the bridge to the window of `base`.
QElement iterated_bracket(const std::vector<int>& d, BracketMode mode, const DensitySpec& base);

/// Jet evaluation at x = 0 for u(x) = x (WK, QWK) or u(x) = eps^2/(8(1-x)^2) (BGW).
CoeffSeries evaluate_jet_at_zero(const UPolynomial& p, Model m);

struct CorrelatorResult {
  Rational value;
  /// Values from the q-side evaluation and from direct jet substitution; they must agree.
  Rational q_value;
  Rational u_value;
  TruncationSpec window;
  std::size_t drops = 0;
};

/// Evaluates a query on the given window (default: correlator_window).
/// Throws ConsistencyError on a nonzero imaginary part or disagreeing routes.
CorrelatorResult correlator(const CorrelatorQuery& q, std::shared_ptr<const IntegralProvider> provider,
                            std::optional<TruncationSpec> window = std::nullopt);

Rational wk_correlator(const std::vector<int>& d, int g, std::shared_ptr<const IntegralProvider> provider);
Rational bgw_correlator(const std::vector<int>& d, int g, std::shared_ptr<const IntegralProvider> provider);
Rational qwk_correlator(const std::vector<int>& d, int g, int l, std::shared_ptr<const IntegralProvider> provider);

/// [{"model":"WK","d":[2],"g":1}, ...] -> the same records with "value" filled in.
Json correlator_batch(const Json& queries, std::shared_ptr<const IntegralProvider> provider);

}  // namespace mdh
