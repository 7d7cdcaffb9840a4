#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "mdh/loopspace.hpp"
#include "mdh/urep.hpp"

namespace mdh {

/// Outcome of comparing the closed u-side commutator with the q-side Moyal commutator.
struct RouteComparison {
  int max_order = 0;
  std::vector<std::size_t> compared;  // certified monomials per hbar order (index n)
  std::vector<std::size_t> mismatches;
  std::string witness;
  bool agree() const { return witness.empty(); }
};

/// Compares phi_to_q(commutator_closed(f, g)) against commutator(phi_to_q f, integrate_dx(phi_to_q g))
/// for single u-monomials f and g, order by order up to hbar^max_order. Only q-monomials whose
/// every contraction stays inside the window are compared; the rest are not certified.
RouteComparison compare_commutator_routes(const UMonomial& f, const UMonomial& g, const TruncationSpec& window,
                                          int max_order);

/// Predicate on output q-monomials of the q-side commutator of phi_to_q(f) with the integrated
/// phi_to_q(g): true when no contribution through hbar^max_order was lost to the window.
std::function<bool(const QMonomial&)> commutator_certifier(const UPolynomial& f, const UPolynomial& g,
                                                           const TruncationSpec& window, int max_order);

}  // namespace mdh
