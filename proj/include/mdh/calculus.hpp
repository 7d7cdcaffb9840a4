#pragma once

#include <string>

#include "mdh/loopspace.hpp"
#include "mdh/urep.hpp"

namespace mdh {

/// d/dx on B: (ix)^k -> i k (ix)^{k-1}.
QElement dx_q(const QElement& f);

/// Total x-derivative d/dx + sum u_{k+1} d/du_k, with d/dx x^{-j} = -j x^{-j-1}.
UPolynomial dx_u(const UPolynomial& p);
UPolynomial dx_u(const UPolynomial& p, int times);

/// Partial derivative with respect to u_k^alpha.
UPolynomial partial_u(const UPolynomial& p, const UVar& v);
/// Partial derivative with respect to q_m^alpha (keeps the integration flag).
QElement partial_q(const QElement& f, const QVar& v);

/// sum_s (-d/dx)^s d/du_s^alpha.
UPolynomial variational_derivative_u(const UPolynomial& p, int alpha = 1);

/// sum_m (ix)^{-m-1} dF/dq_m^alpha for an integrated F, within its window.
QElement variational_derivative(const QElement& F, int alpha = 1);

/// True when the density integrates to zero: every variational derivative vanishes.
bool integrates_to_zero(const UPolynomial& p);

struct FunctionalComparison {
  bool equal = false;
  std::string witness;
};

/// Structural comparison of integrated representatives; throws WindowError on different windows.
FunctionalComparison functional_equal(const QElement& F, const QElement& G);

}  // namespace mdh
