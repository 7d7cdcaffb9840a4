#pragma once

#include <vector>

#include "mdh/coeffring.hpp"
#include "mdh/loopspace.hpp"
#include "mdh/urep.hpp"

namespace mdh {

/// {f, G} = sum_k i k eta^{ab} df/dq_{k-1}^a dG/dq_{-k-1}^b. The result is integrated iff f is.
QElement poisson(const QElement& f, const QElement& G);

/// u-side Poisson bracket of a density with a local functional:
/// sum_s df/du_s^a eta^{ab} d_x^{s+1} (delta g / delta u^b).
UPolynomial poisson_u(const UPolynomial& f, const UPolynomial& g);

/// Normal-ordered star product of integrated elements, expanded up to hbar^hbar_order.
QElement star(const QElement& F, const QElement& G, int hbar_order);

/// Lifted commutator [f, G] = f*G - G*f for integrated G, up to the window's hbar order.
QElement commutator(const QElement& f, const QElement& G);

/// Closed u-side formula for [f, g-bar]:
/// sum_n (-i)^{n-1} hbar^n / n! sum (d^n f / du_s) (-1)^R prod eta (s_i+r_i+1)! / (S+R+2n-1)!
///   d_x^{S+R+2n-1} (d^n g / du_r).
/// Orders hbar^n with n > max_n (default: the bound's hbar order) are not computed.
UPolynomial commutator_closed(const UPolynomial& f, const UPolynomial& g, int max_n = -1);

/// (prod d_i! / (sum d + n - 1)!) (A + n - 1)^{(sum d + n - 1)}.
Rational ehrhart(const std::vector<int>& d, long A);

/// Direct sum over compositions a_1 + ... + a_n = A of prod a_i^{(d_i)}; A must not exceed cap.
Rational ehrhart_bruteforce(const std::vector<int>& d, long A, long cap = 60);

}  // namespace mdh
