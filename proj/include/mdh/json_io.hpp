#pragma once

#include <json.hpp>

#include "mdh/coeffring.hpp"
#include "mdh/loopspace.hpp"
#include "mdh/polynomial.hpp"
#include "mdh/urep.hpp"

namespace mdh {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const GaussianRational& a);
GaussianRational gaussian_from_json(const Json& j);

/// Series as {"eps_order":..,"hbar_order":..,"terms":[{"eps":e,"hbar":h,"c":{re,im}}]}.
Json to_json(const CoeffSeries& s);
CoeffSeries series_from_json(const Json& j);

/// {"nvars":n,"basis":"falling"|"monomial","coeffs":[{"s":[...],"c":"p/q"}]}.
Json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);

Json to_json(const PhaseFrame& f);
Json to_json(const TruncationSpec& t);
TruncationSpec trunc_from_json(const Json& j);

/// {"frame":..,"trunc":..,"integrated":b,"terms":[{"q":[[m,a],..],"xpow":k,"coeff":{..}}]}.
Json to_json(const QElement& f);

/// {"bounds":..,"terms":[{"u":[[k,a],..],"xneg":j,"coeff":{..}}],"text":".."}.
Json to_json(const UPolynomial& p);

}  // namespace mdh
