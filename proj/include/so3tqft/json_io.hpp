#pragma once

// JSON encodings of exact values. Integers that do not fit in int64 are
// written as decimal strings; rationals as [num, den].

#include "cyclo.hpp"

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include <complex>

namespace so3::json {

using nlohmann::json;

inline json integer(const mpz_class& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

inline json rational(const mpq_class& q) { return json::array({integer(q.get_num()), integer(q.get_den())}); }

inline json complex(std::complex<double> c) { return json::array({c.real(), c.imag()}); }

// {"modulus": N, "coeffs": [[num, den], ...], "complex": [re, im]}; coeffs
// are in the power basis of Q(zeta_N).
inline json cyclotomic(const CycNumber& x) {
    json coeffs = json::array();
    for (const auto& q : x.coeffs()) coeffs.push_back(rational(q));
    return {{"modulus", x.modulus()}, {"coeffs", std::move(coeffs)}, {"complex", complex(x.embed())}};
}

}  // namespace so3::json
