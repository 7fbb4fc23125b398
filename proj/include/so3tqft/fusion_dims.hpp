#pragma once

// Fusion rules and dimensions of the spaces attached to labeled surfaces.

#include "numtheory.hpp"

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace so3 {

inline bool is_label(long h, long r) { return h >= 0 && h <= r - 3 && h % 2 == 0; }

inline void require_label(long h, long r) {
    if (!is_label(h, r))
        throw usage_error("label " + std::to_string(h) + " is not an even integer in [0, " + std::to_string(r - 3) +
                          "]");
}

inline int fusion_coeff(long a, long b, long c, long r) {
    require_level(r);
    require_label(a, r);
    require_label(b, r);
    require_label(c, r);
    const long lo = a > b ? a - b : b - a;
    return (lo <= c && c <= a + b && a + b + c <= 2 * (r - 2)) ? 1 : 0;
}

struct SurfaceSpec {
    long r = 0;
    long genus = 0;
    std::vector<long> boundary_labels;
};

namespace detail {

// Admissible c for fixed a and h form the even interval [|a-h|, min(a+h, 2r-4-a-h)].
inline std::pair<long, long> fusion_range(long a, long h, long r) {
    return {a > h ? a - h : h - a, std::min(a + h, 2 * (r - 2) - a - h)};
}

// (v N_h)_c = sum_a v_a N(a, h, c), by prefix sums over label indices.
inline std::vector<mpz_class> apply_fusion(const std::vector<mpz_class>& v, long h, long r) {
    const std::size_t k = v.size();
    std::vector<mpz_class> prefix(k + 1, 0);
    for (std::size_t a = 0; a < k; ++a) prefix[a + 1] = prefix[a] + v[a];
    std::vector<mpz_class> out(k, 0);
    for (std::size_t c = 0; c < k; ++c) {
        const auto [lo, hi] = fusion_range(2 * static_cast<long>(c), h, r);
        if (lo <= hi) out[c] = prefix[static_cast<std::size_t>(hi / 2) + 1] - prefix[static_cast<std::size_t>(lo / 2)];
    }
    return out;
}

// Gluing a handle (a one-holed torus) onto the chain: v -> sum_x v N_x N_x.
inline std::vector<mpz_class> apply_handle(const std::vector<mpz_class>& v, long r) {
    std::vector<mpz_class> out(v.size(), 0);
    for (long x = 0; x <= r - 3; x += 2) {
        const auto w = apply_fusion(apply_fusion(v, x, r), x, r);
        for (std::size_t c = 0; c < v.size(); ++c) out[c] += w[c];
    }
    return out;
}

}  // namespace detail

inline void validate(const SurfaceSpec& s) {
    require_level(s.r);
    if (s.genus < 0) throw usage_error("genus must be non-negative");
    for (long h : s.boundary_labels) require_label(h, s.r);
}

// Pants decomposition along a linear chain: the boundary circles are fused
// one by one onto the vacuum, then g handles are attached. The entry left
// at the vacuum counts admissible labelings of the internal edges.
inline mpz_class dim_space(const SurfaceSpec& s) {
    validate(s);
    const std::size_t k = static_cast<std::size_t>((s.r - 1) / 2);
    std::vector<mpz_class> v(k, 0);
    v[0] = 1;
    for (long h : s.boundary_labels) v = detail::apply_fusion(v, h, s.r);
    for (long i = 0; i < s.genus; ++i) v = detail::apply_handle(v, s.r);
    return v[0];
}

inline mpz_class dim_space(long r, long genus, std::vector<long> boundary = {}) {
    return dim_space(SurfaceSpec{r, genus, std::move(boundary)});
}

// Cut along one separating curve into (g1, b1 + x) and (g2, b2 + x).
inline mpz_class dim_separating(long r, long g1, const std::vector<long>& b1, long g2, const std::vector<long>& b2) {
    mpz_class total = 0;
    for (long x = 0; x <= r - 3; x += 2) {
        auto l = b1, rr = b2;
        l.push_back(x);
        rr.push_back(x);
        total += dim_space(r, g1, l) * dim_space(r, g2, rr);
    }
    return total;
}

// Cut along one non-separating curve: genus drops by one, two new boundary
// circles carry the same label.
inline mpz_class dim_nonseparating(long r, long g, const std::vector<long>& b) {
    if (g < 1) throw usage_error("non-separating cut needs genus >= 1");
    mpz_class total = 0;
    for (long x = 0; x <= r - 3; x += 2) {
        auto bb = b;
        bb.push_back(x);
        bb.push_back(x);
        total += dim_space(r, g - 1, bb);
    }
    return total;
}

struct VerlindeValue {
    long double raw = 0;
    mpz_class nearest;
    bool within_tolerance = false;  // |raw - nearest| < 1e-6 nearest
};

inline VerlindeValue verlinde_dim(long r, long g) {
    require_level(r);
    if (g < 1) throw usage_error("verlinde_dim needs genus >= 1");
    VerlindeValue v;
    for (long j = 1; j <= (r - 1) / 2; ++j) {
        const long double sn = std::sin(2.0L * std::numbers::pi_v<long double> * j / r);
        const long double alpha = r / (4.0L * sn * sn);
        v.raw += std::pow(alpha, static_cast<long double>(g - 1));
    }
    // Half away from zero; raw is positive.
    const long double fl = std::floor(v.raw + 0.5L);
    v.nearest = mpz_class(0);
    mpz_set_d(v.nearest.get_mpz_t(), static_cast<double>(fl));
    if (fl > 9.0e15L) {
        // Beyond double's exact range: carry the long double through a string.
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.0Lf", fl);
        v.nearest = mpz_class(buf);
    }
    const long double diff = std::fabs(v.raw - fl);
    v.within_tolerance = diff < 1e-6L * fl;
    return v;
}

// d_{r,1,2l,2l} = (2l+1)(r-2l-1)/2 for l = 0..(r-3)/2.
inline std::vector<long> twist_multiplicities(long r) {
    require_level(r);
    std::vector<long> m;
    for (long l = 0; 2 * l <= r - 3; ++l) m.push_back((2 * l + 1) * (r - 2 * l - 1) / 2);
    if (std::set<long>(m.begin(), m.end()).size() != m.size())
        throw std::logic_error("twist multiplicities are not pairwise distinct");
    mpz_class sum = 0;
    for (long x : m) sum += x;
    if (sum != dim_space(r, 2)) throw std::logic_error("twist multiplicities do not sum to the genus-two dimension");
    return m;
}

// |verlinde - exact| / exact, the agreement measure for the float formula.
inline long double verlinde_relative_error(const VerlindeValue& v, const mpz_class& exact) {
    const mpz_class diff = v.nearest - exact;
    const long double frac = v.raw - std::floor(v.raw + 0.5L);
    return std::fabs(static_cast<long double>(diff.get_d()) + frac) / static_cast<long double>(exact.get_d());
}

inline mpz_class binomial2(const mpz_class& n) { return n * (n - 1) / 2; }

// C(d_{r,g}, 2) - d_{r,g+1}.
inline mpz_class binomial_margin(long r, long g) {
    require_level(r);
    if (r < 7) throw usage_error("binomial_margin needs r >= 7");
    if (g < 2) throw usage_error("binomial_margin needs g >= 2");
    const mpz_class margin = binomial2(dim_space(r, g)) - dim_space(r, g + 1);
    if (g == 2) {
        const mpz_class R = r;
        const mpz_class closed = (R + 5) * (R + 3) * (R + 1) * R * (R - 1) * (R - 8) / 5760;
        if (closed != margin) throw std::logic_error("genus-two margin disagrees with its closed form");
    }
    return margin;
}

}  // namespace so3
