#pragma once

// Floating-point reference values computed directly from trigonometric
// closed forms, independent of the exact cyclotomic machinery.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

inline cd expi(double x) { return std::polar(1.0, x); }

// e(k) = exp(2 pi i k / r)
inline cd e(long r, long k) { return expi(2 * pi * static_cast<double>(k) / static_cast<double>(r)); }

inline cd kauffman_a(long r) { return cd(0, 1) * expi(2 * pi / (4.0 * r)); }

inline double qdim(int label, long r) { return std::sin(pi * (label + 1) / r) / std::sin(pi / r); }

inline double global_dim(long r) { return std::sqrt(static_cast<double>(r)) / (2 * std::sin(pi / r)); }

inline cd twist(int label, long r) { return std::pow(kauffman_a(r), static_cast<double>(label) * (label + 2)); }

// [(i+1)(j+1)] = sin(pi (i+1)(j+1) / r) / sin(pi / r) up to the sign (-1)^{k+1}.
inline double s_tilde(int i, int j, long r) {
    const long k = static_cast<long>(i + 1) * (j + 1);
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    return sign * std::sin(pi * static_cast<double>(k) / r) / std::sin(pi / r);
}

inline std::vector<int> labels(long r) {
    std::vector<int> l;
    for (int i = 0; i <= r - 3; i += 2) l.push_back(i);
    return l;
}

inline cd p_minus(long r) {
    cd s = 0;
    for (int i : labels(r)) s += std::conj(twist(i, r)) * qdim(i, r) * qdim(i, r);
    return s;
}

inline cd p_plus(long r) {
    cd s = 0;
    for (int i : labels(r)) s += twist(i, r) * qdim(i, r) * qdim(i, r);
    return s;
}

}  // namespace oracle
