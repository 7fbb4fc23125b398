#pragma once

// Small integer number theory used throughout: primality, Euler phi,
// Moebius, modular powers, primitive roots, Legendre symbols, and the
// level validation shared by every entry point.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace so3 {

// Invalid input (bad level, malformed label, ...). Maps to CLI exit code 2.
struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input is valid but outside the documented desk-scale limits. Exit code 3.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_prime(long n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (long d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// Levels are odd primes >= 5.
inline void require_level(long r) {
    if (r < 5 || !is_prime(r))
        throw usage_error("r must be an odd prime >= 5 (got " + std::to_string(r) + ")");
}

inline long mod(long a, long m) {
    long x = a % m;
    return x < 0 ? x + m : x;
}

inline std::vector<long> prime_factors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

inline std::vector<long> divisors(long n) {
    std::vector<long> ds;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) ds.push_back(d);
    return ds;
}

inline long euler_phi(long n) {
    long result = n;
    for (long p : prime_factors(n)) result -= result / p;
    return result;
}

inline int moebius(long n) {
    int sign = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            sign = -sign;
        }
    }
    if (n > 1) sign = -sign;
    return sign;
}

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

inline std::int64_t pow_mod(std::int64_t base, std::int64_t e, std::int64_t m) {
    std::int64_t result = 1 % m;
    base = mod(base, m);
    while (e > 0) {
        if (e & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    return result;
}

// Inverse modulo a prime.
inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    a = mod(a, p);
    if (a == 0) throw std::domain_error("inv_mod: zero has no inverse");
    return pow_mod(a, p - 2, p);
}

inline std::int64_t primitive_root(std::int64_t p) {
    const auto factors = prime_factors(p - 1);
    for (std::int64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (long q : factors) {
            if (pow_mod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    return 1;  // p == 2
}

// Legendre symbol (a|p) for an odd prime p.
inline int legendre(long a, long p) {
    a = mod(a, p);
    if (a == 0) return 0;
    return pow_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

inline long lcm(long a, long b) { return a / std::gcd(a, b) * b; }

}  // namespace so3
