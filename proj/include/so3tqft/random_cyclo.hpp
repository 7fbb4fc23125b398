#pragma once

// Seeded random elements of Q(zeta_N) for property checks.

#include "cyclo.hpp"

#include <random>
#include <vector>

namespace so3 {

inline CycNumber random_cyclo(std::mt19937_64& rng, int n, long max_num = 9, long max_den = 4) {
    const int phi = cyclotomic_field(n).phi;
    std::uniform_int_distribution<long> num(-max_num, max_num), den(1, max_den), sparse(0, 3);
    std::vector<mpq_class> c(static_cast<std::size_t>(phi));
    for (auto& q : c) {
        if (sparse(rng) == 0) continue;
        q = mpq_class(num(rng), den(rng));
        q.canonicalize();
    }
    return CycNumber::from_coeffs(n, c);
}

struct FieldAxiomResult {
    long cases = 0;
    long failures = 0;
};

// Ring axioms, distributivity, conjugation and inverses on random triples.
inline FieldAxiomResult check_field_axioms(std::uint64_t seed, long cases, const std::vector<int>& moduli) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, moduli.size() - 1);
    FieldAxiomResult res;
    for (long i = 0; i < cases; ++i) {
        const int n = moduli[pick(rng)];
        const CycNumber a = random_cyclo(rng, n), b = random_cyclo(rng, n), c = random_cyclo(rng, n);
        const CycNumber zero(n), one(n, 1L);
        bool ok = a + b == b + a && a * b == b * a && (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) &&
                  a * (b + c) == a * b + a * c && a + zero == a && a * one == a && a - a == zero &&
                  (a * b).conj() == a.conj() * b.conj() && a.conj().conj() == a;
        if (!a.is_zero()) ok = ok && a * a.inv() == one && (b / a) * a == b;
        ++res.cases;
        if (!ok) ++res.failures;
    }
    return res;
}

}  // namespace so3
