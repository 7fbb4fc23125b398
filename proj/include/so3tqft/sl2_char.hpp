#pragma once

// SL2(F_r) and its Borel subgroup: conjugacy classes, character tables by
// the Burnside-Dixon method modulo a prime, exact lifts to cyclotomic values,
// and the tensor/induction checks built on them.

#include "cyclo.hpp"
#include "numtheory.hpp"
#include "weil.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace so3 {

inline constexpr long kCharTableMaxR = 13;

struct FiniteGroupTable {
    long r = 0;
    std::string name;
    std::vector<Mat2> elements;
    std::vector<int> lookup;  // Mat2 code -> element index, -1 when absent
    std::size_t identity = 0;

    std::vector<std::size_t> class_of;
    std::vector<std::size_t> class_reps;
    std::vector<long> class_sizes;
    std::vector<long> class_orders;
    std::vector<std::size_t> inverse_class;
    std::vector<std::vector<std::size_t>> power_class;  // [k][l] = class of rep_k^l, l < order
    long exponent = 1;

    // Filled by dixon_char_table. Rows are characters, columns classes.
    long p = 0;
    long root = 0;                                       // primitive root mod p
    std::vector<long> degrees;
    std::vector<std::vector<long>> modp;                 // chi(g_k) mod p
    std::vector<std::vector<std::vector<long>>> spectra; // eigenvalue multiplicities of rep_k, exponents of zeta_{order}
    std::vector<std::vector<CycNumber>> char_table;      // exact, chi(g_k) in Q(zeta_{order_k})

    long order() const { return static_cast<long>(elements.size()); }
    std::size_t num_classes() const { return class_reps.size(); }
    bool has_table() const { return !degrees.empty(); }

    long code(const Mat2& m) const { return ((m.a * r + m.b) * r + m.c) * r + m.d; }
    std::size_t index_of(const Mat2& m) const {
        const int i = lookup[static_cast<std::size_t>(code(m))];
        if (i < 0) throw std::logic_error("element not in group");
        return static_cast<std::size_t>(i);
    }
    std::size_t mul(std::size_t x, std::size_t y) const { return index_of(so3::mul(elements[x], elements[y], r)); }
    std::size_t inv(std::size_t x) const { return index_of(inverse(elements[x], r)); }
};

namespace detail {

inline long element_order(const Mat2& m, long r) {
    Mat2 p = m;
    long n = 1;
    while (!(p == Mat2{})) {
        p = mul(p, m, r);
        ++n;
    }
    return n;
}

inline FiniteGroupTable make_group(long r, std::string name, std::vector<Mat2> elements) {
    FiniteGroupTable g;
    g.r = r;
    g.name = std::move(name);
    g.elements = std::move(elements);
    g.lookup.assign(static_cast<std::size_t>(r * r * r * r), -1);
    for (std::size_t i = 0; i < g.elements.size(); ++i) g.lookup[static_cast<std::size_t>(g.code(g.elements[i]))] = static_cast<int>(i);
    g.identity = g.index_of(Mat2{});

    // Orbits under conjugation.
    const std::size_t n = g.elements.size();
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> raw(n, none);
    std::vector<std::size_t> first;
    for (std::size_t x = 0; x < n; ++x) {
        if (raw[x] != none) continue;
        const std::size_t c = first.size();
        first.push_back(x);
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t conj = g.mul(g.mul(y, x), g.inv(y));
            raw[conj] = c;
        }
    }
    // Deterministic class order: by element order, then first element index.
    std::vector<long> raw_orders;
    for (std::size_t x : first) raw_orders.push_back(element_order(g.elements[x], r));
    std::vector<std::size_t> perm(first.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return raw_orders[a] < raw_orders[b]; });
    std::vector<std::size_t> rank(first.size());
    for (std::size_t i = 0; i < perm.size(); ++i) rank[perm[i]] = i;

    g.class_of.resize(n);
    for (std::size_t x = 0; x < n; ++x) g.class_of[x] = rank[raw[x]];
    g.class_reps.resize(first.size());
    g.class_orders.resize(first.size());
    g.class_sizes.assign(first.size(), 0);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        g.class_reps[i] = first[perm[i]];
        g.class_orders[i] = raw_orders[perm[i]];
    }
    for (std::size_t x = 0; x < n; ++x) ++g.class_sizes[g.class_of[x]];
    for (std::size_t k = 0; k < g.num_classes(); ++k) {
        const std::size_t rep = g.class_reps[k];
        g.inverse_class.push_back(g.class_of[g.inv(rep)]);
        std::vector<std::size_t> pw;
        std::size_t cur = g.identity;
        for (long l = 0; l < g.class_orders[k]; ++l) {
            pw.push_back(g.class_of[cur]);
            cur = g.mul(cur, rep);
        }
        g.power_class.push_back(std::move(pw));
        g.exponent = lcm(g.exponent, g.class_orders[k]);
    }
    return g;
}

inline void require_table_level(long r) {
    require_level(r);
    if (r > kCharTableMaxR)
        throw capacity_error("character tables are limited to r <= " + std::to_string(kCharTableMaxR) + " (got " +
                             std::to_string(r) + ")");
}

}  // namespace detail

inline FiniteGroupTable enumerate_group(long r) {
    detail::require_table_level(r);
    std::vector<Mat2> els;
    for (long a = 0; a < r; ++a)
        for (long b = 0; b < r; ++b)
            for (long c = 0; c < r; ++c)
                for (long d = 0; d < r; ++d)
                    if (mod(a * d - b * c, r) == 1) els.push_back({a, b, c, d});
    return detail::make_group(r, "SL2", std::move(els));
}

// Upper-triangular matrices of determinant 1.
inline FiniteGroupTable enumerate_borel(long r) {
    detail::require_table_level(r);
    std::vector<Mat2> els;
    for (long a = 1; a < r; ++a)
        for (long b = 0; b < r; ++b) els.push_back({a, b, 0, inv_mod(a, r)});
    return detail::make_group(r, "Borel", std::move(els));
}

namespace detail {

using ModMat = std::vector<std::vector<long>>;

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(ModMat& m, long p) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[row]);
        const long iv = inv_mod(m[row][c], p);
        for (auto& x : m[row]) x = mul_mod(x, iv, p);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][c] == 0) continue;
            const long f = m[i][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] = mod(m[i][j] - mul_mod(f, m[row][j], p), p);
        }
        pivots.push_back(c);
        ++row;
    }
    m.resize(row);
    return pivots;
}

// Null space of a square matrix, as row vectors.
inline ModMat null_space(ModMat a, long p) {
    const std::size_t n = a.size();
    const auto pivots = rref(a, p);
    std::vector<char> is_piv(n, 0);
    for (auto c : pivots) is_piv[c] = 1;
    ModMat basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_piv[f]) continue;
        std::vector<long> v(n, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = mod(-a[i][f], p);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline long det_mod(ModMat a, long p) {
    const std::size_t n = a.size();
    long det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = mod(-det, p);
        }
        det = mul_mod(det, a[c][c], p);
        const long iv = inv_mod(a[c][c], p);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            const long f = mul_mod(a[i][c], iv, p);
            for (std::size_t j = c; j < n; ++j) a[i][j] = mod(a[i][j] - mul_mod(f, a[c][j], p), p);
        }
    }
    return det;
}

// c[j][i][k] = #{(x, y) : x in C_j, y in C_i, x y = rep_k}.
inline std::vector<ModMat> class_constants(const FiniteGroupTable& g) {
    const std::size_t k = g.num_classes();
    std::vector<ModMat> c(k, ModMat(k, std::vector<long>(k, 0)));
    for (std::size_t t = 0; t < k; ++t) {
        const std::size_t z = g.class_reps[t];
        for (std::size_t x = 0; x < g.elements.size(); ++x) {
            const std::size_t y = g.mul(g.inv(x), z);
            ++c[g.class_of[x]][g.class_of[y]][t];
        }
    }
    return c;
}

inline bool admissible_prime(long p, const FiniteGroupTable& g) {
    return is_prime(p) && (p - 1) % g.exponent == 0 && g.order() % p != 0 &&
           static_cast<double>(p) > 2.0 * std::sqrt(static_cast<double>(g.order()));
}

// Simultaneous eigenvectors of the class matrices, normalized at the
// identity class; empty on failure to split.
inline ModMat common_eigenvectors(const FiniteGroupTable& g, long p) {
    const std::size_t k = g.num_classes();
    const auto c = class_constants(g);
    ModMat full(k, std::vector<long>(k, 0));
    for (std::size_t i = 0; i < k; ++i) full[i][i] = 1;
    std::vector<ModMat> spaces{full};
    for (std::size_t j = 1; j < k; ++j) {
        bool all_lines = true;
        for (const auto& s : spaces) all_lines = all_lines && s.size() == 1;
        if (all_lines) break;
        // (M_j)_{ik} = c[j][i][k]
        const ModMat& mj = c[j];
        std::vector<ModMat> next;
        for (auto& s : spaces) {
            if (s.size() == 1) {
                next.push_back(s);
                continue;
            }
            const auto pivots = rref(s, p);
            const std::size_t d = s.size();
            // Matrix of M_j on the subspace, columns = coordinates of M_j b_t.
            ModMat a(d, std::vector<long>(d, 0));
            for (std::size_t t = 0; t < d; ++t) {
                std::vector<long> img(k, 0);
                for (std::size_t i = 0; i < k; ++i) {
                    long acc = 0;
                    for (std::size_t q = 0; q < k; ++q) acc = (acc + mul_mod(mj[i][q], s[t][q], p)) % p;
                    img[i] = acc;
                }
                for (std::size_t u = 0; u < d; ++u) a[u][t] = img[pivots[u]];
            }
            std::size_t found = 0;
            for (long lambda = 0; lambda < p && found < d; ++lambda) {
                ModMat shifted = a;
                for (std::size_t u = 0; u < d; ++u) shifted[u][u] = mod(shifted[u][u] - lambda, p);
                if (det_mod(shifted, p) != 0) continue;
                ModMat sub;
                for (const auto& coords : null_space(shifted, p)) {
                    std::vector<long> v(k, 0);
                    for (std::size_t u = 0; u < d; ++u)
                        for (std::size_t q = 0; q < k; ++q) v[q] = (v[q] + mul_mod(coords[u], s[u][q], p)) % p;
                    sub.push_back(std::move(v));
                }
                found += sub.size();
                next.push_back(std::move(sub));
            }
            if (found != d) return {};
        }
        spaces = std::move(next);
    }
    ModMat out;
    for (auto& s : spaces) {
        if (s.size() != 1) return {};
        auto w = s[0];
        const long w0 = w[g.class_of[g.identity]];
        if (w0 == 0) return {};
        const long iv = inv_mod(w0, p);
        for (auto& x : w) x = mul_mod(x, iv, p);
        out.push_back(std::move(w));
    }
    return out;
}

inline bool fill_table(FiniteGroupTable& g, long p) {
    const auto ws = common_eigenvectors(g, p);
    const std::size_t k = g.num_classes();
    if (ws.size() != k) return false;
    const long order_mod = g.order() % p;
    struct Row {
        long degree;
        std::vector<long> values;
    };
    std::vector<Row> rows;
    for (const auto& w : ws) {
        // chi(1)^2 = |G| / sum_i w_i w_{i*} / |C_i|
        long s = 0;
        for (std::size_t i = 0; i < k; ++i)
            s = (s + mul_mod(mul_mod(w[i], w[g.inverse_class[i]], p), inv_mod(g.class_sizes[i] % p, p), p)) % p;
        if (s == 0) return false;
        const long d2 = mul_mod(order_mod, inv_mod(s, p), p);
        long degree = 0;
        for (long x = 1; x <= (p - 1) / 2; ++x)
            if (mul_mod(x, x, p) == d2) {
                degree = x;
                break;
            }
        if (degree == 0) return false;
        Row row{degree, std::vector<long>(k)};
        for (std::size_t i = 0; i < k; ++i)
            row.values[i] = mul_mod(mul_mod(w[i], degree, p), inv_mod(g.class_sizes[i] % p, p), p);
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return a.degree != b.degree ? a.degree < b.degree : a.values < b.values;
    });

    const long z = primitive_root(p);
    g.p = p;
    g.root = z;
    g.degrees.clear();
    g.modp.clear();
    g.spectra.clear();
    g.char_table.clear();
    for (const auto& row : rows) {
        std::vector<std::vector<long>> spec(k);
        std::vector<CycNumber> exact(k);
        for (std::size_t i = 0; i < k; ++i) {
            const long m = g.class_orders[i];
            const long omega = pow_mod(z, (p - 1) / m, p);
            const long inv_m = inv_mod(m % p, p);
            std::vector<long> mu(static_cast<std::size_t>(m));
            long total = 0;
            for (long t = 0; t < m; ++t) {
                long acc = 0;
                for (long l = 0; l < m; ++l) {
                    const long val = row.values[g.power_class[i][static_cast<std::size_t>(l)]];
                    acc = (acc + mul_mod(val, pow_mod(omega, mod(-t * l, m), p), p)) % p;
                }
                const long mult = mul_mod(acc, inv_m, p);
                if (mult > row.degree) return false;
                mu[static_cast<std::size_t>(t)] = mult;
                total += mult;
            }
            if (total != row.degree) return false;
            std::vector<mpz_class> dense(static_cast<std::size_t>(m));
            for (long t = 0; t < m; ++t) dense[static_cast<std::size_t>(t)] = mu[static_cast<std::size_t>(t)];
            exact[i] = CycNumber::from_exponent_sum(static_cast<int>(m), std::move(dense));
            spec[i] = std::move(mu);
        }
        g.degrees.push_back(row.degree);
        g.modp.push_back(row.values);
        g.spectra.push_back(std::move(spec));
        g.char_table.push_back(std::move(exact));
    }
    return true;
}

}  // namespace detail

inline long first_admissible_prime(const FiniteGroupTable& g, long after = 0) {
    for (long p = g.exponent + 1;; p += g.exponent)
        if (p > after && detail::admissible_prime(p, g)) return p;
}

// Runs Dixon modulo the given prime, or the admissible primes in increasing
// order until the class matrices split.
inline FiniteGroupTable& dixon_char_table(FiniteGroupTable& g, std::optional<long> prime = std::nullopt) {
    if (prime) {
        if (!detail::admissible_prime(*prime, g)) throw usage_error("prime not admissible for this group");
        if (!detail::fill_table(g, *prime)) throw std::runtime_error("class matrices did not split modulo the given prime");
        return g;
    }
    long p = 0;
    for (int attempt = 0; attempt < 32; ++attempt) {
        p = first_admissible_prime(g, p);
        if (detail::fill_table(g, p)) return g;
    }
    throw std::runtime_error("Dixon: no admissible prime split the class matrices");
}

inline FiniteGroupTable sl2_character_table(long r) {
    auto g = enumerate_group(r);
    dixon_char_table(g);
    return g;
}

// ---- exact arithmetic on class functions ----------------------------------

namespace detail {

// Product of root-of-unity multisets on one class, exponents mod m; conj
// flips the second factor.
inline std::vector<long> convolve(const std::vector<long>& a, const std::vector<long>& b, bool conj_b) {
    const std::size_t m = a.size();
    std::vector<long> out(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < m; ++j) {
            if (b[j] == 0) continue;
            const std::size_t t = conj_b ? (i + m - j) % m : (i + j) % m;
            out[t] += a[i] * b[j];
        }
    }
    return out;
}

// sum_k weight_k * (exponent multiset on class k), reduced in Q(zeta_e).
inline CycNumber class_sum(const FiniteGroupTable& g, const std::vector<std::vector<long>>& per_class,
                           const std::vector<long>& weights) {
    const long e = g.exponent;
    std::vector<mpz_class> dense(static_cast<std::size_t>(e));
    for (std::size_t k = 0; k < per_class.size(); ++k) {
        const long m = static_cast<long>(per_class[k].size());
        const long step = e / m;
        for (long t = 0; t < m; ++t) {
            const long c = per_class[k][static_cast<std::size_t>(t)];
            if (c != 0) dense[static_cast<std::size_t>(t * step)] += mpz_class(c) * weights[k];
        }
    }
    return CycNumber::from_exponent_sum(static_cast<int>(e), std::move(dense));
}

}  // namespace detail

struct OrthogonalityReport {
    bool rows = false;     // sum_k |C_k| chi(g_k) conj psi(g_k) = |G| delta
    bool columns = false;  // sum_chi chi(g_i) conj chi(g_j) = delta |G|/|C_i|
    bool degrees = false;  // sum chi(1)^2 = |G|
    bool integral = false; // every value has integer power-basis coefficients
    bool all() const { return rows && columns && degrees && integral; }
};

inline OrthogonalityReport check_orthogonality(const FiniteGroupTable& g) {
    OrthogonalityReport rep;
    const std::size_t k = g.num_classes();
    const std::size_t h = g.degrees.size();
    long sq = 0;
    for (long d : g.degrees) sq += d * d;
    rep.degrees = sq == g.order() && h == k;

    rep.integral = true;
    for (const auto& row : g.char_table)
        for (const auto& v : row) rep.integral = rep.integral && v.denominator() == 1;

    rep.rows = true;
    for (std::size_t a = 0; a < h && rep.rows; ++a)
        for (std::size_t b = a; b < h && rep.rows; ++b) {
            std::vector<std::vector<long>> per(k);
            for (std::size_t c = 0; c < k; ++c) per[c] = detail::convolve(g.spectra[a][c], g.spectra[b][c], true);
            const CycNumber s = detail::class_sum(g, per, g.class_sizes);
            rep.rows = s == CycNumber(static_cast<int>(g.exponent), a == b ? g.order() : 0L);
        }

    rep.columns = true;
    const long e = g.exponent;
    for (std::size_t i = 0; i < k && rep.columns; ++i)
        for (std::size_t j = i; j < k && rep.columns; ++j) {
            const long mi = g.class_orders[i], mj = g.class_orders[j];
            std::vector<mpz_class> dense(static_cast<std::size_t>(e));
            for (std::size_t a = 0; a < h; ++a)
                for (long s = 0; s < mi; ++s) {
                    const long x = g.spectra[a][i][static_cast<std::size_t>(s)];
                    if (x == 0) continue;
                    for (long t = 0; t < mj; ++t) {
                        const long y = g.spectra[a][j][static_cast<std::size_t>(t)];
                        if (y == 0) continue;
                        dense[static_cast<std::size_t>(mod(s * (e / mi) - t * (e / mj), e))] += x * y;
                    }
                }
            const CycNumber s = CycNumber::from_exponent_sum(static_cast<int>(e), std::move(dense));
            mpq_class expect = i == j ? mpq_class(g.order(), g.class_sizes[i]) : mpq_class(0);
            expect.canonicalize();
            rep.columns = s == CycNumber(static_cast<int>(e), expect);
        }
    return rep;
}

struct Constituent {
    std::size_t index = 0;
    long multiplicity = 0;
    long degree = 0;
};

struct TensorDecomposition {
    std::vector<Constituent> constituents;  // nonzero multiplicities only
    bool exact_matches_modp = true;
    long max_degree() const {
        long m = 0;
        for (const auto& c : constituents) m = std::max(m, c.degree);
        return m;
    }
};

// Multiplicity of chi_c in chi_a chi_b, modulo p.
inline long tensor_multiplicity_modp(const FiniteGroupTable& g, std::size_t a, std::size_t b, std::size_t c) {
    const long p = g.p;
    long acc = 0;
    for (std::size_t k = 0; k < g.num_classes(); ++k) {
        long v = mul_mod(g.modp[a][k], g.modp[b][k], p);
        v = mul_mod(v, g.modp[c][g.inverse_class[k]], p);
        acc = (acc + mul_mod(v, g.class_sizes[k] % p, p)) % p;
    }
    return mul_mod(acc, inv_mod(g.order() % p, p), p);
}

// Exact multiplicity; throws if the inner product is not a non-negative integer.
inline long tensor_multiplicity_exact(const FiniteGroupTable& g, std::size_t a, std::size_t b, std::size_t c) {
    const std::size_t k = g.num_classes();
    std::vector<std::vector<long>> per(k);
    for (std::size_t t = 0; t < k; ++t)
        per[t] = detail::convolve(detail::convolve(g.spectra[a][t], g.spectra[b][t], false), g.spectra[c][t], true);
    const CycNumber s = detail::class_sum(g, per, g.class_sizes);
    if (!s.is_rational()) throw std::logic_error("inner product is not rational");
    const mpq_class q = s.rational_part() / g.order();
    if (q.get_den() != 1 || q < 0) throw std::logic_error("inner product is not a non-negative integer");
    return q.get_num().get_si();
}

inline TensorDecomposition tensor_decompose(const FiniteGroupTable& g, std::size_t a, std::size_t b) {
    TensorDecomposition td;
    for (std::size_t c = 0; c < g.degrees.size(); ++c) {
        const long exact = tensor_multiplicity_exact(g, a, b, c);
        if (exact % g.p != tensor_multiplicity_modp(g, a, b, c)) td.exact_matches_modp = false;
        if (exact > 0) td.constituents.push_back({c, exact, g.degrees[c]});
    }
    return td;
}

// Index of the conjugate character.
inline std::size_t conjugate_character(const FiniteGroupTable& g, std::size_t a) {
    for (std::size_t b = 0; b < g.degrees.size(); ++b) {
        bool same = true;
        for (std::size_t k = 0; k < g.num_classes() && same; ++k)
            same = g.modp[b][k] == g.modp[a][g.inverse_class[k]];
        if (same) return b;
    }
    throw std::logic_error("conjugate character missing");
}

struct SmallTensorReport {
    long r = 0;
    long bound = 0;                           // (r-1)/2
    std::vector<std::size_t> small;           // nontrivial characters of degree <= bound
    std::size_t pairs_checked = 0;
    std::vector<std::pair<std::size_t, std::size_t>> violations;
    bool exact_matches_modp = true;
    // Both small characters equal -1 on every square of a generator of the
    // non-split torus that is not central.
    bool small_minus_one_on_square_elliptic = false;
    bool holds() const { return violations.empty() && exact_matches_modp; }
};

// Element of order r+1 (generator of a non-split torus).
inline std::size_t elliptic_generator(const FiniteGroupTable& g) {
    for (std::size_t k = 0; k < g.num_classes(); ++k)
        if (g.class_orders[k] == g.r + 1) return g.class_reps[k];
    throw std::logic_error("no element of order r+1");
}

inline SmallTensorReport check_small_tensor(const FiniteGroupTable& g) {
    SmallTensorReport rep;
    rep.r = g.r;
    rep.bound = (g.r - 1) / 2;
    const std::size_t h = g.degrees.size();
    for (std::size_t a = 1; a < h; ++a)
        if (g.degrees[a] <= rep.bound) rep.small.push_back(a);
    for (std::size_t a = 1; a < h; ++a)
        for (std::size_t b = a; b < h; ++b) {
            const auto td = tensor_decompose(g, a, b);
            ++rep.pairs_checked;
            rep.exact_matches_modp = rep.exact_matches_modp && td.exact_matches_modp;
            if (td.max_degree() <= rep.bound) rep.violations.emplace_back(a, b);
        }

    const std::size_t b = elliptic_generator(g);
    const std::size_t minus_one = g.index_of(Mat2{g.r - 1, 0, 0, g.r - 1});
    bool ok = !rep.small.empty();
    std::size_t cur = g.identity;
    for (long m = 1; m <= g.r; ++m) {
        cur = g.mul(cur, b);
        if (m % 2 != 0 || cur == g.identity || cur == minus_one) continue;
        for (std::size_t a : rep.small)
            ok = ok && g.char_table[a][g.class_of[cur]] == CycNumber(static_cast<int>(g.class_orders[g.class_of[cur]]), -1L);
    }
    rep.small_minus_one_on_square_elliptic = ok;
    return rep;
}

struct InducedDecomposition {
    std::size_t borel_index = 0;  // character of B
    long borel_degree = 0;
    long induced_degree = 0;      // [G:B] * degree
    std::vector<Constituent> constituents;
    long constituent_degree_sum = 0;
};

struct BorelReport {
    long r = 0;
    long order = 0;
    long index = 0;
    std::vector<long> degrees;                 // sorted irreducible degrees of B
    std::map<long, long> degree_counts;
    bool degrees_in_one_or_r_minus_1 = false;  // every degree in {1, r-1}
    bool orthogonality = false;
    std::vector<InducedDecomposition> induced;
    bool induction_consistent = false;         // constituent degrees sum to the induced degree
};

inline BorelReport borel_check(const FiniteGroupTable& g) {
    BorelReport rep;
    rep.r = g.r;
    auto b = enumerate_borel(g.r);
    // Same prime and primitive root as G so both tables reduce through one
    // homomorphism Z[zeta_e] -> F_p.
    dixon_char_table(b, g.p);
    rep.order = b.order();
    rep.index = g.order() / b.order();
    rep.degrees = b.degrees;
    rep.degrees_in_one_or_r_minus_1 = true;
    for (long d : b.degrees) {
        ++rep.degree_counts[d];
        if (d != 1 && d != g.r - 1) rep.degrees_in_one_or_r_minus_1 = false;
    }
    rep.orthogonality = check_orthogonality(b).all();

    // Frobenius reciprocity: <Ind lambda, chi>_G = <lambda, Res chi>_B.
    const long p = g.p;
    std::vector<std::size_t> g_class_of_b;
    for (std::size_t k = 0; k < b.num_classes(); ++k)
        g_class_of_b.push_back(g.class_of[g.index_of(b.elements[b.class_reps[k]])]);
    rep.induction_consistent = true;
    for (std::size_t l = 0; l < b.degrees.size(); ++l) {
        InducedDecomposition ind;
        ind.borel_index = l;
        ind.borel_degree = b.degrees[l];
        ind.induced_degree = rep.index * b.degrees[l];
        for (std::size_t c = 0; c < g.degrees.size(); ++c) {
            long acc = 0;
            for (std::size_t k = 0; k < b.num_classes(); ++k) {
                const long chi_inv = g.modp[c][g.inverse_class[g_class_of_b[k]]];
                acc = (acc + mul_mod(mul_mod(b.modp[l][k], chi_inv, p), b.class_sizes[k] % p, p)) % p;
            }
            const long mult = mul_mod(acc, inv_mod(b.order() % p, p), p);
            if (mult != 0) {
                ind.constituents.push_back({c, mult, g.degrees[c]});
                ind.constituent_degree_sum += mult * g.degrees[c];
            }
        }
        rep.induction_consistent = rep.induction_consistent && ind.constituent_degree_sum == ind.induced_degree;
        rep.induced.push_back(std::move(ind));
    }
    return rep;
}

// ---- subgroup screening --------------------------------------------------

struct CandidateSubgroup {
    std::string name;
    long order = 0;
    std::vector<long> degrees;
};

// Preimages in SL2(F_r) of the maximal subgroups of PSL2(F_r) whose order
// can exceed 2(r+1): the Borel subgroup and the binary tetrahedral,
// octahedral and icosahedral groups where they occur.
inline std::vector<CandidateSubgroup> candidate_subgroups(long r, const std::vector<long>& borel_degrees) {
    std::vector<CandidateSubgroup> out;
    out.push_back({"Borel", r * (r - 1), borel_degrees});
    const long m8 = r % 8, m10 = r % 10;
    const bool pm1_8 = m8 == 1 || m8 == 7, pm3_8 = m8 == 3 || m8 == 5, pm1_10 = m10 == 1 || m10 == 9;
    if (pm3_8 && !pm1_10) out.push_back({"2.A4", 24, {1, 1, 1, 2, 2, 2, 3}});
    if (pm1_8) out.push_back({"2.S4", 48, {1, 1, 2, 2, 2, 3, 3, 4}});
    if (pm1_10) out.push_back({"2.A5", 120, {1, 2, 2, 3, 3, 4, 4, 5, 6}});
    return out;
}

struct ScreenedTriple {
    long r = 0;
    long dim_v = 0;
    long subgroup_order = 0;
    std::string subgroup;
    friend bool operator==(const ScreenedTriple& a, const ScreenedTriple& b) {
        return a.r == b.r && a.dim_v == b.dim_v && a.subgroup_order == b.subgroup_order;
    }
};

// [G:H] dim V must be 0 or 1 mod (r-1)/2 (1 only for dim V = 1), at most
// (r^2-2r+3)/2, and |H| > 2(r+1).
inline std::vector<ScreenedTriple> screen_triples(long r, const std::vector<long>& borel_degrees) {
    require_level(r);
    if (r < 7) throw usage_error("subgroup screening needs r >= 7");
    const long g = r * (r * r - 1);
    const long half = (r - 1) / 2;
    const long bound = (r * r - 2 * r + 3) / 2;
    std::vector<ScreenedTriple> out;
    for (const auto& h : candidate_subgroups(r, borel_degrees)) {
        if (h.order <= 2 * (r + 1)) continue;
        std::vector<long> dims = h.degrees;
        std::sort(dims.begin(), dims.end());
        dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
        for (long d : dims) {
            const long n = g / h.order * d;
            const long res = n % half;
            const bool congruence = res == 0 || (res == 1 && d == 1);
            if (congruence && n <= bound) out.push_back({r, d, h.order, h.name});
        }
    }
    return out;
}

// Irreducible degrees of the Borel subgroup without building it: r-1
// characters of degree 1 and four of degree (r-1)/2.
inline std::vector<long> borel_degrees_formula(long r) {
    std::vector<long> d(static_cast<std::size_t>(r - 1), 1);
    for (int i = 0; i < 4; ++i) d.push_back((r - 1) / 2);
    return d;
}

struct RegularCheck {
    bool multiplicity_equals_degree = false;
    long regular_degree = 0;
    std::vector<ScreenedTriple> survivors;
};

inline RegularCheck regular_congruence_check(const FiniteGroupTable& g, const std::vector<long>& borel_degrees) {
    RegularCheck rc;
    const long p = g.p;
    rc.multiplicity_equals_degree = true;
    // The regular character is |G| at the identity and 0 elsewhere.
    const std::size_t id_class = g.class_of[g.identity];
    rc.regular_degree = g.order();
    for (std::size_t c = 0; c < g.degrees.size(); ++c) {
        const long m = mul_mod(mul_mod(g.order() % p, g.modp[c][id_class], p), inv_mod(g.order() % p, p), p);
        rc.multiplicity_equals_degree = rc.multiplicity_equals_degree && m == g.degrees[c];
    }
    if (g.r >= 7) rc.survivors = screen_triples(g.r, borel_degrees);
    return rc;
}

// One line per character, one column per class.
inline std::string character_table_csv(const FiniteGroupTable& g) {
    std::ostringstream os;
    os << "character,degree";
    for (std::size_t k = 0; k < g.num_classes(); ++k)
        os << ",class" << k << "(order " << g.class_orders[k] << " size " << g.class_sizes[k] << ")";
    os << "\n";
    for (std::size_t a = 0; a < g.degrees.size(); ++a) {
        os << "chi" << a << "," << g.degrees[a];
        for (std::size_t k = 0; k < g.num_classes(); ++k) os << ",\"" << g.char_table[a][k].to_string() << "\"";
        os << "\n";
    }
    return os.str();
}

}  // namespace so3
