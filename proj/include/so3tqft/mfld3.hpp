#pragma once

// The 3-manifold invariant tau for surgery on linear chains of unknots, the
// genus-one Heegaard route, and a survey of genus-one vacuum amplitudes.

#include "finite_image.hpp"
#include "modular_data.hpp"

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace so3 {

using IntMatrixL = std::vector<std::vector<long>>;

// Positive minus negative eigenvalues by congruence diagonalization over Q.
inline long signature(const IntMatrixL& m) {
    const std::size_t n = m.size();
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw usage_error("signature: matrix must be square");
        for (std::size_t j = 0; j < n; ++j) {
            if (m[i][j] != m[j][i]) throw usage_error("signature: matrix must be symmetric");
            a[i][j] = m[i][j];
        }
    }
    long sig = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t j = k + 1;
            while (j < n && a[j][j] == 0) ++j;
            if (j < n) {
                std::swap(a[k], a[j]);
                for (auto& row : a) std::swap(row[k], row[j]);
            } else {
                j = k + 1;
                while (j < n && a[k][j] == 0) ++j;
                if (j == n) continue;  // zero row: null direction
                // Row/column k += row/column j makes the pivot 2 a_kj.
                for (std::size_t t = 0; t < n; ++t) a[k][t] += a[j][t];
                for (std::size_t t = 0; t < n; ++t) a[t][k] += a[t][j];
            }
        }
        const mpq_class piv = a[k][k];
        sig += sgn(piv);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            const mpq_class f = a[i][k] / piv;
            for (std::size_t t = k; t < n; ++t) a[i][t] -= f * a[k][t];
            for (std::size_t t = k; t < n; ++t) a[t][i] = a[i][t];
        }
    }
    return sig;
}

// Linear chain of unknots; consecutive components form Hopf links.
struct ChainSurgery {
    std::vector<long> framings;

    IntMatrixL linking_matrix() const {
        const std::size_t k = framings.size();
        IntMatrixL m(k, std::vector<long>(k, 0));
        for (std::size_t i = 0; i < k; ++i) {
            m[i][i] = framings[i];
            if (i + 1 < k) m[i][i + 1] = m[i + 1][i] = 1;
        }
        return m;
    }
    long sigma() const { return signature(linking_matrix()); }
};

struct InvariantValue {
    CycNumber value;
    std::complex<double> complex;
    double norm = 0;

    static InvariantValue of(const CycNumber& v) {
        const auto c = v.embed();
        return {v, c, std::abs(c)};
    }
};

// <omega_0 * L>: colorings weighted by d_a theta_a^n / D per component,
// s_tilde on every Hopf clasp, and d at the two chain ends. Evaluated as a
// transfer-matrix product along the chain.
inline CycNumber omega_chain_bracket(const ModularData& md, const ChainSurgery& c) {
    const int n = md.modulus();
    if (c.framings.empty()) return CycNumber(n, 1L);
    const std::size_t k = md.rank();
    const CycNumber inv_d = md.global_dim.inv();
    std::vector<CycNumber> v(k);
    for (std::size_t a = 0; a < k; ++a) v[a] = md.qdim[a] * md.twist[a].pow(c.framings[0]) * inv_d;
    for (std::size_t j = 1; j < c.framings.size(); ++j) {
        std::vector<CycNumber> next(k);
        for (std::size_t b = 0; b < k; ++b) {
            ProductAccumulator acc(n);
            for (std::size_t a = 0; a < k; ++a) acc.add_product(v[a], md.s_tilde(a, b));
            next[b] = acc.result() * md.twist[b].pow(c.framings[j]) * inv_d;
        }
        v = std::move(next);
    }
    CycNumber total(n);
    for (std::size_t a = 0; a < k; ++a) total += v[a] * md.qdim[a];
    return total;
}

// kappa = p_- / D.
inline CycNumber kappa(const ModularData& md) { return md.p_minus / md.global_dim; }

// tau = (1/D) <omega_0 * L> kappa^sigma. A split link is a list of chains.
inline InvariantValue tau(const ModularData& md, const std::vector<ChainSurgery>& split_link) {
    CycNumber bracket(md.modulus(), 1L);
    long sigma = 0;
    for (const auto& c : split_link) {
        bracket *= omega_chain_bracket(md, c);
        sigma += c.sigma();
    }
    return InvariantValue::of(bracket / md.global_dim * kappa(md).pow(sigma));
}

inline InvariantValue tau(const ModularData& md, const ChainSurgery& c) {
    return tau(md, std::vector<ChainSurgery>{c});
}

inline InvariantValue connected_sum(const InvariantValue& t1, const InvariantValue& t2, const ModularData& md) {
    return InvariantValue::of(md.global_dim * t1.value * t2.value);
}

struct HeegaardValue {
    CycNumber amplitude;   // (rho(word))_{00}
    CycNumber norm_sq;     // |amplitude|^2, exact
    double norm = 0;
};

inline HeegaardValue heegaard_amplitude(const ModularData& md, const std::string& word) {
    const auto rho = rho_genus1(md);
    // Row 0 of the product, carried through the word one letter at a time.
    const std::size_t k = md.rank();
    const int n = md.modulus();
    std::optional<CycMatrix> s_inv, t_inv;
    std::vector<CycNumber> row(k, CycNumber(n));
    row[0] = CycNumber(n, 1L);
    for (char c : word) {
        const CycMatrix* m = nullptr;
        switch (c) {
            case 's': m = &rho.s; break;
            case 't': m = &rho.t; break;
            case 'S':
                if (!s_inv) s_inv = rho.s.inverse();
                m = &*s_inv;
                break;
            case 'T':
                if (!t_inv) t_inv = rho.t.inverse();
                m = &*t_inv;
                break;
            default: throw usage_error(std::string("word letter must be one of s,t,S,T (got '") + c + "')");
        }
        std::vector<CycNumber> next(k, CycNumber(n));
        for (std::size_t j = 0; j < k; ++j) {
            ProductAccumulator acc(n);
            for (std::size_t i = 0; i < k; ++i)
                if (!row[i].is_zero() && !(*m)(i, j).is_zero()) acc.add_product(row[i], (*m)(i, j));
            next[j] = acc.result();
        }
        row = std::move(next);
    }
    HeegaardValue h;
    h.amplitude = row[0];
    h.norm_sq = h.amplitude * h.amplitude.conj();
    h.norm = std::sqrt(std::max(0.0, h.norm_sq.embed().real()));
    return h;
}

inline double heegaard_tau(const ModularData& md, const std::string& word) { return heegaard_amplitude(md, word).norm; }

// s t^p s, with t^-1 written as T.
inline std::string lens_word(long p) {
    std::string w = "s";
    w.append(static_cast<std::size_t>(p < 0 ? -p : p), p < 0 ? 'T' : 't');
    w += "s";
    return w;
}

struct NormSurvey {
    long max_word_len = 0;
    std::size_t classes_reached = 0;
    std::size_t distinct_values = 0;
    std::map<double, std::size_t> histogram;  // |amplitude| -> number of projective classes
    double max_value = 0;
};

// Words over {s, t} up to the length bound, deduplicated by projective class;
// |(rho(w))_00| depends only on that class since the generators are unitary.
inline NormSurvey norm_survey(const ModularData& md, long max_word_len) {
    if (max_word_len < 0 || max_word_len > 20) throw usage_error("norm_survey: word length must be in [0, 20]");
    const auto rho = rho_genus1(md);
    const std::size_t k = md.rank();
    const int n = md.modulus();
    std::unordered_map<ProjMatrix, std::size_t, ProjMatrixHash> seen;
    std::vector<CycMatrix> frontier{CycMatrix::identity(k, n)};
    std::vector<CycNumber> values;
    std::unordered_map<CycNumber, std::size_t, CycNumberHash> value_index;
    NormSurvey sv;
    sv.max_word_len = max_word_len;
    auto record = [&](const CycMatrix& m) {
        if (!seen.emplace(canonicalize(m), seen.size()).second) return false;
        const CycNumber a = m(0, 0);
        const CycNumber v = a * a.conj();
        if (value_index.emplace(v, values.size()).second) values.push_back(v);
        const double x = std::sqrt(std::max(0.0, v.embed().real()));
        ++sv.histogram[x];
        sv.max_value = std::max(sv.max_value, x);
        return true;
    };
    record(frontier[0]);
    for (long len = 1; len <= max_word_len && !frontier.empty(); ++len) {
        std::vector<CycMatrix> next;
        for (const auto& m : frontier)
            for (const CycMatrix* g : {&rho.s, &rho.t}) {
                CycMatrix w = m * *g;
                if (record(w)) next.push_back(std::move(w));
            }
        frontier = std::move(next);
    }
    sv.classes_reached = seen.size();
    sv.distinct_values = values.size();
    return sv;
}

}  // namespace so3
