#pragma once

// SO(3) modular data at an odd prime level r >= 5 and the genus-one
// projective representation of SL2(Z) it defines.
//
// Everything lives in Q(zeta_{4r}). Labels are the even integers
// 0, 2, ..., r-3 and every matrix below is indexed in that order.

#include "cyc_matrix.hpp"
#include "numtheory.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace so3 {

inline int field_modulus(long r) { return static_cast<int>(4 * r); }

// A = i exp(2 pi i / 4r) = zeta_{4r}^{r+1}.
inline CycNumber kauffman_A(long r) { return CycNumber::zeta(field_modulus(r), r + 1); }

// e(k) = exp(2 pi i k / r), as an element of Q(zeta_{4r}).
inline CycNumber e_r(long r, long k) { return CycNumber::zeta(field_modulus(r), 4 * mod(k, r)); }

// [k]_A = (A^{2k} - A^{-2k}) / (A^2 - A^{-2}).
inline CycNumber quantum_integer(long k, long r) {
    require_level(r);
    const CycNumber a = kauffman_A(r);
    return (a.pow(2 * k) - a.pow(-2 * k)) / (a.pow(2) - a.pow(-2));
}

inline std::vector<int> label_set(long r) {
    std::vector<int> labels;
    for (int i = 0; i <= r - 3; i += 2) labels.push_back(i);
    return labels;
}

struct ModularData {
    long r = 0;
    std::vector<int> labels;
    CycNumber A;
    std::vector<CycNumber> qdim;   // d_i = [i+1]
    std::vector<CycNumber> twist;  // theta_i = A^{i(i+2)}
    CycMatrix s_tilde;             // [(i+1)(j+1)]
    CycMatrix s_unitary;           // s_tilde / D
    CycMatrix t_mat;               // diag(theta_i)
    CycNumber global_dim;          // D > 0
    CycNumber p_plus;
    CycNumber p_minus;

    int modulus() const { return field_modulus(r); }
    std::size_t rank() const { return labels.size(); }

    std::size_t index_of(int label) const {
        if (label < 0 || label % 2 != 0 || label > r - 3)
            throw usage_error("label " + std::to_string(label) + " is not in {0,2,...,r-3}");
        return static_cast<std::size_t>(label / 2);
    }
};

// D = sqrt(r) / (2 sin(pi/r)) with 2 sin(pi/r) = -i (zeta_{2r} - zeta_{2r}^{-1}).
inline CycNumber global_dimension(long r) {
    const int n = field_modulus(r);
    const CycNumber two_sin = CycNumber::zeta(n, 3 * r) * (CycNumber::zeta(n, 2) - CycNumber::zeta(n, -2));
    return sqrt_r(r) / two_sin;
}

inline ModularData build_modular_data(long r) {
    require_level(r);
    ModularData md;
    md.r = r;
    md.labels = label_set(r);
    md.A = kauffman_A(r);
    const int n = md.modulus();
    const std::size_t k = md.labels.size();

    for (int i : md.labels) {
        md.qdim.push_back(quantum_integer(i + 1, r));
        md.twist.push_back(md.A.pow(static_cast<long>(i) * (i + 2)));
    }

    md.s_tilde = CycMatrix(k, k, n);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a; b < k; ++b) {
            CycNumber v = quantum_integer(static_cast<long>(md.labels[a] + 1) * (md.labels[b] + 1), r);
            md.s_tilde(a, b) = v;
            md.s_tilde(b, a) = v;
        }

    md.global_dim = global_dimension(r);
    CycNumber sum_sq(n);
    for (const auto& d : md.qdim) sum_sq += d * d;
    if (md.global_dim * md.global_dim != sum_sq || md.global_dim.embed().real() <= 0)
        throw std::logic_error("global dimension does not square to sum d_i^2");

    md.s_unitary = md.s_tilde.scaled(md.global_dim.inv());
    md.t_mat = CycMatrix::diagonal(md.twist);

    md.p_plus = CycNumber(n);
    md.p_minus = CycNumber(n);
    for (std::size_t a = 0; a < k; ++a) {
        CycNumber d2 = md.qdim[a] * md.qdim[a];
        md.p_plus += md.twist[a] * d2;
        md.p_minus += md.twist[a].inv() * d2;
    }
    return md;
}

// Exact structural checks of a ModularData instance.
struct ModularDataChecks {
    bool rank_ok = false;
    bool unit_object_ok = false;    // d_0 = 1, theta_0 = 1
    bool global_dim_ok = false;     // D^2 = sum d_i^2
    bool s_symmetric = false;
    bool s_unitary = false;         // S S^dagger = I
    bool first_row_ok = false;      // s_tilde_{0j} = d_j
    bool all() const {
        return rank_ok && unit_object_ok && global_dim_ok && s_symmetric && s_unitary && first_row_ok;
    }
};

inline ModularDataChecks check_modular_data(const ModularData& md) {
    ModularDataChecks c;
    const int n = md.modulus();
    const std::size_t k = md.rank();
    c.rank_ok = static_cast<long>(k) == (md.r - 1) / 2;
    c.unit_object_ok = md.qdim[0].is_one() && md.twist[0].is_one();
    CycNumber sum_sq(n);
    for (const auto& d : md.qdim) sum_sq += d * d;
    c.global_dim_ok = md.global_dim * md.global_dim == sum_sq;
    c.s_symmetric = md.s_tilde.is_symmetric();
    c.s_unitary = md.s_unitary * md.s_unitary.conj_transpose() == CycMatrix::identity(k, n);
    c.first_row_ok = true;
    for (std::size_t j = 0; j < k; ++j) c.first_row_ok = c.first_row_ok && md.s_tilde(0, j) == md.qdim[j];
    return c;
}

// rho(s) = S = s_tilde / D, rho(t) = T^{-1}.
struct GenusOneRep {
    CycMatrix s;
    CycMatrix t;
};

inline GenusOneRep rho_genus1(const ModularData& md) {
    std::vector<CycNumber> inv_twist;
    for (const auto& th : md.twist) inv_twist.push_back(th.inv());
    return {md.s_unitary, CycMatrix::diagonal(inv_twist)};
}

inline GenusOneRep rho_genus1(long r) { return rho_genus1(build_modular_data(r)); }

// If m = c * base for a scalar c, returns c.
inline std::optional<CycNumber> proportionality(const CycMatrix& m, const CycMatrix& base) {
    if (m.rows() != base.rows() || m.cols() != base.cols()) return std::nullopt;
    const auto& be = base.entries();
    std::size_t f = 0;
    while (f < be.size() && be[f].is_zero()) ++f;
    if (f == be.size()) return std::nullopt;
    CycNumber c = m.entries()[f] / be[f];
    if (m == base.scaled(c)) return c;
    return std::nullopt;
}

struct SL2ZRelations {
    bool s4_scalar = false;       // rho(s)^4
    bool s2_scalar = false;       // rho(s)^2 (charge conjugation is trivial here)
    bool braid = false;           // (rho(s) rho(t))^3 = c rho(s)^2
    bool t_order_r = false;       // rho(t)^r scalar (congruence)
    bool all() const { return s4_scalar && braid && t_order_r; }
};

inline SL2ZRelations check_sl2z_relations(const CycMatrix& s, const CycMatrix& t, long r) {
    SL2ZRelations rel;
    const CycMatrix s2 = s * s;
    rel.s2_scalar = s2.is_scalar();
    rel.s4_scalar = (s2 * s2).is_scalar();
    const CycMatrix st = s * t;
    rel.braid = proportionality(st * st * st, s2).has_value();
    rel.t_order_r = t.pow(r).is_scalar();
    return rel;
}

// X_r = { e(n^2) : 0 < n < r/2 }.
inline std::vector<CycNumber> x_r_set(long r) {
    std::vector<CycNumber> xs;
    for (long m = 1; 2 * m < r; ++m) xs.push_back(e_r(r, m * m));
    return xs;
}

struct DehnSpectrum {
    std::vector<CycNumber> ratios;       // theta_0 / theta_i, label order
    CycNumber normalizer;                // common scalar applied below
    std::vector<CycNumber> normalized;   // normalizer * ratios
    std::size_t distinct = 0;
    bool matches_x_r = false;            // normalized set == X_r
    bool matches_conj_x_r = false;       // normalized set == conj(X_r)
};

namespace detail {
inline bool same_set(const std::vector<CycNumber>& a, const std::vector<CycNumber>& b) {
    if (a.size() != b.size()) return false;
    for (const auto& x : a)
        if (std::find(b.begin(), b.end(), x) == b.end()) return false;
    for (const auto& x : b)
        if (std::find(a.begin(), a.end(), x) == a.end()) return false;
    return true;
}
}  // namespace detail

// Eigenvalues of the Dehn twist rho(t) relative to the vacuum. The
// normalizer exp(-2 pi i (r-1)^2 / 4r) turns them into r-th roots of unity
// e(-n^2); that set is X_r when r = 1 mod 4 and its conjugate when r = 3 mod 4.
inline DehnSpectrum dehn_twist_spectrum(long r) {
    const ModularData md = build_modular_data(r);
    const int n = md.modulus();
    DehnSpectrum sp;
    for (const auto& th : md.twist) sp.ratios.push_back(md.twist[0] * th.inv());
    sp.normalizer = CycNumber::zeta(n, -((r - 1) * (r - 1)));
    for (const auto& x : sp.ratios) sp.normalized.push_back(sp.normalizer * x);
    std::vector<CycNumber> uniq;
    for (const auto& x : sp.ratios)
        if (std::find(uniq.begin(), uniq.end(), x) == uniq.end()) uniq.push_back(x);
    sp.distinct = uniq.size();
    const auto xr = x_r_set(r);
    std::vector<CycNumber> xr_conj;
    for (const auto& x : xr) xr_conj.push_back(x.conj());
    sp.matches_x_r = detail::same_set(sp.normalized, xr);
    sp.matches_conj_x_r = detail::same_set(sp.normalized, xr_conj);
    return sp;
}

// p_-/D = exp(pi i c / 4) = zeta_{4r}^j; c = 2j/r mod 8.
struct CentralCharge {
    long order = 0;      // multiplicative order of p_-/D
    long exponent = -1;  // j
    mpq_class c;
};

inline CentralCharge central_charge(const ModularData& md) {
    CentralCharge cc;
    const CycNumber kappa = md.p_minus / md.global_dim;
    cc.order = root_of_unity_order(kappa);
    const int n = md.modulus();
    for (long j = 0; j < n; ++j) {
        if (CycNumber::zeta(n, j) == kappa) {
            cc.exponent = j;
            cc.c = mpq_class(2 * j, md.r);
            cc.c.canonicalize();
            break;
        }
    }
    return cc;
}

}  // namespace so3
