#pragma once

// Weil representation of SL2(F_r) built from the Heisenberg group H_r, its
// odd piece, and the exact identification of that piece with the SO(3)
// genus-one representation.

#include "modular_data.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace so3 {

// z^e x^a y^c with exponents mod r. y x = z^2 x y.
struct HeisenbergWord {
    long z = 0;
    long x = 0;
    long y = 0;
    friend bool operator==(const HeisenbergWord&, const HeisenbergWord&) = default;
};

inline HeisenbergWord normalize(HeisenbergWord w, long r) { return {mod(w.z, r), mod(w.x, r), mod(w.y, r)}; }

inline HeisenbergWord multiply(const HeisenbergWord& u, const HeisenbergWord& v, long r) {
    // z^e x^a y^c z^f x^b y^d = z^{e+f+2cb} x^{a+b} y^{c+d}
    return normalize({u.z + v.z + 2 * u.y * v.x, u.x + v.x, u.y + v.y}, r);
}

inline HeisenbergWord power(HeisenbergWord w, long k, long r) {
    k = mod(k, r);  // every element has order dividing r
    HeisenbergWord acc{};
    for (long i = 0; i < k; ++i) acc = multiply(acc, w, r);
    return acc;
}

// 2x2 matrix over F_r, [[a, b], [c, d]].
struct Mat2 {
    long a = 1, b = 0, c = 0, d = 1;
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

inline Mat2 mul(const Mat2& m, const Mat2& n, long r) {
    return {mod(m.a * n.a + m.b * n.c, r), mod(m.a * n.b + m.b * n.d, r), mod(m.c * n.a + m.d * n.c, r),
            mod(m.c * n.b + m.d * n.d, r)};
}

inline long det(const Mat2& m, long r) { return mod(m.a * m.d - m.b * m.c, r); }

inline Mat2 inverse(const Mat2& m, long r) {
    const long di = inv_mod(det(m, r), r);
    return {mod(m.d * di, r), mod(-m.b * di, r), mod(-m.c * di, r), mod(m.a * di, r)};
}

inline Mat2 s_matrix(long r) { return {0, mod(-1, r), 1, 0}; }
inline Mat2 t_matrix(long) { return {1, 1, 0, 1}; }

// Automorphism f_M of H_r: f_M(x) = z^{ac} x^a y^c, f_M(y) = z^{bd} x^b y^d, f_M(z) = z.
struct HeisenbergAutomorphism {
    long r = 0;
    HeisenbergWord image_x;
    HeisenbergWord image_y;

    HeisenbergWord operator()(const HeisenbergWord& w) const {
        HeisenbergWord out{w.z, 0, 0};
        out = multiply(out, power(image_x, w.x, r), r);
        out = multiply(out, power(image_y, w.y, r), r);
        return normalize(out, r);
    }
};

inline HeisenbergAutomorphism heisenberg_action(const Mat2& m, long r) {
    if (det(m, r) != 1) throw usage_error("heisenberg_action: det(M) must be 1 in F_r");
    return {r, normalize({m.a * m.c, m.a, m.c}, r), normalize({m.b * m.d, m.b, m.d}, r)};
}

// (f o g)
inline HeisenbergAutomorphism compose(const HeisenbergAutomorphism& f, const HeisenbergAutomorphism& g) {
    return {f.r, f(g.image_x), f(g.image_y)};
}

struct HeisenbergPresentation {
    long r = 0;
    CycMatrix rho_x;  // diag e(2k)
    CycMatrix rho_y;  // cyclic shift, e_k -> e_{k-1}
    CycMatrix rho_z;  // e(1) Id

    CycMatrix rho(const HeisenbergWord& w) const {
        return rho_z.pow(w.z) * rho_x.pow(w.x) * rho_y.pow(w.y);
    }
};

// Stone-von Neumann representation with central character z^k -> e(k).
inline HeisenbergPresentation stone_von_neumann(long r) {
    require_level(r);
    const int n = field_modulus(r);
    const auto k = static_cast<std::size_t>(r);
    HeisenbergPresentation h;
    h.r = r;
    h.rho_x = CycMatrix(k, k, n);
    h.rho_y = CycMatrix(k, k, n);
    for (std::size_t i = 0; i < k; ++i) {
        h.rho_x(i, i) = e_r(r, 2 * static_cast<long>(i));
        h.rho_y(i, (i + 1) % k) = CycNumber(n, 1L);
    }
    h.rho_z = CycMatrix::identity(k, n).scaled(e_r(r, 1));
    return h;
}

// R_alpha rho(h) R_alpha^{-1} == rho(f_alpha(h)) for alpha in {s, t}, h in {x, y}.
struct IntertwinerCheck {
    char alpha = 's';
    char h = 'x';
    HeisenbergWord image;
    bool holds = false;
};

struct WeilMatrices {
    long r = 0;
    CycMatrix R_S;      // (e(2ij)), r x r
    CycMatrix R_T;      // diag e(-i^2)
    CycMatrix R_S_odd;  // on f_i, i in {0, 2, ..., r-3}
    CycMatrix R_T_odd;
    std::vector<IntertwinerCheck> intertwiners;
};

// Basis vector f_i = e_{(r-1-i)/2} - e_{(r+1+i)/2} of the odd subspace; the
// position of its +1 entry.
inline long odd_basis_anchor(long i, long r) { return (r - 1 - i) / 2; }

// Matrix of m on span{f_i}; throws when that span is not invariant.
inline CycMatrix restrict_to_odd(const CycMatrix& m, long r) {
    const auto labels = label_set(r);
    const std::size_t k = labels.size();
    const int n = m.modulus();
    CycMatrix out(k, k, n);
    for (std::size_t j = 0; j < k; ++j) {
        const long pj = odd_basis_anchor(labels[j], r);
        const long qj = r - pj;
        std::vector<CycNumber> v(static_cast<std::size_t>(r), CycNumber(n));
        for (long row = 0; row < r; ++row) v[row] = m(row, pj) - m(row, qj);
        if (!v[0].is_zero()) throw std::logic_error("odd subspace not invariant: e_0 component");
        for (std::size_t i = 0; i < k; ++i) {
            const long pi = odd_basis_anchor(labels[i], r);
            out(i, j) = v[pi];
            if (v[r - pi] != -v[pi]) throw std::logic_error("odd subspace not invariant");
        }
    }
    return out;
}

inline WeilMatrices odd_restriction(WeilMatrices w) {
    w.R_S_odd = restrict_to_odd(w.R_S, w.r);
    w.R_T_odd = restrict_to_odd(w.R_T, w.r);
    return w;
}

inline WeilMatrices weil_generators(long r) {
    require_level(r);
    const int n = field_modulus(r);
    const auto k = static_cast<std::size_t>(r);
    WeilMatrices w;
    w.r = r;
    w.R_S = CycMatrix(k, k, n);
    w.R_T = CycMatrix(k, k, n);
    for (long i = 0; i < r; ++i) {
        for (long j = 0; j < r; ++j) w.R_S(i, j) = e_r(r, 2 * i * j);
        w.R_T(i, i) = e_r(r, -i * i);
    }
    return w;
}

inline std::vector<IntertwinerCheck> check_intertwiners(const WeilMatrices& w) {
    const long r = w.r;
    const auto svn = stone_von_neumann(r);
    std::vector<IntertwinerCheck> out;
    const std::array<std::pair<char, Mat2>, 2> alphas{{{'s', s_matrix(r)}, {'t', t_matrix(r)}}};
    for (const auto& [name, m] : alphas) {
        const CycMatrix& R = name == 's' ? w.R_S : w.R_T;
        const auto f = heisenberg_action(m, r);
        for (char h : {'x', 'y'}) {
            const HeisenbergWord gen = h == 'x' ? HeisenbergWord{0, 1, 0} : HeisenbergWord{0, 0, 1};
            IntertwinerCheck c;
            c.alpha = name;
            c.h = h;
            c.image = f(gen);
            // R rho(h) R^-1 = rho(alpha(h)), checked as R rho(h) = rho(alpha(h)) R.
            c.holds = R * svn.rho(gen) == svn.rho(c.image) * R;
            out.push_back(c);
        }
    }
    return out;
}

inline WeilMatrices build_weil(long r) {
    WeilMatrices w = weil_generators(r);
    w.intertwiners = check_intertwiners(w);
    for (const auto& c : w.intertwiners)
        if (!c.holds) throw std::logic_error(std::string("intertwiner relation fails for ") + c.alpha + "," + c.h);
    return odd_restriction(std::move(w));
}

struct EntryMismatch {
    std::string which;
    std::size_t row = 0;
    std::size_t col = 0;
    CycNumber lhs;
    CycNumber rhs;
};

struct IdentificationReport {
    long r = 0;
    bool s_identity = false;  // R_S_odd == (A^2 - A^{-2}) s_tilde
    bool t_identity = false;  // R_T_odd == exp(-2 pi i (r-1)^2 / 4r) rho(t)
    CycNumber s_constant;
    CycNumber t_constant;
    std::optional<EntryMismatch> mismatch;
    bool holds() const { return s_identity && t_identity; }
};

namespace detail {
inline std::optional<EntryMismatch> first_difference(const std::string& which, const CycMatrix& lhs,
                                                     const CycMatrix& rhs) {
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t j = 0; j < lhs.cols(); ++j)
            if (lhs(i, j) != rhs(i, j)) return EntryMismatch{which, i, j, lhs(i, j), rhs(i, j)};
    return std::nullopt;
}
}  // namespace detail

inline IdentificationReport verify_identification(const ModularData& md, const WeilMatrices& w) {
    IdentificationReport rep;
    rep.r = md.r;
    const int n = md.modulus();
    rep.s_constant = md.A.pow(2) - md.A.pow(-2);
    rep.t_constant = CycNumber::zeta(n, -((md.r - 1) * (md.r - 1)));
    const CycMatrix s_rhs = md.s_tilde.scaled(rep.s_constant);
    const CycMatrix t_rhs = rho_genus1(md).t.scaled(rep.t_constant);
    auto ms = detail::first_difference("R_S_odd", w.R_S_odd, s_rhs);
    auto mt = detail::first_difference("R_T_odd", w.R_T_odd, t_rhs);
    rep.s_identity = !ms;
    rep.t_identity = !mt;
    rep.mismatch = ms ? ms : mt;
    return rep;
}

inline IdentificationReport verify_identification(long r) { return verify_identification(build_modular_data(r), build_weil(r)); }

}  // namespace so3
