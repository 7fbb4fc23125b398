#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_N).
//
// Elements are stored in the power basis 1, z, ..., z^(phi(N)-1), reduced
// modulo the N-th cyclotomic polynomial, as an integer numerator vector over
// one positive common denominator with gcd(content, den) == 1. That form is
// unique, so equality and hashing are coefficientwise.

#include "numtheory.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace so3 {

struct division_by_zero : std::domain_error {
    division_by_zero() : std::domain_error("division by zero in cyclotomic field") {}
};

// Precomputed data for Q(zeta_n). Instances live for the whole process.
struct CyclotomicField {
    int n = 1;
    int phi = 1;
    std::vector<long> poly;                     // Phi_n, low to high, monic
    std::vector<std::pair<int, long>> tail;     // nonzero (j, coeff) with j < phi
    std::vector<std::vector<long>> power;       // z^k mod Phi_n for 0 <= k < n
    std::vector<std::complex<long double>> unit;  // exp(2 pi i k / n), k < phi
};

namespace detail {

// Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}; numerator first, then exact
// division by the monic binomials.
inline std::vector<long> cyclotomic_poly(long n) {
    std::vector<long> p{1};
    std::vector<long> dens;
    for (long d : divisors(n)) {
        int mu = moebius(n / d);
        if (mu == 1) {
            std::vector<long> q(p.size() + d, 0);
            for (std::size_t i = 0; i < p.size(); ++i) {
                q[i + d] += p[i];
                q[i] -= p[i];
            }
            p = std::move(q);
        } else if (mu == -1) {
            dens.push_back(d);
        }
    }
    for (long d : dens) {
        // p / (x^d - 1): q_{i} = -(p_i - q_{i-d}) solved from the low end.
        std::size_t deg = p.size() - 1 - d;
        std::vector<long> q(deg + 1, 0);
        for (std::size_t i = 0; i <= deg; ++i) {
            long prev = i >= static_cast<std::size_t>(d) ? q[i - d] : 0;
            q[i] = prev - p[i];
        }
        p = std::move(q);
    }
    return p;
}

inline std::unique_ptr<CyclotomicField> make_field(int n) {
    auto f = std::make_unique<CyclotomicField>();
    f->n = n;
    f->poly = cyclotomic_poly(n);
    f->phi = static_cast<int>(f->poly.size()) - 1;
    for (int j = 0; j < f->phi; ++j)
        if (f->poly[j] != 0) f->tail.emplace_back(j, f->poly[j]);

    f->power.assign(n, std::vector<long>(f->phi, 0));
    std::vector<long> cur(f->phi, 0);
    cur[0] = 1;
    for (int k = 0; k < n; ++k) {
        f->power[k] = cur;
        // multiply by z
        long top = cur[f->phi - 1];
        for (int j = f->phi - 1; j > 0; --j) cur[j] = cur[j - 1];
        cur[0] = 0;
        for (auto [j, c] : f->tail) cur[j] -= top * c;
    }
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    for (int k = 0; k < f->phi; ++k) {
        long double a = two_pi * k / n;
        f->unit.emplace_back(std::cos(a), std::sin(a));
    }
    return f;
}

// Subtracts multiples of Phi_n so that only degrees < phi remain.
inline void reduce_in_place(const CyclotomicField& f, std::vector<mpz_class>& p) {
    for (std::size_t k = p.size(); k-- > static_cast<std::size_t>(f.phi);) {
        if (sgn(p[k]) == 0) continue;
        const std::size_t base = k - f.phi;
        for (auto [j, c] : f.tail) {
            if (c > 0)
                mpz_submul_ui(p[base + j].get_mpz_t(), p[k].get_mpz_t(), static_cast<unsigned long>(c));
            else
                mpz_addmul_ui(p[base + j].get_mpz_t(), p[k].get_mpz_t(), static_cast<unsigned long>(-c));
        }
        p[k] = 0;
    }
}

}  // namespace detail

inline const CyclotomicField& cyclotomic_field(int n) {
    if (n < 1) throw usage_error("cyclotomic modulus must be positive");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<CyclotomicField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, detail::make_field(n)).first;
    return *it->second;
}

class ProductAccumulator;

class CycNumber {
public:
    CycNumber() : CycNumber(1) {}

    explicit CycNumber(int n) : f_(&cyclotomic_field(n)), num_(f_->phi), den_(1) {}

    CycNumber(int n, const mpq_class& q) : CycNumber(n) {
        num_[0] = q.get_num();
        den_ = q.get_den();
    }

    CycNumber(int n, long v) : CycNumber(n) { num_[0] = v; }

    // z_n^k for any integer k.
    static CycNumber zeta(int n, long k = 1) {
        CycNumber x(n);
        const auto& row = x.f_->power[mod(k, n)];
        for (int j = 0; j < x.f_->phi; ++j) x.num_[j] = row[j];
        return x;
    }

    // Element with the given coefficients on z^0, z^1, ...; any length.
    static CycNumber from_coeffs(int n, const std::vector<mpq_class>& c) {
        const auto& f = cyclotomic_field(n);
        mpz_class common = 1;
        for (const auto& q : c)
            if (sgn(q) != 0) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), q.get_den_mpz_t());
        std::vector<mpz_class> dense(std::max<std::size_t>(c.size(), static_cast<std::size_t>(f.phi)));
        for (std::size_t k = 0; k < c.size(); ++k)
            if (sgn(c[k]) != 0) dense[k] = c[k].get_num() * (common / c[k].get_den());
        detail::reduce_in_place(f, dense);
        CycNumber x(n);
        for (int j = 0; j < f.phi; ++j) x.num_[j] = std::move(dense[j]);
        x.den_ = common;
        x.normalize();
        return x;
    }

    // Sum_k c_k z_n^k / den from a dense exponent vector of length n.
    static CycNumber from_exponent_sum(int n, std::vector<mpz_class> c, const mpz_class& den = 1) {
        CycNumber x(n);
        if (c.size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("from_exponent_sum: vector length must equal n");
        detail::reduce_in_place(*x.f_, c);
        for (int j = 0; j < x.f_->phi; ++j) x.num_[j] = std::move(c[j]);
        x.den_ = den;
        x.normalize();
        return x;
    }

    int modulus() const { return f_->n; }
    int degree() const { return f_->phi; }
    const CyclotomicField& field() const { return *f_; }
    const std::vector<mpz_class>& numerators() const { return num_; }
    const mpz_class& denominator() const { return den_; }

    std::vector<mpq_class> coeffs() const {
        std::vector<mpq_class> out;
        out.reserve(num_.size());
        for (const auto& a : num_) {
            mpq_class q(a, den_);
            q.canonicalize();
            out.push_back(q);
        }
        return out;
    }

    bool is_zero() const {
        return std::all_of(num_.begin(), num_.end(), [](const mpz_class& a) { return sgn(a) == 0; });
    }

    bool is_rational() const {
        for (std::size_t j = 1; j < num_.size(); ++j)
            if (sgn(num_[j]) != 0) return false;
        return true;
    }

    bool is_one() const { return is_rational() && den_ == 1 && num_[0] == 1; }

    mpq_class rational_part() const {
        mpq_class q(num_[0], den_);
        q.canonicalize();
        return q;
    }

    CycNumber operator-() const {
        CycNumber x = *this;
        for (auto& a : x.num_) a = -a;
        return x;
    }

    CycNumber& operator+=(const CycNumber& o) { return add_signed(o, false); }
    CycNumber& operator-=(const CycNumber& o) { return add_signed(o, true); }
    CycNumber& operator*=(const CycNumber& o) { return *this = *this * o; }
    CycNumber& operator/=(const CycNumber& o) { return *this = *this * o.inv(); }

    friend CycNumber operator+(CycNumber a, const CycNumber& b) { return a += b; }
    friend CycNumber operator-(CycNumber a, const CycNumber& b) { return a -= b; }
    friend CycNumber operator*(const CycNumber& a, const CycNumber& b);
    friend CycNumber operator/(const CycNumber& a, const CycNumber& b) { return a * b.inv(); }

    friend bool operator==(const CycNumber& a, const CycNumber& b) {
        if (a.f_ != b.f_) {
            int m = static_cast<int>(lcm(a.modulus(), b.modulus()));
            return a.lift(m) == b.lift(m);
        }
        return a.den_ == b.den_ && a.num_ == b.num_;
    }

    // Complex conjugation z -> z^{-1}.
    CycNumber conj() const { return galois(-1); }

    // Field automorphism z -> z^a, gcd(a, n) = 1.
    CycNumber galois(long a) const {
        const int n = f_->n;
        if (std::gcd(mod(a, n), static_cast<long>(n)) != 1 && n > 1)
            throw std::invalid_argument("galois: exponent must be a unit mod n");
        CycNumber x(n);
        for (int k = 0; k < f_->phi; ++k) {
            if (sgn(num_[k]) == 0) continue;
            const auto& row = f_->power[mod(a * k, n)];
            add_row(x.num_, row, num_[k]);
        }
        x.den_ = den_;
        x.normalize();
        return x;
    }

    // The same number viewed in Q(zeta_m), n | m.
    CycNumber lift(int m) const {
        const int n = f_->n;
        if (m == n) return *this;
        if (m % n != 0) throw std::invalid_argument("lift: target modulus must be a multiple");
        CycNumber x(m);
        const long step = m / n;
        for (int k = 0; k < f_->phi; ++k) {
            if (sgn(num_[k]) == 0) continue;
            add_row(x.num_, x.f_->power[(k * step) % m], num_[k]);
        }
        x.den_ = den_;
        x.normalize();
        return x;
    }

    CycNumber inv() const;

    CycNumber pow(long e) const {
        if (e < 0) return inv().pow(-e);
        CycNumber result(f_->n, 1L);
        CycNumber base = *this;
        while (e > 0) {
            if (e & 1) result = result * base;
            e >>= 1;
            if (e > 0) base = base * base;
        }
        return result;
    }

    // Principal embedding z_n -> exp(2 pi i / n).
    std::complex<double> embed() const {
        std::complex<long double> acc{0.0L, 0.0L};
        for (int k = 0; k < f_->phi; ++k) {
            if (sgn(num_[k]) == 0) continue;
            acc += static_cast<long double>(mpz_get_d(num_[k].get_mpz_t())) * f_->unit[k];
        }
        long double d = mpz_get_d(den_.get_mpz_t());
        return {static_cast<double>(acc.real() / d), static_cast<double>(acc.imag() / d)};
    }

    std::size_t hash() const {
        std::size_t h = static_cast<std::size_t>(f_->n) * 0x9e3779b97f4a7c15ULL;
        auto mix = [&h](const mpz_class& z) {
            std::size_t v = mpz_get_ui(z.get_mpz_t()) ^ (static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1) << 60);
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        };
        for (const auto& a : num_) mix(a);
        mix(den_);
        return h;
    }

    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (int k = 0; k < f_->phi; ++k) {
            if (sgn(num_[k]) == 0) continue;
            mpq_class q(num_[k], den_);
            q.canonicalize();
            if (!first) os << (sgn(q) < 0 ? " - " : " + ");
            else if (sgn(q) < 0) os << "-";
            first = false;
            mpq_class a = abs(q);
            if (k == 0) os << a;
            else {
                if (a != 1) os << a << "*";
                os << "z^" << k;
            }
        }
        if (first) os << "0";
        os << " [N=" << f_->n << "]";
        return os.str();
    }

private:
    friend class ProductAccumulator;

    static void add_row(std::vector<mpz_class>& dst, const std::vector<long>& row, const mpz_class& c) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            long r = row[j];
            if (r > 0) mpz_addmul_ui(dst[j].get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(r));
            else if (r < 0) mpz_submul_ui(dst[j].get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(-r));
        }
    }

    void normalize() {
        if (den_ == 1) return;
        if (is_zero()) {
            den_ = 1;
            return;
        }
        mpz_class g = den_;
        for (const auto& a : num_) {
            if (g == 1) break;
            if (sgn(a) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        }
        if (g != 1) {
            for (auto& a : num_) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
            mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
        }
    }

    CycNumber& add_signed(const CycNumber& o, bool subtract) {
        if (f_ != o.f_) {
            int m = static_cast<int>(lcm(modulus(), o.modulus()));
            *this = lift(m);
            return add_signed(o.lift(m), subtract);
        }
        if (den_ == o.den_) {
            for (std::size_t j = 0; j < num_.size(); ++j) {
                if (subtract) num_[j] -= o.num_[j];
                else num_[j] += o.num_[j];
            }
        } else {
            for (std::size_t j = 0; j < num_.size(); ++j) {
                num_[j] *= o.den_;
                if (subtract) mpz_submul(num_[j].get_mpz_t(), o.num_[j].get_mpz_t(), den_.get_mpz_t());
                else mpz_addmul(num_[j].get_mpz_t(), o.num_[j].get_mpz_t(), den_.get_mpz_t());
            }
            den_ *= o.den_;
        }
        normalize();
        return *this;
    }

    const CyclotomicField* f_;
    std::vector<mpz_class> num_;
    mpz_class den_;
};

// Accumulates sum_k a_k * b_k with a single reduction and normalization at
// the end; the workhorse of matrix products.
class ProductAccumulator {
public:
    explicit ProductAccumulator(int n) : f_(&cyclotomic_field(n)), acc_(2 * f_->phi - 1), den_(1) {}

    void add_product(const CycNumber& a, const CycNumber& b) {
        if (a.f_ != f_ || b.f_ != f_) {
            add_product(a.lift(f_->n), b.lift(f_->n));
            return;
        }
        const int phi = f_->phi;
        mpz_class d = a.den_ * b.den_;
        if (empty_) {
            den_ = d;
            empty_ = false;
        } else if (d != den_) {
            mpz_class l;
            mpz_lcm(l.get_mpz_t(), den_.get_mpz_t(), d.get_mpz_t());
            if (l != den_) {
                mpz_class up = l / den_;
                for (auto& c : acc_)
                    if (sgn(c) != 0) c *= up;
                den_ = l;
            }
        }
        mpz_class factor = den_ / d;
        const bool scaled = factor != 1;
        for (int i = 0; i < phi; ++i) {
            if (sgn(a.num_[i]) == 0) continue;
            const mpz_class* ai = &a.num_[i];
            if (scaled) {
                tmp_ = a.num_[i] * factor;
                ai = &tmp_;
            }
            for (int j = 0; j < phi; ++j) {
                if (sgn(b.num_[j]) == 0) continue;
                mpz_addmul(acc_[i + j].get_mpz_t(), ai->get_mpz_t(), b.num_[j].get_mpz_t());
            }
        }
    }

    CycNumber result() {
        CycNumber x(f_->n);
        if (empty_) return x;
        detail::reduce_in_place(*f_, acc_);
        for (int j = 0; j < f_->phi; ++j) x.num_[j] = acc_[j];
        x.den_ = den_;
        x.normalize();
        return x;
    }

private:
    const CyclotomicField* f_;
    std::vector<mpz_class> acc_;
    mpz_class den_;
    mpz_class tmp_;
    bool empty_ = true;
};

inline CycNumber operator*(const CycNumber& a, const CycNumber& b) {
    if (a.f_ != b.f_) {
        int m = static_cast<int>(lcm(a.modulus(), b.modulus()));
        return a.lift(m) * b.lift(m);
    }
    if (a.is_zero() || b.is_zero()) return CycNumber(a.modulus());
    ProductAccumulator acc(a.modulus());
    acc.add_product(a, b);
    return acc.result();
}

inline CycNumber CycNumber::inv() const {
    if (is_zero()) throw division_by_zero();
    const int n = f_->n;
    int nnz = 0, where = 0;
    for (int k = 0; k < f_->phi; ++k)
        if (sgn(num_[k]) != 0) {
            ++nnz;
            where = k;
        }
    if (nnz == 1) {
        // (c z^k)^{-1} = c^{-1} z^{-k}
        CycNumber x = zeta(n, -where);
        mpq_class c(den_, num_[where]);
        c.canonicalize();
        for (auto& a : x.num_) a *= c.get_num();
        x.den_ = c.get_den();
        x.normalize();
        return x;
    }
    // a^{-1} = prod_{sigma != 1} sigma(a) / N(a), and N(a) is rational.
    CycNumber p(n, 1L);
    for (long k = 2; k < n; ++k)
        if (std::gcd(k, static_cast<long>(n)) == 1) p = p * galois(k);
    const mpq_class norm_inv = 1 / (*this * p).rational_part();
    return p * CycNumber(n, norm_inv);
}

struct CycNumberHash {
    std::size_t operator()(const CycNumber& x) const { return x.hash(); }
};

// Primitive n-th root of unity.
inline CycNumber zeta(int n) { return CycNumber::zeta(n, 1); }

// Exact positive square root of an odd prime r inside Q(zeta_{4r}), from the
// quadratic Gauss sum g = sum (k|r) zeta_r^k, which is sqrt(r) for r = 1 mod 4
// and i*sqrt(r) for r = 3 mod 4.
inline CycNumber gauss_sum(long r) {
    if (r < 3 || !is_prime(r)) throw usage_error("gauss_sum: r must be an odd prime");
    const int n = static_cast<int>(4 * r);
    CycNumber g(n);
    for (long k = 1; k < r; ++k) {
        CycNumber term = CycNumber::zeta(n, 4 * k);
        if (legendre(k, r) > 0) g += term;
        else g -= term;
    }
    return g;
}

inline CycNumber sqrt_r(long r) {
    CycNumber g = gauss_sum(r);
    const int n = static_cast<int>(4 * r);
    CycNumber s = (r % 4 == 1) ? g : g * CycNumber::zeta(n, 3 * r);  // times -i
    if (s * s != CycNumber(n, r) || s.embed().real() <= 0)
        throw std::logic_error("sqrt_r: Gauss sum branch check failed");
    return s;
}

// Multiplicative order of a root of unity in Q(zeta_n); 0 if not a root of
// unity of order dividing 2n.
inline long root_of_unity_order(const CycNumber& x) {
    const long bound = 2L * x.modulus();
    CycNumber p = x;
    for (long k = 1; k <= bound; ++k) {
        if (p.is_one()) return k;
        p = p * x;
    }
    return 0;
}

inline std::ostream& operator<<(std::ostream& os, const CycNumber& x) { return os << x.to_string(); }

}  // namespace so3

template <>
struct std::hash<so3::CycNumber> {
    std::size_t operator()(const so3::CycNumber& x) const { return x.hash(); }
};
