#pragma once

// Dense matrices over Q(zeta_N), row-major.

#include "cyclo.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace so3 {

class CycMatrix {
public:
    CycMatrix() = default;

    CycMatrix(std::size_t rows, std::size_t cols, int n)
        : rows_(rows), cols_(cols), n_(n), entries_(rows * cols, CycNumber(n)) {}

    static CycMatrix identity(std::size_t k, int n) {
        CycMatrix m(k, k, n);
        for (std::size_t i = 0; i < k; ++i) m(i, i) = CycNumber(n, 1L);
        return m;
    }

    static CycMatrix diagonal(std::span<const CycNumber> diag) {
        if (diag.empty()) throw std::invalid_argument("diagonal: empty");
        const int n = diag.front().modulus();
        CycMatrix m(diag.size(), diag.size(), n);
        for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i].lift(n);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    int modulus() const { return n_; }
    bool is_square() const { return rows_ == cols_; }
    const std::vector<CycNumber>& entries() const { return entries_; }

    CycNumber& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const CycNumber& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    friend CycMatrix operator*(const CycMatrix& a, const CycMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
        const int n = a.n_;
        CycMatrix c(a.rows_, b.cols_, n);
        // Row i of a against column j of b; zero entries are skipped so that
        // diagonal and permutation factors are cheap.
        std::vector<char> bnz(b.entries_.size());
        for (std::size_t k = 0; k < b.entries_.size(); ++k) bnz[k] = !b.entries_[k].is_zero();
        for (std::size_t i = 0; i < a.rows_; ++i) {
            std::vector<std::size_t> live;
            for (std::size_t k = 0; k < a.cols_; ++k)
                if (!a(i, k).is_zero()) live.push_back(k);
            for (std::size_t j = 0; j < b.cols_; ++j) {
                ProductAccumulator acc(n);
                for (std::size_t k : live)
                    if (bnz[k * b.cols_ + j]) acc.add_product(a(i, k), b(k, j));
                c(i, j) = acc.result();
            }
        }
        return c;
    }

    friend CycMatrix operator+(CycMatrix a, const CycMatrix& b) {
        a.check_same_shape(b);
        for (std::size_t k = 0; k < a.entries_.size(); ++k) a.entries_[k] += b.entries_[k];
        return a;
    }

    friend CycMatrix operator-(CycMatrix a, const CycMatrix& b) {
        a.check_same_shape(b);
        for (std::size_t k = 0; k < a.entries_.size(); ++k) a.entries_[k] -= b.entries_[k];
        return a;
    }

    CycMatrix scaled(const CycNumber& c) const {
        CycMatrix m = *this;
        for (auto& e : m.entries_)
            if (!e.is_zero()) e = e * c;
        return m;
    }

    friend bool operator==(const CycMatrix& a, const CycMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

    CycMatrix transpose() const {
        CycMatrix t(cols_, rows_, n_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    CycMatrix conj_transpose() const {
        CycMatrix t(cols_, rows_, n_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j).conj();
        return t;
    }

    // Gauss-Jordan; throws division_by_zero when singular.
    CycMatrix inverse() const {
        if (!is_square()) throw std::invalid_argument("inverse: matrix not square");
        const std::size_t k = rows_;
        if (is_diagonal()) {
            CycMatrix d(k, k, n_);
            for (std::size_t i = 0; i < k; ++i) d(i, i) = (*this)(i, i).inv();
            return d;
        }
        CycMatrix a = *this;
        CycMatrix inv = identity(k, n_);
        for (std::size_t col = 0; col < k; ++col) {
            std::size_t piv = col;
            while (piv < k && a(piv, col).is_zero()) ++piv;
            if (piv == k) throw division_by_zero();
            if (piv != col) {
                for (std::size_t j = 0; j < k; ++j) {
                    std::swap(a(piv, j), a(col, j));
                    std::swap(inv(piv, j), inv(col, j));
                }
            }
            const CycNumber p = a(col, col).inv();
            for (std::size_t j = 0; j < k; ++j) {
                if (!a(col, j).is_zero()) a(col, j) = a(col, j) * p;
                if (!inv(col, j).is_zero()) inv(col, j) = inv(col, j) * p;
            }
            for (std::size_t i = 0; i < k; ++i) {
                if (i == col || a(i, col).is_zero()) continue;
                const CycNumber f = a(i, col);
                for (std::size_t j = 0; j < k; ++j) {
                    if (!a(col, j).is_zero()) a(i, j) -= f * a(col, j);
                    if (!inv(col, j).is_zero()) inv(i, j) -= f * inv(col, j);
                }
            }
        }
        return inv;
    }

    CycMatrix pow(long e) const {
        if (!is_square()) throw std::invalid_argument("pow: matrix not square");
        if (e < 0) return inverse().pow(-e);
        CycMatrix result = identity(rows_, n_);
        CycMatrix base = *this;
        while (e > 0) {
            if (e & 1) result = result * base;
            e >>= 1;
            if (e > 0) base = base * base;
        }
        return result;
    }

    bool is_diagonal() const {
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (i != j && !(*this)(i, j).is_zero()) return false;
        return true;
    }

    // Scalar iff off-diagonal entries are exactly zero and the diagonal
    // entries are exactly equal; returns that scalar.
    std::optional<CycNumber> scalar_value() const {
        if (!is_square() || rows_ == 0 || !is_diagonal()) return std::nullopt;
        for (std::size_t i = 1; i < rows_; ++i)
            if ((*this)(i, i) != (*this)(0, 0)) return std::nullopt;
        return (*this)(0, 0);
    }

    bool is_scalar() const { return scalar_value().has_value(); }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    std::size_t hash() const {
        std::size_t h = rows_ * 31 + cols_;
        for (const auto& e : entries_) h ^= e.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

private:
    void check_same_shape(const CycMatrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    int n_ = 1;
    std::vector<CycNumber> entries_;
};

}  // namespace so3
