#pragma once

// Projective closure of a finite set of invertible cyclotomic matrices and
// identification of the genus-one image with a quotient of SL2(F_r).

#include "modular_data.hpp"
#include "weil.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

namespace so3 {

// A matrix scaled so that its first nonzero entry (row-major) is exactly 1.
class ProjMatrix {
public:
    ProjMatrix() = default;

    static ProjMatrix from(const CycMatrix& m) {
        const auto& e = m.entries();
        auto it = std::find_if(e.begin(), e.end(), [](const CycNumber& x) { return !x.is_zero(); });
        if (it == e.end()) throw std::invalid_argument("canonicalize: zero matrix");
        ProjMatrix p;
        p.mat_ = it->is_one() ? m : m.scaled(it->inv());
        p.hash_ = p.mat_.hash();
        return p;
    }

    const CycMatrix& mat() const { return mat_; }
    std::size_t hash() const { return hash_; }

    friend bool operator==(const ProjMatrix& a, const ProjMatrix& b) { return a.hash_ == b.hash_ && a.mat_ == b.mat_; }

private:
    CycMatrix mat_;
    std::size_t hash_ = 0;
};

struct ProjMatrixHash {
    std::size_t operator()(const ProjMatrix& p) const { return p.hash(); }
};

inline ProjMatrix canonicalize(const CycMatrix& m) { return ProjMatrix::from(m); }

struct GroupClosure {
    bool finite = true;
    std::vector<ProjMatrix> elements;    // BFS order, identity first
    std::vector<std::string> words;      // shortest word per element
    std::unordered_map<ProjMatrix, std::size_t, ProjMatrixHash> index;

    std::size_t order() const { return elements.size(); }
    bool contains(const ProjMatrix& p) const { return index.count(p) != 0; }
};

struct ClosureOptions {
    std::size_t max_order = 10'000'000;
    unsigned threads = 1;
    // Letters for the generators and their inverses, in generator order.
    std::string letters = "st";
    std::string inverse_letters = "ST";
};

// Breadth-first closure under left multiplication by the generators and
// their inverses. Products of a frontier are formed in parallel and inserted
// in a fixed order, so the result does not depend on the thread count.
inline GroupClosure closure(const std::vector<CycMatrix>& gens, const ClosureOptions& opt = {}) {
    if (gens.empty()) throw std::invalid_argument("closure: no generators");
    const std::size_t k = gens.front().rows();
    const int n = gens.front().modulus();
    for (const auto& g : gens)
        if (!g.is_square() || g.rows() != k) throw std::invalid_argument("closure: generators must be square, same size");

    std::vector<CycMatrix> steps;
    std::vector<char> letters;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        steps.push_back(canonicalize(gens[i]).mat());
        letters.push_back(i < opt.letters.size() ? opt.letters[i] : '?');
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
        steps.push_back(canonicalize(gens[i].inverse()).mat());
        letters.push_back(i < opt.inverse_letters.size() ? opt.inverse_letters[i] : '?');
    }

    GroupClosure gc;
    const ProjMatrix id = canonicalize(CycMatrix::identity(k, n));
    gc.elements.push_back(id);
    gc.words.emplace_back();
    gc.index.emplace(id, 0);

    std::size_t begin = 0;
    const unsigned threads = std::max(1u, opt.threads);
    while (begin < gc.elements.size()) {
        const std::size_t end = gc.elements.size();
        const std::size_t count = end - begin;
        std::vector<ProjMatrix> products(count * steps.size());
        auto work = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i)
                for (std::size_t j = 0; j < steps.size(); ++j)
                    products[i * steps.size() + j] = canonicalize(steps[j] * gc.elements[begin + i].mat());
        };
        if (threads == 1 || count < 2 * threads) {
            work(0, count);
        } else {
            std::vector<std::thread> pool;
            const std::size_t chunk = (count + threads - 1) / threads;
            for (unsigned t = 0; t < threads; ++t) {
                const std::size_t lo = t * chunk, hi = std::min(count, lo + chunk);
                if (lo < hi) pool.emplace_back(work, lo, hi);
            }
            for (auto& th : pool) th.join();
        }
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t j = 0; j < steps.size(); ++j) {
                ProjMatrix& p = products[i * steps.size() + j];
                if (gc.index.count(p)) continue;
                if (gc.elements.size() >= opt.max_order) {
                    gc.finite = false;
                    return gc;
                }
                gc.index.emplace(p, gc.elements.size());
                gc.words.push_back(letters[j] + gc.words[begin + i]);
                gc.elements.push_back(std::move(p));
            }
        }
        begin = end;
    }
    return gc;
}

// Smallest n >= 1 with m^n scalar, or 0 if none up to the bound.
inline long projective_order(const CycMatrix& m, long bound) {
    const ProjMatrix id = canonicalize(CycMatrix::identity(m.rows(), m.modulus()));
    CycMatrix p = canonicalize(m).mat();
    const CycMatrix step = p;
    for (long n = 1; n <= bound; ++n) {
        if (canonicalize(p) == id) return n;
        p = canonicalize(p * step).mat();
    }
    return 0;
}

inline bool projectively_trivial(const CycMatrix& m) { return m.is_scalar(); }

// Evaluates a word over {s, t, S, T} with S = s^{-1}, T = t^{-1}.
inline CycMatrix evaluate_word(const std::string& word, const CycMatrix& s, const CycMatrix& t) {
    std::optional<CycMatrix> s_inv, t_inv;
    CycMatrix m = CycMatrix::identity(s.rows(), s.modulus());
    for (char c : word) {
        switch (c) {
            case 's': m = m * s; break;
            case 't': m = m * t; break;
            case 'S':
                if (!s_inv) s_inv = s.inverse();
                m = m * *s_inv;
                break;
            case 'T':
                if (!t_inv) t_inv = t.inverse();
                m = m * *t_inv;
                break;
            default: throw usage_error(std::string("word letter must be one of s,t,S,T (got '") + c + "')");
        }
    }
    return m;
}

struct GroupIdentification {
    long r = 0;
    std::size_t order = 0;
    std::string matches;        // "SL2", "PSL2" or "neither"
    bool divides_sl2_order = false;
    long order_s = 0, order_t = 0, order_st = 0;
    // Relations of SL2(Z/r), modulo scalars.
    bool rel_s4 = false;        // s^4
    bool rel_braid = false;     // (st)^3 s^-2
    bool rel_t_r = false;       // t^r
    // The reduction SL2(Z) -> SL2(F_r) factors: walking the Cayley graph of
    // SL2(F_r) assigns one projective image per element consistently.
    bool factors_through_sl2_fr = false;
    std::size_t kernel_size = 0;
    std::size_t image_size = 0;
    bool image_matches_closure = false;
};

inline long sl2_order(long r) { return r * (r * r - 1); }

inline GroupIdentification identify_group(const GroupClosure& gc, const CycMatrix& s, const CycMatrix& t, long r) {
    GroupIdentification id;
    id.r = r;
    id.order = gc.order();
    const long full = sl2_order(r);
    if (gc.finite && static_cast<long>(id.order) == full) id.matches = "SL2";
    else if (gc.finite && static_cast<long>(id.order) == full / 2) id.matches = "PSL2";
    else id.matches = "neither";
    id.divides_sl2_order = gc.finite && full % static_cast<long>(id.order) == 0;

    const long bound = 4 * r;
    id.order_s = projective_order(s, bound);
    id.order_t = projective_order(t, bound);
    id.order_st = projective_order(s * t, bound);

    const CycMatrix s2 = s * s;
    const CycMatrix st = s * t;
    id.rel_s4 = projectively_trivial(s2 * s2);
    id.rel_braid = projectively_trivial(st * st * st * s2.inverse());
    id.rel_t_r = projectively_trivial(t.pow(r));

    // BFS over SL2(F_r) with generators s, t; every edge must agree.
    struct Key {
        std::size_t operator()(const Mat2& m) const {
            return static_cast<std::size_t>(((m.a * 131 + m.b) * 131 + m.c) * 131 + m.d);
        }
    };
    std::unordered_map<Mat2, std::size_t, Key> seen;
    std::vector<Mat2> group;
    std::vector<ProjMatrix> image;
    const Mat2 gens[2] = {s_matrix(r), t_matrix(r)};
    const CycMatrix* rho[2] = {&s, &t};
    group.push_back(Mat2{});
    image.push_back(canonicalize(CycMatrix::identity(s.rows(), s.modulus())));
    seen.emplace(group.back(), 0);
    bool consistent = true;
    for (std::size_t i = 0; i < group.size() && consistent; ++i) {
        for (int j = 0; j < 2; ++j) {
            const Mat2 g = mul(group[i], gens[j], r);
            ProjMatrix p = canonicalize(image[i].mat() * *rho[j]);
            auto it = seen.find(g);
            if (it == seen.end()) {
                seen.emplace(g, group.size());
                group.push_back(g);
                image.push_back(std::move(p));
            } else if (!(image[it->second] == p)) {
                consistent = false;
                break;
            }
        }
    }
    id.factors_through_sl2_fr = consistent && static_cast<long>(group.size()) == full;
    if (id.factors_through_sl2_fr) {
        std::unordered_map<ProjMatrix, std::size_t, ProjMatrixHash> distinct;
        for (const auto& p : image) ++distinct[p];
        id.image_size = distinct.size();
        id.kernel_size = distinct[image[0]];
        id.image_matches_closure = gc.finite && id.image_size == gc.order();
        if (id.image_matches_closure)
            for (const auto& [p, cnt] : distinct)
                if (!gc.contains(p)) id.image_matches_closure = false;
    }
    return id;
}

inline GroupClosure genus1_closure(const ModularData& md, const ClosureOptions& opt = {}) {
    const auto rho = rho_genus1(md);
    return closure({rho.s, rho.t}, opt);
}

inline GroupClosure weil_closure(const WeilMatrices& w, const ClosureOptions& opt = {}) {
    return closure({w.R_S_odd, w.R_T_odd}, opt);
}

inline bool same_elements(const GroupClosure& a, const GroupClosure& b) {
    if (!a.finite || !b.finite || a.order() != b.order()) return false;
    for (const auto& p : a.elements)
        if (!b.contains(p)) return false;
    return true;
}

struct ImageEquality {
    std::size_t rho_order = 0;
    std::size_t weil_order = 0;
    bool equal = false;
};

// The odd Weil block is expressed in the label basis already, so the change
// of basis is the identity and only scalars separate the two generator pairs.
inline ImageEquality weil_image_equality(long r, const ClosureOptions& opt = {}) {
    const ModularData md = build_modular_data(r);
    const GroupClosure a = genus1_closure(md, opt);
    const GroupClosure b = weil_closure(build_weil(r), opt);
    return {a.order(), b.order(), same_elements(a, b)};
}

}  // namespace so3
