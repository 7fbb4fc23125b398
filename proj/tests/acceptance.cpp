// One line per acceptance criterion: "ACn PASS|FAIL <detail> (<seconds>s)".
// With --known-failure ACn[:clause] the exit status is 0 when exactly the
// listed criteria fail, each only on the named clause.

#include "so3tqft/random_cyclo.hpp"
#include "so3tqft/so3tqft.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

const long kLevels[] = {5, 7, 11, 13};

struct Outcome {
    bool pass = true;
    std::vector<std::string> failed_clauses;
    std::ostringstream detail;

    void clause(const std::string& name, bool ok) {
        if (!ok) {
            pass = false;
            failed_clauses.push_back(name);
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void ac1(Outcome& o) {
    for (long r : kLevels) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto rep = so3::verify_identification(r);
        const double dt = seconds_since(t0);
        o.clause("identity_r" + std::to_string(r), rep.holds());
        o.clause("time_r" + std::to_string(r), dt < 5.0);
        o.detail << "r=" << r << ":" << (rep.holds() ? "exact" : "mismatch") << " ";
    }
}

void ac2(Outcome& o) {
    for (long r : kLevels) {
        const auto checks = so3::check_intertwiners(so3::weil_generators(r));
        int held = 0;
        for (const auto& c : checks) held += c.holds;
        o.clause("intertwiners_r" + std::to_string(r), checks.size() == 4 && held == 4);
        o.detail << "r=" << r << ":" << held << "/4 ";
    }
}

void ac3(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    o.clause("d_7_1_0", so3::dim_space(7, 1, {0}) == 3);
    o.clause("d_7_2", so3::dim_space(7, 2) == 14);
    o.clause("d_7_3", so3::dim_space(7, 3) == 98);
    o.clause("d_11_2", so3::dim_space(11, 2) == 55);
    o.clause("d_13_2", so3::dim_space(13, 2) == 91 && 91 == (13 * 13 * 13 - 13) / 24);
    int compared = 0;
    for (long r = 5; r <= 31; ++r) {
        if (!so3::is_prime(r)) continue;
        for (long g = 1; g <= 6; ++g) {
            const auto v = so3::verlinde_dim(r, g);
            const mpz_class exact = so3::dim_space(r, g);
            const long double rel = std::fabs(v.raw - static_cast<long double>(exact.get_d())) / exact.get_d();
            o.clause("verlinde_r" + std::to_string(r) + "_g" + std::to_string(g), rel < 1e-6L);
            ++compared;
        }
    }
    const double dt = seconds_since(t0);
    o.clause("time", dt < 30.0);
    o.detail << "pinned dims exact, verlinde pairs=" << compared;
}

void ac4(Outcome& o) {
    const auto m13 = so3::twist_multiplicities(13);
    o.clause("r13_values", m13 == std::vector<long>{6, 15, 20, 21, 18, 11});
    int levels = 0;
    for (long r = 5; r <= 31; ++r) {
        if (!so3::is_prime(r)) continue;
        // twist_multiplicities throws unless distinct and summing to d_{r,2}.
        const auto m = so3::twist_multiplicities(r);
        const std::set<long> distinct(m.begin(), m.end());
        mpz_class sum = 0;
        for (long x : m) sum += x;
        o.clause("distinct_r" + std::to_string(r), distinct.size() == m.size());
        o.clause("sum_r" + std::to_string(r), sum == so3::dim_space(r, 2));
        ++levels;
    }
    o.detail << "r=13 [6,15,20,21,18,11], levels=" << levels;
}

void ac5(Outcome& o) {
    const mpz_class m72 = so3::binomial_margin(7, 2);
    o.clause("margin_7_2", m72 == -7 && so3::binomial2(14) - 98 == -7);
    const mpz_class closed = mpz_class(12) * 10 * 8 * 7 * 6 * (-1) / 5760;
    o.clause("closed_form_7_2", closed == m72);
    o.detail << "(7,2)=" << m72.get_str();
    for (auto [r, g] : {std::pair{11L, 2L}, {13L, 2L}, {7L, 3L}, {7L, 4L}}) {
        const mpz_class m = so3::binomial_margin(r, g);
        o.clause("positive_" + std::to_string(r) + "_" + std::to_string(g), m > 0);
        o.detail << " (" << r << "," << g << ")=" << m.get_str();
    }
}

void ac6(Outcome& o) {
    for (long r : kLevels) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto md = so3::build_modular_data(r);
        const auto rho = so3::rho_genus1(md);
        so3::ClosureOptions opt;
        const auto gc = so3::closure({rho.s, rho.t}, opt);
        const auto wc = so3::weil_closure(so3::build_weil(r), opt);
        const double dt = seconds_since(t0);
        const long full = so3::sl2_order(r);
        const long ord = static_cast<long>(gc.order());
        const std::string tag = "_r" + std::to_string(r);
        o.clause("finite" + tag, gc.finite);
        o.clause("order" + tag, ord == full || ord == full / 2);
        o.clause("t_order" + tag, so3::projective_order(rho.t, 4 * r) == r);
        o.clause("weil_equal" + tag, so3::same_elements(gc, wc));
        if (r == 13) o.clause("time_r13", dt < 60.0);
        o.detail << "r=" << r << ":" << ord << " ";
    }
}

void ac7(Outcome& o) {
    for (long r : kLevels) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto g = so3::sl2_character_table(r);
        const auto orth = so3::check_orthogonality(g);
        const auto l = so3::check_small_tensor(g);
        const auto b = so3::borel_check(g);
        const double dt = seconds_since(t0);
        const std::string tag = "_r" + std::to_string(r);
        o.clause("orthogonality" + tag, orth.rows && orth.columns);
        bool small_ok = l.small.size() == 2;
        for (auto a : l.small) small_ok = small_ok && g.degrees[a] == (r - 1) / 2;
        o.clause("two_small" + tag, small_ok);
        const long h = static_cast<long>(g.degrees.size());
        o.clause("small_tensor" + tag, l.violations.empty() && static_cast<long>(l.pairs_checked) == (h - 1) * h / 2);
        o.clause("borel_degrees" + tag, b.degrees_in_one_or_r_minus_1);
        if (r == 13) o.clause("time_r13", dt < 120.0);
        o.detail << "r=" << r << ": borel degrees {";
        bool first = true;
        for (auto [d, c] : b.degree_counts) {
            o.detail << (first ? "" : ",") << d << "x" << c;
            first = false;
        }
        o.detail << "} ";
    }
}

void ac8(Outcome& o) {
    for (long r : kLevels) {
        const auto md = so3::build_modular_data(r);
        const std::string tag = "_r" + std::to_string(r);
        const auto inv_d = md.global_dim.inv();
        o.clause("s3" + tag, so3::tau(md, std::vector<so3::ChainSurgery>{}).value == inv_d);
        o.clause("s1s2" + tag, so3::tau(md, so3::ChainSurgery{{0}}).value.is_one());
        bool blow = true;
        for (const std::vector<long>& f : {std::vector<long>{}, std::vector<long>{0}, std::vector<long>{3, -2}})
            for (long e : {1L, -1L}) {
                std::vector<so3::ChainSurgery> base;
                if (!f.empty()) base.push_back({f});
                auto blown = base;
                blown.push_back({{e}});
                blow = blow && so3::tau(md, blown).value == so3::tau(md, base).value;
            }
        o.clause("blow_up" + tag, blow);
        bool lens = true;
        double worst = 0;
        for (long p = -12; p <= 12; ++p) {
            const auto t = so3::tau(md, so3::ChainSurgery{{p}});
            const auto hv = so3::heegaard_amplitude(md, so3::lens_word(p));
            lens = lens && t.value * t.value.conj() == hv.norm_sq;
            worst = std::max(worst, std::fabs(t.norm - hv.norm));
        }
        o.clause("lens_exact" + tag, lens);
        o.clause("lens_float" + tag, worst < 1e-9);
    }
    o.detail << "anchors, blow-up, lens |p|<=12 exact";
}

void ac9(Outcome& o) {
    for (long r : kLevels) {
        const auto md = so3::build_modular_data(r);
        const auto gc = so3::genus1_closure(md);
        const auto sv = so3::norm_survey(md, 12);
        const std::string tag = "_r" + std::to_string(r);
        o.clause("classes_bounded" + tag, gc.finite && sv.classes_reached <= gc.order());
        o.clause("values_bounded" + tag, sv.distinct_values <= gc.order());
        o.clause("max_one" + tag, sv.max_value <= 1.0 + 1e-12);
        o.detail << "r=" << r << ":" << sv.distinct_values << " values/" << sv.classes_reached << " classes ";
    }
}

void ac10(Outcome& o) {
    const auto fa = so3::check_field_axioms(20261015, 1000, {5, 12, 20, 28, 44, 52});
    o.clause("field_axioms", fa.cases == 1000 && fa.failures == 0);
    for (long r : kLevels) {
        const auto md = so3::build_modular_data(r);
        const auto rho = so3::rho_genus1(md);
        const auto rel = so3::check_sl2z_relations(rho.s, rho.t, r);
        const std::string tag = "_r" + std::to_string(r);
        o.clause("s_unitary" + tag, so3::check_modular_data(md).s_unitary);
        o.clause("relations" + tag, rel.s4_scalar && rel.braid);
        o.clause("t_r_scalar" + tag, rel.t_order_r);
    }
    o.detail << "field axioms " << fa.cases << " cases, " << fa.failures << " failures";
}

}  // namespace

int main(int argc, char** argv) {
    // name -> clause prefix expected to be the only failures
    std::map<std::string, std::string> known;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--known-failure") {
            const std::string v = argv[++i];
            const auto colon = v.find(':');
            known[v.substr(0, colon)] = colon == std::string::npos ? "" : v.substr(colon + 1);
        }

    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
        {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
        {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}};

    bool ok = true;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            fn(o);
        } catch (const std::exception& e) {
            o.clause(std::string("exception: ") + e.what(), false);
        }
        const double dt = seconds_since(t0);
        std::string line = name + (o.pass ? " PASS " : " FAIL ") + o.detail.str();
        if (!o.pass) {
            line += "| failed:";
            for (const auto& c : o.failed_clauses) line += " " + c;
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, " (%.2fs)", dt);
        std::cout << line << buf << std::endl;

        const auto k = known.find(name);
        if (k == known.end()) {
            ok = ok && o.pass;
        } else {
            // A known failure must still fail, and only on the named clause.
            bool expected = !o.pass;
            for (const auto& c : o.failed_clauses) expected = expected && c.rfind(k->second, 0) == 0;
            ok = ok && expected;
        }
    }
    return ok ? 0 : 1;
}
