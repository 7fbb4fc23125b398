// Command-line front end. Every subcommand prints one JSON document (or CSV /
// text where supported) and exits 0 ok, 1 verification failure, 2 usage
// error, 3 capacity exceeded.

#include "so3tqft/json_io.hpp"
#include "so3tqft/random_cyclo.hpp"
#include "so3tqft/so3tqft.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
namespace sj = so3::json;

constexpr long kImageMaxR = 13;
constexpr long kExactMaxR = 61;
constexpr long kDimsMaxGenus = 12;

struct RunConfig {
    std::string subcommand;
    long r = 0;
    std::string format = "json";
    std::string output_path;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool timing = false;

    // per-subcommand
    bool verify = false;
    long genus = 0;
    std::vector<long> boundary;
    bool verlinde_check = false;
    std::string generators = "so3";
    std::size_t max_order = 10'000'000;
    bool check_small_tensor = false;
    bool check_borel = false;
    std::vector<long> chain;
    std::string heegaard;
    bool heegaard_set = false;
    long survey = -1;
};

struct VerificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json cyc_matrix(const so3::CycMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(sj::cyclotomic(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json header(const RunConfig& cfg) {
    json inputs = {{"r", cfg.r}};
    return {{"schema", "1"}, {"command", cfg.subcommand}, {"inputs", inputs}};
}

void require_capacity(long r, long max_r, const std::string& what) {
    if (r > max_r)
        throw so3::capacity_error(what + " is limited to r <= " + std::to_string(max_r) + " (got " + std::to_string(r) +
                                  ")");
}

// ---- subcommands ---------------------------------------------------------

json run_modular_data(const RunConfig& cfg) {
    const auto md = so3::build_modular_data(cfg.r);
    const auto checks = so3::check_modular_data(md);
    const auto rho = so3::rho_genus1(md);
    const auto rel = so3::check_sl2z_relations(rho.s, rho.t, cfg.r);
    const auto cc = so3::central_charge(md);
    const auto dehn = so3::dehn_twist_spectrum(cfg.r);
    json out = header(cfg);
    json qdim = json::array(), twist = json::array();
    for (const auto& d : md.qdim) qdim.push_back(sj::cyclotomic(d));
    for (const auto& t : md.twist) twist.push_back(sj::cyclotomic(t));
    out["labels"] = md.labels;
    out["field_modulus"] = md.modulus();
    out["A"] = sj::cyclotomic(md.A);
    out["qdim"] = qdim;
    out["twist"] = twist;
    out["s_tilde"] = cyc_matrix(md.s_tilde);
    out["global_dim"] = sj::cyclotomic(md.global_dim);
    out["p_plus"] = sj::cyclotomic(md.p_plus);
    out["p_minus"] = sj::cyclotomic(md.p_minus);
    out["central_charge"] = {{"kappa_order", cc.order}, {"kappa_exponent", cc.exponent}, {"c", sj::rational(cc.c)}};
    out["dehn_spectrum"] = {{"distinct", dehn.distinct},
                            {"matches_x_r", dehn.matches_x_r},
                            {"matches_conj_x_r", dehn.matches_conj_x_r}};
    out["checks"] = {{"rank", checks.rank_ok},           {"unit_object", checks.unit_object_ok},
                     {"global_dim", checks.global_dim_ok}, {"s_symmetric", checks.s_symmetric},
                     {"s_unitary", checks.s_unitary},      {"first_row", checks.first_row_ok},
                     {"s4_scalar", rel.s4_scalar},         {"s2_scalar", rel.s2_scalar},
                     {"braid", rel.braid},                 {"t_order_r", rel.t_order_r}};
    if (!checks.all() || !rel.all()) throw VerificationFailure(out.dump());
    return out;
}

json run_weil(const RunConfig& cfg) {
    const auto w = so3::build_weil(cfg.r);
    json out = header(cfg);
    out["inputs"]["verify"] = cfg.verify;
    out["dimension"] = cfg.r;
    out["odd_dimension"] = w.R_S_odd.rows();
    json inter = json::array();
    bool ok = true;
    for (const auto& c : w.intertwiners) {
        inter.push_back({{"alpha", std::string(1, c.alpha)},
                         {"h", std::string(1, c.h)},
                         {"image", {{"z", c.image.z}, {"x", c.image.x}, {"y", c.image.y}}},
                         {"holds", c.holds}});
        ok = ok && c.holds;
    }
    out["intertwiners"] = inter;
    if (cfg.verify) {
        const auto rep = so3::verify_identification(so3::build_modular_data(cfg.r), w);
        out["identification"] = {{"s_identity", rep.s_identity},
                                 {"t_identity", rep.t_identity},
                                 {"s_constant", sj::cyclotomic(rep.s_constant)},
                                 {"t_constant", sj::cyclotomic(rep.t_constant)}};
        if (rep.mismatch)
            out["identification"]["mismatch"] = {{"matrix", rep.mismatch->which},
                                                 {"row", rep.mismatch->row},
                                                 {"col", rep.mismatch->col},
                                                 {"lhs", sj::cyclotomic(rep.mismatch->lhs)},
                                                 {"rhs", sj::cyclotomic(rep.mismatch->rhs)}};
        ok = ok && rep.holds();
    }
    if (!ok) throw VerificationFailure(out.dump());
    return out;
}

json run_dims(const RunConfig& cfg) {
    if (cfg.genus < 0) throw so3::usage_error("genus must be non-negative");
    if (cfg.genus > kDimsMaxGenus)
        throw so3::capacity_error("dims is limited to genus <= " + std::to_string(kDimsMaxGenus));
    json out = header(cfg);
    out["inputs"]["genus"] = cfg.genus;
    out["inputs"]["boundary"] = cfg.boundary;
    const mpz_class dim = so3::dim_space(cfg.r, cfg.genus, cfg.boundary);
    out["dim"] = sj::integer(dim);
    bool ok = true;
    if (cfg.verlinde_check) {
        if (!cfg.boundary.empty() || cfg.genus < 1)
            throw so3::usage_error("--verlinde-check needs a closed surface of genus >= 1");
        const auto v = so3::verlinde_dim(cfg.r, cfg.genus);
        out["verlinde_float"] = static_cast<double>(v.raw);
        const long double rel = so3::verlinde_relative_error(v, dim);
        out["verlinde_nearest"] = sj::integer(v.nearest);
        out["verlinde_relative_error"] = static_cast<double>(rel);
        out["verlinde_nearest_is_exact"] = v.nearest == dim;
        out["verlinde_agrees"] = rel < 1e-6L;
        ok = ok && rel < 1e-6L;
    }
    json margins = json::object();
    if (cfg.boundary.empty() && cfg.r >= 7 && cfg.genus >= 2 && cfg.genus < kDimsMaxGenus) {
        const mpz_class m = so3::binomial_margin(cfg.r, cfg.genus);
        margins["binomial_margin"] = sj::integer(m);
        margins["positive"] = m > 0;
    }
    if (cfg.boundary.empty() && cfg.genus == 2) margins["twist_multiplicities"] = so3::twist_multiplicities(cfg.r);
    out["margin_checks"] = margins;
    if (!ok) throw VerificationFailure(out.dump());
    return out;
}

json run_image(const RunConfig& cfg) {
    require_capacity(cfg.r, kImageMaxR, "image");
    if (cfg.generators != "so3" && cfg.generators != "weil")
        throw so3::usage_error("--generators must be so3 or weil");
    const auto t0 = std::chrono::steady_clock::now();
    const auto md = so3::build_modular_data(cfg.r);
    so3::CycMatrix s, t;
    if (cfg.generators == "so3") {
        const auto rho = so3::rho_genus1(md);
        s = rho.s;
        t = rho.t;
    } else {
        const auto w = so3::build_weil(cfg.r);
        s = w.R_S_odd;
        t = w.R_T_odd;
    }
    so3::ClosureOptions opt;
    opt.max_order = cfg.max_order;
    opt.threads = cfg.threads;
    const auto gc = so3::closure({s, t}, opt);
    json out = header(cfg);
    out["inputs"]["generators"] = cfg.generators;
    out["inputs"]["max_order"] = cfg.max_order;
    out["finite"] = gc.finite;
    out["order"] = gc.order();
    if (!gc.finite) {
        out["matches"] = "neither";
        if (cfg.timing) out["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return out;
    }
    const auto id = so3::identify_group(gc, s, t, cfg.r);
    out["matches"] = id.matches;
    out["sl2_order"] = so3::sl2_order(cfg.r);
    out["psl2_order"] = so3::sl2_order(cfg.r) / 2;
    out["r_mod_4"] = cfg.r % 4;
    out["generator_orders"] = {{"s", id.order_s}, {"t", id.order_t}, {"st", id.order_st}};
    out["relations"] = {{"s4", id.rel_s4}, {"braid", id.rel_braid}, {"t_r", id.rel_t_r}};
    out["reduction"] = {{"factors_through_sl2_fr", id.factors_through_sl2_fr},
                        {"kernel_size", id.kernel_size},
                        {"image_size", id.image_size},
                        {"image_matches_closure", id.image_matches_closure}};
    std::size_t longest = 0;
    for (const auto& w : gc.words) longest = std::max(longest, w.size());
    out["longest_shortest_word"] = longest;
    if (cfg.timing) out["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!(id.rel_s4 && id.rel_braid && id.rel_t_r && id.factors_through_sl2_fr && id.image_matches_closure))
        throw VerificationFailure(out.dump());
    return out;
}

json table_json(const so3::FiniteGroupTable& g) {
    json classes = json::array();
    for (std::size_t k = 0; k < g.num_classes(); ++k) {
        const auto& m = g.elements[g.class_reps[k]];
        classes.push_back({{"representative", {{m.a, m.b}, {m.c, m.d}}},
                           {"size", g.class_sizes[k]},
                           {"order", g.class_orders[k]}});
    }
    json chars = json::array();
    for (std::size_t a = 0; a < g.degrees.size(); ++a) {
        json vals = json::array();
        for (const auto& v : g.char_table[a]) vals.push_back(sj::cyclotomic(v));
        chars.push_back({{"degree", g.degrees[a]}, {"values", vals}});
    }
    return {{"order", g.order()}, {"exponent", g.exponent}, {"prime", g.p},
            {"classes", classes}, {"characters", chars}};
}

json constituents_json(const std::vector<so3::Constituent>& cs) {
    json out = json::array();
    for (const auto& c : cs) out.push_back({{"character", c.index}, {"multiplicity", c.multiplicity}, {"degree", c.degree}});
    return out;
}

struct ChartabResult {
    json doc;
    std::string csv;
};

ChartabResult run_chartab(const RunConfig& cfg) {
    auto g = so3::sl2_character_table(cfg.r);
    json out = header(cfg);
    out["inputs"]["check_small_tensor"] = cfg.check_small_tensor;
    out["inputs"]["check_borel"] = cfg.check_borel;
    out["table"] = table_json(g);
    const auto orth = so3::check_orthogonality(g);
    out["orthogonality"] = {{"rows", orth.rows}, {"columns", orth.columns}, {"degrees", orth.degrees},
                            {"integral", orth.integral}};
    bool ok = orth.all();
    if (cfg.check_small_tensor) {
        const auto l = so3::check_small_tensor(g);
        json viol = json::array();
        for (auto [a, b] : l.violations) viol.push_back({a, b});
        out["small_tensor"] = {{"bound", l.bound},
                       {"small_characters", l.small},
                       {"pairs_checked", l.pairs_checked},
                       {"violations", viol},
                       {"exact_matches_modp", l.exact_matches_modp},
                       {"small_minus_one_on_square_elliptic", l.small_minus_one_on_square_elliptic},
                       {"holds", l.holds()}};
        ok = ok && l.holds() && l.small.size() == 2;
    }
    if (cfg.check_borel) {
        const auto b = so3::borel_check(g);
        json induced = json::array();
        for (const auto& ind : b.induced)
            induced.push_back({{"borel_character", ind.borel_index},
                               {"borel_degree", ind.borel_degree},
                               {"induced_degree", ind.induced_degree},
                               {"constituents", constituents_json(ind.constituents)}});
        json counts = json::object();
        for (auto [d, c] : b.degree_counts) counts[std::to_string(d)] = c;
        out["borel"] = {{"order", b.order},
                        {"index", b.index},
                        {"degree_counts", counts},
                        {"degrees_in_one_or_r_minus_1", b.degrees_in_one_or_r_minus_1},
                        {"orthogonality", b.orthogonality},
                        {"induction_consistent", b.induction_consistent},
                        {"induced", induced}};
        const auto rc = so3::regular_congruence_check(g, b.degrees);
        json surv = json::array();
        for (const auto& s : rc.survivors) surv.push_back({s.r, s.dim_v, s.subgroup_order});
        out["screening"] = {{"regular_multiplicities", rc.multiplicity_equals_degree}, {"survivors", surv}};
        // The {1, r-1} degree statement is reported, not enforced: the Borel
        // subgroup's nonlinear irreducibles have degree (r-1)/2.
        ok = ok && b.orthogonality && b.induction_consistent && rc.multiplicity_equals_degree;
    }
    if (!ok) throw VerificationFailure(out.dump());
    return {out, so3::character_table_csv(g)};
}

json run_tau(const RunConfig& cfg) {
    const auto md = so3::build_modular_data(cfg.r);
    so3::ChainSurgery c{cfg.chain};
    const auto v = so3::tau(md, c);
    json out = header(cfg);
    out["inputs"]["chain"] = cfg.chain;
    out["value_exact"] = sj::cyclotomic(v.value);
    out["value_complex"] = sj::complex(v.complex);
    out["norm"] = v.norm;
    out["sigma"] = c.sigma();
    out["kappa_order"] = so3::root_of_unity_order(so3::kappa(md));
    if (cfg.heegaard_set) {
        const auto h = so3::heegaard_amplitude(md, cfg.heegaard);
        out["inputs"]["heegaard"] = cfg.heegaard;
        out["heegaard"] = {{"amplitude", sj::cyclotomic(h.amplitude)}, {"norm", h.norm}};
    }
    if (cfg.survey >= 0) {
        require_capacity(cfg.r, kImageMaxR, "survey");
        const auto sv = so3::norm_survey(md, cfg.survey);
        out["inputs"]["survey"] = cfg.survey;
        json hist = json::array();
        for (auto [x, n] : sv.histogram) hist.push_back({x, n});
        out["survey"] = {{"classes_reached", sv.classes_reached},
                         {"distinct_values", sv.distinct_values},
                         {"max_value", sv.max_value},
                         {"histogram", hist}};
    }
    return out;
}

json run_verify_all(const RunConfig& cfg) {
    json out = header(cfg);
    out["inputs"]["seed"] = cfg.seed;
    json checks = json::object();
    bool ok = true;
    auto record = [&](const std::string& name, bool pass) {
        checks[name] = pass;
        ok = ok && pass;
    };
    const long r = cfg.r;
    const auto md = so3::build_modular_data(r);
    const auto rho = so3::rho_genus1(md);

    const auto fa = so3::check_field_axioms(cfg.seed, 200, {4 * static_cast<int>(r), 12, 20});
    record("field_axioms", fa.failures == 0);
    record("modular_data", so3::check_modular_data(md).all());
    record("sl2z_relations", so3::check_sl2z_relations(rho.s, rho.t, r).all());

    const auto w = so3::build_weil(r);
    bool inter = true;
    for (const auto& c : w.intertwiners) inter = inter && c.holds;
    record("intertwiners", inter);
    record("identification", so3::verify_identification(md, w).holds());

    bool gluing = true;
    for (long g = 1; g <= 6; ++g) {
        const mpz_class exact = so3::dim_space(r, g);
        gluing = gluing && so3::verlinde_relative_error(so3::verlinde_dim(r, g), exact) < 1e-6L;
    }
    gluing = gluing && so3::dim_separating(r, 1, {}, 1, {}) == so3::dim_space(r, 2) &&
             so3::dim_nonseparating(r, 2, {}) == so3::dim_space(r, 2);
    record("gluing_vs_verlinde", gluing);

    bool lens = true;
    for (long p = -12; p <= 12; ++p) {
        const auto t = so3::tau(md, so3::ChainSurgery{{p}});
        const auto h = so3::heegaard_amplitude(md, so3::lens_word(p));
        lens = lens && t.value * t.value.conj() == h.norm_sq;
    }
    record("lens_space_two_routes", lens);

    json skipped = json::array();
    if (r <= kImageMaxR) {
        so3::ClosureOptions opt;
        opt.threads = cfg.threads;
        const auto gc = so3::genus1_closure(md, opt);
        const auto id = so3::identify_group(gc, rho.s, rho.t, r);
        record("image_enumeration", gc.finite && id.matches != "neither" && id.order_t == r &&
                                        id.factors_through_sl2_fr && id.image_matches_closure);
        record("weil_image_equality", so3::same_elements(gc, so3::weil_closure(w, opt)));
        auto g = so3::sl2_character_table(r);
        record("character_orthogonality", so3::check_orthogonality(g).all());
        const auto l = so3::check_small_tensor(g);
        record("small_tensor", l.holds() && l.small.size() == 2);
    } else {
        skipped = {"image_enumeration", "weil_image_equality", "character_orthogonality", "small_tensor"};
    }
    out["checks"] = checks;
    out["skipped_capacity"] = skipped;
    out["passed"] = ok;
    if (!ok) throw VerificationFailure(out.dump());
    return out;
}

std::vector<long> parse_list(const std::string& s) {
    std::vector<long> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            const long v = std::stol(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw so3::usage_error("not an integer list: '" + s + "'");
        }
    }
    return out;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.output_path, std::ios::binary);
    if (!f) throw so3::usage_error("cannot open output file " + cfg.output_path);
    f << text;
}

std::string render_text(const json& doc) {
    std::ostringstream os;
    for (const auto& [k, v] : doc.items()) {
        if (v.is_structured()) os << k << ": " << v.dump() << "\n";
        else os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations for the SO(3) quantum invariants at odd prime levels"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string chain_s, boundary_s;
    long threads_flag = 0;

    app.add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--output", cfg.output_path, "write the report to a file");
    app.add_option("--seed", cfg.seed, "seed for randomized checks");
    app.add_option("--threads", threads_flag, "worker threads (falls back to SO3_THREADS)");
    app.add_flag("--timing", cfg.timing, "include wall_time in reports");
    app.fallthrough();

    auto add_r = [&](CLI::App* sub) { sub->add_option("--r", cfg.r, "odd prime level >= 5")->required(); };

    auto* md = app.add_subcommand("modular-data", "labels, dimensions, twists, S-matrix, central charge");
    add_r(md);
    auto* weil = app.add_subcommand("weil", "Weil representation and its odd block");
    add_r(weil);
    weil->add_flag("--verify", cfg.verify, "check the exact identification with the genus-one representation");
    auto* dims = app.add_subcommand("dims", "dimension of the space of a labeled surface");
    add_r(dims);
    dims->add_option("--genus", cfg.genus)->required();
    dims->add_option("--boundary", boundary_s, "comma-separated boundary labels");
    dims->add_flag("--verlinde-check", cfg.verlinde_check);
    auto* image = app.add_subcommand("image", "projective image of the genus-one representation");
    add_r(image);
    image->add_option("--generators", cfg.generators, "so3 or weil");
    image->add_option("--max-order", cfg.max_order);
    auto* chartab = app.add_subcommand("chartab", "character table of SL2(F_r)");
    add_r(chartab);
    chartab->add_flag("--check-small-tensor,--check-ltwo", cfg.check_small_tensor,
                     "every product of nontrivial irreducibles has a constituent of degree > (r-1)/2");
    chartab->add_flag("--check-borel", cfg.check_borel);
    auto* tau = app.add_subcommand("tau", "invariant of surgery on a chain of unknots");
    add_r(tau);
    tau->add_option("--chain", chain_s, "comma-separated framings; empty for S^3");
    tau->add_option("--heegaard", cfg.heegaard, "word over s,t,S,T");
    tau->add_option("--survey", cfg.survey, "word length bound for the vacuum amplitude survey");
    auto* all = app.add_subcommand("verify-all", "run every verification for one level");
    add_r(all);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.heegaard_set = tau->count("--heegaard") > 0;
    if (threads_flag <= 0) {
        if (const char* env = std::getenv("SO3_THREADS")) threads_flag = std::atol(env);
    }
    cfg.threads = threads_flag > 0 ? static_cast<unsigned>(threads_flag) : 1;

    try {
        so3::require_level(cfg.r);
        cfg.chain = parse_list(chain_s);
        cfg.boundary = parse_list(boundary_s);
        if (cfg.format == "csv" && cfg.subcommand != "chartab")
            throw so3::usage_error("--format csv is only available for chartab");

        json doc;
        std::string csv;
        const std::string& sc = cfg.subcommand;
        if (sc == "modular-data" || sc == "weil" || sc == "tau" || sc == "verify-all")
            require_capacity(cfg.r, kExactMaxR, sc);
        if (sc == "modular-data") doc = run_modular_data(cfg);
        else if (sc == "weil") doc = run_weil(cfg);
        else if (sc == "dims") doc = run_dims(cfg);
        else if (sc == "image") doc = run_image(cfg);
        else if (sc == "chartab") {
            auto res = run_chartab(cfg);
            doc = std::move(res.doc);
            csv = std::move(res.csv);
        } else if (sc == "tau") doc = run_tau(cfg);
        else doc = run_verify_all(cfg);

        if (cfg.format == "csv") emit(cfg, csv);
        else if (cfg.format == "text") emit(cfg, render_text(doc));
        else emit(cfg, doc.dump(2) + "\n");
        return 0;
    } catch (const VerificationFailure& e) {
        const json doc = json::parse(e.what());
        emit(cfg, cfg.format == "text" ? render_text(doc) : doc.dump(2) + "\n");
        std::cerr << "verification failed\n";
        return 1;
    } catch (const so3::usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const so3::capacity_error& e) {
        const json doc = {{"schema", "1"}, {"error", "capacity"}, {"message", e.what()}};
        std::cerr << doc.dump() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
