// Command-line front end: exact star products, brackets, classical limits,
// quantization maps, augmentation reports, and the named verification
// suites with machine-readable output.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "starprod/parse.hpp"
#include "starprod/verify.hpp"

using namespace starprod;
using nlohmann::json;

namespace {

struct ProductChoice {
    std::string name;      // moyal | born-jordan | standard | husimi | damped | damped-eta
    std::string local_src; // nonempty for local:<theta>
};

ProductChoice split_product(const std::string& text) {
    if (text.rfind("local:", 0) == 0) return {"local", text.substr(6)};
    return {text, ""};
}

struct ParamBindings {
    std::string gamma = "gamma";
    std::string eta = "eta";
    std::string sigma = "sigma";
    std::string mass = "m";
    std::string omega = "omega";
};

/// The star product selected by name, materialized at the given order.
BiDiffOp build_star(const std::string& name, const ParamBindings& bind, int order) {
    if (name == "moyal") return BiDiffOp::moyal_star(order);
    if (name == "born-jordan") return star_t(transition::born_jordan(order));
    if (name == "standard") return star_t(transition::standard(order));
    if (name == "husimi")
        return star_t(transition::husimi(parse_scalar(bind.eta), parse_scalar(bind.sigma), order));
    if (name == "damped")
        return star_t(transition::damped(parse_scalar(bind.gamma), parse_scalar(bind.mass), order));
    if (name == "damped-eta")
        return star_t(transition::damped_eta(parse_scalar(bind.gamma), parse_scalar(bind.eta),
                                             parse_scalar(bind.mass), order));
    throw error("unknown product: " + name);
}

DiffOpSeries build_transition(const std::string& name, const ParamBindings& bind, int order) {
    if (name == "born-jordan") return transition::born_jordan(order);
    if (name == "standard") return transition::standard(order);
    if (name == "husimi")
        return transition::husimi(parse_scalar(bind.eta), parse_scalar(bind.sigma), order);
    if (name == "damped")
        return transition::damped(parse_scalar(bind.gamma), parse_scalar(bind.mass), order);
    if (name == "damped-eta")
        return transition::damped_eta(parse_scalar(bind.gamma), parse_scalar(bind.eta),
                                      parse_scalar(bind.mass), order);
    if (name == "moyal" || name == "identity") return DiffOpSeries::identity(order);
    throw error("unknown transition operator: " + name);
}

/// Numeric values of any parameter bindings that are constant expressions;
/// symbolic bindings stay unbound.
ParamValues numeric_bindings(const ParamBindings& bind) {
    ParamValues vals = no_params();
    auto put = [&](std::size_t k, const std::string& text) {
        try {
            vals[k] = eval(parse_expr(text), 0.0, 0.0, no_params());
        } catch (const error&) {
            // symbolic binding; leave unbound
        }
    };
    put(kGammaIndex, bind.gamma);
    put(kEtaIndex, bind.eta);
    put(kSigmaIndex, bind.sigma);
    put(kMassIndex, bind.mass);
    put(kOmegaIndex, bind.omega);
    return vals;
}

/// Weak-regime product defect of a numeric local theta on a pair of
/// polynomials: theta({f,g}) - {theta f, g} - {f, theta g}, sampled.
NumReport numeric_pair_defect(const LocalDiffOp& theta, const PhasePoly& f, const PhasePoly& g,
                              const RunConfig& cfg, const ParamValues& vals) {
    Expr br = theta.apply_expr(poisson_bracket(f, g));
    Expr tf = theta.apply_expr(f);
    Expr tg = theta.apply_expr(g);
    Expr gq = expr_from_phasepoly(partial_q(g)), gp = expr_from_phasepoly(partial_p(g));
    Expr fq = expr_from_phasepoly(partial_q(f)), fp = expr_from_phasepoly(partial_p(f));
    Expr lhs = br - (diff_q(tf) * gp - diff_p(tf) * gq) - (fq * diff_p(tg) - fp * diff_q(tg));
    return numeric_identity_check(lhs, Expr(), cfg.samples, cfg.tol, cfg.seed, vals);
}

void print_report(const std::string& suite, const std::vector<CheckOutcome>& checks,
                  const std::string& fmt) {
    if (fmt == "json") {
        json doc;
        doc["suite"] = suite;
        doc["checks"] = json::array();
        for (const auto& c : checks) {
            json entry = {{"check-id", c.id},
                          {"law", c.law},
                          {"status", c.pass ? "pass" : "fail"},
                          {"runtime-ms", c.runtime_ms}};
            if (c.residual) entry["residual"] = *c.residual;
            if (!c.note.empty()) entry["note"] = c.note;
            doc["checks"].push_back(entry);
        }
        std::cout << doc.dump(2) << "\n";
        return;
    }
    for (const auto& c : checks) {
        std::printf("%-22s %s  %8.1f ms  %s%s\n", c.id.c_str(), c.pass ? "pass" : "FAIL",
                    c.runtime_ms, c.law.c_str(),
                    c.note.empty() ? "" : ("  [" + c.note + "]").c_str());
    }
}

int report_result(const NumReport& r, const std::string& label, const std::string& fmt) {
    if (fmt == "json") {
        json doc = {{"report", label},          {"max-residual", r.max_residual},
                    {"mean-residual", r.mean_residual}, {"samples", r.samples},
                    {"seed", r.seed},           {"tolerance", r.tol},
                    {"status", r.pass ? "pass" : "fail"}};
        std::cout << doc.dump(2) << "\n";
    } else {
        std::printf("%s: %s  max residual %.3e, mean %.3e over %d samples (seed %llu, tol %.1e)\n",
                    label.c_str(), r.pass ? "pass" : "FAIL", r.max_residual, r.mean_residual,
                    r.samples, static_cast<unsigned long long>(r.seed),
                    r.tol);
    }
    return r.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact star-product engine for phase-space quantization"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand name
    app.set_version_flag("--version", "starprod 1.0.0 (mini-language v1)");

    RunConfig cfg;
    ParamBindings bind;
    std::string fmt = "text";
    app.add_option("--order", cfg.order, "bi-differential truncation order")
        ->capture_default_str();
    app.add_option("--inv-order", cfg.inv_order, "local inversion order")->capture_default_str();
    app.add_option("--jet-order", cfg.jet_order, "jet order")->capture_default_str();
    app.add_option("--tol", cfg.tol, "numeric tolerance")->capture_default_str();
    app.add_option("--samples", cfg.samples, "sample count")->capture_default_str();
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--format", fmt, "output format: text | json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--gamma", bind.gamma, "damping constant (expression)");
    app.add_option("--eta", bind.eta, "coarse-graining scale (expression)");
    app.add_option("--sigma", bind.sigma, "squeezing parameter (expression)");
    app.add_option("--mass", bind.mass, "mass (expression)");
    app.add_option("--omega", bind.omega, "frequency (expression)");

    // star
    auto* star_cmd = app.add_subcommand("star", "multiply two observables");
    std::string star_f, star_g, star_product = "moyal", star_symbol = "poly";
    std::string pw_phi = "phi", pw_xi = "xi", pw_phip = "phip", pw_xip = "xip";
    star_cmd->add_option("f", star_f, "left factor");
    star_cmd->add_option("g", star_g, "right factor");
    star_cmd->add_option("--product", star_product,
                         "moyal | born-jordan | standard | husimi | damped | damped-eta | "
                         "local:<theta>");
    star_cmd->add_option("--symbol", star_symbol, "poly | plane-wave")
        ->check(CLI::IsMember({"poly", "plane-wave"}));
    star_cmd->add_option("--phi", pw_phi, "first wave parameter");
    star_cmd->add_option("--xi", pw_xi, "first wave parameter");
    star_cmd->add_option("--phip", pw_phip, "second wave parameter");
    star_cmd->add_option("--xip", pw_xip, "second wave parameter");

    // bracket
    auto* bracket_cmd = app.add_subcommand("bracket", "bracket of two observables");
    std::string br_f, br_g, br_product = "moyal";
    bracket_cmd->add_option("f", br_f, "left entry")->required();
    bracket_cmd->add_option("g", br_g, "right entry")->required();
    bracket_cmd->add_option("--product", br_product, "product whose bracket is taken");

    // limit
    auto* limit_cmd = app.add_subcommand("limit", "classical limit of a named operator");
    std::string limit_op = "moyal-bracket";
    limit_cmd->add_option("--op", limit_op,
                          "moyal-star | moyal-bracket | star:<product> | bracket:<product> | "
                          "odot:<product>");

    // quantize
    auto* quant_cmd = app.add_subcommand("quantize", "operator image of q^n p^m");
    std::string ordering = "weyl";
    int qn = 0, qm = 0;
    quant_cmd->add_option("--ordering", ordering, "weyl | born-jordan | standard")
        ->check(CLI::IsMember({"weyl", "born-jordan", "standard"}));
    quant_cmd->add_option("n", qn, "power of q")->required();
    quant_cmd->add_option("m", qm, "power of p")->required();

    // augment
    auto* aug_cmd = app.add_subcommand("augment", "equation-of-motion augmentation of a theta");
    std::string aug_theta, aug_ham = "p^2/(2*m) + m*omega^2*q^2/2", aug_coord = "both";
    bool aug_damped = false;
    aug_cmd->add_option("--theta", aug_theta, "theta in the operator mini-language");
    aug_cmd->add_flag("--damped-oscillator", aug_damped,
                      "use the built-in weakly damped oscillator theta");
    aug_cmd->add_option("--hamiltonian", aug_ham, "hamiltonian (polynomial)");
    aug_cmd->add_option("--coordinate", aug_coord, "q | p | both")
        ->check(CLI::IsMember({"q", "p", "both"}));

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run a named verification suite");
    std::string suite;
    verify_cmd->add_option("suite", suite, "suite name or 'all'")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (star_cmd->parsed()) {
            if (star_symbol == "plane-wave") {
                PlaneWave u = PlaneWave::wave(parse_scalar(pw_phi), parse_scalar(pw_xi));
                PlaneWave v = PlaneWave::wave(parse_scalar(pw_phip), parse_scalar(pw_xip));
                std::cout << to_string(moyal_pw(u, v)) << "\n";
                return 0;
            }
            if (star_f.empty() || star_g.empty()) throw error("star needs two observables");
            PhasePoly f = parse_phasepoly(star_f);
            PhasePoly g = parse_phasepoly(star_g);
            int order = std::max(cfg.order, std::max(f.degree(), 0) + std::max(g.degree(), 0));
            ProductChoice prod = split_product(star_product);
            if (prod.name == "local") {
                // the text after local: is theta; the transition operator is 1 + theta
                LocalDiffOp theta = parse_local_op(prod.local_src);
                if (theta.is_exact()) {
                    LocalDiffOp t = LocalDiffOp::identity();
                    for (auto& [k, c] : theta.poly_terms()) t.add_term(k.first, k.second, c);
                    LocalStarResult r = local_star_apply(t, f, g, cfg.inv_order);
                    std::cout << to_string(r.value) << "\n";
                    if (!r.exact) {
                        std::cerr << "warning: inversion truncation not exact at order "
                                  << cfg.inv_order << "\n";
                    }
                    return 0;
                }
                // numeric theta: sampled weak-regime defect report (a
                // magnitude, not a zero-test)
                NumReport r = numeric_pair_defect(theta, f, g, cfg, numeric_bindings(bind));
                if (fmt == "json") {
                    json doc = {{"report", "weak-regime pair defect"},
                                {"max-residual", r.max_residual},
                                {"mean-residual", r.mean_residual},
                                {"samples", r.samples},
                                {"seed", r.seed}};
                    std::cout << doc.dump(2) << "\n";
                } else {
                    std::printf("weak-regime pair defect: |D(f,g)| max %.6e mean %.6e "
                                "over %d samples (seed %llu)\n",
                                r.max_residual, r.mean_residual, r.samples,
                                static_cast<unsigned long long>(r.seed));
                }
                return 0;
            }
            std::cout << to_string(apply(build_star(prod.name, bind, order), f, g)) << "\n";
            return 0;
        }

        if (bracket_cmd->parsed()) {
            PhasePoly f = parse_phasepoly(br_f);
            PhasePoly g = parse_phasepoly(br_g);
            int order = std::max(cfg.order, std::max(f.degree(), 0) + std::max(g.degree(), 0));
            BiDiffOp star = build_star(split_product(br_product).name, bind, order);
            std::cout << to_string(apply(moyal_bracket_op(star), f, g)) << "\n";
            return 0;
        }

        if (limit_cmd->parsed()) {
            BiDiffOp op(cfg.order);
            if (limit_op == "moyal-star") {
                op = BiDiffOp::moyal_star(cfg.order);
            } else if (limit_op == "moyal-bracket") {
                op = moyal_bracket_op(BiDiffOp::moyal_star(cfg.order));
            } else if (limit_op.rfind("star:", 0) == 0) {
                op = build_star(limit_op.substr(5), bind, cfg.order);
            } else if (limit_op.rfind("bracket:", 0) == 0) {
                op = moyal_bracket_op(build_star(limit_op.substr(8), bind, cfg.order));
            } else if (limit_op.rfind("odot:", 0) == 0) {
                op = odot(build_transition(limit_op.substr(5), bind, cfg.order));
            } else {
                throw error("unknown operator: " + limit_op);
            }
            std::cout << to_string(op.classical_limit()) << "\n";
            return 0;
        }

        if (quant_cmd->parsed()) {
            NCPoly a = (ordering == "weyl")          ? weyl_quantize(qn, qm)
                       : (ordering == "born-jordan") ? bj_quantize(qn, qm)
                                                     : std_quantize(qn, qm);
            std::cout << to_string(normal_order(a)) << "\n";
            return 0;
        }

        if (aug_cmd->parsed()) {
            LocalDiffOp theta;
            if (aug_damped) {
                theta = damped_theta(parse_expr(bind.mass), parse_expr(bind.omega),
                                     parse_expr(bind.gamma));
            } else if (!aug_theta.empty()) {
                theta = parse_local_op(aug_theta);
            } else {
                throw error("augment needs --theta or --damped-oscillator");
            }
            PhasePoly ham = aug_cmd->count("--hamiltonian")
                                ? parse_phasepoly(aug_ham)
                                : sho_hamiltonian(parse_scalar(bind.mass), parse_scalar(bind.omega));
            ParamValues vals = numeric_bindings(bind);
            int rc = 0;
            for (Coordinate x : {Coordinate::q, Coordinate::p}) {
                std::string cname = (x == Coordinate::q) ? "q" : "p";
                if (aug_coord != "both" && aug_coord != cname) continue;
                Augmentation a = augmentation(theta, ham, x);
                Augmentation b = ansatz_augmentation(theta, ham, x);
                if (a.exact) {
                    std::cout << "A(" << cname << ") = " << to_string(a.poly) << "\n";
                    if (a.poly != b.poly) {
                        std::cout << "route disagreement: ansatz gives " << to_string(b.poly)
                                  << "\n";
                        rc = 1;
                    }
                } else {
                    NumReport r = numeric_identity_check(a.expr, b.expr, cfg.samples, cfg.tol,
                                                         cfg.seed, vals);
                    NumReport mag = numeric_identity_check(a.expr, Expr(), cfg.samples,
                                                           std::numeric_limits<double>::infinity(),
                                                           cfg.seed, vals);
                    if (fmt == "json") {
                        json doc = {{"coordinate", cname},
                                    {"max-magnitude", mag.max_residual},
                                    {"mean-magnitude", mag.mean_residual},
                                    {"route-residual", r.max_residual},
                                    {"samples", r.samples},
                                    {"seed", r.seed},
                                    {"tolerance", r.tol},
                                    {"status", r.pass ? "pass" : "fail"}};
                        std::cout << doc.dump(2) << "\n";
                    } else {
                        std::printf("A(%s): sampled |A| max %.6e mean %.6e over %d samples; "
                                    "routes agree to %.3e (%s)\n",
                                    cname.c_str(), mag.max_residual, mag.mean_residual,
                                    mag.samples, r.max_residual, r.pass ? "pass" : "FAIL");
                    }
                    if (!r.pass) rc = 1;
                }
            }
            return rc;
        }

        if (verify_cmd->parsed()) {
            auto checks = verification::run_suite(suite, cfg);
            print_report(suite, checks, fmt);
            bool all = true;
            for (const auto& c : checks) all = all && c.pass;
            return all ? 0 : 1;
        }
    } catch (const parse_error& e) {
        std::cerr << "parse error " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
