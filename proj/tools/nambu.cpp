// nambu: divergence-free dynamics on 3-space, four ways.
//
// Subcommands: verify (symbolic property suite), simulate (RK4 with
// drift monitoring), reconstruct (radial-gauge potential of a closed
// form), bracket (Nambu bracket evaluation), lax (Lax fit, invariants,
// Hamiltonian relations).
//
// Exit codes: 0 success, 1 property failure, 2 parse error, 3 I/O
// error, 4 non-closed input, 5 unsupported combination.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nambu/integrate.hpp"
#include "nambu/verify.hpp"

namespace {

using namespace nambu;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitIo = 3;
constexpr int kExitNotClosed = 4;
constexpr int kExitUnsupported = 5;

std::uint64_t seed_from_env() {
    const char* env = std::getenv("NAMBU_SEED");
    if (!env || !*env) return VerifyOptions{}.seed;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
        throw ParseError("NAMBU_SEED must be a decimal integer", 0);
    return v;
}

Convention parse_convention(const std::string& s) {
    if (s == "unit") return Convention::unit;
    if (s == "half") return Convention::half;
    throw ParseError("convention must be 'unit' or 'half'", 0);
}

std::array<double, 3> parse_x0(const std::string& s) {
    std::array<double, 3> x{};
    std::istringstream in(s);
    char c1 = 0, c2 = 0;
    if (!(in >> x[0] >> c1 >> x[1] >> c2 >> x[2]) || c1 != ',' || c2 != ',' ||
        !(in >> std::ws).eof())
        throw ParseError("--x0 must be three comma-separated numbers", 0);
    for (double v : x)
        if (!std::isfinite(v))
            throw ParseError("--x0 components must be finite", 0);
    return x;
}

const char* basis_label(unsigned mask) {
    static constexpr const char* labels[8] = {
        "1",       "dx0",     "dx1",     "dx0^dx1",
        "dx2",     "dx0^dx2", "dx1^dx2", "dx0^dx1^dx2"};
    return labels[mask & 7u];
}

void print_form_components(std::ostream& os, const KForm& w) {
    for (unsigned mask = 0; mask < 8; ++mask) {
        if (std::popcount(mask) != w.degree()) continue;
        os << basis_label(mask) << ": " << to_string(w.component_at(mask))
           << "\n";
    }
}

int cmd_verify(const std::string& system, const std::string& convention,
               bool json) {
    SystemSpec sys = load_system(system);
    VerifyOptions opt;
    opt.convention = parse_convention(convention);
    opt.seed = seed_from_env();
    const auto checks = run_verify(sys, opt);
    if (json) {
        std::cout << verify_report_json(sys, opt, checks).dump(2) << "\n";
    } else {
        for (const auto& c : checks) {
            std::string tag = c.status == "pass"   ? "[PASS]  "
                              : c.status == "fail" ? "[FAIL]  "
                                                   : "[REPORT]";
            std::cout << tag << " " << c.property;
            if (!c.detail.empty()) std::cout << " | " << c.detail;
            if (c.residual) std::cout << " | residual: " << *c.residual;
            std::cout << "\n";
        }
        int fails = 0;
        for (const auto& c : checks) fails += c.status == "fail";
        std::cout << checks.size() << " checks, " << fails << " failures\n";
    }
    return all_asserted_passed(checks) ? kExitOk : kExitPropertyFailure;
}

int cmd_simulate(const std::string& system, const std::string& x0_str,
                 double dt, double T, const std::string& out_path) {
    SystemSpec sys = load_system(system);
    const auto x0 = parse_x0(x0_str);
    if (!(dt > 0.0) || !std::isfinite(dt) || !(T >= dt) || !std::isfinite(T))
        throw ParseError("require dt > 0 and T >= dt", 0);

    std::ofstream out(out_path);
    if (!out) throw IoError("cannot open output file: " + out_path);
    write_trajectory_csv(out, sys.field, x0, dt, T);
    out.flush();
    if (!out) throw IoError("failed writing output file: " + out_path);

    Trajectory traj = integrate(sys.field, x0, dt, T, sys.name);
    const auto invs = closed_form_invariants();
    const auto drift =
        invariant_drift(traj, {invs.begin(), invs.end()});
    const double vdrift = volume_drift(sys.field, x0, dt, T);
    std::printf("steps: %zu  dt: %.17g  T: %.17g\n", traj.states.size() - 1,
                dt, T);
    for (int k = 0; k < 3; ++k)
        std::printf("I%d relative drift: %.3e\n", k + 1, drift[k]);
    std::printf("volume drift |det J - 1|: %.3e\n", vdrift);
    std::printf("wrote %s\n", out_path.c_str());
    return kExitOk;
}

int cmd_reconstruct(const std::string& form_path, bool check, bool json) {
    std::ifstream in(form_path);
    if (!in) throw IoError("cannot open form file: " + form_path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("form file is not valid JSON: ") +
                             e.what(),
                         0);
    }
    const KForm w = form_from_json(j);
    const KForm potential = homotopy_potential(w);
    if (json)
        std::cout << to_json(potential).dump(2) << "\n";
    else
        print_form_components(std::cout, potential);
    if (check) {
        if (exterior_derivative(potential) == w) {
            std::cout << "check: d(potential) equals the input form\n";
        } else {
            std::cout << "check: FAILED, d(potential) differs from input\n";
            return kExitPropertyFailure;
        }
    }
    return kExitOk;
}

int cmd_bracket(const std::string& H, const std::string& F,
                const std::string& G, const std::string& convention) {
    const Convention conv = parse_convention(convention);
    const Poly result =
        nambu_bracket(parse_poly(H), parse_poly(F), parse_poly(G), conv);
    std::cout << to_string(result) << "\n";
    return kExitOk;
}

int cmd_lax(const std::string& system, bool json, bool perturb_h2) {
    SystemSpec sys = load_system(system);
    if (!sys.builtin)
        throw std::domain_error("lax reports support only --system frenet");
    if (perturb_h2 && sys.hamiltonians)
        sys.hamiltonians->H2 += Poly::constant(1);

    const LaxPair lp = frenet::lax_pair();
    const auto fit = lax_fit(lp, sys.field);
    const auto inv = closed_form_invariants();
    const auto relations = hamiltonian_relations(*sys.hamiltonians);

    bool ok = true;
    for (const auto& rc : relations) ok = ok && rc.pass;

    if (json) {
        Json rel = Json::array();
        for (const auto& rc : relations)
            rel.push_back(Json{{"relation", rc.relation},
                               {"pass", rc.pass},
                               {"residual", to_string(rc.residual)}});
        Json traces = Json::array();
        for (unsigned k = 1; k <= 3; ++k)
            traces.push_back(to_string(trace_invariant(lp.A, k)));
        Json doc{{"system", sys.name},
                 {"A", to_json(lp.A)},
                 {"B", to_json(lp.B)},
                 {"fitted_c", fit.c ? Json(fit.c->str()) : Json(nullptr)},
                 {"trace_invariants", traces},
                 {"closed_form_invariants",
                  Json::array({to_string(inv[0]), to_string(inv[1]),
                               to_string(inv[2])})},
                 {"relations", rel}};
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "fitted c in A-dot = c*[A,B]: "
                  << (fit.c ? fit.c->str() : "none (residual nonzero)") << "\n";
        for (unsigned k = 1; k <= 3; ++k)
            std::cout << "Tr(A^" << k << ")/" << k << " = "
                      << to_string(trace_invariant(lp.A, k)) << "\n";
        for (int k = 0; k < 3; ++k)
            std::cout << "I" << k + 1 << " = " << to_string(inv[k]) << "\n";
        for (const auto& rc : relations)
            std::cout << "relation " << rc.relation << ": "
                      << (rc.pass ? "pass"
                                  : "FAIL, residual " + to_string(rc.residual))
                      << "\n";
    }
    return ok ? kExitOk : kExitPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Divergence-free dynamics on 3-space: symbolic verification, "
                 "simulation, potential reconstruction, Nambu brackets, and "
                 "Lax reports"};
    app.require_subcommand(1);

    std::string system = "frenet";
    std::string convention = "unit";
    std::string x0 = "1,0,0";
    std::string out_path = "trajectory.csv";
    std::string form_path;
    std::string arg_h, arg_f, arg_g;
    double dt = 1e-3;
    double T = 100.0;
    bool json = false;
    bool check = false;
    bool perturb_h2 = false;

    CLI::App* verify = app.add_subcommand("verify", "Run the symbolic suite");
    verify->add_option("--system", system, "builtin 'frenet' or a JSON file");
    verify->add_option("--convention", convention, "unit | half");
    verify->add_flag("--json", json, "emit the report as JSON");

    CLI::App* simulate =
        app.add_subcommand("simulate", "Integrate and monitor drift");
    simulate->add_option("--system", system, "builtin 'frenet' or a JSON file");
    simulate->add_option("--x0", x0, "initial state a,b,c");
    simulate->add_option("--dt", dt, "step size");
    simulate->add_option("--T", T, "final time");
    simulate->add_option("--out", out_path, "CSV output path");

    CLI::App* reconstruct = app.add_subcommand(
        "reconstruct", "Radial-gauge potential of a closed form");
    reconstruct->add_option("form", form_path, "form JSON file")->required();
    reconstruct->add_flag("--check", check,
                          "re-derive d(potential) and compare");
    reconstruct->add_flag("--json", json, "emit the potential as JSON");

    CLI::App* bracket =
        app.add_subcommand("bracket", "Evaluate the Nambu bracket {H,F,G}");
    bracket->add_option("H", arg_h, "first argument")->required();
    bracket->add_option("F", arg_f, "second argument")->required();
    bracket->add_option("G", arg_g, "third argument")->required();
    bracket->add_option("--convention", convention, "unit | half");

    CLI::App* lax = app.add_subcommand("lax", "Lax fit and invariants");
    lax->add_option("--system", system, "must be the builtin 'frenet'");
    lax->add_flag("--json", json, "emit the report as JSON");
    lax->add_flag("--perturb-h2", perturb_h2, "")->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitParse;
    }

    try {
        if (app.got_subcommand(verify)) return cmd_verify(system, convention, json);
        if (app.got_subcommand(simulate))
            return cmd_simulate(system, x0, dt, T, out_path);
        if (app.got_subcommand(reconstruct))
            return cmd_reconstruct(form_path, check, json);
        if (app.got_subcommand(bracket))
            return cmd_bracket(arg_h, arg_f, arg_g, convention);
        if (app.got_subcommand(lax)) return cmd_lax(system, json, perturb_h2);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const NotClosedError& e) {
        std::cerr << "input form is not closed; d(form) = "
                  << to_json(e.residual).dump() << "\n";
        return kExitNotClosed;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::domain_error& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPropertyFailure;
    }
    return kExitOk;
}
