// Command-line front end: radius computations, constant conversions, and
// verification suites over JSON matrix/polynomial inputs. Exit codes:
//   0 success, 1 usage or input error, 2 inconclusive numerics,
//   3 a hard inequality check failed (which would be news).

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wrho/json_io.hpp"
#include "wrho/version.hpp"
#include "wrho/wrho.hpp"

namespace {

using namespace wrho;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitViolation = 3;

std::string format_sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::uint64_t effective_seed(std::uint64_t cli_seed) {
    if (const char* env = std::getenv("RADII_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw DomainError("RADII_SEED must be an unsigned integer");
        }
    }
    return cli_seed;
}

struct FamilySpec {
    std::string kind = "blaschke";
    std::size_t max_degree = 4;
    std::size_t draws = 12;
};

FamilySpec parse_family_spec(const std::string& spec) {
    FamilySpec out;
    const auto colon = spec.find(':');
    out.kind = spec.substr(0, colon);
    if (out.kind != "blaschke")
        throw DomainError("unknown family kind: " + out.kind);
    if (colon == std::string::npos) return out;
    std::string rest = spec.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string item = rest.substr(0, comma);
        rest = (comma == std::string::npos) ? "" : rest.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw DomainError("family spec items must look like key=value");
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        if (key == "deg")
            out.max_degree = std::stoul(val);
        else if (key == "draws")
            out.draws = std::stoul(val);
        else
            throw DomainError("unknown family spec key: " + key);
    }
    return out;
}

json config_block(double rho, double tol, std::uint64_t seed, const std::string& family) {
    return json{{"rho", rho}, {"tol", tol}, {"seed", seed}, {"family", family},
                {"version", version_string}};
}

int cmd_radius(const std::string& file, double rho, double tol, bool norm_only) {
    const CMat t = cmat_from_json(load_json_file(file));
    t.require_square("radius");
    json out;
    if (norm_only) {
        const double v = op_norm(t);
        out = json{{"value", v}, {"lower", v}, {"upper", v},
                   {"method", "op-norm"}, {"converged", true}};
    } else {
        RhoParams params;
        params.rho = rho;
        const RadiusReport rep = w_rho(t, params, tol);
        out = radius_report_to_json(rep);
    }
    out["rho"] = rho;
    out["tol"] = tol;
    out["version"] = version_string;
    std::cout << out.dump(2) << "\n";
    return (norm_only || out.at("converged").get<bool>()) ? kExitOk : kExitInconclusive;
}

int cmd_convert(double k, double rho, bool invert) {
    double K = k, Kt;
    if (invert) {
        Kt = k;
        K = k_from_ktilde(Kt, rho);
    } else {
        Kt = ktilde_from_k(K, rho);
    }
    // hand-assembled so every constant carries 12 significant digits
    std::string alpha = "null";
    if (K > 1.0) alpha = format_sig12(homothety_alpha(K, rho));
    std::cout << "{\n"
              << "  \"K\": " << format_sig12(K) << ",\n"
              << "  \"rho\": " << format_sig12(rho) << ",\n"
              << "  \"Ktilde\": " << format_sig12(Kt) << ",\n"
              << "  \"alpha\": " << alpha << ",\n"
              << "  \"drury_C\": " << format_sig12(drury_constant(rho)) << ",\n"
              << "  \"version\": \"" << version_string << "\"\n"
              << "}\n";
    return kExitOk;
}

int cmd_verify(const std::string& file, double rho, std::uint64_t seed, double tol,
               const std::string& family_spec, double bound_scale,
               std::optional<double> k_known, const std::string& output_path) {
    const CMat t = cmat_from_json(load_json_file(file));
    t.require_square("verify");
    const FamilySpec fs = parse_family_spec(family_spec);
    const auto family = make_test_family(seed, fs.max_degree, fs.draws);

    json hard_checks = json::array();
    bool violated = false;

    // main-theorem block on the raw matrix
    const auto main_rep = verify_main_theorem(t, rho, family, k_known, tol);
    if (k_known) {
        hard_checks.push_back({{"name", "main-theorem-ktilde"},
                               {"margin", *main_rep.hard_margin},
                               {"witness", "ktilde estimate vs converted bound"}});
        violated = violated || !main_rep.hard_ok;
    }

    // named inequalities on normalized copies
    const double w_t = numerical_radius(t, 1e-8).value;
    const double wrho_t = radius_for_rho(t, rho);
    for (const double scale : {w_t, wrho_t}) {
        if (scale <= 0.0) continue;
        CMat scaled = t;
        scaled *= cdouble{1.0 / scale, 0.0};
        const auto rep = check_named_inequalities(scaled, rho, family, tol, bound_scale);
        for (const auto& v : rep.violations) {
            hard_checks.push_back(
                {{"name", v.name}, {"margin", v.margin}, {"witness", v.witness}});
            violated = true;
        }
        json summary{{"name", (scale == w_t) ? "named-ineq-w-normalized"
                                             : "named-ineq-wrho-normalized"},
                     {"margin", rep.min_margin == 1e300 ? 0.0 : rep.min_margin},
                     {"witness", "worst family member"}};
        hard_checks.push_back(summary);
        violated = violated || rep.min_margin < 0.0;
    }

    // positivity lemmas on a spectrum-safe copy
    {
        const double r = spectral_radius(t);
        CMat safe = t;
        if (r > 0.0) safe *= cdouble{0.8 / std::max(r, 0.8), 0.0};
        const double k_lem = (k_known && *k_known > 1.0) ? *k_known : 2.0;
        std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ULL);
        std::vector<RationalFn> hs;
        for (int i = 0; i < 8; ++i)
            hs.push_back(random_blaschke(gen, 1 + i % 3).scaled(1.0 / k_lem));
        const auto rep = check_positivity_lemmas(safe, k_lem, hs, tol);
        hard_checks.push_back({{"name", "positivity-lemmas"},
                               {"margin", rep.all_agree ? 1.0 : -1.0},
                               {"witness", std::to_string(rep.items.size()) + " functions"}});
        violated = violated || !rep.all_agree;
    }

    json out{{"constant_estimates",
              json{{"k_est", main_rep.k_est},
                   {"ktilde_est", main_rep.ktilde_est},
                   {"ktilde_predicted", main_rep.ktilde_predicted},
                   {"sharpness_ratio", main_rep.sharpness_ratio}}},
             {"hard_checks", hard_checks},
             {"seed", seed},
             {"config", config_block(rho, tol, seed, family_spec)},
             {"version", version_string}};
    if (!output_path.empty()) save_json_file(output_path, out);
    std::cout << out.dump(2) << "\n";
    return violated ? kExitViolation : kExitOk;
}

int cmd_fock(const std::string& poly_file, const std::vector<std::string>& matrix_files,
             std::size_t m, double tol, std::uint64_t seed, const std::string& output_path) {
    const NcPoly p = ncpoly_from_json(load_json_file(poly_file));
    if (matrix_files.size() != p.n)
        throw DomainError("fock: need exactly n matrix files for an n-generator polynomial");
    std::vector<CMat> ts;
    for (const auto& f : matrix_files) {
        ts.push_back(cmat_from_json(load_json_file(f)));
        ts.back().require_square("fock");
    }

    const RadiusReport wj = joint_numerical_radius(ts, m, tol);
    const NcNormResult pnorm = nc_sup_norm(p, std::max(m, p.degree() + 2));

    double scaled_by = 1.0;
    std::vector<CMat> normalized = ts;
    if (wj.value > 1.0) {
        scaled_by = wj.value;
        for (auto& t : normalized) t *= cdouble{1.0 / scaled_by, 0.0};
    }
    const auto pop = check_popescu_bounds(normalized, {p}, std::max(m, p.degree() + 2));

    json violations = json::array();
    for (const auto& v : pop.violations)
        violations.push_back({{"bound", v.bound}, {"margin", v.margin}});
    json out{{"w_joint", radius_report_to_json(wj)},
             {"p_norm", json{{"value", pnorm.value}, {"conv_gap", pnorm.conv_gap}}},
             {"popescu", json{{"checks_run", pop.checks_run},
                              {"min_margin", pop.min_margin == 1e300 ? 0.0 : pop.min_margin},
                              {"violations", violations}}},
             {"scaled_by", scaled_by},
             {"m", m},
             {"seed", seed},
             {"config", config_block(2.0, tol, seed, "file")},
             {"version", version_string}};
    if (!output_path.empty()) save_json_file(output_path, out);
    std::cout << out.dump(2) << "\n";
    if (!pop.violations.empty()) return kExitViolation;
    return wj.converged ? kExitOk : kExitInconclusive;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"operator radii toolkit"};
    app.require_subcommand(1);

    // radius
    auto* radius = app.add_subcommand("radius", "rho-radius of a matrix from JSON");
    std::string radius_file;
    double radius_rho = 2.0, radius_tol = 1e-6;
    bool radius_norm = false;
    radius->add_option("file", radius_file, "matrix JSON file")->required();
    radius->add_option("--rho", radius_rho, "radius parameter (>= 1)");
    radius->add_option("--tol", radius_tol, "bracket tolerance");
    radius->add_flag("--norm", radius_norm, "print the operator norm instead");

    // convert
    auto* convert = app.add_subcommand("convert", "K <-> Ktilde constant conversion");
    double convert_k_val = 1.0, convert_rho = 2.0;
    bool convert_invert = false;
    convert->add_option("--k", convert_k_val, "K (or Ktilde with --invert)")->required();
    convert->add_option("--rho", convert_rho, "radius parameter");
    convert->add_flag("--invert", convert_invert, "interpret --k as Ktilde and recover K");

    // verify
    auto* verify = app.add_subcommand("verify", "inequality suites on a matrix");
    std::string verify_file, verify_family = "blaschke:deg=4", verify_out;
    double verify_rho = 2.0, verify_tol = 1e-6, verify_bound_scale = 1.0;
    std::uint64_t verify_seed = 1;
    double verify_k_known = 0.0;
    verify->add_option("file", verify_file, "matrix JSON file")->required();
    verify->add_option("--rho", verify_rho, "radius parameter");
    verify->add_option("--seed", verify_seed, "family seed");
    verify->add_option("--tol", verify_tol, "hard-check tolerance");
    verify->add_option("--family", verify_family, "family spec, e.g. blaschke:deg=4");
    verify->add_option("--bound-scale", verify_bound_scale,
                       "scale the hard-check right-hand sides (test harness)");
    verify->add_option("--k-known", verify_k_known,
                       "certified spectral constant; enables the hard conversion check");
    verify->add_option("-o,--output", verify_out, "also write the report here");

    // fock
    auto* fock = app.add_subcommand("fock", "joint radius and free polynomial bounds");
    std::string fock_poly, fock_out;
    std::vector<std::string> fock_mats;
    std::size_t fock_m = 6;
    double fock_tol = 1e-4;
    std::uint64_t fock_seed = 1;
    fock->add_option("--poly", fock_poly, "noncommutative polynomial JSON")->required();
    fock->add_option("matrices", fock_mats, "one matrix JSON per generator")->required();
    fock->add_option("--m", fock_m, "truncation degree");
    fock->add_option("--tol", fock_tol, "radius tolerance");
    fock->add_option("--seed", fock_seed, "report seed");
    fock->add_option("-o,--output", fock_out, "also write the report here");

    try {
        app.parse(argc, argv);
        if (radius->parsed()) return cmd_radius(radius_file, radius_rho, radius_tol, radius_norm);
        if (convert->parsed()) return cmd_convert(convert_k_val, convert_rho, convert_invert);
        if (verify->parsed()) {
            std::optional<double> k_known;
            if (verify_k_known >= 1.0) k_known = verify_k_known;
            return cmd_verify(verify_file, verify_rho, effective_seed(verify_seed), verify_tol,
                              verify_family, verify_bound_scale, k_known, verify_out);
        }
        if (fock->parsed())
            return cmd_fock(fock_poly, fock_mats, fock_m, fock_tol, effective_seed(fock_seed),
                            fock_out);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
