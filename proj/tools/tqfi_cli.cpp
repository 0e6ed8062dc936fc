// tqfi_cli.cpp — command-line surface: single computations, m-sweeps,
// δ-convergence tables, instance generation, and the verification suite.
// Exit codes: 0 ok, 1 verification failures, 2 bad input, 3 numerical trouble.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tqfi/instance.hpp"
#include "tqfi/verify.hpp"

namespace {

using tqfi::instance_detail::format_real;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write '" + out_path + "'");
    out << text;
}

std::string fisher_json(const tqfi::FisherResult& result) {
    std::ostringstream os;
    os << "{\"value\": " << format_real(result.value) << ", \"method\": \""
       << tqfi::method_name(result.method) << "\", \"m\": ";
    if (result.m)
        os << *result.m;
    else
        os << "null";
    os << ", \"degenerate\": " << (result.degenerate ? "true" : "false")
       << ", \"uncertainty\": " << format_real(result.uncertainty) << "}\n";
    return os.str();
}

std::string run_compute(const tqfi::Instance& instance, bool has_m, Eigen::Index m,
                        const std::string& method, const std::vector<double>& user_deltas) {
    tqfi::UnitaryFamily fam = instance.family();
    const std::vector<double>& deltas =
        user_deltas.empty() ? tqfi::kDefaultDeltas : user_deltas;

    tqfi::FisherResult result;
    if (has_m) {
        if (method.empty())
            result = tqfi::truncated_qfi(fam, instance.theta, m);
        else if (method == "closed")
            result = tqfi::tqfi_closed(fam, m);
        else if (method == "tsld")
            result = tqfi::tqfi_tsld(fam, instance.theta, m);
        else if (method == "fd")
            result = tqfi::tqfi_fd(fam, instance.theta, m, deltas);
        else
            throw std::invalid_argument("compute: --method " + method +
                                        " evaluates the full information; drop --m");
    } else {
        if (method.empty() || method == "eigenbasis")
            result = tqfi::qfi(fam, instance.theta);
        else if (method == "sld")
            result = tqfi::qfi(fam, instance.theta, tqfi::Method::sld);
        else if (method == "fd")
            result = tqfi::qfi(fam, instance.theta, tqfi::Method::finite_difference, deltas);
        else
            throw std::invalid_argument("compute: --method " + method + " requires --m");
    }
    return fisher_json(result);
}

std::string run_sweep_m(const tqfi::Instance& instance) {
    tqfi::UnitaryFamily fam = instance.family();
    const Eigen::Index rank = fam.probe().rank();
    const double full = tqfi::qfi(fam, instance.theta).value;

    std::ostringstream os;
    os << "m,tqfi_closed,tqfi_tsld,tqfi_fd,qfi,gap,degenerate\n";
    for (Eigen::Index m = 1; m <= fam.dim(); ++m) {
        tqfi::FisherResult dispatched = tqfi::truncated_qfi(fam, instance.theta, m);
        tqfi::FisherResult fd = tqfi::tqfi_fd(fam, instance.theta, m);
        os << m << ',';
        // The closed form and its operator route stop at the rank; empty
        // cells make the dispatcher's case split visible in the table.
        if (m < rank)
            os << format_real(tqfi::tqfi_closed(fam, m).value) << ','
               << format_real(tqfi::tqfi_tsld(fam, instance.theta, m).value) << ',';
        else
            os << ",,";
        os << format_real(fd.value) << ',' << format_real(full) << ','
           << format_real(full - dispatched.value) << ','
           << (dispatched.degenerate ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string run_sweep_delta(const tqfi::Instance& instance, Eigen::Index m,
                            std::vector<double> deltas) {
    tqfi::UnitaryFamily fam = instance.family();
    if (m < 1 || m > fam.dim())
        throw tqfi::InvalidRank("sweep-delta: m must lie in [1, d]");
    if (deltas.empty()) deltas = tqfi::kDefaultDeltas;
    std::sort(deltas.begin(), deltas.end());
    deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
    for (double delta : deltas)
        if (!(delta > 0.0))
            throw std::invalid_argument("sweep-delta: deltas must be positive");

    if (m < fam.probe().rank()) {
        const double deficit = 1.0 - fam.probe().spectrum().eigenvalues.head(m).sum();
        for (double delta : deltas)
            if (delta * delta > tqfi::kDeltaGuard * deficit)
                throw tqfi::DeltaTooLarge(
                    "sweep-delta: delta² exceeds 1e-2·(1 − Σ_{i≤m}λ_i); shrink the grid");
    }

    std::ostringstream os;
    os << "delta,fstar,eight_one_minus_f_over_d2,bures_sq\n";
    for (double delta : deltas) {
        const double fstar = tqfi::generalized_fidelity_truncated(fam, instance.theta, delta, m);
        os << format_real(delta) << ',' << format_real(fstar) << ','
           << format_real(8.0 * (1.0 - fstar) / (delta * delta)) << ','
           << format_real(2.0 * (1.0 - fstar)) << '\n';
    }
    return os.str();
}

tqfi::VerifyConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config: malformed JSON: ") + e.what());
    }
    if (!root.is_object()) throw std::invalid_argument("config: top level must be an object");

    tqfi::VerifyConfig config;
    for (const auto& item : root.items()) {
        const std::string& key = item.key();
        const nlohmann::json& value = item.value();
        auto integer = [&]() -> std::int64_t {
            if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
                throw std::invalid_argument("config: '" + key +
                                            "' must be a nonnegative integer");
            return value.get<std::int64_t>();
        };
        auto real = [&]() -> double {
            if (!value.is_number())
                throw std::invalid_argument("config: '" + key + "' must be a real number");
            return value.get<double>();
        };
        if (key == "seed")
            config.seed = value.get<std::uint64_t>();
        else if (key == "dmax")
            config.dmax = static_cast<Eigen::Index>(integer());
        else if (key == "lemma1_trials")
            config.lemma1_trials = integer();
        else if (key == "lemma3_trials")
            config.lemma3_trials = integer();
        else if (key == "lemma4_trials")
            config.lemma4_trials = integer();
        else if (key == "prop_trials")
            config.prop_trials = integer();
        else if (key == "tol_lemma1")
            config.tol_lemma1 = real();
        else if (key == "tol_invariance")
            config.tol_invariance = real();
        else if (key == "tol_convexity")
            config.tol_convexity = real();
        else if (key == "tol_cptni")
            config.tol_cptni = real();
        else if (key == "tol_subadditivity")
            config.tol_subadditivity = real();
        else if (key == "tol_direct_sum")
            config.tol_direct_sum = real();
        else if (key == "tol_triangle")
            config.tol_triangle = real();
        else if (key == "tol_identity")
            config.tol_identity = real();
        else if (key == "tol_half_angle")
            config.tol_half_angle = real();
        else if (key == "tol_lyapunov")
            config.tol_lyapunov = real();
        else if (key == "tol_traceless")
            config.tol_traceless = real();
        else if (key == "tol_trace_formula")
            config.tol_trace_formula = real();
        else
            throw std::invalid_argument("config: unrecognized field '" + key + "'");
    }
    return config;
}

std::string report_json(const std::vector<tqfi::PropertyReport>& reports) {
    std::ostringstream os;
    os << "[\n";
    for (std::size_t k = 0; k < reports.size(); ++k) {
        const tqfi::PropertyReport& r = reports[k];
        os << "  {\"property_id\": \"" << r.property_id << "\", \"trials\": " << r.trials
           << ", \"failures\": " << r.failures
           << ", \"worst_slack\": " << format_real(r.worst_slack)
           << ", \"degenerate_excluded\": " << r.degenerate_excluded
           << ", \"seed\": " << r.seed << '}' << (k + 1 < reports.size() ? "," : "") << '\n';
    }
    os << "]\n";
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Truncated quantum Fisher information toolkit"};
    app.require_subcommand(1);

    std::string instance_path;
    std::string method;
    std::string out_path;
    std::string config_path;
    std::vector<double> deltas;
    std::int64_t m = 0;
    std::int64_t d = 0;
    std::int64_t rank = 0;
    std::uint64_t seed = 0;

    CLI::App* compute = app.add_subcommand("compute", "Single information value, as JSON");
    compute->add_option("--instance", instance_path, "instance JSON path")->required();
    compute->add_option("--m", m, "truncation level (omit for the full information)");
    compute->add_option("--method", method, "closed|tsld|fd|eigenbasis|sld")
        ->check(CLI::IsMember({"closed", "tsld", "fd", "eigenbasis", "sld"}));
    compute->add_option("--delta", deltas, "finite-difference grid point (repeatable)");
    compute->add_option("--out", out_path, "output path (default: stdout)");

    CLI::App* sweep_m = app.add_subcommand("sweep-m", "Truncation chain, one CSV row per m");
    sweep_m->add_option("--instance", instance_path, "instance JSON path")->required();
    sweep_m->add_option("--out", out_path, "output path (default: stdout)");

    CLI::App* sweep_delta = app.add_subcommand("sweep-delta", "δ-convergence table as CSV");
    sweep_delta->add_option("--instance", instance_path, "instance JSON path")->required();
    sweep_delta->add_option("--m", m, "truncation level")->required();
    sweep_delta->add_option("--delta", deltas, "grid point (repeatable)");
    sweep_delta->add_option("--out", out_path, "output path (default: stdout)");

    CLI::App* random = app.add_subcommand("random", "Write a random valid instance");
    random->add_option("--d", d, "dimension")->required();
    random->add_option("--rank", rank, "probe rank (default: d)");
    random->add_option("--seed", seed, "sampling seed");
    random->add_option("--out", out_path, "output path (default: stdout)");

    CLI::App* verify = app.add_subcommand("verify", "Run the property suite, report as JSON");
    verify->add_option("--config", config_path, "config JSON overriding the defaults");
    verify->add_option("--out", out_path, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (compute->parsed()) {
            write_output(run_compute(tqfi::load_instance(instance_path),
                                     compute->count("--m") > 0,
                                     static_cast<Eigen::Index>(m), method, deltas),
                         out_path);
        } else if (sweep_m->parsed()) {
            write_output(run_sweep_m(tqfi::load_instance(instance_path)), out_path);
        } else if (sweep_delta->parsed()) {
            write_output(run_sweep_delta(tqfi::load_instance(instance_path),
                                         static_cast<Eigen::Index>(m), deltas),
                         out_path);
        } else if (random->parsed()) {
            if (random->count("--rank") == 0) rank = d;
            tqfi::Instance instance = tqfi::random_instance(static_cast<Eigen::Index>(d),
                                                            static_cast<Eigen::Index>(rank),
                                                            seed);
            write_output(tqfi::instance_to_json(instance), out_path);
        } else if (verify->parsed()) {
            tqfi::VerifyConfig config =
                config_path.empty() ? tqfi::VerifyConfig{} : parse_config(config_path);
            std::vector<tqfi::PropertyReport> reports = tqfi::run_suite(config);
            write_output(report_json(reports), out_path);
            for (const tqfi::PropertyReport& r : reports)
                if (r.failures > 0) return 1;
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
