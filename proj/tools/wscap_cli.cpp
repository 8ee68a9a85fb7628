// Command-line front end: experiment orchestration, seeded reproducibility,
// and plot-ready CSV/JSON emission.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wscap/capacity.hpp"
#include "wscap/erdos.hpp"
#include "wscap/gaussian.hpp"
#include "wscap/integral_tests.hpp"
#include "wscap/io.hpp"
#include "wscap/set_model.hpp"
#include "wscap/smallball.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "0.1.0";
constexpr int kExitInvalidConfig = 2;
constexpr int kExitUndetermined = 3;
constexpr int kExitResourceCap = 4;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& p : wscap::detail::split_top_level(text, ','))
        out.push_back(std::stod(p));
    return out;
}

// start:end:ratio geometric sweep (inclusive of start, stops before end).
std::vector<double> parse_geom_sweep(const std::string& text) {
    const auto parts = wscap::detail::split_top_level(text, ':');
    if (parts.size() != 3) throw std::invalid_argument("expected start:end:ratio");
    const double start = std::stod(parts[0]);
    const double end = std::stod(parts[1]);
    const double ratio = std::stod(parts[2]);
    if (!(start > end) || !(ratio > 0) || !(ratio < 1))
        throw std::invalid_argument("need start > end and ratio in (0,1)");
    std::vector<double> out;
    for (double e = start; e >= end; e *= ratio) out.push_back(e);
    return out;
}

class RunDir {
  public:
    RunDir(const std::string& out_root, const std::string& command, const json& config)
        : config_(config) {
        config_hash_ = fnv1a(config.dump());
        char tag[32];
        std::snprintf(tag, sizeof tag, "%s-%016llx", command.c_str(),
                      static_cast<unsigned long long>(config_hash_));
        dir_ = fs::path(out_root) / tag;
        fs::create_directories(dir_);
        command_ = command;
        start_ = std::chrono::steady_clock::now();
    }

    std::ofstream open(const std::string& name) {
        outputs_.push_back(name);
        return std::ofstream(dir_ / name, std::ios::binary);
    }

    void write_json(const std::string& name, const json& j) {
        auto f = open(name);
        f << j.dump(2) << "\n";
    }

    void mark(const std::string& phase) {
        const auto now = std::chrono::steady_clock::now();
        timings_[phase] =
            std::chrono::duration<double, std::milli>(now - start_).count();
    }

    void finalize() {
        mark("total");
        json manifest;
        manifest["schema_version"] = 1;
        manifest["tool_version"] = kToolVersion;
        manifest["command"] = command_;
        manifest["config"] = config_;
        char hash[20];
        std::snprintf(hash, sizeof hash, "%016llx",
                      static_cast<unsigned long long>(config_hash_));
        manifest["config_hash"] = hash;
        manifest["timings_ms"] = timings_;
        manifest["outputs"] = outputs_;
        std::ofstream f(dir_ / "manifest.json", std::ios::binary);
        f << manifest.dump(2) << "\n";
        std::cout << "run directory: " << dir_.string() << "\n";
    }

    const fs::path& dir() const { return dir_; }

  private:
    json config_;
    std::uint64_t config_hash_ = 0;
    fs::path dir_;
    std::string command_;
    std::vector<std::string> outputs_;
    std::map<std::string, double> timings_;
    std::chrono::steady_clock::time_point start_;
};

std::string default_out_root() {
    if (const char* env = std::getenv("WSCAP_OUT")) return env;
    return "wscap-runs";
}

const char* fmt(double x, char* buf) {
    std::snprintf(buf, 40, "%.17g", x);
    return buf;
}

std::string d2s(double x) {
    char buf[40];
    return fmt(x, buf);
}

int cmd_entropy(const std::string& set_text, std::vector<double> eps,
                const std::string& out_root) {
    const wscap::SetSpec spec = wscap::parse_set_shorthand(set_text);
    const wscap::SetModel model = wscap::normalize_set(spec);
    if (eps.empty()) eps = wscap::default_dimension_sweep();

    json config{{"set", set_text}, {"eps", eps}};
    RunDir run(out_root, "entropy", config);

    const auto profile = wscap::entropy_profile(model, eps);
    {
        auto f = run.open("entropy_profile.csv");
        f << "epsilon,count\r\n";
        for (std::size_t i = 0; i < profile.epsilons.size(); ++i)
            f << d2s(profile.epsilons[i]) << "," << profile.counts[i] << "\r\n";
    }
    std::vector<double> distinct = eps;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() >= 2) {
        const auto dim = wscap::dimension_estimate(model, eps);
        run.write_json("dimension.json",
                       json{{"set", wscap::to_json(spec)},
                            {"upper_minkowski", dim.upper_minkowski},
                            {"packing", dim.packing},
                            {"exact", dim.exact},
                            {"regression_r2", dim.regression_r2}});
        std::cout << "upper_minkowski=" << dim.upper_minkowski
                  << " packing=" << dim.packing << "\n";
    } else {
        run.write_json("dimension.json", json{{"set", wscap::to_json(spec)}});
        for (std::size_t i = 0; i < profile.epsilons.size(); ++i)
            std::cout << "K(" << profile.epsilons[i] << ") = " << profile.counts[i]
                      << "\n";
    }
    run.finalize();
    return 0;
}

int cmd_smallball(const std::vector<double>& rs, double tol, bool compare_mc,
                  long reps, int k, std::uint64_t seed, int workers,
                  const std::string& out_root) {
    json config{{"r", rs},       {"tol", tol},   {"compare_mc", compare_mc},
                {"reps", reps},  {"k", k},       {"seed", seed},
                {"workers", workers}};
    RunDir run(out_root, "smallball", config);
    {
        auto f = run.open("sigma_table.csv");
        f << "r,series,asymptotic,terms,remainder_bound\r\n";
        for (double r : rs) {
            const auto v = wscap::sigma_series(r, tol);
            f << d2s(r) << "," << d2s(v.value) << ","
              << d2s(wscap::sigma_asymptotic(r)) << "," << v.truncation_terms << ","
              << d2s(v.truncation_bound) << "\r\n";
            std::cout << "sigma(" << r << ") = " << v.value << "\n";
        }
    }
    if (compare_mc) {
        auto f = run.open("mc_compare.csv");
        f << "r,series,mc,stderr,z\r\n";
        for (double r : rs) {
            wscap::McConfig cfg;
            cfg.replicates = reps;
            cfg.k = k;
            cfg.master_seed = seed;
            cfg.workers = workers;
            const wscap::SetModel origin =
                wscap::normalize_set(wscap::SetSpec::point(0.0));
            const auto est = wscap::hit_prob(origin, wscap::EventSpec(r), cfg);
            const double s = wscap::sigma(r);
            const double z = est.stderr_ > 0 ? (est.value - s) / est.stderr_ : 0.0;
            f << d2s(r) << "," << d2s(s) << "," << d2s(est.value) << ","
              << d2s(est.stderr_) << "," << d2s(z) << "\r\n";
            std::cout << "r=" << r << " series=" << s << " mc=" << est.value
                      << " (" << z << " sigma)\n";
        }
    }
    run.finalize();
    return 0;
}

int cmd_capacity(const std::string& set_text, const std::vector<double>& rs,
                 const std::string& mode, long reps, int k, double eps_s,
                 std::uint64_t seed, int workers, const std::string& out_root) {
    const wscap::SetSpec spec = wscap::parse_set_shorthand(set_text);
    const wscap::SetModel model = wscap::normalize_set(spec);
    json config{{"set", set_text}, {"r", rs},     {"mode", mode},
                {"reps", reps},    {"k", k},      {"eps_s", eps_s},
                {"seed", seed},    {"workers", workers}};
    RunDir run(out_root, "capacity", config);

    wscap::McConfig cfg;
    cfg.replicates = reps;
    cfg.k = k;
    cfg.eps_s = eps_s;
    cfg.master_seed = seed;
    cfg.workers = workers;

    auto f = run.open("capacity_sweep.csv");
    f << "r,entropy_r6,sigma,hit,hit_stderr,capacity,capacity_stderr,rho,rho_lo,rho_hi\r\n";
    double rho_min = 0, rho_max = 0;
    bool first = true;
    for (double r : rs) {
        const wscap::EventSpec event(r);
        const auto pair = wscap::hit_and_capacity(model, event, cfg);
        const long entropy = wscap::kolmogorov_entropy(model, std::pow(r, 6.0));
        const double s = wscap::sigma(r);
        const double denom = entropy * s;
        const double rho = pair.hit.value / denom;
        f << d2s(r) << "," << entropy << "," << d2s(s) << "," << d2s(pair.hit.value)
          << "," << d2s(pair.hit.stderr_) << "," << d2s(pair.cap.value) << ","
          << d2s(pair.cap.stderr_) << "," << d2s(rho) << ","
          << d2s(pair.hit.ci_lo / denom) << "," << d2s(pair.hit.ci_hi / denom)
          << "\r\n";
        rho_min = first ? rho : std::min(rho_min, rho);
        rho_max = first ? rho : std::max(rho_max, rho);
        first = false;
        std::cout << "r=" << r << " hit=" << pair.hit.value
                  << " capacity=" << pair.cap.value << " rho=" << rho << "\n";
    }
    run.write_json("ratio_summary.json", json{{"rho_min", rho_min},
                                              {"rho_max", rho_max},
                                              {"band", rho_max / std::max(rho_min, 1e-300)}});
    run.finalize();
    return 0;
}

int cmd_liltest(const std::string& h_text, const std::string& mode,
                const std::string& set_text, const std::vector<double>& t_list,
                const std::string& out_root) {
    const wscap::LowerFunctionSpec h = wscap::parse_h_shorthand(h_text);
    json config{{"H", h_text}, {"mode", mode}, {"set", set_text}, {"T", t_list}};
    RunDir run(out_root, "liltest", config);

    wscap::Verdict verdict = wscap::Verdict::Undetermined;
    json report{{"H", wscap::to_json(h)}, {"mode", mode}};
    if (mode == "qs") {
        verdict = wscap::qs_verdict(h);
    } else if (mode == "as") {
        verdict = wscap::as_verdict(h);
    } else if (mode == "psi") {
        const wscap::SetModel model =
            wscap::normalize_set(wscap::parse_set_shorthand(set_text));
        std::vector<double> ts = t_list;
        if (ts.empty()) ts = {1e1, 1e2, 1e4, 1e8, 1e16, 1e32, 1e64, 1e128, 1e250};
        const auto res = wscap::psi_numeric(h, model, ts);
        verdict = res.verdict;
        report["threshold"] = res.threshold;
        report["tail_estimate"] = res.tail_estimate;
        auto f = run.open("psi_partials.csv");
        f << "T,partial_integral\r\n";
        for (const auto& [t, v] : res.partial_integrals)
            f << d2s(t) << "," << d2s(v) << "\r\n";
    } else {
        throw CLI::ValidationError("--mode must be as, qs, or psi");
    }
    if (!set_text.empty() && mode != "psi") {
        // Verdict against a set uses the analytic classifier.
        const wscap::SetModel model =
            wscap::normalize_set(wscap::parse_set_shorthand(set_text));
        const auto cls = wscap::classify(h, model);
        verdict = cls.verdict;
        report["threshold"] = cls.threshold;
    }
    report["verdict"] = wscap::to_string(verdict);
    run.write_json("verdict.json", report);
    run.finalize();
    std::cout << wscap::to_string(verdict) << "\n";
    return verdict == wscap::Verdict::Undetermined ? kExitUndetermined : 0;
}

int cmd_audit(const std::string& ineq, long n_lo, long n_hi,
              const std::string& h_text, const std::string& out_root) {
    const wscap::LowerFunctionSpec h = wscap::parse_h_shorthand(h_text);
    json config{{"ineq", ineq}, {"n_lo", n_lo}, {"n_hi", n_hi}, {"H", h_text}};
    RunDir run(out_root, "audit", config);

    const auto rep = wscap::audit_inequalities(n_lo, n_hi, h);
    {
        auto f = run.open("audit.csv");
        f << "n,lhs,rhs,ratio\r\n";
        for (const auto& row : rep.rows)
            f << row.n << "," << d2s(row.lhs) << "," << d2s(row.rhs) << ","
              << d2s(row.ratio) << "\r\n";
    }
    run.write_json("audit_summary.json",
                   json{{"ineq", ineq},
                        {"fitted_a", rep.max_a},
                        {"violations", rep.violations},
                        {"ees_min_ratio", rep.ees_min_ratio}});
    run.finalize();
    std::cout << "fitted a = " << rep.max_a << ", violations = " << rep.violations
              << ", ees min ratio = " << rep.ees_min_ratio << "\n";
    return 0;
}

int cmd_simulate(const std::vector<double>& s_values, int k, std::uint64_t seed,
                 const std::string& out_root) {
    json config{{"s_values", s_values}, {"k", k}, {"seed", seed}};
    RunDir run(out_root, "simulate", config);

    const wscap::TimeGrid grid(k);
    const auto ens =
        wscap::ou_ensemble(s_values, grid, wscap::RngStream{seed, 0, 0});
    {
        auto f = run.open("ensemble.csv");
        f << "s,t,value\r\n";
        for (std::size_t i = 0; i < ens.s_values.size(); ++i)
            for (long j = 0; j < grid.size(); ++j)
                f << d2s(ens.s_values[i]) << "," << d2s(grid.time(j)) << ","
                  << d2s(ens.values[i][j]) << "\r\n";
    }
    run.write_json("ensemble_manifest.json",
                   json{{"master_seed", seed}, {"k", k}, {"s_values", s_values}});
    run.finalize();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wiener-space relative capacity laboratory"};
    app.require_subcommand(1);
    std::string out_root = default_out_root();
    app.add_option("--out-dir", out_root, "output root directory");

    // entropy
    auto* entropy = app.add_subcommand("entropy", "Kolmogorov entropy and dimension");
    std::string set_text, eps_text, eps_geom_text;
    entropy->add_option("--set", set_text, "set spec shorthand")->required();
    entropy->add_option("--eps", eps_text, "comma-separated epsilon sweep");
    entropy->add_option("--eps-geom", eps_geom_text, "geometric sweep start:end:ratio");

    // smallball
    auto* smallball = app.add_subcommand("smallball", "small-ball probabilities");
    std::string r_text = "0.5,0.6,0.8,1.0";
    double tol = 1e-14;
    bool compare_mc = false;
    long reps = 10000;
    int k = 12;
    std::uint64_t seed = 1;
    int workers = 1;
    smallball->add_option("--r", r_text, "radii, comma-separated");
    smallball->add_option("--tol", tol, "series truncation tolerance");
    smallball->add_flag("--compare-mc", compare_mc, "cross-check against Monte Carlo");
    smallball->add_option("--reps", reps, "MC replicates");
    smallball->add_option("--k", k, "grid resolution");
    smallball->add_option("--seed", seed, "master seed");
    smallball->add_option("--workers", workers, "worker threads");

    // capacity
    auto* capacity = app.add_subcommand("capacity", "hitting and capacity experiments");
    std::string cap_set, cap_mode = "sweep";
    std::string cap_r = "0.6";
    long cap_reps = 20000;
    int cap_k = 10;
    double cap_eps_s = 0;
    std::uint64_t cap_seed = 1;
    int cap_workers = 1;
    capacity->add_option("--set", cap_set, "set spec shorthand")->required();
    capacity->add_option("--r", cap_r, "radii, comma-separated");
    capacity->add_option("--mode", cap_mode, "sweep");
    capacity->add_option("--reps", cap_reps, "MC replicates");
    capacity->add_option("--k", cap_k, "grid resolution");
    capacity->add_option("--eps-s", cap_eps_s, "s mesh (default r^6)");
    capacity->add_option("--seed", cap_seed, "master seed");
    capacity->add_option("--workers", cap_workers, "worker threads");

    // liltest
    auto* liltest = app.add_subcommand("liltest", "integral-test classification");
    std::string h_text, lil_mode = "qs", lil_set, lil_t;
    liltest->add_option("--H", h_text, "H spec (hnu:<nu> or chung:<c>)")->required();
    liltest->add_option("--mode", lil_mode, "as | qs | psi");
    liltest->add_option("--set", lil_set, "set spec (for psi or classify)");
    liltest->add_option("--T", lil_t, "psi checkpoints, comma-separated");

    // audit
    auto* audit = app.add_subcommand("audit", "blocking-sequence inequality audits");
    std::string audit_ineq = "key-ee", audit_n = "100:1000000", audit_h = "hnu:0";
    audit->add_option("--ineq", audit_ineq, "key-ee");
    audit->add_option("--n", audit_n, "range lo:hi");
    audit->add_option("--H", audit_h, "H spec");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "dump an OU ensemble");
    std::string sim_s = "0,0.5,1";
    int sim_k = 8;
    std::uint64_t sim_seed = 1;
    simulate->add_option("--s", sim_s, "s values, comma-separated");
    simulate->add_option("--k", sim_k, "grid resolution");
    simulate->add_option("--seed", sim_seed, "master seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (entropy->parsed()) {
            std::vector<double> eps;
            if (!eps_geom_text.empty()) eps = parse_geom_sweep(eps_geom_text);
            if (!eps_text.empty())
                for (double e : parse_double_list(eps_text)) eps.push_back(e);
            return cmd_entropy(set_text, eps, out_root);
        }
        if (smallball->parsed())
            return cmd_smallball(parse_double_list(r_text), tol, compare_mc, reps, k,
                                 seed, workers, out_root);
        if (capacity->parsed())
            return cmd_capacity(cap_set, parse_double_list(cap_r), cap_mode, cap_reps,
                                cap_k, cap_eps_s, cap_seed, cap_workers, out_root);
        if (liltest->parsed()) {
            std::vector<double> ts;
            if (!lil_t.empty()) ts = parse_double_list(lil_t);
            return cmd_liltest(h_text, lil_mode, lil_set, ts, out_root);
        }
        if (audit->parsed()) {
            const auto parts = wscap::detail::split_top_level(audit_n, ':');
            if (parts.size() != 2) throw std::invalid_argument("--n expects lo:hi");
            return cmd_audit(audit_ineq, std::stol(parts[0]), std::stol(parts[1]),
                             audit_h, out_root);
        }
        if (simulate->parsed())
            return cmd_simulate(parse_double_list(sim_s), sim_k, sim_seed, out_root);
    } catch (const std::length_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kExitResourceCap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidConfig;
    }
    return kExitInvalidConfig;
}
