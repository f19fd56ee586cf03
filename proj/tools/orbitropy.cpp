#include "orbitropy/scenario.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace orbitropy;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw InputError(p.string() + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw InputError(p.string() + ": cannot write");
    out << text;
}

// A suite is a JSON file {"suite": [paths relative to the file]}; a directory
// expands to its *.json scenarios in name order.
std::vector<std::string> expand(const std::string& target) {
    fs::path p(target);
    std::vector<std::string> out;
    if (fs::is_directory(p)) {
        std::vector<fs::path> files;
        for (auto& e : fs::directory_iterator(p))
            if (e.path().extension() == ".json") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (auto& f : files) {
            Json j = Json::parse(slurp(f), nullptr, false);
            if (j.is_object() && j.contains("suite")) continue;
            out.push_back(f.string());
        }
        return out;
    }
    Json j = Json::parse(slurp(p), nullptr, false);
    if (j.is_object() && j.contains("suite")) {
        if (!j.at("suite").is_array()) throw InputError(target + ": 'suite' must be a list of paths");
        for (auto& s : j.at("suite")) {
            if (!s.is_string()) throw InputError(target + ": suite entries must be strings");
            out.push_back((p.parent_path() / s.get<std::string>()).string());
        }
        return out;
    }
    return {target};
}

std::string fixed(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << std::fixed << v;
    return os.str();
}

Overrides overrides(const std::string& engine, int nmax, long long cap, int jobs) {
    Overrides ov;
    if (!engine.empty()) ov.engine = engine;
    if (nmax > 0) ov.n_max = nmax;
    if (cap > 0) ov.cap = static_cast<std::size_t>(cap);
    if (jobs > 0) ov.jobs = jobs;
    return ov;
}

int cmd_run(const std::string& path, const std::string& outdir, const Overrides& ov) {
    Scenario sc = load_scenario(path);
    RunOutput res = run_scenario(sc, ov);
    fs::create_directories(outdir);
    write_file(fs::path(outdir) / (sc.id + ".csv"), render_csv(sc, res));
    write_file(fs::path(outdir) / (sc.id + ".json"), render_report(sc, res).dump(2) + "\n");
    for (auto& e : res.estimates)
        std::cout << sc.id << "  " << std::left << std::setw(8) << tag(e.definition) << " " << std::setw(9)
                  << engine_name(e.engine) << " " << fixed(e.value) << (e.exact ? "" : "  (lower-bound)") << "\n";
    if (res.degree_bound) std::cout << sc.id << "  degree_lower_bound " << fixed(res.degree_bound->value) << "\n";
    return 0;
}

int cmd_verify(const std::string& target, const Overrides& ov) {
    bool all = true;
    for (auto& path : expand(target)) {
        Scenario sc = load_scenario(path);
        std::cout << "== " << sc.id << " (" << path << ")\n";
        for (auto& r : verify_scenario(sc, ov)) {
            std::string status = r.skipped ? "SKIP" : r.pass ? "PASS" : "FAIL";
            std::cout << "  " << status << "  " << r.name;
            if (r.skipped) std::cout << "  [" << r.reason << "]";
            else
                std::cout << "  lhs=" << fixed(r.lhs) << " rhs=" << fixed(r.rhs) << " delta=" << fixed(r.lhs - r.rhs)
                          << " tol=" << r.tolerance;
            if (!r.skipped && !r.reason.empty()) std::cout << "  [" << r.reason << "]";
            std::cout << "\n";
            all = all && r.pass;
        }
    }
    std::cout << (all ? "all checks passed" : "some checks FAILED") << "\n";
    return all ? 0 : 1;
}

int cmd_oracle(const std::string& target, const Overrides& ov) {
    bool all = true;
    auto paths = expand(target);
    for (auto& path : paths) {
        Scenario sc = load_scenario(path);
        std::cout << "== " << sc.id << " (" << path << ")\n";
        std::vector<OracleResult> results;
        try {
            results = oracle_scenario(sc, ov);
        } catch (const OracleLimitError& e) {
            if (paths.size() == 1) throw;
            std::cout << "  SKIP  over the oracle limits: " << e.what() << "\n";
            continue;
        }
        for (auto& r : results) {
            std::cout << "  " << (r.pass ? "OK  " : "DIFF") << "  " << r.name << "  engine=" << r.engine_value
                      << " oracle=" << r.oracle_value << "\n";
            all = all && r.pass;
        }
    }
    std::cout << (all ? "engine matches oracle" : "engine DIFFERS from oracle") << "\n";
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orbitropy: entropy of multivalued and nonautonomous maps on finite grids"};
    app.require_subcommand(1);
    std::string engine, scenario, out = "out";
    int nmax = 0, jobs = 0;
    long long cap = 0;
    auto flags = [&](CLI::App* c) {
        c->add_option("--engine", engine, "exact|symbolic|both")->check(CLI::IsMember({"exact", "symbolic", "both"}));
        c->add_option("--nmax", nmax, "largest orbit length")->check(CLI::PositiveNumber);
        c->add_option("--cap", cap, "tuple cap for the exact engine")->check(CLI::PositiveNumber);
        c->add_option("--jobs", jobs, "parallel epsilon jobs")->check(CLI::PositiveNumber);
    };
    auto* run = app.add_subcommand("run", "estimate entropies, write CSV and JSON");
    run->add_option("scenario", scenario)->required();
    run->add_option("--out", out, "output directory");
    flags(run);
    auto* verify = app.add_subcommand("verify", "run inequality and expected-value checks");
    verify->add_option("scenario", scenario, "scenario, directory or suite file")->required();
    flags(verify);
    auto* oracle = app.add_subcommand("oracle", "compare engines with brute force");
    oracle->add_option("scenario", scenario)->required();
    flags(oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    Overrides ov = overrides(engine, nmax, cap, jobs);
    try {
        if (*run) return cmd_run(scenario, out, ov);
        if (*verify) return cmd_verify(scenario, ov);
        return cmd_oracle(scenario, ov);
    } catch (const OracleLimitError& e) {
        std::cerr << "oracle limit: " << e.what() << "\n";
        return 4;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapError& e) {
        std::cerr << "cap exceeded: definition=" << e.definition << " n=" << e.n << ": " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
