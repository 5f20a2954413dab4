// Copyright 2026 The qconf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qconf command-line front end.
//
//   qconf run --config <file> [--seed S] [--out DIR]
//   qconf verify --suite tables|attacks|all [--trials T] [--seed S] [--out DIR]
//
// Exit status: 0 on success (a protocol abort is a result, not a failure),
// 1 when a verify verdict fails, 2 on configuration errors, 3 on I/O errors.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qconf/qconf.hpp"

namespace fs = std::filesystem;
using namespace qconf;

namespace {

constexpr int kExitVerdict = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_file(const fs::path &path, const std::string &content) {
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec) {
            throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << content;
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fmt(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string report_csv(const std::vector<Comparison> &rows) {
    std::string s = "name,estimate,se,analytic,z,verdict\n";
    for (const auto &r : rows) {
        s += r.name + "," + fmt(r.estimate) + "," + fmt(r.se) + "," + fmt(r.analytic) + "," + fmt(r.zscore) + "," +
             (r.pass ? "pass" : "fail") + "\n";
    }
    return s;
}

json report_json(const std::string &suite, std::uint64_t seed, std::size_t samples, double z,
                 const std::vector<Comparison> &rows) {
    std::size_t passed = 0;
    json arr = json::array();
    for (const auto &r : rows) {
        passed += r.pass ? 1 : 0;
        arr.push_back(r.to_json());
    }
    return json{{"suite", suite},
                {"seed", seed},
                {"samples", samples},
                {"z", z},
                {"band", "|estimate - analytic| <= z * max(se, sqrt(analytic*(1-analytic)/trials)), floor 1e-12"},
                {"summary", {{"rows", rows.size()}, {"passed", passed}, {"failed", rows.size() - passed}}},
                {"rows", arr}};
}

int cmd_run(const std::string &config_path, std::optional<std::uint64_t> seed, std::optional<std::string> out_dir) {
    RunConfig cfg = parse_run_config(read_file(config_path));
    if (seed) {
        cfg.seed = *seed;
    }
    if (out_dir) {
        cfg.out_dir = *out_dir;
    }
    for (std::size_t i = 0; i < cfg.trials; i++) {
        Transcript t = execute_trial(cfg, i);
        fs::path path = fs::path(cfg.out_dir) / (cfg.prefix + "_" + std::to_string(cfg.trial_offset + i) + ".json");
        write_file(path, t.to_json().dump(2) + "\n");
        std::cout << path.string() << ": ";
        if (t.abort.aborted) {
            std::cout << "aborted at " << t.abort.stage << " (" << t.abort.reason << ")\n";
        } else {
            std::cout << "completed, " << t.outputs.delivered_positions.size() << " positions delivered\n";
        }
    }
    return 0;
}

int cmd_verify(const std::string &suite, std::size_t samples, std::uint64_t seed, const std::string &out_dir,
               double z, unsigned threads) {
    std::vector<Comparison> rows;
    if (suite == "tables" || suite == "all") {
        auto t = verify_tables();
        rows.insert(rows.end(), t.begin(), t.end());
    }
    if (suite == "attacks" || suite == "all") {
        auto a = run_suite(attack_suite(samples, seed), z, threads);
        rows.insert(rows.end(), a.begin(), a.end());
    }
    fs::path dir(out_dir);
    write_file(dir / ("report_" + suite + ".csv"), report_csv(rows));
    write_file(dir / ("report_" + suite + ".json"), report_json(suite, seed, samples, z, rows).dump(2) + "\n");

    std::size_t failed = 0;
    for (const auto &r : rows) {
        if (!r.pass) {
            failed++;
            std::cout << "FAIL " << r.name << ": estimate " << fmt(r.estimate) << ", analytic " << fmt(r.analytic)
                      << ", z " << fmt(r.zscore) << "\n";
        }
    }
    std::cout << suite << ": " << rows.size() - failed << "/" << rows.size() << " rows pass; report in "
              << (dir / ("report_" + suite + ".csv")).string() << "\n";
    return failed == 0 ? 0 : kExitVerdict;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum conference and dialogue protocol simulator"};
    app.require_subcommand(1);

    auto *run = app.add_subcommand("run", "Execute protocol runs from a RunConfig JSON file");
    std::string config_path;
    std::optional<std::uint64_t> run_seed;
    std::optional<std::string> run_out;
    run->add_option("--config", config_path, "RunConfig JSON file")->required();
    run->add_option("--seed", run_seed, "Override the config's seed");
    run->add_option("--out", run_out, "Override the config's output directory");

    auto *verify = app.add_subcommand("verify", "Recompute tables and/or run the Monte Carlo agreement suite");
    std::string suite;
    std::size_t samples = 100000;
    std::uint64_t verify_seed = 20240101;
    std::string verify_out = "reports";
    double z = 4.0;
    unsigned threads = 0;
    verify->add_option("--suite", suite, "tables, attacks or all")
        ->required()
        ->check(CLI::IsMember({"tables", "attacks", "all"}));
    verify->add_option("--trials", samples, "Target Bernoulli samples per per-check statistic")
        ->check(CLI::Range(std::size_t{100}, std::size_t{100000000}));
    verify->add_option("--seed", verify_seed, "Master seed");
    verify->add_option("--out", verify_out, "Report directory");
    verify->add_option("--z", z, "Agreement band in standard errors")->check(CLI::PositiveNumber);
    verify->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) {
            return cmd_run(config_path, run_seed, run_out);
        }
        return cmd_verify(suite, samples, verify_seed, verify_out, z, threads);
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError &e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
