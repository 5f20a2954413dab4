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

#ifndef QCONF_STATS_HPP
#define QCONF_STATS_HPP

// Monte Carlo experiments over protocol runs and the closed-form values they
// are compared against.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "qconf/adversary.hpp"
#include "qconf/errors.hpp"
#include "qconf/protocols.hpp"
#include "qconf/rng.hpp"
#include "qconf/transcript.hpp"
#include "qconf/types.hpp"

namespace qconf {

// ---------------------------------------------------------------------------
// Estimates and agreement
// ---------------------------------------------------------------------------

struct Estimate {
    std::string name;
    double estimate = 0;
    double se = 0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;

    static Estimate bernoulli(std::string name, std::uint64_t successes, std::uint64_t trials) {
        if (trials == 0) {
            throw ContractError("Estimate::bernoulli: no trials for " + name);
        }
        double p = static_cast<double>(successes) / static_cast<double>(trials);
        return {std::move(name), p, std::sqrt(p * (1 - p) / static_cast<double>(trials)), trials, successes};
    }

    json to_json() const {
        return json{{"name", name}, {"estimate", estimate}, {"se", se}, {"trials", trials}, {"successes", successes}};
    }
};

/// Differences below this are treated as exact equality.
inline constexpr double kExactTolerance = 1e-12;

struct Comparison {
    std::string name;
    double estimate = 0;
    double se = 0;
    double analytic = 0;
    double z = 0;      // band multiplier used
    double zscore = 0; // (estimate - analytic) / band; 0 when both are exact and equal
    std::uint64_t trials = 0;
    bool pass = false;

    json to_json() const {
        return json{{"name", name},         {"estimate", estimate}, {"se", se},
                    {"analytic", analytic}, {"z", z},               {"zscore", std::isfinite(zscore) ? json(zscore) : json("inf")},
                    {"trials", trials},     {"verdict", pass ? "pass" : "fail"}};
    }
};

/// Passes iff |estimate - value| <= z * max(se, se_null), where se_null is the
/// standard error a Bernoulli(value) statistic would have at the same trial
/// count. Using the larger of the two keeps the band honest when the observed
/// rate sits at 0 or 1 and se collapses to zero.
inline Comparison check_agreement(const Estimate &e, double value, double z = 4.0) {
    if (!(z >= 0)) {
        throw ContractError("check_agreement: z must be non-negative");
    }
    double se_null = 0;
    if (e.trials > 0 && value >= 0 && value <= 1) {
        se_null = std::sqrt(value * (1 - value) / static_cast<double>(e.trials));
    }
    double band = z * std::max(e.se, se_null);
    double diff = e.estimate - value;
    Comparison c{e.name, e.estimate, e.se, value, z, 0.0, e.trials, false};
    c.pass = std::abs(diff) <= std::max(band, kExactTolerance);
    if (std::abs(diff) > kExactTolerance) {
        c.zscore = band > 0 ? diff / (band / z) : std::copysign(INFINITY, diff);
    }
    return c;
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

struct FormulaParams {
    double delta = 0.1;
    double gamma = 0.1;
    std::size_t length = 100;  // m or n
    std::size_t parties = 3;
    std::size_t decoys = 16;
    std::array<double, 4> weights{1, 0, 0, 0};
};

struct AnalyticFormula {
    std::string name;
    std::string expression;
    std::function<double(const FormulaParams &)> eval;
};

namespace detail {

inline double floor_count(double fraction, std::size_t available) {
    return static_cast<double>(sample_count(fraction, available));
}

}  // namespace detail

/// Every closed-form probability the experiments are checked against. Sample
/// sizes inside exponents use the same floored counts as the protocols.
inline const std::map<std::string, AnalyticFormula> &analytic_catalog() {
    using detail::floor_count;
    static const std::map<std::string, AnalyticFormula> catalog = [] {
        std::map<std::string, AnalyticFormula> c;
        auto add = [&](std::string name, std::string expr, std::function<double(const FormulaParams &)> f) {
            c.emplace(name, AnalyticFormula{name, std::move(expr), std::move(f)});
        };
        auto constant = [&](std::string name, std::string expr, double v) {
            add(std::move(name), std::move(expr), [v](const FormulaParams &) { return v; });
        };
        constant("honest_correctness", "1", 1.0);
        constant("mdi_original_pair_recovery", "5/8", 5.0 / 8);
        constant("mdi_original_bit_detection", "1/4", 0.25);
        constant("mdi_original_sift_fraction", "1/2", 0.5);
        constant("mdi_modified_pair_pass", "9/16", 9.0 / 16);
        constant("mdi_modified_pair_recovery", "1/4", 0.25);
        add("mdi_modified_detection", "1-(9/16)^(delta*n)", [=](const FormulaParams &p) {
            return 1 - std::pow(9.0 / 16, floor_count(p.delta, p.length));
        });
        constant("intercept_qubit_pass", "3/4", 0.75);
        constant("intercept_position_pass", "(3/4)^3", std::pow(0.75, 3));
        add("intercept_detection", "1-(3/4)^(N*delta*m)", [=](const FormulaParams &p) {
            return 1 - std::pow(0.75, static_cast<double>(p.parties) * floor_count(p.delta, p.length));
        });
        constant("entangle_qubit_pass", "3/4", 0.75);
        constant("entangle_position_pass", "(3/4)^3", std::pow(0.75, 3));
        add("entangle_detection", "1-(3/4)^(N*delta*m)", [=](const FormulaParams &p) {
            return 1 - std::pow(0.75, static_cast<double>(p.parties) * floor_count(p.delta, p.length));
        });
        // All parties' qubits at a sampled position share the key basis, so the
        // entangling attack's per-qubit failures are correlated within a position.
        add("entangle_position_pass_shared_basis", "(1+(1/2)^N)/2", [](const FormulaParams &p) {
            return (1 + std::pow(0.5, static_cast<double>(p.parties))) / 2;
        });
        add("entangle_detection_shared_basis", "1-((1+(1/2)^N)/2)^(delta*m)", [=](const FormulaParams &p) {
            double pos = (1 + std::pow(0.5, static_cast<double>(p.parties))) / 2;
            return 1 - std::pow(pos, floor_count(p.delta, p.length));
        });
        constant("mitm_qubit_pass", "1/2", 0.5);
        add("mitm_detection", "1-(1/2)^(N*delta*m)", [=](const FormulaParams &p) {
            return 1 - std::pow(0.5, static_cast<double>(p.parties) * floor_count(p.delta, p.length));
        });
        add("dos_qubit_pass", "sum_j h_j w_j^2, h=(1,1/2,0,1/2)", [](const FormulaParams &p) {
            return dos_pass_probability(p.weights);
        });
        add("decoy_detection", "1-(3/4)^d",
            [](const FormulaParams &p) { return 1 - std::pow(0.75, static_cast<double>(p.decoys)); });
        constant("dishonest_middle_pass", "7/8", 7.0 / 8);
        add("dishonest_middle_detection", "1-(7/8)^(gamma*m')", [=](const FormulaParams &p) {
            std::size_t rest = p.length - sample_count(p.delta, p.length);
            return 1 - std::pow(7.0 / 8, floor_count(p.gamma, rest));
        });
        add("dishonest_middle_pass_enumerated", "exact enumeration over bits, key and basis",
            [](const FormulaParams &p) { return dishonest_middle_pass_probability(p.parties); });
        add("dishonest_middle_detection_enumerated", "1-p_enum^(gamma*m')", [=](const FormulaParams &p) {
            std::size_t rest = p.length - sample_count(p.delta, p.length);
            return 1 - std::pow(dishonest_middle_pass_probability(p.parties), floor_count(p.gamma, rest));
        });
        constant("xor_p1_exact", "1", 1.0);
        constant("xor_others_cheat", "1", 1.0);
        constant("xor_otp_guess", "1/2", 0.5);
        return c;
    }();
    return catalog;
}

inline double evaluate_formula(const std::string &name, const FormulaParams &p) {
    auto it = analytic_catalog().find(name);
    if (it == analytic_catalog().end()) {
        throw ContractError("evaluate_formula: unknown formula " + name);
    }
    return it->second.eval(p);
}

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

struct Experiment {
    std::string name;
    ProtocolId protocol = ProtocolId::conference3;
    AttackConfig attack;
    ProtocolParams params;
    std::size_t length = 64;
    std::size_t parties = 3;
    std::size_t trials = 1;
    std::uint64_t seed = 1;
    /// Stage prefix whose abort counts as "detected". Empty: any abort.
    std::string detect_stage;

    void validate() const {
        if (trials < 1) {
            throw ContractError("Experiment " + name + ": trials must be at least 1");
        }
        auto problem = size_problem(protocol, length, params);
        if (!problem.empty()) {
            throw ContractError("Experiment " + name + ": " + problem);
        }
        attack.validate();
    }
};

/// Per-statistic (successes, samples) counters. Merging is addition, so the
/// result does not depend on trial scheduling.
class Tally {
   public:
    void add(const std::string &name, bool success) {
        add_counts(name, success ? 1 : 0, 1);
    }
    void add_counts(const std::string &name, std::uint64_t successes, std::uint64_t samples) {
        auto &c = counts_[name];
        c.first += successes;
        c.second += samples;
    }
    void merge(const Tally &other) {
        for (const auto &[k, v] : other.counts_) {
            add_counts(k, v.first, v.second);
        }
    }
    const std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> &counts() const {
        return counts_;
    }

   private:
    std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> counts_;
};

/// One message per party drawn from `rng`.
inline std::vector<Bits> draw_messages(Rng &rng, std::size_t parties, std::size_t length) {
    std::vector<Bits> out;
    for (std::size_t p = 0; p < parties; p++) {
        out.push_back(random_bits(length, rng));
    }
    return out;
}

/// Trial `i` of an experiment. The CLI uses the same derivation, so a run
/// config with the same seed reproduces any individual trial.
inline Transcript run_trial(ProtocolId protocol, std::size_t parties, std::size_t length, const AttackConfig &attack,
                            const ProtocolParams &params, std::uint64_t seed, std::uint64_t index,
                            const std::vector<Bits> *fixed_messages = nullptr) {
    Rng rng = Rng::for_trial(seed, index);
    Rng msg_rng = rng.fork();
    std::vector<Bits> messages = fixed_messages ? *fixed_messages : draw_messages(msg_rng, parties, length);
    return run_protocol(protocol, messages, attack, params, rng);
}

namespace detail {

inline bool recovered_all(const Transcript &t) {
    if (t.abort.aborted) {
        return false;
    }
    const auto &pos = t.outputs.delivered_positions;
    for (const auto &[receiver, senders] : t.outputs.recovered) {
        for (const auto &[sender, bits] : senders) {
            const Bits &truth = t.inputs.at(static_cast<std::size_t>(sender - 1));
            if (bits.size() != pos.size()) {
                return false;
            }
            for (std::size_t k = 0; k < pos.size(); k++) {
                if (bits[k] != truth[pos[k]]) {
                    return false;
                }
            }
        }
    }
    return true;
}

inline Bits true_xor(const Transcript &t) {
    Bits x(t.inputs.front().size(), 0);
    for (const auto &in : t.inputs) {
        x = xor_bits(x, in);
    }
    return x;
}

}  // namespace detail

/// Every statistic a transcript can contribute to. Names are stable and used
/// by the suites below.
inline void tally_transcript(const Experiment &e, const Transcript &t, Tally &tally) {
    tally.add("aborted", t.abort.aborted);
    tally.add("detected", e.detect_stage.empty() ? t.abort.aborted : t.aborted_at(e.detect_stage));

    if (const auto *first = t.estimate("first")) {
        std::map<std::size_t, bool> per_position;
        for (const auto &c : first->checks) {
            tally.add("first_qubit_pass", c.ok);
            auto [it, inserted] = per_position.emplace(c.position, c.ok);
            if (!inserted) {
                it->second = it->second && c.ok;
            }
        }
        for (const auto &[pos, ok] : per_position) {
            tally.add("first_position_pass", ok);
        }
    }
    if (const auto *second = t.estimate("second")) {
        for (const auto &c : second->checks) {
            tally.add("second_pass", c.ok);
        }
    }
    for (const auto &est : t.estimates) {
        if (est.stage.rfind("decoy:", 0) == 0) {
            for (const auto &c : est.checks) {
                tally.add("decoy_pass", c.ok);
                tally.add("decoy_pass[" + est.stage.substr(6) + "]", c.ok);
            }
        }
    }

    const bool xor_run = e.protocol == ProtocolId::xor_compute;
    if (xor_run) {
        if (!t.abort.aborted) {
            Bits mu = detail::true_xor(t);
            bool all = true;
            for (const auto &[p, bits] : t.outputs.xor_result) {
                all = all && bits == mu;
            }
            tally.add("correct", all);
            tally.add("xor_p1_exact", t.outputs.xor_result.at(1) == mu);
            Bits cheat = xor_bits(xor_bits(mu, t.blinding), t.blinding_used);
            bool others = true;
            for (const auto &[p, bits] : t.outputs.xor_result) {
                if (p != 1) {
                    others = others && bits == cheat;
                }
            }
            tally.add("xor_others_cheat", others);
            // Even handed eta itself, an observer lacks k' and so guesses mu at chance.
            Bits eta = xor_bits(t.outputs.xor_result.at(1), t.blinding_used);
            for (std::size_t i = 0; i < mu.size(); i++) {
                tally.add("xor_otp_guess", eta[i] == mu[i]);
            }
        } else {
            tally.add("correct", false);
        }
    } else {
        tally.add("correct", detail::recovered_all(t));
    }

    const bool mdi = e.protocol == ProtocolId::mdi_qd_original || e.protocol == ProtocolId::mdi_qd_modified;
    if (mdi) {
        const Bits &a = t.inputs.at(0);
        const Bits &b = t.inputs.at(1);
        const Bits &key = t.key_stages.front().key;
        if (e.protocol == ProtocolId::mdi_qd_original) {
            for (const auto &r : t.joint_rounds) {
                tally.add("sifted", sift_two_party(r.announced));
                tally.add("bit_error", decode_two_party(a[r.position], key[r.position], r.announced) != b[r.position]);
            }
        }
        if (!t.adversary.intercepts.empty()) {
            auto ga = t.adversary.intercepted_bits("P1->M", a.size());
            auto gb = t.adversary.intercepted_bits("P2->M", b.size());
            for (std::size_t i = 0; i < a.size(); i++) {
                if (ga[i] && gb[i]) {
                    tally.add("pair_recovery", *ga[i] == a[i] && *gb[i] == b[i]);
                }
            }
        }
    }
}

/// Runs every trial and aggregates. `threads == 0` picks the hardware count.
/// Trial i always uses Rng::for_trial(seed, i), so results are identical for
/// any thread count.
inline std::vector<Estimate> run_experiment(const Experiment &e, unsigned threads = 0) {
    e.validate();
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, e.trials));
    std::vector<Tally> partial(threads);
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](unsigned w) {
        try {
            for (std::size_t i = w; i < e.trials; i += threads) {
                auto t = run_trial(e.protocol, e.parties, e.length, e.attack, e.params, e.seed, i);
                tally_transcript(e, t, partial[w]);
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; w++) {
            pool.emplace_back(work, w);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    for (auto &err : errors) {
        if (err) {
            std::rethrow_exception(err);
        }
    }
    Tally total;
    for (const auto &p : partial) {
        total.merge(p);
    }
    std::vector<Estimate> out;
    for (const auto &[name, c] : total.counts()) {
        if (c.second > 0) {
            out.push_back(Estimate::bernoulli(name, c.first, c.second));
        }
    }
    return out;
}

inline const Estimate &find_estimate(const std::vector<Estimate> &estimates, const std::string &name) {
    for (const auto &e : estimates) {
        if (e.name == name) {
            return e;
        }
    }
    throw ContractError("find_estimate: no statistic named " + name);
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

struct SuiteCheck {
    std::string row;        // report row name
    std::string statistic;  // Tally name
    std::string formula;    // analytic_catalog key
};

struct SuiteEntry {
    Experiment experiment;
    FormulaParams formula_params;
    std::vector<SuiteCheck> checks;
};

namespace detail {

inline std::size_t ceil_div(std::size_t a, std::size_t b) {
    return (a + b - 1) / b;
}

inline AttackConfig attack_of(AttackKind k, std::array<double, 4> w = {1, 0, 0, 0},
                              std::vector<std::string> targets = {}) {
    AttackConfig a;
    a.kind = k;
    a.dos_weights = w;
    a.target_links = std::move(targets);
    return a;
}

}  // namespace detail

/// The Monte Carlo agreement suite. `samples` is the target number of
/// Bernoulli samples for per-check statistics; whole-run detection rates use
/// samples/10 runs and exact-outcome checks samples/100 runs.
inline std::vector<SuiteEntry> attack_suite(std::size_t samples, std::uint64_t seed) {
    using detail::attack_of;
    using detail::ceil_div;
    if (samples < 100) {
        throw ContractError("attack_suite: need at least 100 samples");
    }
    const std::size_t runs = samples / 10;
    const std::size_t exact_runs = samples / 100;
    std::vector<SuiteEntry> suite;
    std::uint64_t tag = 0;
    auto add = [&](std::string name, ProtocolId proto, AttackConfig attack, std::size_t length, std::size_t parties,
                   std::size_t trials, std::string detect, std::vector<SuiteCheck> checks) {
        Experiment e;
        e.name = std::move(name);
        e.protocol = proto;
        e.attack = std::move(attack);
        e.length = length;
        e.parties = parties;
        e.trials = std::max<std::size_t>(1, trials);
        e.seed = seed + 0x1000 * ++tag;
        e.detect_stage = std::move(detect);
        FormulaParams fp;
        fp.delta = e.params.delta;
        fp.gamma = e.params.gamma;
        fp.length = length;
        fp.parties = parties;
        fp.decoys = e.params.decoys;
        fp.weights = e.attack.dos_weights;
        suite.push_back({std::move(e), fp, std::move(checks)});
    };

    // Honest correctness.
    add("honest_mdi_modified", ProtocolId::mdi_qd_modified, {}, 200, 2, exact_runs, "",
        {{"honest.mdi_modified.correct", "correct", "honest_correctness"}});
    add("honest_conference3", ProtocolId::conference3, {}, 64, 3, exact_runs, "",
        {{"honest.conference3.correct", "correct", "honest_correctness"}});
    add("honest_conference4", ProtocolId::conferenceN, {}, 64, 4, exact_runs, "",
        {{"honest.conference4.correct", "correct", "honest_correctness"}});
    add("honest_conference5", ProtocolId::conferenceN, {}, 64, 5, exact_runs, "",
        {{"honest.conference5.correct", "correct", "honest_correctness"}});
    add("honest_xor3", ProtocolId::xor_compute, {}, 32, 3, runs, "",
        {{"honest.xor3.correct", "correct", "honest_correctness"},
         {"xor3.otp_guess", "xor_otp_guess", "xor_otp_guess"}});
    add("honest_xor4", ProtocolId::xor_compute, {}, 32, 4, exact_runs, "",
        {{"honest.xor4.correct", "correct", "honest_correctness"}});

    // Two-party dialogue under intercept-and-resend.
    add("mdi_original_intercept", ProtocolId::mdi_qd_original, attack_of(AttackKind::intercept_resend), 1000, 2,
        ceil_div(samples, 1000), "",
        {{"mdi_original.intercept.pair_recovery", "pair_recovery", "mdi_original_pair_recovery"},
         {"mdi_original.intercept.bit_detection", "bit_error", "mdi_original_bit_detection"},
         {"mdi_original.intercept.sifted_fraction", "sifted", "mdi_original_sift_fraction"}});
    add("mdi_modified_intercept", ProtocolId::mdi_qd_modified, attack_of(AttackKind::intercept_resend), 1000, 2,
        ceil_div(samples, 100), "first",
        {{"mdi_modified.intercept.pair_pass", "first_position_pass", "mdi_modified_pair_pass"},
         {"mdi_modified.intercept.pair_recovery", "pair_recovery", "mdi_modified_pair_recovery"}});

    // Per-qubit first-estimation pass rates in the three-party conference (3 * 100 checks per run).
    const std::size_t qubit_runs = ceil_div(samples, 300);
    add("conf3_intercept", ProtocolId::conference3, attack_of(AttackKind::intercept_resend), 1000, 3, qubit_runs,
        "first",
        {{"conference3.intercept.qubit_pass", "first_qubit_pass", "intercept_qubit_pass"},
         {"conference3.intercept.position_pass", "first_position_pass", "intercept_position_pass"}});
    add("conf3_entangle", ProtocolId::conference3, attack_of(AttackKind::entangle_measure), 1000, 3, qubit_runs,
        "first",
        {{"conference3.entangle.qubit_pass", "first_qubit_pass", "entangle_qubit_pass"},
         {"conference3.entangle.position_pass", "first_position_pass", "entangle_position_pass"},
         {"conference3.entangle.position_pass_shared_basis", "first_position_pass",
          "entangle_position_pass_shared_basis"}});
    add("conf3_mitm", ProtocolId::conference3, attack_of(AttackKind::mitm), 1000, 3, qubit_runs, "first",
        {{"conference3.mitm.qubit_pass", "first_qubit_pass", "mitm_qubit_pass"}});
    const double r = std::sqrt(0.5);
    for (auto [label, w] : std::vector<std::pair<std::string, std::array<double, 4>>>{
             {"identity", {1, 0, 0, 0}}, {"x", {0, 1, 0, 0}}, {"iy", {0, 0, 1, 0}}, {"i_z_mix", {r, 0, 0, r}}}) {
        add("conf3_dos_" + label, ProtocolId::conference3, attack_of(AttackKind::dos, w), 1000, 3, qubit_runs,
            "first", {{"conference3.dos_" + label + ".qubit_pass", "first_qubit_pass", "dos_qubit_pass"}});
    }

    // Dishonest middle: second-estimation checks (90 per run at m = 1000).
    add("conf3_dishonest_middle", ProtocolId::conference3, attack_of(AttackKind::dishonest_middle), 1000, 3,
        ceil_div(samples, 90), "second",
        {{"conference3.dishonest_middle.check_pass", "second_pass", "dishonest_middle_pass"},
         {"conference3.dishonest_middle.check_pass_enumerated", "second_pass", "dishonest_middle_pass_enumerated"}});

    // Whole-run detection at delta = gamma = 0.1, m = n = 100, d = 16.
    add("detect_mdi_modified", ProtocolId::mdi_qd_modified, attack_of(AttackKind::intercept_resend), 100, 2, runs,
        "first", {{"detect.mdi_modified.intercept", "detected", "mdi_modified_detection"}});
    add("detect_conf3_intercept", ProtocolId::conference3, attack_of(AttackKind::intercept_resend), 100, 3, runs,
        "first", {{"detect.conference3.intercept", "detected", "intercept_detection"}});
    add("detect_conf3_entangle", ProtocolId::conference3, attack_of(AttackKind::entangle_measure), 100, 3, runs,
        "first",
        {{"detect.conference3.entangle", "detected", "entangle_detection"},
         {"detect.conference3.entangle_shared_basis", "detected", "entangle_detection_shared_basis"}});
    add("detect_conf3_mitm", ProtocolId::conference3, attack_of(AttackKind::mitm), 100, 3, runs, "first",
        {{"detect.conference3.mitm", "detected", "mitm_detection"}});
    add("detect_conf3_decoy", ProtocolId::conference3,
        attack_of(AttackKind::intercept_resend, {1, 0, 0, 0}, {"P1->P2#r1"}), 100, 3, runs, "decoy:P1->P2#r1",
        {{"detect.conference3.relay_decoys", "detected", "decoy_detection"},
         {"conference3.relay_intercept.decoy_pass", "decoy_pass[P1->P2#r1]", "intercept_qubit_pass"}});
    add("detect_conf3_dishonest_middle", ProtocolId::conference3, attack_of(AttackKind::dishonest_middle), 100, 3,
        runs, "second",
        {{"detect.conference3.dishonest_middle", "detected", "dishonest_middle_detection"},
         {"detect.conference3.dishonest_middle_enumerated", "detected", "dishonest_middle_detection_enumerated"}});

    // Dishonest P1 in the XOR protocol.
    add("xor_dishonest_p1", ProtocolId::xor_compute, attack_of(AttackKind::dishonest_p1), 32, 3, exact_runs, "",
        {{"xor3.dishonest_p1.p1_exact", "xor_p1_exact", "xor_p1_exact"},
         {"xor3.dishonest_p1.others_cheat", "xor_others_cheat", "xor_others_cheat"}});
    return suite;
}

/// Runs a suite and compares each statistic with its closed form.
inline std::vector<Comparison> run_suite(const std::vector<SuiteEntry> &suite, double z = 4.0,
                                         unsigned threads = 0) {
    std::vector<Comparison> out;
    for (const auto &entry : suite) {
        auto estimates = run_experiment(entry.experiment, threads);
        for (const auto &check : entry.checks) {
            Estimate e = find_estimate(estimates, check.statistic);
            e.name = check.row;
            out.push_back(check_agreement(e, evaluate_formula(check.formula, entry.formula_params), z));
        }
    }
    return out;
}

}  // namespace qconf

#endif  // QCONF_STATS_HPP
