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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. Supporting numbers are printed as
// indented lines above each verdict.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "qconf/qconf.hpp"

using namespace qconf;

namespace {

// Pinned tolerances.
constexpr double kZ = 4.0;               // agreement band in standard errors
constexpr double kCellTolerance = 1e-12; // exact table cells and blanks
constexpr double kTableSeconds = 1.0;    // runtime budget for the table check
constexpr std::uint64_t kSeed = 20240101;

struct Line {
    bool pass = true;
    std::vector<std::string> notes;

    void note(const std::string &s) {
        notes.push_back(s);
    }
    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            note("violated: " + what);
        }
    }
};

std::string fmt(const char *f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

/// Compares one statistic of an experiment with a closed form and records it.
bool agree(Line &line, const std::string &label, const Estimate &e, double analytic) {
    Comparison c = check_agreement(e, analytic, kZ);
    line.note(label + fmt(": %.6f (se %.6f, n %.0f) vs %.6f", c.estimate, c.se, static_cast<double>(c.trials),
                          c.analytic) +
              fmt(", z %.2f", c.zscore) + (c.pass ? "" : "  <-- outside band"));
    if (!c.pass) {
        line.pass = false;
    }
    return c.pass;
}

/// Stable per-experiment seed offset (FNV-1a), independent of the standard library.
std::uint64_t name_tag(const std::string &name) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : name) {
        h = (h ^ ch) * 1099511628211ULL;
    }
    return h % 1000003;
}

Experiment experiment(const std::string &name, ProtocolId p, AttackKind kind, std::size_t length,
                      std::size_t parties, std::size_t trials, const std::string &detect = "",
                      std::array<double, 4> weights = {1, 0, 0, 0}, std::vector<std::string> targets = {}) {
    Experiment e;
    e.name = name;
    e.protocol = p;
    e.attack.kind = kind;
    e.attack.dos_weights = weights;
    e.attack.target_links = std::move(targets);
    e.length = length;
    e.parties = parties;
    e.trials = trials;
    e.seed = kSeed + name_tag(name);
    e.detect_stage = detect;
    return e;
}

FormulaParams params_for(const Experiment &e) {
    FormulaParams fp;
    fp.delta = e.params.delta;
    fp.gamma = e.params.gamma;
    fp.length = e.length;
    fp.parties = e.parties;
    fp.decoys = e.params.decoys;
    fp.weights = e.attack.dos_weights;
    return fp;
}

Estimate stat(const Experiment &e, const std::string &name) {
    return find_estimate(run_experiment(e), name);
}

// ---------------------------------------------------------------------------

Line criterion1() {
    Line line;
    auto t0 = std::chrono::steady_clock::now();
    auto rows = verify_tables();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::size_t bad = 0;
    double worst = 0;
    for (const auto &r : rows) {
        double d = std::abs(r.estimate - r.analytic);
        worst = std::max(worst, d);
        if (d > kCellTolerance) {
            bad++;
            line.note("cell " + r.name + fmt(" computed %.15g, published %.15g", r.estimate, r.analytic));
        }
    }
    line.note(fmt("%.0f cells, %.0f mismatches, worst |diff| %.3g, %.4f s", static_cast<double>(rows.size()),
                  static_cast<double>(bad), worst, secs));
    line.require(bad == 0, "every cell within 1e-12");
    line.require(secs < kTableSeconds, "runtime under 1 s");
    return line;
}

Line criterion2() {
    Line line;
    struct Case {
        std::string name;
        ProtocolId p;
        std::size_t parties, length;
    };
    for (const auto &c : std::vector<Case>{{"mdi_qd_modified", ProtocolId::mdi_qd_modified, 2, 200},
                                           {"conference3", ProtocolId::conference3, 3, 64},
                                           {"conferenceN(4)", ProtocolId::conferenceN, 4, 64},
                                           {"conferenceN(5)", ProtocolId::conferenceN, 5, 64},
                                           {"xor(3)", ProtocolId::xor_compute, 3, 32},
                                           {"xor(4)", ProtocolId::xor_compute, 4, 32}}) {
        auto e = experiment("honest_" + c.name, c.p, AttackKind::none, c.length, c.parties, 1000);
        auto est = run_experiment(e);
        const auto &aborted = find_estimate(est, "aborted");
        const auto &correct = find_estimate(est, "correct");
        line.note(c.name + fmt(": %.0f runs, %.0f aborts, %.0f exact", static_cast<double>(correct.trials),
                               static_cast<double>(aborted.successes), static_cast<double>(correct.successes)));
        line.require(aborted.successes == 0 && correct.successes == correct.trials && correct.trials == 1000,
                     c.name + " exact in all 1000 runs");
    }
    return line;
}

Line criterion3() {
    Line line;
    // 1000 runs x 100 sampled positions.
    auto e = experiment("c3_pair_pass", ProtocolId::mdi_qd_modified, AttackKind::intercept_resend, 1000, 2, 1000,
                        "first");
    auto est = stat(e, "first_position_pass");
    line.require(est.trials >= 100000, "at least 1e5 positions");
    agree(line, "per-pair pass", est, 9.0 / 16.0);
    return line;
}

Line criterion4() {
    Line line;
    auto e = experiment("c4_original", ProtocolId::mdi_qd_original, AttackKind::intercept_resend, 1000, 2, 100);
    auto est = run_experiment(e);
    auto recovery = find_estimate(est, "pair_recovery");
    auto detection = find_estimate(est, "bit_error");
    line.require(recovery.trials >= 100000 && detection.trials >= 100000, "at least 1e5 positions");
    agree(line, "exact pair recovery", recovery, 5.0 / 8.0);
    agree(line, "per-bit detection", detection, 1.0 / 4.0);
    return line;
}

Line criterion5() {
    Line line;
    // 90 checks per run at m = 1000.
    auto e = experiment("c5_dishonest", ProtocolId::conference3, AttackKind::dishonest_middle, 1000, 3, 1112,
                        "second");
    auto est = stat(e, "second_pass");
    line.require(est.trials >= 100000, "at least 1e5 checks");
    bool published = agree(line, "check pass vs 7/8", est, 7.0 / 8.0);
    Line info;
    bool exact = agree(info, "check pass vs enumerated 11/16", est, dishonest_middle_pass_probability(3));
    for (auto &n : info.notes) {
        line.note("(informational) " + n);
    }
    if (!published && exact) {
        line.note("the simulated strategy matches the enumerated value 11/16: with the key basis and the");
        line.note("middle party's basis each uniform, a Z-key round measured in X passes with 1/4 and an");
        line.note("X-key round measured in Z passes with 1/2, so (1 + 1/4 + 1/2 + 1)/4 = 11/16, not 7/8");
    }
    return line;
}

Line criterion6() {
    Line line;
    struct Case {
        std::string label;
        AttackKind kind;
        std::array<double, 4> w;
        double expected;
    };
    // 300 checks per run at m = 1000.
    for (const auto &c : std::vector<Case>{{"intercept-resend", AttackKind::intercept_resend, {1, 0, 0, 0}, 0.75},
                                           {"entangle-measure", AttackKind::entangle_measure, {1, 0, 0, 0}, 0.75},
                                           {"mitm", AttackKind::mitm, {1, 0, 0, 0}, 0.5},
                                           {"dos w=(0,1,0,0)", AttackKind::dos, {0, 1, 0, 0}, 0.5},
                                           {"dos w=(0,0,1,0)", AttackKind::dos, {0, 0, 1, 0}, 0.0}}) {
        auto e = experiment("c6_" + c.label, ProtocolId::conference3, c.kind, 1000, 3, 334, "first", c.w);
        auto est = stat(e, "first_qubit_pass");
        line.require(est.trials >= 100000, c.label + " at least 1e5 checks");
        if (c.kind == AttackKind::dos) {
            line.require(std::abs(dos_pass_probability(c.w) - c.expected) < kCellTolerance,
                         c.label + " closed form sum h_j w_j^2");
        }
        agree(line, c.label, est, c.expected);
    }
    return line;
}

Line criterion7() {
    Line line;
    const std::size_t runs = 10000;
    struct Case {
        std::string label;
        Experiment e;
        std::string formula;
        std::string alternate;  // informational closed form, if any
    };
    std::vector<Case> cases{
        {"1-(9/16)^(delta n), intercept on modified dialogue",
         experiment("c7_mdi", ProtocolId::mdi_qd_modified, AttackKind::intercept_resend, 100, 2, runs, "first"),
         "mdi_modified_detection", ""},
        {"1-(3/4)^(3 delta m), intercept-resend on uplinks",
         experiment("c7_ir", ProtocolId::conference3, AttackKind::intercept_resend, 100, 3, runs, "first"),
         "intercept_detection", ""},
        {"1-(1/2)^(3 delta m), mitm on uplinks",
         experiment("c7_mitm", ProtocolId::conference3, AttackKind::mitm, 100, 3, runs, "first"), "mitm_detection",
         ""},
        {"1-(3/4)^d, intercept on one relay hop",
         experiment("c7_decoy", ProtocolId::conference3, AttackKind::intercept_resend, 100, 3, runs,
                    "decoy:P1->P2#r1", {1, 0, 0, 0}, {"P1->P2#r1"}),
         "decoy_detection", ""},
        {"1-(7/8)^(gamma m'), dishonest middle",
         experiment("c7_dm", ProtocolId::conference3, AttackKind::dishonest_middle, 100, 3, runs, "second"),
         "dishonest_middle_detection", "dishonest_middle_detection_enumerated"},
    };
    for (const auto &c : cases) {
        auto est = stat(c.e, "detected");
        line.require(est.trials == runs, c.label + " at 1e4 runs");
        agree(line, c.label, est, evaluate_formula(c.formula, params_for(c.e)));
        if (!c.alternate.empty()) {
            Line info;
            agree(info, "enumerated per-check pass 11/16", est, evaluate_formula(c.alternate, params_for(c.e)));
            for (auto &n : info.notes) {
                line.note("(informational) " + n);
            }
        }
    }
    return line;
}

Line criterion8() {
    Line line;
    AttackConfig cheat;
    cheat.kind = AttackKind::dishonest_p1;
    std::size_t p1_ok = 0, others_ok = 0, completed = 0;
    for (std::uint64_t i = 0; i < 1000; i++) {
        Transcript t = run_trial(ProtocolId::xor_compute, 3, 32, cheat, ProtocolParams{}, kSeed, i);
        if (t.abort.aborted) {
            continue;
        }
        completed++;
        Bits mu(32, 0);
        for (const auto &in : t.inputs) {
            mu = xor_bits(mu, in);
        }
        Bits expected_others = xor_bits(xor_bits(mu, t.blinding), t.blinding_used);
        p1_ok += t.outputs.xor_result.at(1) == mu ? 1 : 0;
        bool all = t.blinding != t.blinding_used;
        for (const auto &[p, bits] : t.outputs.xor_result) {
            if (p != 1) {
                all = all && bits == expected_others;
            }
        }
        others_ok += all ? 1 : 0;
    }
    line.note(fmt("%.0f runs completed; P1 exact in %.0f; others equal XOR ^ k' ^ R in %.0f",
                  static_cast<double>(completed), static_cast<double>(p1_ok), static_cast<double>(others_ok)));
    line.require(completed == 1000 && p1_ok == 1000 && others_ok == 1000, "all 1000 runs exact");
    return line;
}

PureState product(const std::vector<QubitSpec> &specs) {
    std::vector<PureState> parts;
    for (const auto &s : specs) {
        parts.push_back(materialize(s));
    }
    return tensor(parts);
}

Line criterion9() {
    Line line;
    // Orthonormality and completeness of the joint basis.
    bool ortho = true;
    for (std::size_t n = 2; n <= 5; n++) {
        auto vs = JointBasis(n).vectors();
        for (std::size_t i = 0; i < vs.size(); i++) {
            for (std::size_t j = 0; j < vs.size(); j++) {
                ortho = ortho && std::abs(std::abs(inner_product(vs[i], vs[j])) - (i == j ? 1.0 : 0.0)) < 1e-12;
            }
        }
        // Completeness: sum_k |<v_k|e_x>|^2 = 1 for every computational state.
        for (std::size_t x = 0; x < vs.size(); x++) {
            double s = 0;
            PureState ex = PureState::computational(n, x);
            for (const auto &v : vs) {
                s += std::norm(inner_product(v, ex));
            }
            ortho = ortho && std::abs(s - 1.0) < 1e-12;
        }
    }
    line.note(std::string("joint basis orthonormal and complete for N <= 5: ") + (ortho ? "yes" : "no"));
    line.require(ortho, "basis orthonormality/completeness");

    // Z-product and X-parity laws together with codec round-trips.
    bool laws = true;
    std::size_t cases = 0;
    for (std::size_t n = 2; n <= 5; n++) {
        JointBasis jb(n);
        for (std::uint32_t x = 0; x < (1u << n); x++) {
            Bits bits = index_to_bits(x, n);
            std::vector<QubitSpec> zs, xs;
            for (auto b : bits) {
                zs.push_back({Basis::Z, b});
                xs.push_back({Basis::X, b});
            }
            auto pz = outcome_distribution(product(zs), jb);
            auto px = outcome_distribution(product(xs), jb);
            std::uint32_t j = std::min(x, (1u << n) - 1 - x);
            std::uint8_t parity = static_cast<std::uint8_t>(weight(bits) % 2);
            for (std::uint32_t code = 0; code < jb.size(); code++) {
                Outcome o = Outcome::from_code(code);
                double want_z = o.index == j ? 0.5 : 0.0;
                double want_x = static_cast<std::uint8_t>(o.sign) == parity ? 2.0 / static_cast<double>(jb.size()) : 0.0;
                laws = laws && std::abs(pz[code] - want_z) < 1e-12 && std::abs(px[code] - want_x) < 1e-12;
                if (pz[code] > 1e-12) {
                    for (std::size_t own = 0; own < n; own++) {
                        laws = laws && decode_conference_z(bits[own], own, o, n) == bits;
                    }
                }
                if (px[code] > 1e-12) {
                    laws = laws && decode_conference_x(o) == parity;
                }
                cases++;
            }
        }
    }
    for (std::uint8_t a = 0; a < 2; a++) {
        for (std::uint8_t b = 0; b < 2; b++) {
            for (std::uint8_t k = 0; k < 2; k++) {
                auto p = outcome_distribution(product({encode_subroutine1(a, k), encode_subroutine1(b, k)}),
                                              JointBasis(2));
                for (std::uint32_t code = 0; code < 4; code++) {
                    if (p[code] > 1e-12) {
                        Outcome o = Outcome::from_code(code);
                        laws = laws && decode_two_party(a, k, o) == b && decode_two_party(b, k, o) == a;
                        cases++;
                    }
                }
            }
        }
    }
    line.note(fmt("Z-product / X-parity laws and codec round-trips: %.0f exhaustive cases, ",
                  static_cast<double>(cases)) +
              (laws ? "all hold" : "VIOLATED"));
    line.require(laws, "product laws and round-trips");

    // Randomized permutation and decoy round-trips.
    Rng rng(kSeed);
    bool trips = true;
    for (int i = 0; i < 1000; i++) {
        std::size_t len = 1 + rng.below(100);
        std::vector<std::size_t> seq(len);
        for (std::size_t k = 0; k < len; k++) {
            seq[k] = k;
        }
        auto p = Permutation::random(len, rng);
        trips = trips && unpermute(permute(seq, p), p) == seq;
        std::size_t d = rng.below(20);
        auto set = DecoySet::random(d, len, rng);
        auto mixed = insert_decoys(seq, set, std::vector<std::size_t>(d, SIZE_MAX));
        trips = trips && extract_decoys(mixed, set).payload == seq;
    }
    line.note(std::string("1000 permutation and 1000 decoy round-trips: ") + (trips ? "exact" : "BROKEN"));
    line.require(trips, "round-trips");

    // Determinism: identical transcripts and estimates across serial and parallel execution.
    bool same = true;
    for (auto id : {ProtocolId::conference3, ProtocolId::xor_compute, ProtocolId::mdi_qd_modified}) {
        std::size_t parties = id == ProtocolId::mdi_qd_modified ? 2 : 3;
        AttackConfig a;
        a.kind = AttackKind::entangle_measure;
        std::vector<std::string> serial(8), parallel(8);
        for (std::size_t i = 0; i < 8; i++) {
            serial[i] = run_trial(id, parties, 64, a, ProtocolParams{}, 99, i).to_json().dump();
        }
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < 8; i++) {
            pool.emplace_back([&, i] {
                parallel[i] = run_trial(id, parties, 64, a, ProtocolParams{}, 99, i).to_json().dump();
            });
        }
        for (auto &t : pool) {
            t.join();
        }
        same = same && serial == parallel;
    }
    auto e = experiment("c9_det", ProtocolId::conference3, AttackKind::intercept_resend, 100, 3, 200, "first");
    auto s1 = run_experiment(e, 1);
    auto s4 = run_experiment(e, 4);
    for (std::size_t i = 0; i < s1.size(); i++) {
        same = same && s1[i].successes == s4[i].successes && s1[i].trials == s4[i].trials;
    }
    line.note(std::string("serial vs parallel transcripts and estimates: ") + (same ? "identical" : "DIFFER"));
    line.require(same, "determinism");
    return line;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Line()>>> criteria{
        {"table reproduction (exact)", criterion1},
        {"honest correctness", criterion2},
        {"modified dialogue pair pass 9/16", criterion3},
        {"original dialogue recovery 5/8 and detection 1/4", criterion4},
        {"dishonest middle check pass 7/8", criterion5},
        {"per-qubit pass rates", criterion6},
        {"whole-run detection closed forms", criterion7},
        {"xor dishonest P1 semantics", criterion8},
        {"property suites and determinism", criterion9},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); i++) {
        auto t0 = std::chrono::steady_clock::now();
        Line line;
        try {
            line = criteria[i].second();
        } catch (const std::exception &ex) {
            line.pass = false;
            line.note(std::string("exception: ") + ex.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (const auto &n : line.notes) {
            std::printf("    %s\n", n.c_str());
        }
        std::printf("%s %zu %s (%.1f s)\n", line.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs);
        std::fflush(stdout);
        failed += line.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
