// Copyright 2026 The qsplit Authors
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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qsplit/analytic.h"
#include "qsplit/circuit.h"
#include "qsplit/fock.h"
#include "qsplit/optics.h"
#include "qsplit/oracle.h"
#include "qsplit/protocol.h"
#include "qsplit/sweep.h"
#include "qsplit/verify.h"

using namespace qsplit;

namespace {

constexpr double kPi = std::numbers::pi;
const Amplitude I{0, 1};

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 1
Outcome w_state_generation() {
    auto t0 = Clock::now();
    auto w = generate_w_state(1.0);
    SparseState sys(ModeRegistry({"b", "c", "d"}),
                    {{{1, 0, 0}, w.amplitude({1, 0, 0, 0, 0, 0, 0})},
                     {{0, 1, 0}, w.amplitude({0, 1, 0, 0, 0, 0, 0})},
                     {{0, 0, 1}, w.amplitude({0, 0, 1, 0, 0, 0, 0})}});
    auto p = fit_w_class(sys);
    double elapsed = seconds_since(t0);

    double amp_err = std::max({std::abs(sys.amplitude({1, 0, 0}) - 1 / std::sqrt(2.0)),
                               std::abs(sys.amplitude({0, 1, 0}) - 0.5 * I),
                               std::abs(sys.amplitude({0, 0, 1}) + 0.5),
                               std::abs(w.norm_squared() - sys.norm_squared())});
    double fit_err = std::max(std::abs(p.zeta - 1), std::abs(p.gamma - 3 * kPi / 2));
    Outcome o;
    o.pass = amp_err <= 1e-12 && fit_err <= 1e-12 && elapsed < 1e-3;
    o.detail = "amplitude err " + fmt("%.3g", amp_err) + ", zeta/gamma err " + fmt("%.3g", fit_err) +
               " (tol 1e-12), delta " + fmt("%.6f", p.delta) + ", runtime " + fmt("%.3g", elapsed * 1e3) +
               " ms (< 1 ms)";
    return o;
}

// 2
Outcome bell_analysis() {
    const double h = 1 / std::sqrt(2.0);
    ModeRegistry ab({"a", "b"});
    auto prob_of = [](const std::vector<BellBranch> &bs, DetectorOutcome o) {
        for (const auto &b : bs) {
            if (b.outcome == o) return b.probability;
        }
        return 0.0;
    };
    auto psi_p = bell_analyze(SparseState(ab, {{{0, 1}, h}, {{1, 0}, I * h}}), 1, 1);
    auto psi_m = bell_analyze(SparseState(ab, {{{0, 1}, h}, {{1, 0}, -I * h}}), 1, 1);
    double err = std::max(std::abs(prob_of(psi_p, kHerald10) - 1), std::abs(prob_of(psi_m, kHerald01) - 1));
    bool phi_ok = true;
    for (Amplitude sign : {Amplitude(1), Amplitude(-1)}) {
        for (const auto &b : bell_analyze(SparseState(ab, {{{1, 1}, h}, {{0, 0}, sign * I * h}}), 1, 1)) {
            phi_ok &= b.outcome == DetectorOutcome{0, 0} || b.outcome == DetectorOutcome{2, 0} ||
                      b.outcome == DetectorOutcome{0, 2};
        }
    }
    return {err <= 1e-12 && phi_ok, "Psi(+)->(1,0), Psi(-)->(0,1) probability err " + fmt("%.3g", err) +
                                        " (tol 1e-12); Phi(+-) support within {00,20,02}: " +
                                        (phi_ok ? "yes" : "no")};
}

// 3
Outcome ideal_protocol() {
    double perr = 0, ferr = 0;
    for (int k = 0; k <= 10; ++k) {
        double c0 = k / 10.0;
        auto rep = run_splitting(c0, std::sqrt(1 - c0 * c0), 1, 1);
        perr = std::max(perr, std::abs(rep.success_probability() - 0.5));
        for (const auto &br : rep.branches) ferr = std::max(ferr, br.fidelity ? std::abs(*br.fidelity - 1) : 1.0);
    }
    return {perr <= 1e-12 && ferr <= 1e-12, "11 inputs: max |P_success - 0.5| " + fmt("%.3g", perr) +
                                                ", max |F - 1| " + fmt("%.3g", ferr) + " (tol 1e-12)"};
}

// 4
Outcome oracle_chain() {
    auto t0 = Clock::now();
    const double corr = phase_correction_angle(kHerald01);
    double d_at = 0, d_as = 0, d_ts = 0;
    int bad = 0;
    std::string first;
    for (int k = 0; k <= 10; ++k) {
        const double c0 = k / 10.0;
        const double c1 = std::sqrt(1 - c0 * c0);
        for (double kappa : {0.98, 0.99, 1.0}) {
            for (double eps : {0.7, 0.85, 1.0}) {
                LossParams lp(kappa, eps);
                double fa = analytic_F01(c0, lp);
                double ft = eta_fidelity(kHerald01, c0, lp, corr);
                double fs = *run_splitting(c0, c1, kappa, eps).branch(kHerald01).fidelity;
                d_at = std::max(d_at, std::abs(fa - ft));
                d_as = std::max(d_as, std::abs(fa - fs));
                d_ts = std::max(d_ts, std::abs(ft - fs));
                if (std::max({std::abs(fa - ft), std::abs(fa - fs), std::abs(ft - fs)}) > 1e-9) {
                    if (bad++ == 0) {
                        first = "c0=" + fmt("%g", c0) + " kappa=" + fmt("%g", kappa) + " eps=" + fmt("%g", eps) +
                                " (analytic " + fmt("%.6f", fa) + ", transcribed " + fmt("%.6f", ft) +
                                ", simulated " + fmt("%.6f", fs) + ")";
                    }
                }
            }
        }
    }
    double elapsed = seconds_since(t0);
    Outcome o;
    o.pass = bad == 0 && elapsed < 10;
    o.detail = "99 points: max |analytic-transcribed| " + fmt("%.3g", d_at) + ", |analytic-simulated| " +
               fmt("%.3g", d_as) + ", |transcribed-simulated| " + fmt("%.3g", d_ts) + " (tol 1e-9); runtime " +
               fmt("%.3g", elapsed) + " s (< 10 s)";
    if (bad > 0) {
        o.detail += "; " + std::to_string(bad) + " point(s) disagree, first " + first;
        auto rep = compare_with_transcription(kHerald01, 0.0, LossParams(0.98, 0.7));
        if (rep.first_difference) {
            const auto &row = rep.rows[*rep.first_difference];
            o.detail += "; first differing term: " + row.term + ", simulated/transcribed " +
                        fmt("%.6f", std::abs(row.simulated) / std::abs(row.transcribed));
        }
        auto s = rep.str();
        o.detail += s.find("magnitude mismatch") != std::string::npos
                        ? "; classification: magnitude mismatch, not a sign/phase convention"
                        : "; classification: sign/phase convention";
    }
    return o;
}

// 5 and 6 share the scan.
struct RegionScan {
    double min_at_corner = 1;
    double max_region = 0;
    double min_region = 1;
    std::size_t points = 0;
};

RegionScan scan_region() {
    RegionScan s;
    LossParams corner(0.98, 0.7);
    for (int k = 0; k <= 1000; ++k) s.min_at_corner = std::min(s.min_at_corner, analytic_F01(k / 1000.0, corner));
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 30; ++j) {
            LossParams lp(0.98 + 0.001 * i, 0.7 + 0.01 * j);
            for (int k = 0; k <= 1000; ++k) {
                double f = analytic_F01(k / 1000.0, lp);
                s.max_region = std::max(s.max_region, f);
                s.min_region = std::min(s.min_region, f);
                ++s.points;
            }
        }
    }
    return s;
}

Outcome headline_range(const RegionScan &s) {
    bool pass = std::abs(s.min_at_corner - 0.72) <= 0.01 && s.max_region <= 1 + 1e-12;
    return {pass, "min F01 at kappa=0.98 eps=0.7 over c0 step 0.001: " + fmt("%.6f", s.min_at_corner) +
                      " (0.72 +- 0.01); max over " + std::to_string(s.points) + " region points " +
                      fmt("%.15f", s.max_region) + " (<= 1)"};
}

Outcome classical_limit(const RegionScan &s) {
    return {s.min_region > 2.0 / 3.0,
            "min F01 over " + std::to_string(s.points) + " region points " + fmt("%.6f", s.min_region) + " (> 2/3)"};
}

// 7
Outcome engine_equivalence() {
    auto t0 = Clock::now();
    double worst = 0;
    std::size_t widest = 0;
    int most_photons = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto c = random_circuit(seed);
        std::vector<int> zero(c.modes.size(), 0);
        worst = std::max(worst, cross_check(c, OccupationVector(zero)));
        widest = std::max(widest, build_transfer(c).registry.size());
        most_photons = std::max(most_photons, c.initial_occupation().total());
    }
    double elapsed = seconds_since(t0);
    return {worst <= 1e-12 && elapsed < 5 && widest <= 14 && most_photons <= 2,
            "100 circuits (<= " + std::to_string(widest) + " modes, <= " + std::to_string(most_photons) +
                " photons): max deviation " + fmt("%.3g", worst) + " (tol 1e-12); runtime " + fmt("%.3g", elapsed) +
                " s (< 5 s)"};
}

// 8
Outcome isometry_conservation() {
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> u(0, 1);
    std::normal_distribution<double> g;
    double norm_err = 0;
    int photon_violations = 0;
    int applications = 0;
    auto photon_number = [](const SparseState &s) {
        int n = -1;
        for (const auto &[occ, amp] : s.terms()) {
            if (n < 0) n = occ.total();
            if (occ.total() != n) return -1;
        }
        return n;
    };
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t modes = 2 + trial % 4;
        int n = trial % 4;
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < modes; ++i) labels.push_back("m" + std::to_string(i));
        ModeRegistry reg(labels);
        SparseState::Terms terms;
        for (int k = 0; k < 5; ++k) {
            std::vector<int> occ(modes, 0);
            for (int p = 0; p < n; ++p) occ[rng() % modes] += 1;
            terms[OccupationVector(occ)] += Amplitude(g(rng), g(rng));
        }
        double nn = 0;
        for (auto &[o, a] : terms) nn += std::norm(a);
        for (auto &[o, a] : terms) a /= std::sqrt(nn);
        SparseState s(reg, terms);
        ModeId m1{rng() % modes};
        ModeId m2{(m1.index + 1 + rng() % (modes - 1)) % modes};
        std::vector<SparseState> outs{
            apply_ideal_bs(s, m1, m2, u(rng) * 2 * kPi),
            apply_phase_shifter(s, m1, u(rng) * 2 * kPi),
            apply_loss_channel(s, m1, u(rng)),
            apply_lossy_bs(s, m1, m2, BeamSplitterParams(u(rng) * 2 * kPi, u(rng))),
        };
        double detect_total = 0;
        for (const auto &d : detect_pnr(s, m1, DetectorParams(u(rng)))) {
            detect_total += d.probability;
            if (photon_number(d.collapsed) != n) ++photon_violations;
        }
        norm_err = std::max(norm_err, std::abs(detect_total - 1));
        for (const auto &o : outs) {
            norm_err = std::max(norm_err, std::abs(o.norm_squared() - 1));
            if (photon_number(o) != n) ++photon_violations;
        }
        applications += 5;
    }
    return {norm_err <= 1e-12 && photon_violations == 0,
            std::to_string(applications) + " element applications: max norm err " + fmt("%.3g", norm_err) +
                " (tol 1e-12), photon-number violations " + std::to_string(photon_violations)};
}

// 9
Outcome dsl() {
    std::vector<std::filesystem::path> files;
    for (const auto &e : std::filesystem::directory_iterator(QSPLIT_CIRCUITS_DIR)) {
        if (e.path().extension() == ".qls") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    int round_trips = 0;
    bool ok = !files.empty();
    std::string detail;
    for (const auto &f : files) {
        auto c = parse_circuit(slurp(f));
        auto printed = print_circuit(c);
        auto again = parse_circuit(printed);
        if (again == c && print_circuit(again) == printed) {
            ++round_trips;
        } else {
            ok = false;
            detail += " round trip broke on " + f.filename().string() + ";";
        }
    }

    // Fault injection on the bundled W preparation.
    std::string base = slurp(std::filesystem::path(QSPLIT_CIRCUITS_DIR) / "wstate.qls");
    int base_lines = 0;
    for (char ch : base) base_lines += ch == '\n';
    struct Case {
        std::string name;
        std::string text;
        int line;
        std::string message;
    };
    std::string bad_kappa = base;
    auto pos = bad_kappa.find("kappa=1");
    bad_kappa.replace(pos, 7, "kappa=1.5");
    int kappa_line = 1;
    for (std::size_t i = 0; i < pos; ++i) kappa_line += bad_kappa[i] == '\n';
    std::vector<Case> cases{
        {"unknown mode", base + "ps q theta=pi\n", base_lines + 1, "unknown mode q"},
        {"out-of-range parameter", bad_kappa, kappa_line, "kappa out of range"},
        {"element after detect", base + "detect d eps=0.9\nps d theta=pi/2\n", base_lines + 2,
         "element after detect on mode d"},
    };
    int diagnostics = 0;
    for (const auto &cs : cases) {
        try {
            parse_circuit(cs.text);
            ok = false;
            detail += " " + cs.name + " not rejected;";
        } catch (const ParseError &e) {
            if (e.line() == cs.line && e.message() == cs.message) {
                ++diagnostics;
            } else {
                ok = false;
                detail += " " + cs.name + " gave '" + e.what() + "' (expected line " + std::to_string(cs.line) + ");";
            }
        }
    }
    return {ok, std::to_string(round_trips) + "/" + std::to_string(files.size()) +
                    " corpus files round-trip; " + std::to_string(diagnostics) +
                    "/3 diagnostics on the right line" + detail};
}

// 10
Outcome determinism() {
    SweepSpec spec{Range::parse("0:1:0.1"), Range::parse("0.98"), Range::parse("0.7:1:0.05"), ""};
    auto a = sweep_csv(spec, 1);
    auto b = sweep_csv(spec, 1);
    auto p1 = sweep_csv(spec, 4);
    auto p2 = sweep_csv(spec, 4);
    bool same = a == b && a == p1 && p1 == p2;
    std::size_t rows = 0;
    for (char ch : a) rows += ch == '\n';
    return {same, std::to_string(rows - 1) + " rows; serial x2 and 4 workers x2 byte-identical: " +
                      (same ? "yes" : "no")};
}

}  // namespace

int main() {
    int failed = 0;
    auto report = [&](int id, const char *name, const std::function<Outcome()> &fn) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    };
    report(1, "W-state generation", w_state_generation);
    report(2, "Bell analysis", bell_analysis);
    report(3, "ideal protocol", ideal_protocol);
    report(4, "oracle chain", oracle_chain);
    RegionScan scan;
    bool scanned = false;
    auto get_scan = [&]() -> const RegionScan & {
        if (!scanned) {
            scan = scan_region();
            scanned = true;
        }
        return scan;
    };
    report(5, "headline F01 range", [&] { return headline_range(get_scan()); });
    report(6, "classical limit", [&] { return classical_limit(get_scan()); });
    report(7, "engine equivalence", engine_equivalence);
    report(8, "isometry and conservation", isometry_conservation);
    report(9, "DSL round trip and diagnostics", dsl);
    report(10, "sweep determinism", determinism);
    std::printf("%d of 10 criteria failed\n", failed);
    return failed;
}
