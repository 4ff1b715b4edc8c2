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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "qsplit/circuit.h"
#include "qsplit/protocol.h"
#include "qsplit/sweep.h"
#include "qsplit/verify.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitIo = 2;

std::string amplitude_text(qsplit::Amplitude a) {
    return "(" + qsplit::format_double(a.real()) + (std::signbit(a.imag()) ? " - " : " + ") +
           qsplit::format_double(std::abs(a.imag())) + "i)";
}

std::string angle_text(double a) {
    if (std::abs(a - std::numbers::pi / 2) < 1e-12) return "pi/2";
    if (std::abs(a - 3 * std::numbers::pi / 2) < 1e-12) return "3*pi/2";
    return qsplit::format_double(a);
}

struct RunArgs {
    std::string path;
    int shots = 0;
    std::uint64_t seed = 1;
};

int cmd_run(const RunArgs &args) {
    std::ifstream in(args.path);
    if (!in) {
        std::cerr << "error: cannot read " << args.path << "\n";
        return kExitIo;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    qsplit::Circuit circuit;
    try {
        circuit = qsplit::parse_circuit(buf.str());
    } catch (const qsplit::ParseError &e) {
        std::cerr << args.path << ":" << e.line() << ":" << e.column() << ": error: " << e.message() << "\n";
        return kExitFailure;
    } catch (const std::exception &e) {
        std::cerr << args.path << ": error: " << e.what() << "\n";
        return kExitFailure;
    }

    qsplit::ExecutionResult result{qsplit::SparseState(circuit.registry()), {}};
    try {
        result = qsplit::execute(circuit);
    } catch (const std::exception &e) {
        std::cerr << args.path << ": error: " << e.what() << "\n";
        return kExitFailure;
    }

    std::cout << "modes:";
    for (const auto &l : result.state.registry().labels()) std::cout << " " << l;
    std::cout << "\nstate:\n";
    for (const auto &[occ, amp] : result.state.terms()) {
        std::cout << "  " << occ.str() << " " << amplitude_text(amp) << "\n";
    }
    for (const auto &rec : result.detections) {
        std::cout << "detect " << rec.mode << " eps=" << qsplit::format_double(rec.epsilon) << ":\n";
        for (const auto &[count, p] : rec.distribution) {
            std::cout << "  count " << count << ": p=" << qsplit::format_double(p) << "\n";
        }
    }

    if (args.shots > 0 && !result.detections.empty() && !result.state.empty()) {
        std::vector<qsplit::ModeId> modes;
        for (const auto &rec : result.detections) modes.push_back(result.state.mode(rec.mode));
        auto dist = qsplit::outcome_distribution(result.state, modes);
        std::vector<std::vector<int>> outcomes;
        std::vector<double> weights;
        for (const auto &[o, p] : dist) {
            outcomes.push_back(o);
            weights.push_back(p);
        }
        std::mt19937_64 rng(args.seed);
        std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
        std::map<std::vector<int>, int> tally;
        for (int i = 0; i < args.shots; ++i) tally[outcomes[pick(rng)]] += 1;
        std::cout << "samples (" << args.shots << " shots, seed " << args.seed << "):\n";
        for (const auto &[o, n] : tally) {
            std::cout << " ";
            for (std::size_t i = 0; i < o.size(); ++i) std::cout << " " << result.detections[i].mode << "=" << o[i];
            std::cout << ": " << n << "\n";
        }
    }
    return kExitOk;
}

struct SplitArgs {
    double c0 = 1.0 / std::numbers::sqrt2;
    double kappa = 1.0;
    double eps = 1.0;
};

int cmd_split(const SplitArgs &args) {
    const double c1 = std::sqrt(std::max(0.0, 1.0 - args.c0 * args.c0));
    const auto report = qsplit::run_splitting(args.c0, c1, args.kappa, args.eps);
    using qsplit::format_double;
    std::cout << "c0=" << format_double(args.c0) << " c1=" << format_double(c1)
              << " kappa=" << format_double(args.kappa) << " eps=" << format_double(args.eps) << "\n";
    for (const auto &br : report.branches) {
        std::cout << "outcome " << qsplit::outcome_label(br.outcome) << ": p=" << format_double(br.probability)
                  << " correction=" << angle_text(br.correction_angle);
        std::cout << " fidelity_sim=" << (br.fidelity ? format_double(*br.fidelity) : "n/a");
        if (br.fidelity_analytic) {
            std::cout << " fidelity_analytic=" << format_double(*br.fidelity_analytic);
            if (br.fidelity) {
                std::cout << " abs_err=" << format_double(std::abs(*br.fidelity - *br.fidelity_analytic));
            }
        }
        std::cout << "\n";
    }
    std::cout << "success probability: " << format_double(report.success_probability()) << "\n";
    std::cout << "aborted probability: " << format_double(report.aborted_probability);
    if (!report.aborted_outcomes.empty()) {
        std::cout << " (";
        for (std::size_t i = 0; i < report.aborted_outcomes.size(); ++i) {
            const auto &[o, p] = report.aborted_outcomes[i];
            std::cout << (i ? ", " : "") << qsplit::outcome_label(o) << ": " << format_double(p);
        }
        std::cout << ")";
    }
    std::cout << "\n";
    return kExitOk;
}

struct SweepArgs {
    std::string c0 = "0:1:0.1";
    std::string kappa = "0.98";
    std::string eps = "0.7:1:0.05";
    std::string out;
    unsigned jobs = 0;
};

int cmd_sweep(const SweepArgs &args) {
    qsplit::SweepSpec spec;
    std::string csv;
    try {
        spec.c0 = qsplit::Range::parse(args.c0);
        spec.kappa = qsplit::Range::parse(args.kappa);
        spec.eps = qsplit::Range::parse(args.eps);
        spec.out_path = args.out;
        spec.validate();
        unsigned jobs = args.jobs ? args.jobs : std::max(1u, std::thread::hardware_concurrency());
        csv = qsplit::sweep_csv(spec, jobs);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    std::ofstream out(spec.out_path, std::ios::binary);
    if (!out || !(out << csv) || !out.flush()) {
        std::cerr << "error: cannot write " << spec.out_path << "\n";
        return kExitIo;
    }
    std::cerr << "wrote " << spec.grid_size() << " grid points to " << spec.out_path << "\n";
    return kExitOk;
}

int cmd_verify(const qsplit::VerifyOptions &options) {
    const auto report = qsplit::run_verify(options);
    std::cout << report.str();
    return report.passed() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Linear-optics quantum information splitting simulator"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto *run = app.add_subcommand("run", "Execute a .qls circuit and print the final state");
    run->add_option("file", run_args.path, "Circuit file")->required();
    run->add_option("--shots", run_args.shots, "Sample detector outcomes this many times")->check(CLI::NonNegativeNumber);
    run->add_option("--seed", run_args.seed, "Sampler seed");

    SplitArgs split_args;
    auto *split = app.add_subcommand("split", "Run the splitting protocol for one parameter set");
    split->add_option("--c0", split_args.c0, "Real input coefficient C0; C1 = sqrt(1 - C0^2)")
        ->check(CLI::Range(0.0, 1.0));
    split->add_option("--kappa", split_args.kappa, "Beam-splitter transmission")->check(CLI::Range(0.0, 1.0));
    split->add_option("--eps", split_args.eps, "Detector efficiency")->check(CLI::Range(0.0, 1.0));

    SweepArgs sweep_args;
    auto *sweep = app.add_subcommand("sweep", "Evaluate a parameter grid and write CSV");
    sweep->add_option("--c0", sweep_args.c0, "start:stop:step")->capture_default_str();
    sweep->add_option("--kappa", sweep_args.kappa, "start:stop:step")->capture_default_str();
    sweep->add_option("--eps", sweep_args.eps, "start:stop:step")->capture_default_str();
    sweep->add_option("--out", sweep_args.out, "Output CSV path")->required();
    sweep->add_option("--jobs", sweep_args.jobs, "Worker threads (0 = hardware concurrency)");

    qsplit::VerifyOptions verify_options;
    auto *verify = app.add_subcommand("verify", "Run the engine and closed-form consistency checks");
    verify->add_option("--random-circuits", verify_options.random_circuits, "Random circuits to cross-check")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--inject-f01-offset", verify_options.f01_offset, "Perturb the closed-form F01 (testing)")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return kExitFailure;
    }

    try {
        if (run->parsed()) return cmd_run(run_args);
        if (split->parsed()) return cmd_split(split_args);
        if (sweep->parsed()) return cmd_sweep(sweep_args);
        if (verify->parsed()) return cmd_verify(verify_options);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
