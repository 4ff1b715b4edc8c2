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

#include "qsplit/protocol.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qsplit/analytic.h"

namespace qsplit {

namespace {

constexpr double kQuarterTurn = std::numbers::pi / 2;

void check_unit(double v, const char *name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " out of range [0,1]");
    }
}

SparseState target_state(Amplitude c0, Amplitude c1) {
    return SparseState(ModeRegistry({"c", "d"}), {{OccupationVector{0, 0}, c0}, {OccupationVector{0, 1}, c1}});
}

struct Calibration {
    double herald01;
    double herald10;
};

// Runs the lossless apparatus on a balanced probe qubit and reads off the
// relative phase left on |1>_d; the correction must undo it.
Calibration calibrate() {
    const double h = 1.0 / std::sqrt(2.0);
    auto pipeline = run_heralded_pipeline(h, h, 1.0, 1.0);
    Calibration cal{};
    for (const auto &hs : pipeline.heralded) {
        if (!hs.state) {
            throw std::logic_error("calibration: heralded branch missing");
        }
        const auto &s = *hs.state;
        const auto c = s.mode("c");
        const auto d = s.mode("d");
        Amplitude zero{}, one{};
        for (const auto &[occ, amp] : s.terms()) {
            if (occ[c] != 0) continue;
            bool env_vacuum = true;
            for (std::size_t i = 0; i < occ.size(); ++i) {
                if (s.registry().is_environment(ModeId{i}) && occ[i] != 0) env_vacuum = false;
            }
            if (!env_vacuum) continue;
            (occ[d] == 0 ? zero : one) += amp;
        }
        double angle = -std::arg(one / zero);
        if (angle < 0) angle += 2 * std::numbers::pi;
        double snapped;
        if (std::abs(angle - kQuarterTurn) < 1e-9) {
            snapped = kQuarterTurn;
        } else if (std::abs(angle - 3 * kQuarterTurn) < 1e-9) {
            snapped = 3 * kQuarterTurn;
        } else {
            throw std::logic_error("calibration: residual phase is not +-i");
        }
        (hs.outcome == kHerald01 ? cal.herald01 : cal.herald10) = snapped;
    }
    return cal;
}

}  // namespace

bool is_heralding(DetectorOutcome o) { return o == kHerald01 || o == kHerald10; }

std::string outcome_label(DetectorOutcome o) { return std::to_string(o[0]) + std::to_string(o[1]); }

SparseState prepare_input(Amplitude c0, Amplitude c1) {
    if (std::abs(std::norm(c0) + std::norm(c1) - 1.0) > 1e-12) {
        throw std::invalid_argument("input coefficients are not normalized");
    }
    return SparseState(ModeRegistry({"a"}), {{OccupationVector{0}, c0}, {OccupationVector{1}, c1}});
}

SparseState generate_w_state(double kappa) {
    check_unit(kappa, "kappa");
    const BeamSplitterParams bs(std::numbers::pi / 4, kappa);
    auto s = make_basis_state(ModeRegistry({"b", "c", "d"}), {1, 0, 0});
    s = apply_lossy_bs(s, s.mode("b"), s.mode("c"), bs);
    return apply_lossy_bs(s, s.mode("c"), s.mode("d"), bs);
}

std::vector<BellBranch> bell_analyze(const SparseState &s, double eps, double kappa_bs3) {
    check_unit(eps, "eps");
    check_unit(kappa_bs3, "kappa");
    auto mixed = apply_lossy_bs(s, s.mode("a"), s.mode("b"), BeamSplitterParams(std::numbers::pi / 4, kappa_bs3));
    mixed = apply_loss_channel(mixed, mixed.mode("a"), eps);
    mixed = apply_loss_channel(mixed, mixed.mode("b"), eps);

    const std::array<ModeId, 2> ab{mixed.mode("a"), mixed.mode("b")};
    std::vector<BellBranch> out;
    for (const auto &[counts, p] : outcome_distribution(mixed, ab)) {
        if (p <= 0) continue;
        auto proj = project_modes(mixed, ab, counts);
        out.push_back({DetectorOutcome{counts[0], counts[1]}, proj.probability, std::move(proj.collapsed)});
    }
    return out;
}

double phase_correction_angle(DetectorOutcome outcome) {
    if (!is_heralding(outcome)) {
        throw std::invalid_argument("no phase correction for outcome " + outcome_label(outcome) +
                                    ": protocol aborted");
    }
    static const Calibration cal = calibrate();
    return outcome == kHerald01 ? cal.herald01 : cal.herald10;
}

HeraldedPipeline run_heralded_pipeline(Amplitude c0, Amplitude c1, double kappa, double eps) {
    check_unit(kappa, "kappa");
    check_unit(eps, "eps");
    auto joint = tensor(prepare_input(c0, c1), generate_w_state(kappa));

    HeraldedPipeline result;
    result.heralded = {HeraldedState{kHerald01, 0.0, std::nullopt}, HeraldedState{kHerald10, 0.0, std::nullopt}};
    for (auto &branch : bell_analyze(joint, eps, kappa)) {
        if (!is_heralding(branch.outcome)) {
            result.aborted.emplace_back(branch.outcome, branch.probability);
            continue;
        }
        auto &slot = result.heralded[branch.outcome == kHerald01 ? 0 : 1];
        const auto &st = branch.state;
        slot.probability = branch.probability;
        slot.state = apply_lossy_bs(st, st.mode("c"), st.mode("d"), BeamSplitterParams(std::numbers::pi / 4, kappa));
    }
    return result;
}

double ProtocolReport::success_probability() const {
    return branches[0].probability + branches[1].probability;
}

const BranchReport &ProtocolReport::branch(DetectorOutcome o) const {
    if (o == kHerald01) return branches[0];
    if (o == kHerald10) return branches[1];
    throw std::invalid_argument("no branch for outcome " + outcome_label(o));
}

ProtocolReport run_splitting(Amplitude c0, Amplitude c1, double kappa, double eps) {
    auto pipeline = run_heralded_pipeline(c0, c1, kappa, eps);
    ProtocolReport report;
    report.c0 = c0;
    report.c1 = c1;
    report.kappa = kappa;
    report.epsilon = eps;
    report.aborted_outcomes = pipeline.aborted;
    for (const auto &[o, p] : pipeline.aborted) report.aborted_probability += p;

    const auto target = target_state(c0, c1);
    for (std::size_t k = 0; k < 2; ++k) {
        const auto &hs = pipeline.heralded[k];
        BranchReport &br = report.branches[k];
        br.outcome = hs.outcome;
        br.probability = hs.probability;
        br.correction_angle = phase_correction_angle(hs.outcome);
        if (hs.state) {
            auto corrected = apply_phase_shifter(*hs.state, hs.state->mode("d"), br.correction_angle);
            br.rho_cd = partial_trace(corrected, std::vector<std::string>{"c", "d"});
            br.fidelity = fidelity_pure(target, *br.rho_cd);
        }
    }

    const bool real_coefficients = c0.imag() == 0.0 && c1.imag() == 0.0;
    if (real_coefficients && eps > 0.0 && kappa > 0.0) {
        report.branches[0].fidelity_analytic = analytic_F01(std::min(1.0, std::abs(c0.real())), LossParams(kappa, eps));
    }
    return report;
}

}  // namespace qsplit
