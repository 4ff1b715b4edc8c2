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

#include "qsplit/analytic.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsplit {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kFitTolerance = 1e-12;

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0) a += kTwoPi;
    if (a >= kTwoPi - 1e-14) a = 0;
    return a;
}

void check_c0(double c0) {
    if (!(c0 >= 0.0 && c0 <= 1.0)) {
        throw std::invalid_argument("c0 out of range [0,1]");
    }
}

double c1_of(double c0) { return std::sqrt(std::max(0.0, 1.0 - c0 * c0)); }

}  // namespace

SparseState build_w_class(const WClassParams &p, std::vector<std::string> labels) {
    if (labels.size() != 3) {
        throw std::invalid_argument("W-class states live on exactly three modes");
    }
    if (p.zeta < 0) {
        throw std::invalid_argument("zeta must be nonnegative");
    }
    const double norm = 1.0 / std::sqrt(2.0 + 2.0 * p.zeta);
    const Amplitude phase = std::polar(1.0, p.global_phase);
    SparseState::Terms terms{
        {OccupationVector{0, 0, 1}, phase * norm},
        {OccupationVector{0, 1, 0}, phase * norm * std::sqrt(p.zeta) * std::polar(1.0, p.gamma)},
        {OccupationVector{1, 0, 0}, phase * norm * std::sqrt(p.zeta + 1.0) * std::polar(1.0, p.delta)},
    };
    return SparseState(ModeRegistry(std::move(labels)), std::move(terms));
}

WClassParams fit_w_class(const SparseState &s) {
    if (s.mode_count() != 3) {
        throw std::invalid_argument("fit_w_class: expected a three-mode state");
    }
    for (const auto &[occ, amp] : s.terms()) {
        if (occ.total() != 1) {
            throw std::invalid_argument("fit_w_class: support outside the single-excitation sector");
        }
    }
    const Amplitude c001 = s.amplitude({0, 0, 1});
    if (std::abs(c001) < kFitTolerance) {
        throw std::invalid_argument("fit_w_class: zero |001> amplitude");
    }
    const Amplitude rotate = std::conj(c001) / std::abs(c001);
    const double a001 = std::abs(c001);
    const Amplitude c010 = s.amplitude({0, 1, 0}) * rotate;
    const Amplitude c100 = s.amplitude({1, 0, 0}) * rotate;

    if (std::abs(std::norm(c100) - std::norm(c010) - a001 * a001) > kFitTolerance) {
        throw std::invalid_argument("fit_w_class: no consistent zeta");
    }
    WClassParams p;
    p.zeta = std::norm(c010) / (a001 * a001);
    p.gamma = std::abs(c010) < kFitTolerance ? 0.0 : wrap_angle(std::arg(c010));
    p.delta = wrap_angle(std::arg(c100));
    p.global_phase = wrap_angle(std::arg(c001));

    auto rebuilt = build_w_class(p, s.registry().labels());
    for (const auto &[occ, amp] : rebuilt.terms()) {
        if (std::abs(amp - s.amplitude(occ)) > kFitTolerance) {
            throw std::invalid_argument("fit_w_class: state is not a normalized W-class state");
        }
    }
    return p;
}

LossParams::LossParams(double kappa_, double epsilon_) : kappa(kappa_), epsilon(epsilon_) {
    if (!(kappa >= 0.0 && kappa <= 1.0)) throw std::invalid_argument("kappa out of range [0,1]");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("eps out of range [0,1]");
}

double LossParams::t() const { return std::sqrt(kappa / 2.0); }
double LossParams::r() const { return std::sqrt(kappa / 2.0); }

namespace {

double n01_bracket(double c0, const LossParams &lp) {
    const double c0s = c0 * c0;
    const double c1s = 1.0 - c0s;
    const double t = lp.t(), r = lp.r(), e = lp.epsilon, g = 1.0 - lp.kappa;
    return c0s * std::pow(t, 4) * e + 4 * c1s * r * r * std::pow(t, 6) * e * (1 - e) +
           c1s * r * r * std::pow(t, 4) * e * g + c1s * std::pow(t, 6) * e * g +
           4 * c1s * std::pow(r, 6) * t * t * e + c1s * std::pow(r, 4) * t * t * e * g +
           c1s * std::pow(r, 6) * e * g + c1s * std::pow(r, 4) * e * g + c1s * r * r * e * g;
}

}  // namespace

double analytic_N01(double c0, const LossParams &lp) {
    check_c0(c0);
    if (lp.epsilon == 0.0) {
        throw std::domain_error("N01 undefined for eps = 0");
    }
    const double bracket = n01_bracket(c0, lp);
    if (!(bracket > 0.0)) {
        throw std::domain_error("N01 undefined: normalization bracket vanishes");
    }
    return 1.0 / std::sqrt(bracket);
}

double analytic_F01(double c0, const LossParams &lp) {
    const double n01 = analytic_N01(c0, lp);
    const double c0s = c0 * c0;
    const double c1s = 1.0 - c0s;
    const double t = lp.t(), r = lp.r(), e = lp.epsilon, g = 1.0 - lp.kappa;
    const double x = c0s * c1s;
    const double bracket =
        c0s * c0s * e * std::pow(t, 4) + 2 * x * e * std::pow(r, 3) * std::pow(t, 3) +
        4 * x * r * r * std::pow(t, 6) * e * (1 - e) + x * r * r * std::pow(t, 4) * e * g +
        x * std::pow(t, 6) * e * g + 2 * x * std::pow(r, 3) * std::pow(t, 3) * e +
        4 * c1s * c1s * std::pow(r, 6) * t * t * e + x * std::pow(r, 4) * t * t * e * g +
        x * std::pow(r, 6) * e * g + x * std::pow(r, 4) * e * g + x * r * r * e * g;
    return n01 * n01 * bracket;
}

ModeRegistry eta_registry() { return ModeRegistry({"c", "d", "L1", "L2", "Lv1", "Lv2", "Lv3", "Lv4"}); }

std::vector<EtaTerm> eta_terms(DetectorOutcome outcome, double c0, double c1, const LossParams &lp) {
    const double t = lp.t(), r = lp.r();
    const double se = std::sqrt(lp.epsilon);
    const double bs_noise = std::sqrt(1.0 - lp.kappa);
    const double det_noise = std::sqrt(1.0 - lp.epsilon);
    const Amplitude i{0.0, 1.0};
    const double t2 = t * t, t3 = t2 * t, r2 = r * r, r3 = r2 * r, r4 = r2 * r2;

    if (outcome == DetectorOutcome{0, 1}) {
        return {
            {"", 0, 0, c0 * se * t2},
            {"L2", 0, 0, 2.0 * i * c1 * r * t3 * se * det_noise},
            {"Lv3", 0, 0, i * c1 * r * t2 * se * bs_noise},
            {"Lv3", 0, 0, c1 * t3 * se * bs_noise},
            {"Lv4", 0, 0, -c1 * r2 * t * se * bs_noise},
            {"Lv4", 0, 0, -i * c1 * r3 * se * bs_noise},
            {"Lv2", 0, 0, -c1 * r2 * se * bs_noise},
            {"Lv1", 0, 0, i * c1 * r * se * bs_noise},
            {"", 1, 0, c1 * r4 * se - c1 * r2 * t2 * se},
            {"", 0, 1, -2.0 * i * c1 * r3 * t * se},
        };
    }
    if (outcome == DetectorOutcome{1, 0}) {
        return {
            {"", 0, 0, i * c0 * r * t * se},
            {"L1", 0, 0, 2.0 * i * c1 * r * t3 * se * det_noise},
            {"Lv3", 0, 0, c1 * t3 * se * bs_noise},
            {"Lv3", 0, 0, i * c1 * r * t2 * se * bs_noise},
            {"Lv4", 0, 0, i * c1 * r * t2 * se * bs_noise},
            {"Lv4", 0, 0, -c1 * r2 * t * se * bs_noise},
            {"Lv2", 0, 0, i * c1 * r * t * se * bs_noise},
            {"Lv1", 0, 0, c1 * t * se * bs_noise},
            {"", 1, 0, i * c1 * r * t3 * se - i * c1 * r3 * t * se},
            {"", 0, 1, -2.0 * c1 * r2 * t2 * se},
        };
    }
    throw std::invalid_argument("eta_terms: outcome must be (0,1) or (1,0)");
}

SparseState eta_transcribed(DetectorOutcome outcome, double c0, double c1, const LossParams &lp) {
    const ModeRegistry reg = eta_registry();
    SparseState::Terms terms;
    for (const auto &term : eta_terms(outcome, c0, c1, lp)) {
        std::vector<int> occ(reg.size(), 0);
        occ[0] = term.c;
        occ[1] = term.d;
        if (!term.reservoir.empty()) occ[reg.at(term.reservoir).index] = 1;
        terms[OccupationVector(std::move(occ))] += term.coefficient;
    }
    // The unnormalized bracket can exceed unit norm only through rounding;
    // scale before constructing the validated state.
    double n = 0;
    for (const auto &[occ, amp] : terms) n += std::norm(amp);
    if (!(n > 0)) {
        throw std::domain_error("eta_transcribed: heralded state vanishes");
    }
    for (auto &[occ, amp] : terms) amp /= std::sqrt(n);
    return SparseState(reg, std::move(terms));
}

double eta_fidelity(DetectorOutcome outcome, double c0, const LossParams &lp, double correction) {
    check_c0(c0);
    const double c1 = c1_of(c0);
    auto eta = eta_transcribed(outcome, c0, c1, lp);
    eta = apply_phase_shifter(eta, eta.mode("d"), correction);
    auto rho = partial_trace(eta, std::vector<std::string>{"c", "d"});
    SparseState target(ModeRegistry({"c", "d"}),
                       {{OccupationVector{0, 0}, Amplitude{c0}}, {OccupationVector{0, 1}, Amplitude{c1}}});
    return fidelity_pure(target, rho);
}

}  // namespace qsplit
