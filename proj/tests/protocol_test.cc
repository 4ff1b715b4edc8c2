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

#include "gtest/gtest.h"

using namespace qsplit;

namespace {

const Amplitude I{0, 1};
const double S2 = 1 / std::sqrt(2.0);
constexpr double kPi = std::numbers::pi;

// Fidelity of the (0,1) branch worked out by hand from the mode layout: the
// heralded state is expanded term by term through BS1..BS4 with the loss
// stages in front of each mixer, the reservoir weights are summed per noise
// mode, and the overlap with |0>_c (c0|0> + c1|1>)_d is taken after the pi/2
// correction. g^2 = 1 - kappa, t = r = sqrt(kappa/2).
double hand_f01(double c0, double kappa, double eps) {
    double c1 = std::sqrt(std::max(0.0, 1 - c0 * c0));
    double t = std::sqrt(kappa / 2), r = t, g2 = 1 - kappa;
    double C0 = c0 * c0, C1 = c1 * c1;
    double se = std::sqrt(eps);
    double envsum = C1 * eps *
                    (4 * r * r * std::pow(t, 4) * (1 - eps) +
                     g2 * (std::pow(t, 4) + t * t * r * r + r * r + std::pow(r, 4) + std::pow(r, 4) * t * t +
                           std::pow(r, 6)));
    double coherent = C0 * t * t * se + 2 * C1 * std::pow(r, 3) * t * se;
    double num = coherent * coherent + C0 * envsum;
    double den = C0 * std::pow(t, 4) * eps + C1 * eps * std::pow(std::pow(r, 4) - r * r * t * t, 2) +
                 4 * C1 * std::pow(r, 6) * t * t * eps + envsum;
    return num / den;
}

SparseState two_mode(Amplitude a01, Amplitude a10, Amplitude a00 = 0, Amplitude a11 = 0) {
    return SparseState(ModeRegistry({"a", "b"}),
                       {{{0, 1}, a01}, {{1, 0}, a10}, {{0, 0}, a00}, {{1, 1}, a11}});
}

}  // namespace

TEST(protocol, prepare_input) {
    auto zero = prepare_input(1, 0);
    ASSERT_EQ(zero.amplitude({0}), Amplitude(1));
    ASSERT_EQ(zero.terms().size(), 1u);
    auto bal = prepare_input(S2, S2);
    ASSERT_NEAR(bal.norm_squared(), 1, 1e-15);
    auto pyth = prepare_input(0.6, 0.8);
    ASSERT_NEAR(pyth.norm_squared(), 1, 1e-15);
    ASSERT_THROW(prepare_input(0.6, 0.6), std::invalid_argument);
    ASSERT_NO_THROW(prepare_input(0.6, 0.8 * I));
}

TEST(protocol, w_state_lossless) {
    auto w = generate_w_state(1.0);
    ASSERT_EQ(w.registry().labels(),
              (std::vector<std::string>{"b", "c", "d", "env0", "env1", "env2", "env3"}));
    ASSERT_LT(std::abs(w.amplitude({1, 0, 0, 0, 0, 0, 0}) - S2), 1e-12);
    ASSERT_LT(std::abs(w.amplitude({0, 1, 0, 0, 0, 0, 0}) - 0.5 * I), 1e-12);
    ASSERT_LT(std::abs(w.amplitude({0, 0, 1, 0, 0, 0, 0}) + 0.5), 1e-12);
    ASSERT_EQ(w.terms().size(), 3u);
}

TEST(protocol, w_state_lossy) {
    double kappa = 0.98;
    auto w = generate_w_state(kappa);
    double t = std::sqrt(kappa / 2), r = t;
    ASSERT_LT(std::abs(w.amplitude({1, 0, 0, 0, 0, 0, 0}) - t), 1e-12);
    ASSERT_LT(std::abs(w.amplitude({0, 1, 0, 0, 0, 0, 0}) - I * r * t), 1e-12);
    ASSERT_LT(std::abs(w.amplitude({0, 0, 1, 0, 0, 0, 0}) + r * r), 1e-12);
    ASSERT_NEAR(t, std::sqrt(0.49), 1e-15);
    ASSERT_NEAR(w.norm_squared(), 1, 1e-12);
    // Photon lost at BS1 input b, or lost at BS2 input c after reflection.
    ASSERT_LT(std::abs(w.amplitude({0, 0, 0, 1, 0, 0, 0}) - std::sqrt(1 - kappa)), 1e-12);
    ASSERT_LT(std::abs(w.amplitude({0, 0, 0, 0, 0, 1, 0}) - I * r * std::sqrt(1 - kappa)), 1e-12);
}

TEST(protocol, bell_analysis_ideal_limits) {
    // Psi(+-) = (|0,1> +- i|1,0>)/sqrt2, Phi(+-) = (|1,1> +- i|0,0>)/sqrt2.
    auto psi_plus = bell_analyze(two_mode(S2, I * S2), 1, 1);
    ASSERT_EQ(psi_plus.size(), 1u);
    ASSERT_EQ(psi_plus[0].outcome, (DetectorOutcome{1, 0}));
    ASSERT_NEAR(psi_plus[0].probability, 1, 1e-12);

    auto psi_minus = bell_analyze(two_mode(S2, -I * S2), 1, 1);
    ASSERT_EQ(psi_minus.size(), 1u);
    ASSERT_EQ(psi_minus[0].outcome, (DetectorOutcome{0, 1}));
    ASSERT_NEAR(psi_minus[0].probability, 1, 1e-12);

    for (Amplitude sign : {Amplitude(1), Amplitude(-1)}) {
        auto phi = bell_analyze(two_mode(0, 0, sign * I * S2, S2), 1, 1);
        double total = 0;
        for (const auto &b : phi) {
            bool allowed = b.outcome == DetectorOutcome{0, 0} || b.outcome == DetectorOutcome{2, 0} ||
                           b.outcome == DetectorOutcome{0, 2};
            ASSERT_TRUE(allowed) << outcome_label(b.outcome);
            total += b.probability;
        }
        ASSERT_NEAR(total, 1, 1e-12);
    }

    auto vac = bell_analyze(two_mode(0, 0, 1), 0.7, 0.98);
    ASSERT_EQ(vac.size(), 1u);
    ASSERT_EQ(vac[0].outcome, (DetectorOutcome{0, 0}));
    ASSERT_NEAR(vac[0].probability, 1, 1e-15);
}

TEST(protocol, phase_correction_angles) {
    ASSERT_NEAR(phase_correction_angle(kHerald01), kPi / 2, 1e-15);
    ASSERT_NEAR(phase_correction_angle(kHerald10), 3 * kPi / 2, 1e-15);
    ASSERT_THROW(phase_correction_angle({0, 0}), std::invalid_argument);
    ASSERT_THROW(phase_correction_angle({2, 0}), std::invalid_argument);
    ASSERT_TRUE(is_heralding({0, 1}));
    ASSERT_FALSE(is_heralding({1, 1}));
    ASSERT_EQ(outcome_label({0, 2}), "02");
}

TEST(protocol, phase_correction_matches_ideal_residual_phase) {
    // In the lossless pipeline the (0,1) branch leaves -i on |1>_d and the
    // (1,0) branch leaves +i; e^{i theta} must cancel each.
    auto pipe = run_heralded_pipeline(S2, S2, 1, 1);
    for (const auto &hs : pipe.heralded) {
        ASSERT_TRUE(hs.state.has_value());
        const auto &s = *hs.state;
        std::vector<int> zero(s.mode_count(), 0), one(s.mode_count(), 0);
        for (auto l : {"a", "b"}) {
            zero[s.mode(l).index] = hs.outcome[std::string(l) == "a" ? 0 : 1];
            one[s.mode(l).index] = zero[s.mode(l).index];
        }
        one[s.mode("d").index] = 1;
        Amplitude ratio = s.amplitude(OccupationVector(one)) / s.amplitude(OccupationVector(zero));
        Amplitude want = hs.outcome == kHerald01 ? -I : I;
        ASSERT_LT(std::abs(ratio - want), 1e-12) << outcome_label(hs.outcome);
        ASSERT_LT(std::abs(ratio * std::polar(1.0, phase_correction_angle(hs.outcome)) - 1.0), 1e-12);
    }
}

TEST(protocol, ideal_protocol) {
    for (int k = 0; k <= 10; ++k) {
        double c0 = k / 10.0;
        double c1 = std::sqrt(1 - c0 * c0);
        auto rep = run_splitting(c0, c1, 1, 1);
        ASSERT_NEAR(rep.success_probability(), 0.5, 1e-12);
        for (const auto &br : rep.branches) {
            ASSERT_TRUE(br.fidelity.has_value());
            ASSERT_NEAR(*br.fidelity, 1, 1e-12) << c0 << " " << outcome_label(br.outcome);
            // Corrected state: |0>_c (c0|0> + c1|1>)_d.
            const auto &rho = *br.rho_cd;
            ASSERT_NEAR(std::abs(rho.element({0, 0}, {0, 0}) - c0 * c0), 0, 1e-12);
            ASSERT_NEAR(std::abs(rho.element({0, 1}, {0, 1}) - c1 * c1), 0, 1e-12);
            ASSERT_NEAR(std::abs(rho.element({0, 0}, {0, 1}) - c0 * c1), 0, 1e-12);
        }
        ASSERT_NEAR(rep.aborted_probability, 0.5, 1e-12);
    }
}

TEST(protocol, ideal_protocol_complex_coefficients) {
    Amplitude c0 = 0.6, c1 = 0.8 * std::polar(1.0, 0.9);
    auto rep = run_splitting(c0, c1, 1, 1);
    ASSERT_NEAR(rep.success_probability(), 0.5, 1e-12);
    for (const auto &br : rep.branches) ASSERT_NEAR(*br.fidelity, 1, 1e-12);
    ASSERT_FALSE(rep.branches[0].fidelity_analytic.has_value());
}

TEST(protocol, probability_mass_is_conserved_with_losses) {
    for (double kappa : {0.9, 0.98, 1.0}) {
        for (double eps : {0.5, 0.7, 1.0}) {
            for (double c0 : {0.0, 0.3, 0.8, 1.0}) {
                auto rep = run_splitting(c0, std::sqrt(1 - c0 * c0), kappa, eps);
                ASSERT_NEAR(rep.success_probability() + rep.aborted_probability, 1, 1e-12);
                for (const auto &br : rep.branches) {
                    if (!br.rho_cd) continue;
                    ASSERT_NEAR(br.rho_cd->trace(), 1, 1e-12);
                    ASSERT_LT(br.rho_cd->hermiticity_error(), 1e-12);
                    ASSERT_GT(br.rho_cd->min_eigenvalue(), -1e-12);
                }
            }
        }
    }
}

TEST(protocol, c1_zero_gives_unit_fidelity_on_01) {
    for (double kappa : {0.98, 0.99, 1.0}) {
        for (double eps : {0.7, 0.85, 1.0}) {
            auto rep = run_splitting(1, 0, kappa, eps);
            ASSERT_NEAR(*rep.branch(kHerald01).fidelity, 1, 1e-12);
            ASSERT_NEAR(*rep.branch(kHerald01).fidelity_analytic, 1, 1e-12);
        }
    }
}

TEST(protocol, simulated_f01_matches_hand_derivation) {
    for (int i = 0; i <= 20; ++i) {
        double c0 = i / 20.0;
        for (double kappa : {0.9, 0.95, 0.98, 0.99, 1.0}) {
            for (double eps : {0.5, 0.7, 0.85, 1.0}) {
                auto rep = run_splitting(c0, std::sqrt(1 - c0 * c0), kappa, eps);
                ASSERT_NEAR(*rep.branch(kHerald01).fidelity, hand_f01(c0, kappa, eps), 1e-12)
                    << "c0=" << c0 << " kappa=" << kappa << " eps=" << eps;
            }
        }
    }
    ASSERT_NEAR(hand_f01(0, 1, 0.7), 0.625, 1e-12);
}

TEST(protocol, lossy_heralding_probability) {
    // c0 = 1: only the W photon can click. It sits in b with amplitude t,
    // BS3 sends it on to b with t or to a with i r, the detector keeps it
    // with sqrt(eps).
    double kappa = 0.98, eps = 0.7;
    double t = std::sqrt(kappa / 2), r = t;
    auto rep = run_splitting(1, 0, kappa, eps);
    ASSERT_NEAR(rep.branch(kHerald01).probability, t * t * t * t * eps, 1e-12);
    ASSERT_NEAR(rep.branch(kHerald10).probability, t * t * r * r * eps, 1e-12);
}

TEST(protocol, rejects_bad_parameters) {
    ASSERT_THROW(run_splitting(1, 0, 1.5, 1), std::invalid_argument);
    ASSERT_THROW(run_splitting(1, 0, 1, -0.1), std::invalid_argument);
    ASSERT_THROW(run_splitting(1, 1, 1, 1), std::invalid_argument);
    auto rep = run_splitting(1, 0, 1, 1);
    ASSERT_THROW(rep.branch({0, 0}), std::invalid_argument);
}

TEST(protocol, environment_layout) {
    auto pipe = run_heralded_pipeline(0.6, 0.8, 0.98, 0.7);
    const auto &s = *pipe.heralded[0].state;
    std::vector<std::string> want{"a", "b", "c", "d"};
    for (int k = 0; k < 10; ++k) want.push_back("env" + std::to_string(k));
    ASSERT_EQ(s.registry().labels(), want);
    ASSERT_EQ(kEnvironmentOrigins[7], std::string("detector b"));
}
