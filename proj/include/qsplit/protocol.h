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

#ifndef QSPLIT_PROTOCOL_H
#define QSPLIT_PROTOCOL_H

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsplit/fock.h"
#include "qsplit/optics.h"

namespace qsplit {

// Mode layout of the splitting apparatus: a carries the input qubit, b, c, d
// the W channel. Environment modes are allocated in this order:
//   env0, env1  BS1 inputs b, c        env2, env3  BS2 inputs c, d
//   env4, env5  BS3 inputs a, b        env6, env7  detectors on a, b
//   env8, env9  BS4 inputs c, d
inline constexpr std::array<const char *, 10> kEnvironmentOrigins = {
    "BS1 input b", "BS1 input c", "BS2 input c", "BS2 input d", "BS3 input a",
    "BS3 input b", "detector a",  "detector b",  "BS4 input c", "BS4 input d",
};

inline constexpr DetectorOutcome kHerald01{0, 1};
inline constexpr DetectorOutcome kHerald10{1, 0};

bool is_heralding(DetectorOutcome o);
std::string outcome_label(DetectorOutcome o);  // "01", "10", ...

/// C0|0>_a + C1|1>_a. Throws std::invalid_argument unless |C0|^2 + |C1|^2 = 1
/// to 1e-12.
SparseState prepare_input(Amplitude c0, Amplitude c1);

/// One photon in b through BS1 (b,c) and BS2 (c,d), both 50/50 with
/// absorption kappa. Registry: b, c, d, env0..env3.
SparseState generate_w_state(double kappa);

struct BellBranch {
    DetectorOutcome outcome;
    double probability = 0.0;
    SparseState state;  ///< normalized conditional state, full registry
};

/// 50/50 BS3 on modes a, b (absorption kappa_bs3) followed by photon-number
/// detection of both modes with efficiency eps. Every outcome with nonzero
/// probability is returned, in lexicographic order.
std::vector<BellBranch> bell_analyze(const SparseState &s, double eps, double kappa_bs3);

/// Phase shift on mode d that restores C0|0> + C1|1> for a heralded outcome.
/// Fixed by calibrating against the lossless protocol; one of pi/2, 3*pi/2.
double phase_correction_angle(DetectorOutcome outcome);

struct HeraldedState {
    DetectorOutcome outcome;
    double probability = 0.0;
    /// Normalized state after BS4 and before phase correction, or nullopt when
    /// the outcome never occurs.
    std::optional<SparseState> state;
};

/// The full apparatus up to (and including) BS4, for both heralding outcomes,
/// plus the total probability of the aborted outcomes.
struct HeraldedPipeline {
    std::array<HeraldedState, 2> heralded;
    std::vector<std::pair<DetectorOutcome, double>> aborted;
};
HeraldedPipeline run_heralded_pipeline(Amplitude c0, Amplitude c1, double kappa, double eps);

struct BranchReport {
    DetectorOutcome outcome;
    double probability = 0.0;
    double correction_angle = 0.0;
    std::optional<DensityMatrix> rho_cd;  ///< corrected state of modes c, d
    std::optional<double> fidelity;
    /// Closed-form prediction; (0,1) branch with real coefficients only.
    std::optional<double> fidelity_analytic;
};

struct ProtocolReport {
    Amplitude c0;
    Amplitude c1;
    double kappa = 1.0;
    double epsilon = 1.0;
    std::array<BranchReport, 2> branches;  ///< (0,1) then (1,0)
    std::vector<std::pair<DetectorOutcome, double>> aborted_outcomes;
    double aborted_probability = 0.0;

    double success_probability() const;
    const BranchReport &branch(DetectorOutcome o) const;
};

ProtocolReport run_splitting(Amplitude c0, Amplitude c1, double kappa, double eps);

}  // namespace qsplit

#endif  // QSPLIT_PROTOCOL_H
