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

#ifndef QSPLIT_ANALYTIC_H
#define QSPLIT_ANALYTIC_H

#include <string>
#include <vector>

#include "qsplit/fock.h"
#include "qsplit/optics.h"

namespace qsplit {

/// Parameters of the weighted W class
///   e^{i phi} (|001> + sqrt(zeta) e^{i gamma} |010> + sqrt(zeta+1) e^{i delta} |100>) / sqrt(2 + 2 zeta).
/// Angles are reported in [0, 2*pi).
struct WClassParams {
    double zeta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    double global_phase = 0.0;
};

SparseState build_w_class(const WClassParams &p,
                          std::vector<std::string> labels = {"q1", "q2", "q3"});

/// Recovers the W-class parameters of a three-mode single-excitation state,
/// rotating the |001> amplitude to the positive real axis. Throws
/// std::invalid_argument when the state is not in the class to 1e-12.
WClassParams fit_w_class(const SparseState &s);

/// Beam-splitter absorption and detector efficiency for symmetric 50/50
/// splitters, where t = r = sqrt(kappa / 2).
struct LossParams {
    double kappa = 1.0;
    double epsilon = 1.0;

    LossParams(double kappa, double epsilon);

    double t() const;
    double r() const;
};

/// Closed-form normalization of the heralded (0,1) reconstruction.
/// Throws std::domain_error when the normalization bracket vanishes (eps = 0
/// or kappa = 0).
double analytic_N01(double c0, const LossParams &lp);

/// Closed-form fidelity of the (0,1) branch; c1 = sqrt(1 - c0^2).
double analytic_F01(double c0, const LossParams &lp);

/// Registry of the transcribed reservoir: modes c, d and one single-excitation
/// mode per noise symbol (detector noise L1, L2; beam-splitter noise Lv1..Lv4).
ModeRegistry eta_registry();

/// One term of the transcribed heralded state before normalization. The
/// coefficient already carries the noise amplitude sqrt(1 - kappa) or
/// sqrt(1 - eps) of its reservoir excitation.
struct EtaTerm {
    std::string reservoir;  ///< empty for the reservoir vacuum
    int c = 0;
    int d = 0;
    Amplitude coefficient;
};

/// Terms of the (0,1) or (1,0) heralded state in transcription order.
std::vector<EtaTerm> eta_terms(DetectorOutcome outcome, double c0, double c1, const LossParams &lp);

/// Normalized transcribed state over eta_registry(), before phase correction.
SparseState eta_transcribed(DetectorOutcome outcome, double c0, double c1, const LossParams &lp);

/// Fidelity of the transcribed state against |0>_c (c0|0> + c1|1>)_d after a
/// phase shift of `correction` on mode d and a trace over the reservoir.
double eta_fidelity(DetectorOutcome outcome, double c0, const LossParams &lp, double correction);

}  // namespace qsplit

#endif  // QSPLIT_ANALYTIC_H
