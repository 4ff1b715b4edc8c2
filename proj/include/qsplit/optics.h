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

#ifndef QSPLIT_OPTICS_H
#define QSPLIT_OPTICS_H

#include <array>
#include <vector>

#include "qsplit/fock.h"

namespace qsplit {

/// Beam splitter with amplitude transmission T = cos(theta), reflection
/// R = sin(theta), inside an absorbing medium of intensity transmission kappa.
struct BeamSplitterParams {
    double theta = 0.0;
    double kappa = 1.0;

    BeamSplitterParams(double theta, double kappa = 1.0);

    double T() const;
    double R() const;
    /// Effective lossy amplitudes; t^2 + r^2 == kappa.
    double t() const;
    double r() const;
};

struct DetectorParams {
    double epsilon = 1.0;

    explicit DetectorParams(double epsilon);
};

/// Photon counts registered on the two Bell-analysis detectors (n_a, n_b).
using DetectorOutcome = std::array<int, 2>;

struct DetectionOutcome {
    int count = 0;
    double probability = 0.0;
    SparseState collapsed;
};

/// Two-mode mixing: a+ -> T a+ + iR b+, b+ -> T b+ + iR a+.
SparseState apply_ideal_bs(const SparseState &s, ModeId m1, ModeId m2, double theta);

/// Multiplies every term by exp(i * theta * n_m).
SparseState apply_phase_shifter(const SparseState &s, ModeId m, double theta);

/// Couples mode m to a fresh vacuum environment mode (appended last):
/// a+ -> sqrt(transmission) a+ + sqrt(1 - transmission) e+.
SparseState apply_loss_channel(const SparseState &s, ModeId m, double transmission);

/// Loss on m1 then m2 (two new environment modes, in that order), followed by
/// ideal mixing at angle theta.
SparseState apply_lossy_bs(const SparseState &s, ModeId m1, ModeId m2,
                           const BeamSplitterParams &p);

/// Detector inefficiency as a loss channel, then an ideal photon-number
/// measurement. Returns every count with nonzero probability, ascending.
std::vector<DetectionOutcome> detect_pnr(const SparseState &s, ModeId m, const DetectorParams &d);

}  // namespace qsplit

#endif  // QSPLIT_OPTICS_H
