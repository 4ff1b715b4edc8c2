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

#ifndef QSPLIT_ORACLE_H
#define QSPLIT_ORACLE_H

#include <cstdint>

#include <Eigen/Dense>

#include "qsplit/circuit.h"
#include "qsplit/fock.h"

namespace qsplit {

/// Linear map on creation operators over system and environment modes.
/// Column j is the image of mode j's creation operator.
struct TransferMatrix {
    ModeRegistry registry;
    Eigen::MatrixXcd matrix;

    /// Largest deviation of matrix^H * matrix from the identity.
    double isometry_error() const;
};

/// Composes the per-element matrices in circuit order. Environment modes are
/// allocated exactly as `evolve` allocates them; detectors contribute only
/// their loss stage.
TransferMatrix build_transfer(const Circuit &c);

/// Applies the transformed creation-operator monomial for `initial` to the
/// vacuum. `initial` may be shorter than the registry; missing modes are empty.
SparseState expand_on_vacuum(const TransferMatrix &tm, const OccupationVector &initial,
                             int cutoff = kDefaultCutoff);

/// Maximum absolute amplitude difference between the state-vector engine and
/// the transfer-matrix engine, starting from `initial` plus the circuit's
/// sources.
double cross_check(const Circuit &c, const OccupationVector &initial);

/// Seeded random circuit for engine comparisons: at most `max_modes` modes
/// including environment, at most two photons, beam splitter angles in
/// (0, pi/2) and kappa in [0.9, 1].
Circuit random_circuit(std::uint64_t seed, int max_modes = 14);

}  // namespace qsplit

#endif  // QSPLIT_ORACLE_H
