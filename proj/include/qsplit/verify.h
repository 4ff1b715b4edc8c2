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

#ifndef QSPLIT_VERIFY_H
#define QSPLIT_VERIFY_H

#include <optional>
#include <string>
#include <vector>

#include "qsplit/analytic.h"
#include "qsplit/optics.h"

namespace qsplit {

/// One term of the heralded state, compared between the transcribed
/// closed-form expansion and the simulated apparatus. Vacuum-reservoir terms
/// compare complex amplitudes; reservoir terms compare the total weight that
/// ends up in the corresponding noise modes.
struct DiscrepancyRow {
    std::string term;
    Amplitude transcribed;
    Amplitude simulated;
    bool differs = false;
};

struct DiscrepancyReport {
    DetectorOutcome outcome;
    double c0 = 0.0;
    double kappa = 1.0;
    double eps = 1.0;
    std::vector<DiscrepancyRow> rows;
    std::optional<std::size_t> first_difference;

    std::string str() const;
};

/// Compares the unnormalized heralded state after BS4 (before phase
/// correction) against the transcription, term by term, at tolerance 1e-9.
DiscrepancyReport compare_with_transcription(DetectorOutcome outcome, double c0, const LossParams &lp);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    /// Added to every closed-form F01 value; fault injection for testing the
    /// checks themselves.
    double f01_offset = 0.0;
    int random_circuits = 100;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    double correction01 = 0.0;
    double correction10 = 0.0;
    std::vector<DiscrepancyReport> discrepancies;

    bool passed() const;
    std::string str() const;
};

/// Engine cross-checks, lossless calibration, and the three-way F01 oracle
/// chain over c0 in {0, 0.1, ..., 1}, kappa in {0.98, 0.99, 1}, eps in
/// {0.7, 0.85, 1}.
VerifyReport run_verify(const VerifyOptions &options = {});

}  // namespace qsplit

#endif  // QSPLIT_VERIFY_H
