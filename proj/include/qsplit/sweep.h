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

#ifndef QSPLIT_SWEEP_H
#define QSPLIT_SWEEP_H

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qsplit {

inline constexpr std::size_t kMaxGridPoints = 1'000'000;
inline constexpr std::string_view kSweepHeader =
    "c0,kappa,eps,outcome,p_outcome,fidelity_sim,fidelity_analytic,abs_err";

/// Inclusive arithmetic range start:stop:step.
struct Range {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    /// Accepts "start:stop:step" or a single value.
    static Range parse(std::string_view text);

    std::size_t size() const;
    std::vector<double> values() const;
};

struct SweepSpec {
    Range c0;
    Range kappa;
    Range eps;
    std::string out_path;

    /// Throws std::invalid_argument for out-of-domain ranges or grids larger
    /// than kMaxGridPoints.
    void validate() const;
    std::size_t grid_size() const;
};

/// Shortest text that reads back to the same double (17 significant digits).
std::string format_double(double v);

/// Evaluates the protocol on every grid point (c0 outermost, then kappa, then
/// eps) and renders the CSV, two rows per point: outcome 01 then 10. The
/// output does not depend on `workers`.
std::string sweep_csv(const SweepSpec &spec, unsigned workers = 1);

}  // namespace qsplit

#endif  // QSPLIT_SWEEP_H
