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

#ifndef QSPLIT_CIRCUIT_H
#define QSPLIT_CIRCUIT_H

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qsplit/fock.h"

namespace qsplit {

/// Angle in radians. Exact multiples of pi keep their rational form so that
/// printing reproduces the source text.
struct Angle {
    struct PiFraction {
        int numerator = 1;
        int denominator = 1;
        bool operator==(const PiFraction &) const = default;
    };

    double radians = 0.0;
    std::optional<PiFraction> pi_fraction;

    static Angle literal(double radians);
    static Angle pi_times(int numerator, int denominator);

    std::string str() const;
    bool operator==(const Angle &) const = default;
};

struct SourceElement {
    std::string mode;
    int photons = 1;
    bool operator==(const SourceElement &) const = default;
};

struct BeamSplitterElement {
    std::string mode1;
    std::string mode2;
    Angle theta;
    double kappa = 1.0;
    bool operator==(const BeamSplitterElement &) const = default;
};

struct PhaseShifterElement {
    std::string mode;
    Angle theta;
    bool operator==(const PhaseShifterElement &) const = default;
};

struct DetectElement {
    std::string mode;
    double epsilon = 1.0;
    bool operator==(const DetectElement &) const = default;
};

using CircuitElement =
    std::variant<SourceElement, BeamSplitterElement, PhaseShifterElement, DetectElement>;

/// Number of environment modes an element allocates when executed. Lossless
/// parameters (kappa or eps exactly 1) allocate none.
int env_modes_allocated(const CircuitElement &e);

struct Circuit {
    std::vector<std::string> modes;
    std::vector<CircuitElement> elements;

    /// Throws std::invalid_argument on the first violated rule.
    void validate() const;

    ModeRegistry registry() const { return ModeRegistry(modes); }
    /// Photon counts placed by the source elements.
    OccupationVector initial_occupation() const;

    bool operator==(const Circuit &) const = default;
};

class ParseError : public std::runtime_error {
   public:
    ParseError(int line, int column, const std::string &message);

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string &message() const { return message_; }

   private:
    int line_;
    int column_;
    std::string message_;
};

/// Parses the line-oriented `.qls` format:
///
///     modes <id>+
///     source <mode> <int>
///     bs <m1> <m2> theta=<expr> kappa=<real>
///     ps <mode> theta=<expr>
///     detect <mode> eps=<real>
///
/// `#` starts a comment. `<expr>` is a real literal, `pi`, `pi/<int>` or
/// `<int>*pi/<int>`.
Circuit parse_circuit(std::string_view text);

/// Canonical text form; parse_circuit(print_circuit(c)) == c.
std::string print_circuit(const Circuit &c);

struct DetectionRecord {
    std::string mode;
    double epsilon = 1.0;
    /// (count, probability) pairs with nonzero probability, ascending count.
    std::vector<std::pair<int, double>> distribution;
};

struct ExecutionResult {
    SparseState state;
    std::vector<DetectionRecord> detections;
};

/// Runs the circuit from the vacuum plus its sources. Detection does not
/// collapse the state: the record holds the full count distribution and the
/// returned state keeps every branch.
ExecutionResult execute(const Circuit &c, int cutoff = kDefaultCutoff);

/// Applies every non-source element to `initial`, whose registry must start
/// with the circuit's modes.
ExecutionResult evolve(const Circuit &c, const SparseState &initial);

}  // namespace qsplit

#endif  // QSPLIT_CIRCUIT_H
