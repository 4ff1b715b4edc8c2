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

#ifndef QSPLIT_TESTS_TEST_UTIL_H
#define QSPLIT_TESTS_TEST_UTIL_H

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "qsplit/fock.h"

namespace qsplit::testing {

inline ModeRegistry labelled(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("m" + std::to_string(i));
    return ModeRegistry(std::move(labels));
}

// Normalized random superposition of a few occupations with at most
// max_total photons.
inline SparseState random_state(std::mt19937_64 &rng, const ModeRegistry &reg, int max_total = 2,
                                int terms = 4) {
    std::uniform_int_distribution<int> count(0, max_total);
    std::uniform_int_distribution<std::size_t> mode(0, reg.size() - 1);
    std::normal_distribution<double> gauss;
    SparseState::Terms t;
    for (int k = 0; k < terms; ++k) {
        std::vector<int> occ(reg.size(), 0);
        int n = count(rng);
        for (int p = 0; p < n; ++p) occ[mode(rng)] += 1;
        t[OccupationVector(occ)] += Amplitude(gauss(rng), gauss(rng));
    }
    double norm = 0;
    for (auto &[o, a] : t) norm += std::norm(a);
    for (auto &[o, a] : t) a /= std::sqrt(norm);
    return SparseState(reg, std::move(t));
}

// Same photon number in every term: needed when checking conservation.
inline SparseState random_fixed_number_state(std::mt19937_64 &rng, const ModeRegistry &reg, int n,
                                             int terms = 4) {
    std::uniform_int_distribution<std::size_t> mode(0, reg.size() - 1);
    std::normal_distribution<double> gauss;
    SparseState::Terms t;
    for (int k = 0; k < terms; ++k) {
        std::vector<int> occ(reg.size(), 0);
        for (int p = 0; p < n; ++p) occ[mode(rng)] += 1;
        t[OccupationVector(occ)] += Amplitude(gauss(rng), gauss(rng));
    }
    double norm = 0;
    for (auto &[o, a] : t) norm += std::norm(a);
    for (auto &[o, a] : t) a /= std::sqrt(norm);
    return SparseState(reg, std::move(t));
}

inline double max_amplitude_diff(const SparseState &x, const SparseState &y) {
    double d = 0;
    for (const auto &[o, a] : x.terms()) d = std::max(d, std::abs(a - y.amplitude(o)));
    for (const auto &[o, a] : y.terms()) d = std::max(d, std::abs(a - x.amplitude(o)));
    return d;
}

}  // namespace qsplit::testing

#endif  // QSPLIT_TESTS_TEST_UTIL_H
