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

#include "qsplit/oracle.h"

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>
#include <variant>

namespace qsplit {

namespace {

double factorial(int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void add_env_mode(TransferMatrix &tm) {
    auto n = tm.matrix.rows();
    Eigen::MatrixXcd grown = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    grown.topLeftCorner(n, n) = tm.matrix;
    grown(n, n) = 1.0;
    tm.matrix = std::move(grown);
    tm.registry = tm.registry.with_env_mode();
}

void apply_element(TransferMatrix &tm, const Eigen::MatrixXcd &e) { tm.matrix = e * tm.matrix; }

void apply_loss(TransferMatrix &tm, Eigen::Index m, double transmission) {
    add_env_mode(tm);
    const Eigen::Index env = tm.matrix.rows() - 1;
    const double keep = std::sqrt(transmission);
    const double lose = std::sqrt(1.0 - transmission);
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Identity(tm.matrix.rows(), tm.matrix.cols());
    e(m, m) = keep;
    e(env, m) = lose;
    e(m, env) = -lose;
    e(env, env) = keep;
    apply_element(tm, e);
}

}  // namespace

double TransferMatrix::isometry_error() const {
    if (matrix.size() == 0) return 0;
    Eigen::MatrixXcd gram = matrix.adjoint() * matrix;
    return (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

TransferMatrix build_transfer(const Circuit &c) {
    c.validate();
    TransferMatrix tm{c.registry(), Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(c.modes.size()),
                                                                static_cast<Eigen::Index>(c.modes.size()))};
    for (const auto &el : c.elements) {
        if (const auto *bs = std::get_if<BeamSplitterElement>(&el)) {
            auto m1 = static_cast<Eigen::Index>(tm.registry.at(bs->mode1).index);
            auto m2 = static_cast<Eigen::Index>(tm.registry.at(bs->mode2).index);
            if (env_modes_allocated(el) > 0) {
                apply_loss(tm, m1, bs->kappa);
                apply_loss(tm, m2, bs->kappa);
            }
            Eigen::MatrixXcd e = Eigen::MatrixXcd::Identity(tm.matrix.rows(), tm.matrix.cols());
            const std::complex<double> iR{0.0, std::sin(bs->theta.radians)};
            const double T = std::cos(bs->theta.radians);
            e(m1, m1) = T;
            e(m2, m1) = iR;
            e(m2, m2) = T;
            e(m1, m2) = iR;
            apply_element(tm, e);
        } else if (const auto *ps = std::get_if<PhaseShifterElement>(&el)) {
            auto m = static_cast<Eigen::Index>(tm.registry.at(ps->mode).index);
            Eigen::MatrixXcd e = Eigen::MatrixXcd::Identity(tm.matrix.rows(), tm.matrix.cols());
            e(m, m) = std::polar(1.0, ps->theta.radians);
            apply_element(tm, e);
        } else if (const auto *det = std::get_if<DetectElement>(&el)) {
            if (env_modes_allocated(el) > 0) {
                apply_loss(tm, static_cast<Eigen::Index>(tm.registry.at(det->mode).index), det->epsilon);
            }
        }
    }
    return tm;
}

SparseState expand_on_vacuum(const TransferMatrix &tm, const OccupationVector &initial, int cutoff) {
    const auto n = static_cast<std::size_t>(tm.matrix.rows());
    if (initial.size() > n) {
        throw std::invalid_argument("initial occupation longer than transfer matrix");
    }
    if (initial.total() > cutoff) {
        throw std::out_of_range("photon cutoff exceeded: " + initial.str());
    }

    // Polynomial in output creation operators, keyed by exponent vector.
    std::map<std::vector<int>, Amplitude> poly{{std::vector<int>(n, 0), Amplitude{1.0}}};
    double input_norm = 1;
    for (std::size_t j = 0; j < initial.size(); ++j) {
        input_norm *= factorial(initial[j]);
        for (int k = 0; k < initial[j]; ++k) {
            std::map<std::vector<int>, Amplitude> next;
            for (const auto &[exps, coef] : poly) {
                for (std::size_t i = 0; i < n; ++i) {
                    Amplitude m = tm.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                    if (m == Amplitude{}) continue;
                    auto e = exps;
                    e[i] += 1;
                    next[e] += coef * m;
                }
            }
            poly = std::move(next);
        }
    }

    SparseState::Terms terms;
    for (const auto &[exps, coef] : poly) {
        double out_norm = 1;
        for (int p : exps) out_norm *= factorial(p);
        terms.emplace(OccupationVector(exps), coef * std::sqrt(out_norm / input_norm));
    }
    return SparseState(tm.registry, std::move(terms), cutoff);
}

double cross_check(const Circuit &c, const OccupationVector &initial) {
    const auto sources = c.initial_occupation();
    if (initial.size() != sources.size()) {
        throw std::invalid_argument("initial occupation must cover the circuit modes");
    }
    std::vector<int> counts(sources.size());
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] = sources[i] + initial[i];
    const OccupationVector start(std::move(counts));

    auto schrodinger = evolve(c, make_basis_state(c.registry(), start)).state;
    auto heisenberg = expand_on_vacuum(build_transfer(c), start);
    if (schrodinger.registry() != heisenberg.registry()) {
        throw std::logic_error("engines allocated different environment modes");
    }
    double worst = 0;
    for (const auto &[occ, amp] : schrodinger.terms()) {
        worst = std::max(worst, std::abs(amp - heisenberg.amplitude(occ)));
    }
    for (const auto &[occ, amp] : heisenberg.terms()) {
        worst = std::max(worst, std::abs(amp - schrodinger.amplitude(occ)));
    }
    return worst;
}

Circuit random_circuit(std::uint64_t seed, int max_modes) {
    std::mt19937_64 rng(seed);
    auto uniform_int = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };

    Circuit c;
    const int signal = uniform_int(2, std::min(5, max_modes));
    for (int i = 0; i < signal; ++i) c.modes.push_back("m" + std::to_string(i));

    const int photons = uniform_int(0, 2);
    std::map<int, int> placed;
    for (int k = 0; k < photons; ++k) placed[uniform_int(0, signal - 1)] += 1;
    for (const auto &[mode, n] : placed) c.elements.emplace_back(SourceElement{c.modes[mode], n});

    int total_modes = signal;
    std::set<int> detected;
    const int steps = uniform_int(1, 10);
    for (int k = 0; k < steps; ++k) {
        const int kind = uniform_int(0, 9);
        const int a = uniform_int(0, signal - 1);
        if (detected.contains(a)) continue;
        if (kind < 6) {
            int b = uniform_int(0, signal - 2);
            if (b >= a) ++b;
            if (detected.contains(b)) continue;
            double kappa = uniform_int(0, 4) == 0 ? 1.0 : uniform(0.9, 1.0);
            Angle theta = Angle::literal(uniform(1e-6, std::numbers::pi / 2 - 1e-6));
            BeamSplitterElement bs{c.modes[a], c.modes[b], theta, kappa};
            if (total_modes + env_modes_allocated(bs) > max_modes) continue;
            total_modes += env_modes_allocated(bs);
            c.elements.emplace_back(std::move(bs));
        } else if (kind < 8) {
            c.elements.emplace_back(PhaseShifterElement{c.modes[a], Angle::literal(uniform(0.0, 2 * std::numbers::pi))});
        } else {
            DetectElement det{c.modes[a], uniform(0.7, 1.0)};
            if (total_modes + env_modes_allocated(det) > max_modes) continue;
            total_modes += env_modes_allocated(det);
            detected.insert(a);
            c.elements.emplace_back(std::move(det));
        }
    }
    return c;
}

}  // namespace qsplit
