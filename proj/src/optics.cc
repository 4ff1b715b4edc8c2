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

#include "qsplit/optics.h"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qsplit {

namespace {

// Large enough for any cutoff a state can carry in practice.
constexpr int kMaxFactorial = 20;

double factorial(int n) {
    static const auto table = [] {
        std::array<double, kMaxFactorial + 1> f{};
        f[0] = 1;
        for (int i = 1; i <= kMaxFactorial; ++i) f[i] = f[i - 1] * i;
        return f;
    }();
    if (n < 0 || n > kMaxFactorial) {
        throw std::out_of_range("factorial argument out of range");
    }
    return table[n];
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

template <typename T>
T ipow(T base, int e) {
    T out{1};
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

void require_mode(const SparseState &s, ModeId m) {
    if (!s.registry().contains(m)) {
        throw std::invalid_argument("mode index outside registry");
    }
}

void require_unit_interval(double v, const char *what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(what) + " out of range [0,1]: " + std::to_string(v));
    }
}

}  // namespace

BeamSplitterParams::BeamSplitterParams(double theta_, double kappa_) : theta(theta_), kappa(kappa_) {
    require_unit_interval(kappa, "kappa");
}

double BeamSplitterParams::T() const { return std::cos(theta); }
double BeamSplitterParams::R() const { return std::sin(theta); }
double BeamSplitterParams::t() const { return std::sqrt(kappa) * T(); }
double BeamSplitterParams::r() const { return std::sqrt(kappa) * R(); }

DetectorParams::DetectorParams(double epsilon_) : epsilon(epsilon_) {
    require_unit_interval(epsilon, "epsilon");
}

SparseState apply_ideal_bs(const SparseState &s, ModeId m1, ModeId m2, double theta) {
    require_mode(s, m1);
    require_mode(s, m2);
    if (m1 == m2) {
        throw std::invalid_argument("beam splitter modes must differ");
    }
    const double T = std::cos(theta);
    const Amplitude iR{0.0, std::sin(theta)};

    // |n1,n2> = a+^n1 b+^n2 |0> / sqrt(n1! n2!). Expanding
    // (T a+ + iR b+)^n1 (iR a+ + T b+)^n2 with the binomial theorem gives
    // a+^(j+k) b+^(n1-j+n2-k) with weight C(n1,j) C(n2,k) T^j (iR)^(n1-j) (iR)^k T^(n2-k).
    SparseState::Terms out;
    for (const auto &[occ, amp] : s.terms()) {
        const int n1 = occ[m1];
        const int n2 = occ[m2];
        const double in_norm = std::sqrt(factorial(n1) * factorial(n2));
        for (int j = 0; j <= n1; ++j) {
            for (int k = 0; k <= n2; ++k) {
                const int p = j + k;
                const int q = n1 + n2 - p;
                Amplitude w = binomial(n1, j) * binomial(n2, k) * ipow(T, j + n2 - k) *
                              ipow(iR, n1 - j + k);
                w *= std::sqrt(factorial(p) * factorial(q)) / in_norm;
                out[occ.with(m1, p).with(m2, q)] += amp * w;
            }
        }
    }
    return SparseState(s.registry(), std::move(out), s.cutoff());
}

SparseState apply_phase_shifter(const SparseState &s, ModeId m, double theta) {
    require_mode(s, m);
    SparseState::Terms out;
    for (const auto &[occ, amp] : s.terms()) {
        out.emplace(occ, amp * std::polar(1.0, theta * occ[m]));
    }
    return SparseState(s.registry(), std::move(out), s.cutoff());
}

SparseState apply_loss_channel(const SparseState &s, ModeId m, double transmission) {
    require_mode(s, m);
    require_unit_interval(transmission, "transmission");
    const double keep = std::sqrt(transmission);
    const double lose = std::sqrt(1.0 - transmission);

    // |n>_m |0>_e -> sum_j sqrt(C(n,j)) keep^j lose^(n-j) |j>_m |n-j>_e
    SparseState::Terms out;
    for (const auto &[occ, amp] : s.terms()) {
        const int n = occ[m];
        for (int j = 0; j <= n; ++j) {
            double w = std::sqrt(binomial(n, j)) * ipow(keep, j) * ipow(lose, n - j);
            if (w == 0.0) continue;
            out[occ.with(m, j).appended(n - j)] += amp * w;
        }
    }
    return SparseState(s.registry().with_env_mode(), std::move(out), s.cutoff());
}

SparseState apply_lossy_bs(const SparseState &s, ModeId m1, ModeId m2, const BeamSplitterParams &p) {
    require_mode(s, m1);
    require_mode(s, m2);
    if (m1 == m2) {
        throw std::invalid_argument("beam splitter modes must differ");
    }
    auto lossy = apply_loss_channel(s, m1, p.kappa);
    lossy = apply_loss_channel(lossy, m2, p.kappa);
    return apply_ideal_bs(lossy, m1, m2, p.theta);
}

std::vector<DetectionOutcome> detect_pnr(const SparseState &s, ModeId m, const DetectorParams &d) {
    require_mode(s, m);
    auto attenuated = apply_loss_channel(s, m, d.epsilon);
    std::array<ModeId, 1> modes{m};
    std::vector<DetectionOutcome> out;
    for (const auto &[counts, prob] : outcome_distribution(attenuated, modes)) {
        if (prob <= 0) continue;
        auto proj = project_modes(attenuated, modes, counts);
        out.push_back({counts.front(), proj.probability, std::move(proj.collapsed)});
    }
    return out;
}

}  // namespace qsplit
