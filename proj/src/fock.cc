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

#include "qsplit/fock.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qsplit {

namespace {

void prune(SparseState::Terms &terms) {
    std::erase_if(terms, [](const auto &kv) { return std::abs(kv.second) < kPruneThreshold; });
}

void require_same_registry(const SparseState &x, const SparseState &y, const char *op) {
    if (x.registry() != y.registry()) {
        throw std::invalid_argument(std::string(op) + ": mode registry mismatch");
    }
}

void enumerate_rec(std::vector<int> &cur, std::size_t pos, int remaining,
                   std::vector<OccupationVector> &out) {
    if (pos == cur.size()) {
        out.emplace_back(cur);
        return;
    }
    for (int n = 0; n <= remaining; ++n) {
        cur[pos] = n;
        enumerate_rec(cur, pos + 1, remaining - n, out);
    }
    cur[pos] = 0;
}

}  // namespace

OccupationVector::OccupationVector(std::vector<int> counts) : counts_(std::move(counts)) {
    for (int c : counts_) {
        if (c < 0) {
            throw std::invalid_argument("negative photon count");
        }
    }
}

OccupationVector::OccupationVector(std::initializer_list<int> counts)
    : OccupationVector(std::vector<int>(counts)) {}

int OccupationVector::total() const { return std::accumulate(counts_.begin(), counts_.end(), 0); }

OccupationVector OccupationVector::with(ModeId m, int count) const {
    auto copy = counts_;
    copy.at(m.index) = count;
    return OccupationVector(std::move(copy));
}

OccupationVector OccupationVector::appended(int count) const {
    auto copy = counts_;
    copy.push_back(count);
    return OccupationVector(std::move(copy));
}

OccupationVector OccupationVector::restricted(std::span<const ModeId> modes) const {
    std::vector<int> out;
    out.reserve(modes.size());
    for (auto m : modes) {
        out.push_back(counts_.at(m.index));
    }
    return OccupationVector(std::move(out));
}

std::string OccupationVector::str() const {
    std::string s = "|";
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(counts_[i]);
    }
    return s + ">";
}

ModeRegistry::ModeRegistry(std::vector<std::string> signal_labels) {
    for (auto &label : signal_labels) {
        if (label.empty()) {
            throw std::invalid_argument("empty mode label");
        }
        if (find(label)) {
            throw std::invalid_argument("duplicate mode label " + label);
        }
        labels_.push_back(std::move(label));
        env_.push_back(false);
    }
}

std::optional<ModeId> ModeRegistry::find(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return ModeId{static_cast<std::size_t>(it - labels_.begin())};
}

ModeId ModeRegistry::at(std::string_view label) const {
    if (auto m = find(label)) return *m;
    throw std::invalid_argument("unknown mode " + std::string(label));
}

bool ModeRegistry::is_environment(ModeId m) const { return env_.at(m.index); }

ModeRegistry ModeRegistry::with_env_mode() const {
    ModeRegistry r = *this;
    std::string label = "env" + std::to_string(env_count_);
    if (r.find(label)) {
        throw std::invalid_argument("environment label collision: " + label);
    }
    r.labels_.push_back(std::move(label));
    r.env_.push_back(true);
    r.env_count_ += 1;
    return r;
}

ModeRegistry ModeRegistry::joined(const ModeRegistry &other) const {
    ModeRegistry r = *this;
    for (std::size_t i = 0; i < other.labels_.size(); ++i) {
        if (r.find(other.labels_[i])) {
            throw std::invalid_argument("duplicate mode label " + other.labels_[i]);
        }
        r.labels_.push_back(other.labels_[i]);
        r.env_.push_back(other.env_[i]);
    }
    r.env_count_ += other.env_count_;
    return r;
}

bool ModeRegistry::is_reserved_label(std::string_view label) {
    if (!label.starts_with("env") || label.size() == 3) return false;
    return std::all_of(label.begin() + 3, label.end(), [](char c) { return c >= '0' && c <= '9'; });
}

SparseState::SparseState(ModeRegistry registry, int cutoff)
    : registry_(std::move(registry)), cutoff_(cutoff) {}

SparseState::SparseState(ModeRegistry registry, Terms terms, int cutoff)
    : registry_(std::move(registry)), terms_(std::move(terms)), cutoff_(cutoff) {
    prune(terms_);
    for (const auto &[occ, amp] : terms_) {
        if (occ.size() != registry_.size()) {
            throw std::invalid_argument("occupation vector length does not match registry");
        }
        if (occ.total() > cutoff_) {
            throw std::out_of_range("photon cutoff exceeded: " + occ.str() + " with cutoff " +
                                    std::to_string(cutoff_));
        }
    }
    if (norm_squared() > 1.0 + 1e-12) {
        throw std::invalid_argument("state norm exceeds 1");
    }
}

Amplitude SparseState::amplitude(const OccupationVector &occ) const {
    auto it = terms_.find(occ);
    return it == terms_.end() ? Amplitude{} : it->second;
}

double SparseState::norm_squared() const {
    double n = 0;
    for (const auto &[occ, amp] : terms_) n += std::norm(amp);
    return n;
}

int SparseState::max_photons() const {
    int m = 0;
    for (const auto &[occ, amp] : terms_) m = std::max(m, occ.total());
    return m;
}

SparseState SparseState::scaled(Amplitude factor) const {
    Terms out;
    for (const auto &[occ, amp] : terms_) out.emplace(occ, amp * factor);
    return SparseState(registry_, std::move(out), cutoff_);
}

SparseState SparseState::normalized() const {
    double n = norm_squared();
    if (n <= 0) {
        throw std::domain_error("cannot normalize the zero state");
    }
    return scaled(1.0 / std::sqrt(n));
}

DensityMatrix::DensityMatrix(std::vector<std::string> kept_labels,
                             std::vector<OccupationVector> basis, Eigen::MatrixXcd entries)
    : kept_labels_(std::move(kept_labels)), basis_(std::move(basis)), entries_(std::move(entries)) {
    auto n = static_cast<Eigen::Index>(basis_.size());
    if (entries_.rows() != n || entries_.cols() != n) {
        throw std::invalid_argument("density matrix shape does not match basis");
    }
}

std::optional<std::size_t> DensityMatrix::index_of(const OccupationVector &occ) const {
    auto it = std::lower_bound(basis_.begin(), basis_.end(), occ);
    if (it == basis_.end() || *it != occ) return std::nullopt;
    return static_cast<std::size_t>(it - basis_.begin());
}

Amplitude DensityMatrix::element(const OccupationVector &row, const OccupationVector &col) const {
    auto i = index_of(row);
    auto j = index_of(col);
    if (!i || !j) return {};
    return entries_(static_cast<Eigen::Index>(*i), static_cast<Eigen::Index>(*j));
}

double DensityMatrix::trace() const { return entries_.trace().real(); }

double DensityMatrix::hermiticity_error() const {
    if (entries_.size() == 0) return 0;
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    if (entries_.size() == 0) return 0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

DensityMatrix DensityMatrix::normalized() const {
    double t = trace();
    if (t <= 0) {
        throw std::domain_error("cannot normalize a zero-trace density matrix");
    }
    return DensityMatrix(kept_labels_, basis_, entries_ / t);
}

SparseState make_basis_state(const ModeRegistry &registry, const OccupationVector &occ,
                             int cutoff) {
    return SparseState(registry, {{occ, Amplitude{1.0}}}, cutoff);
}

Amplitude inner_product(const SparseState &x, const SparseState &y) {
    require_same_registry(x, y, "inner_product");
    Amplitude sum{};
    const auto &small = x.terms().size() <= y.terms().size() ? x.terms() : y.terms();
    bool x_small = &small == &x.terms();
    for (const auto &[occ, amp] : small) {
        Amplitude other = x_small ? y.amplitude(occ) : x.amplitude(occ);
        sum += x_small ? std::conj(amp) * other : std::conj(other) * amp;
    }
    return sum;
}

SparseState superpose(Amplitude alpha, const SparseState &x, Amplitude beta,
                      const SparseState &y) {
    require_same_registry(x, y, "superpose");
    SparseState::Terms out;
    for (const auto &[occ, amp] : x.terms()) out[occ] += alpha * amp;
    for (const auto &[occ, amp] : y.terms()) out[occ] += beta * amp;
    return SparseState(x.registry(), std::move(out), std::max(x.cutoff(), y.cutoff()));
}

SparseState tensor(const SparseState &x, const SparseState &y) {
    ModeRegistry reg = x.registry().joined(y.registry());
    SparseState::Terms out;
    for (const auto &[ox, ax] : x.terms()) {
        for (const auto &[oy, ay] : y.terms()) {
            auto counts = ox.counts();
            counts.insert(counts.end(), oy.counts().begin(), oy.counts().end());
            out.emplace(OccupationVector(std::move(counts)), ax * ay);
        }
    }
    return SparseState(std::move(reg), std::move(out), std::max(x.cutoff(), y.cutoff()));
}

namespace {

void check_modes(const SparseState &s, std::span<const ModeId> modes) {
    std::set<ModeId> seen;
    for (auto m : modes) {
        if (!s.registry().contains(m)) {
            throw std::invalid_argument("mode index outside registry");
        }
        if (!seen.insert(m).second) {
            throw std::invalid_argument("repeated mode in measurement");
        }
    }
}

}  // namespace

Projection project_modes(const SparseState &s, std::span<const ModeId> modes,
                         std::span<const int> outcome) {
    check_modes(s, modes);
    if (modes.size() != outcome.size()) {
        throw std::invalid_argument("outcome length does not match measured modes");
    }
    double total = s.norm_squared();
    if (total <= 0) {
        throw std::domain_error("cannot measure the zero state");
    }
    SparseState::Terms kept;
    for (const auto &[occ, amp] : s.terms()) {
        bool match = true;
        for (std::size_t i = 0; i < modes.size() && match; ++i) {
            match = occ[modes[i]] == outcome[i];
        }
        if (match) kept.emplace(occ, amp);
    }
    SparseState component(s.registry(), std::move(kept), s.cutoff());
    double weight = component.norm_squared();
    if (weight <= 0) {
        return {0.0, SparseState(s.registry(), s.cutoff())};
    }
    return {weight / total, component.scaled(1.0 / std::sqrt(weight))};
}

std::map<std::vector<int>, double> outcome_distribution(const SparseState &s,
                                                        std::span<const ModeId> modes) {
    check_modes(s, modes);
    double total = s.norm_squared();
    if (total <= 0) {
        throw std::domain_error("cannot measure the zero state");
    }
    std::map<std::vector<int>, double> dist;
    for (const auto &[occ, amp] : s.terms()) {
        dist[occ.restricted(modes).counts()] += std::norm(amp) / total;
    }
    return dist;
}

std::vector<OccupationVector> enumerate_basis(std::size_t modes, int max_total) {
    std::vector<OccupationVector> out;
    std::vector<int> cur(modes, 0);
    enumerate_rec(cur, 0, max_total, out);
    std::sort(out.begin(), out.end());
    return out;
}

DensityMatrix partial_trace(const SparseState &s, std::span<const ModeId> keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: keep set is empty");
    }
    check_modes(s, keep);
    std::vector<std::string> labels;
    std::vector<bool> kept_flag(s.mode_count(), false);
    for (auto m : keep) {
        labels.push_back(s.registry().label(m));
        kept_flag[m.index] = true;
    }
    std::vector<ModeId> traced;
    for (std::size_t i = 0; i < s.mode_count(); ++i) {
        if (!kept_flag[i]) traced.push_back(ModeId{i});
    }

    auto basis = enumerate_basis(keep.size(), s.max_photons());
    auto dim = static_cast<Eigen::Index>(basis.size());

    // Group amplitudes by the traced-out configuration; each group is one
    // pure component of the mixture.
    std::map<OccupationVector, Eigen::VectorXcd> groups;
    for (const auto &[occ, amp] : s.terms()) {
        auto env = occ.restricted(traced);
        auto it = groups.find(env);
        if (it == groups.end()) {
            it = groups.emplace(env, Eigen::VectorXcd::Zero(dim)).first;
        }
        auto idx = std::lower_bound(basis.begin(), basis.end(), occ.restricted(keep)) - basis.begin();
        it->second(idx) += amp;
    }
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &[env, vec] : groups) {
        rho.noalias() += vec * vec.adjoint();
    }
    return DensityMatrix(std::move(labels), std::move(basis), std::move(rho));
}

DensityMatrix partial_trace(const SparseState &s, const std::vector<std::string> &keep_labels) {
    std::vector<ModeId> keep;
    keep.reserve(keep_labels.size());
    for (const auto &l : keep_labels) keep.push_back(s.mode(l));
    return partial_trace(s, keep);
}

double fidelity_pure(const SparseState &target, const DensityMatrix &rho) {
    if (target.registry().labels() != rho.kept_labels()) {
        throw std::invalid_argument("fidelity_pure: target modes do not match density matrix");
    }
    Amplitude sum{};
    for (const auto &[oi, ai] : target.terms()) {
        auto i = rho.index_of(oi);
        if (!i) continue;
        for (const auto &[oj, aj] : target.terms()) {
            auto j = rho.index_of(oj);
            if (!j) continue;
            sum += std::conj(ai) * rho.entries()(static_cast<Eigen::Index>(*i),
                                                 static_cast<Eigen::Index>(*j)) *
                   aj;
        }
    }
    return sum.real();
}

}  // namespace qsplit
