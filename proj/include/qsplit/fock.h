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

#ifndef QSPLIT_FOCK_H
#define QSPLIT_FOCK_H

#include <complex>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qsplit {

using Amplitude = std::complex<double>;

/// Largest total photon number any state may hold unless overridden.
inline constexpr int kDefaultCutoff = 4;

/// Amplitudes with magnitude below this are dropped after every operation.
inline constexpr double kPruneThreshold = 1e-15;

/// Index of a mode inside a ModeRegistry.
struct ModeId {
    std::size_t index = 0;
    auto operator<=>(const ModeId &) const = default;
};

/// Photon counts per mode. Ordered lexicographically.
class OccupationVector {
   public:
    OccupationVector() = default;
    explicit OccupationVector(std::vector<int> counts);
    OccupationVector(std::initializer_list<int> counts);

    std::size_t size() const { return counts_.size(); }
    int operator[](std::size_t i) const { return counts_[i]; }
    int operator[](ModeId m) const { return counts_[m.index]; }
    int total() const;
    const std::vector<int> &counts() const { return counts_; }

    OccupationVector with(ModeId m, int count) const;
    OccupationVector appended(int count) const;
    OccupationVector restricted(std::span<const ModeId> modes) const;

    std::string str() const;

    auto operator<=>(const OccupationVector &) const = default;

   private:
    std::vector<int> counts_;
};

/// Ordered list of mode labels. Environment modes are appended on demand and
/// are named "env<k>" in allocation order.
class ModeRegistry {
   public:
    ModeRegistry() = default;
    explicit ModeRegistry(std::vector<std::string> signal_labels);

    std::size_t size() const { return labels_.size(); }
    std::size_t env_count() const { return env_count_; }
    const std::vector<std::string> &labels() const { return labels_; }
    const std::string &label(ModeId m) const { return labels_.at(m.index); }

    std::optional<ModeId> find(std::string_view label) const;
    /// Throws std::invalid_argument for an unknown label.
    ModeId at(std::string_view label) const;
    bool contains(ModeId m) const { return m.index < labels_.size(); }
    bool is_environment(ModeId m) const;

    /// Registry with one more environment mode at the end.
    ModeRegistry with_env_mode() const;
    /// Concatenation; labels must stay unique.
    ModeRegistry joined(const ModeRegistry &other) const;

    static bool is_reserved_label(std::string_view label);

    bool operator==(const ModeRegistry &) const = default;

   private:
    std::vector<std::string> labels_;
    std::vector<bool> env_;
    std::size_t env_count_ = 0;
};

/// Pure (possibly sub-normalized) state over a mode registry, stored sparsely.
class SparseState {
   public:
    using Terms = std::map<OccupationVector, Amplitude>;

    explicit SparseState(ModeRegistry registry, int cutoff = kDefaultCutoff);
    SparseState(ModeRegistry registry, Terms terms, int cutoff = kDefaultCutoff);

    const ModeRegistry &registry() const { return registry_; }
    const Terms &terms() const { return terms_; }
    int cutoff() const { return cutoff_; }
    std::size_t mode_count() const { return registry_.size(); }
    ModeId mode(std::string_view label) const { return registry_.at(label); }

    Amplitude amplitude(const OccupationVector &occ) const;
    double norm_squared() const;
    /// Highest total photon number present in any term.
    int max_photons() const;
    bool empty() const { return terms_.empty(); }

    SparseState scaled(Amplitude factor) const;
    SparseState normalized() const;

   private:
    ModeRegistry registry_;
    Terms terms_;
    int cutoff_;
};

/// Hermitian matrix over the Fock basis of a subset of modes.
class DensityMatrix {
   public:
    DensityMatrix(std::vector<std::string> kept_labels, std::vector<OccupationVector> basis,
                  Eigen::MatrixXcd entries);

    const std::vector<std::string> &kept_labels() const { return kept_labels_; }
    const std::vector<OccupationVector> &basis() const { return basis_; }
    const Eigen::MatrixXcd &entries() const { return entries_; }

    std::optional<std::size_t> index_of(const OccupationVector &occ) const;
    Amplitude element(const OccupationVector &row, const OccupationVector &col) const;
    double trace() const;
    double hermiticity_error() const;
    double min_eigenvalue() const;
    DensityMatrix normalized() const;

   private:
    std::vector<std::string> kept_labels_;
    std::vector<OccupationVector> basis_;
    Eigen::MatrixXcd entries_;
};

SparseState make_basis_state(const ModeRegistry &registry, const OccupationVector &occ,
                             int cutoff = kDefaultCutoff);

/// Conjugate-linear in the first argument.
Amplitude inner_product(const SparseState &x, const SparseState &y);

/// Linear combination alpha*x + beta*y over the same registry.
SparseState superpose(Amplitude alpha, const SparseState &x, Amplitude beta, const SparseState &y);

/// Product state; the registries are concatenated in argument order.
SparseState tensor(const SparseState &x, const SparseState &y);

struct Projection {
    double probability = 0.0;
    SparseState collapsed;
};

/// Projects `modes` onto the counts in `outcome`. The probability is taken
/// relative to the norm of `s`; the collapsed state is renormalized and keeps
/// the full registry (measured modes stay at their outcome counts).
Projection project_modes(const SparseState &s, std::span<const ModeId> modes,
                         std::span<const int> outcome);

/// Outcome probabilities (relative to the norm of `s`) for a joint
/// photon-count measurement of `modes`, in lexicographic outcome order.
std::map<std::vector<int>, double> outcome_distribution(const SparseState &s,
                                                        std::span<const ModeId> modes);

/// Reduced state of `keep`. The basis holds every occupation of the kept modes
/// with total photon number up to s.max_photons(), in lexicographic order.
DensityMatrix partial_trace(const SparseState &s, std::span<const ModeId> keep);
DensityMatrix partial_trace(const SparseState &s, const std::vector<std::string> &keep_labels);

/// <target|rho|target>. The target's registry labels must equal the kept
/// labels of rho, in order.
double fidelity_pure(const SparseState &target, const DensityMatrix &rho);

/// Every occupation of `modes` modes with total count <= max_total, lexicographic.
std::vector<OccupationVector> enumerate_basis(std::size_t modes, int max_total);

}  // namespace qsplit

#endif  // QSPLIT_FOCK_H
