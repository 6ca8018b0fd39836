// Copyright 2026 The Photonlab Authors
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

#ifndef PHOTONLAB_TENSOR_SPARSE_TENSOR_H
#define PHOTONLAB_TENSOR_SPARSE_TENSOR_H

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace photonlab {

using Complex = std::complex<double>;

/// Amplitudes with magnitude below this are dropped after every operation.
inline constexpr double kPruneEpsilon = 1e-12;

/// Raised when tensor dimensions do not line up (name, size, or label order).
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A named tensor axis with labeled coordinates, e.g. "polarization" = {H, V}.
///
/// Names may carry a particle tag separated by a dot ("p1.polarization"). The tag groups
/// axes into particles for partial traces and contractions.
struct Dimension {
    std::string name;
    std::vector<std::string> labels;

    Dimension(std::string name, std::vector<std::string> labels);

    size_t size() const {
        return labels.size();
    }
    std::string_view particle() const;
    std::string_view base_name() const;
    size_t index_of(std::string_view label) const;

    bool operator==(const Dimension &other) const = default;
};

/// Returns `dim` renamed to "<tag>.<base name>".
Dimension tagged(const Dimension &dim, std::string_view tag);

/// Ordered dimensions plus the mixed-radix strides used to pack a multi-index into one key.
/// The first dimension is the most significant digit.
class Layout {
   public:
    Layout() = default;
    explicit Layout(std::vector<Dimension> dims);

    const std::vector<Dimension> &dims() const {
        return dims_;
    }
    size_t rank() const {
        return dims_.size();
    }
    uint64_t total_size() const {
        return total_;
    }
    uint64_t stride(size_t axis) const {
        return strides_[axis];
    }
    uint32_t coordinate(uint64_t key, size_t axis) const {
        return static_cast<uint32_t>((key / strides_[axis]) % dims_[axis].size());
    }

    uint64_t encode(std::span<const uint32_t> coords) const;
    std::vector<uint32_t> decode(uint64_t key) const;
    std::optional<size_t> find(std::string_view name) const;
    size_t require(std::string_view name) const;

    /// Distinct particle tags in order of first appearance. Untagged axes belong to no particle.
    std::vector<std::string> particles() const;
    /// Axes belonging to the given particle tag, in layout order.
    std::vector<size_t> axes_of(std::string_view particle) const;

    bool operator==(const Layout &other) const {
        return dims_ == other.dims_;
    }

   private:
    std::vector<Dimension> dims_;
    std::vector<uint64_t> strides_;
    uint64_t total_ = 1;
};

struct Entry {
    uint64_t key;
    Complex amplitude;
};

/// Sparse complex vector over named dimensions. Entries are kept sorted by key with
/// duplicates merged and amplitudes below kPruneEpsilon removed.
///
/// A vector with no dimensions is a scalar (the zero-photon state) stored under key 0.
class SparseVector {
   public:
    SparseVector() = default;
    SparseVector(std::vector<Dimension> dims, std::vector<Entry> entries);
    SparseVector(Layout layout, std::vector<Entry> entries);

    static SparseVector basis(std::vector<Dimension> dims, std::span<const uint32_t> coords, Complex amplitude = 1);
    static SparseVector scalar(Complex value);
    /// Builds from dense amplitudes in row-major order of `dims`.
    static SparseVector from_dense(std::vector<Dimension> dims, std::span<const Complex> amplitudes);

    const Layout &layout() const {
        return layout_;
    }
    const std::vector<Dimension> &dims() const {
        return layout_.dims();
    }
    std::span<const Entry> entries() const {
        return entries_;
    }
    size_t size() const {
        return entries_.size();
    }
    bool empty() const {
        return entries_.empty();
    }

    Complex at(uint64_t key) const;
    Complex at(std::span<const uint32_t> coords) const {
        return at(layout_.encode(coords));
    }

    double norm_squared() const;
    double norm() const;
    SparseVector scaled(Complex factor) const;
    SparseVector normalized() const;
    std::vector<Complex> to_dense() const;

   private:
    Layout layout_;
    std::vector<Entry> entries_;
};

struct OperatorEntry {
    uint64_t out;
    uint64_t in;
    Complex value;
};

/// Sparse complex matrix from `in_dims` to `out_dims`, stored column-major (sorted by in key,
/// then out key) so a column is a contiguous range.
class SparseOperator {
   public:
    SparseOperator() = default;
    SparseOperator(std::vector<Dimension> out_dims, std::vector<Dimension> in_dims, std::vector<OperatorEntry> entries);

    static SparseOperator identity(std::vector<Dimension> dims);
    /// Builds from a dense row-major (out x in) matrix.
    static SparseOperator from_dense(
        std::vector<Dimension> out_dims, std::vector<Dimension> in_dims, std::span<const Complex> matrix);
    /// Square operator from a dense matrix over the same dims.
    static SparseOperator from_dense(std::vector<Dimension> dims, std::span<const Complex> matrix) {
        return from_dense(dims, dims, matrix);
    }
    /// |ket><bra|
    static SparseOperator outer(const SparseVector &ket, const SparseVector &bra);

    const Layout &out_layout() const {
        return out_;
    }
    const Layout &in_layout() const {
        return in_;
    }
    const std::vector<Dimension> &out_dims() const {
        return out_.dims();
    }
    const std::vector<Dimension> &in_dims() const {
        return in_.dims();
    }
    bool is_square() const {
        return out_ == in_;
    }
    std::span<const OperatorEntry> entries() const {
        return entries_;
    }
    std::span<const OperatorEntry> column(uint64_t in_key) const;
    Complex at(uint64_t out_key, uint64_t in_key) const;

    std::vector<Complex> to_dense() const;

   private:
    Layout out_;
    Layout in_;
    std::vector<OperatorEntry> entries_;
};

/// How apply_on_subset treats input columns the operator does not store.
enum class MissingColumns {
    kZero,      ///< Plain matrix semantics.
    kIdentity,  ///< Operator is identity outside its stored columns.
};

SparseVector tensor_product(const SparseVector &a, const SparseVector &b);
SparseOperator tensor_product(const SparseOperator &a, const SparseOperator &b);

/// Applies `op` to the named axes of `v`, identity on the rest.
///
/// `op.in_dims()[i]` is matched against the axis of `v` named `target_dims[i]`: sizes and labels
/// must agree, and the operator's dimension name must equal either the full or the untagged name.
/// The result keeps the axis name of `v` and takes labels from `op.out_dims()[i]`.
SparseVector apply_on_subset(
    const SparseOperator &op,
    std::span<const std::string> target_dims,
    const SparseVector &v,
    MissingColumns missing = MissingColumns::kZero);

/// Applies `op` to every axis of `v` (dimensions must match exactly).
SparseVector apply(const SparseOperator &op, const SparseVector &v);

/// <a|b>, conjugating `a`.
Complex inner_product(const SparseVector &a, const SparseVector &b);

/// Contracts <bra| against the matching axes of `v`. The bra's dimensions are located in `v`
/// by exact name and removed from the result.
SparseVector partial_inner(const SparseVector &bra, const SparseVector &v);

/// Tr[rho^2] of the reduced state of the `particle`-th particle tag of a normalized vector.
double subsystem_purity(const SparseVector &v, size_t particle);

SparseOperator compose(const SparseOperator &a, const SparseOperator &b);
SparseOperator dagger(const SparseOperator &a);
SparseOperator add(const SparseOperator &a, const SparseOperator &b);
SparseOperator scale(const SparseOperator &a, Complex factor);

/// Largest entrywise |a - b|; dimensions must agree.
double max_abs_difference(const SparseOperator &a, const SparseOperator &b);
double max_abs_difference(const SparseVector &a, const SparseVector &b);

/// Largest deviation of a^dagger a from the identity.
double unitarity_error(const SparseOperator &a);

/// Renames every axis tagged `from` to tag `to`.
SparseVector retag(const SparseVector &v, std::string_view from, std::string_view to);
SparseOperator retag(const SparseOperator &op, std::string_view from, std::string_view to);

/// Reorders axes; `order[i]` is the old axis placed at position i.
SparseVector permute_axes(const SparseVector &v, std::span<const size_t> order);
SparseOperator permute_axes(const SparseOperator &op, std::span<const size_t> order);

/// Exchanges the coordinates of two particles with identical (untagged) dimensions.
SparseVector swap_particles(const SparseVector &v, std::string_view a, std::string_view b);

}  // namespace photonlab

#endif
