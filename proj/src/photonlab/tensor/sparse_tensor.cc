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

#include "photonlab/tensor/sparse_tensor.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>

namespace photonlab {

namespace {

std::string describe(const Dimension &d) {
    std::string out = d.name + "[";
    for (size_t k = 0; k < d.labels.size(); k++) {
        if (k) {
            out += ",";
        }
        out += d.labels[k];
    }
    return out + "]";
}

void check_finite(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::invalid_argument("non-finite amplitude");
    }
}

// Sorts by key, merges duplicates and prunes tiny amplitudes.
std::vector<Entry> canonicalize(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(), [](const Entry &a, const Entry &b) {
        return a.key < b.key;
    });
    std::vector<Entry> out;
    out.reserve(entries.size());
    for (const auto &e : entries) {
        check_finite(e.amplitude);
        if (!out.empty() && out.back().key == e.key) {
            out.back().amplitude += e.amplitude;
        } else {
            out.push_back(e);
        }
    }
    std::erase_if(out, [](const Entry &e) {
        return std::abs(e.amplitude) < kPruneEpsilon;
    });
    return out;
}

std::vector<OperatorEntry> canonicalize(std::vector<OperatorEntry> entries) {
    std::sort(entries.begin(), entries.end(), [](const OperatorEntry &a, const OperatorEntry &b) {
        return a.in != b.in ? a.in < b.in : a.out < b.out;
    });
    std::vector<OperatorEntry> out;
    out.reserve(entries.size());
    for (const auto &e : entries) {
        check_finite(e.value);
        if (!out.empty() && out.back().in == e.in && out.back().out == e.out) {
            out.back().value += e.value;
        } else {
            out.push_back(e);
        }
    }
    std::erase_if(out, [](const OperatorEntry &e) {
        return std::abs(e.value) < kPruneEpsilon;
    });
    return out;
}

// Accumulates amplitudes by key before canonicalization.
class Accumulator {
   public:
    void add(uint64_t key, Complex amp) {
        auto [it, inserted] = index_.try_emplace(key, entries_.size());
        if (inserted) {
            entries_.push_back({key, amp});
        } else {
            entries_[it->second].amplitude += amp;
        }
    }
    std::vector<Entry> take() {
        return std::move(entries_);
    }

   private:
    std::unordered_map<uint64_t, size_t> index_;
    std::vector<Entry> entries_;
};

bool same_shape(const Dimension &a, const Dimension &b) {
    return a.labels == b.labels;
}

void require_same_layout(const Layout &a, const Layout &b, const char *what) {
    if (!(a == b)) {
        throw DimensionError(std::string(what) + ": dimension mismatch");
    }
}

}  // namespace

Dimension::Dimension(std::string name_, std::vector<std::string> labels_)
    : name(std::move(name_)), labels(std::move(labels_)) {
    if (name.empty()) {
        throw DimensionError("dimension name must not be empty");
    }
    if (labels.empty()) {
        throw DimensionError("dimension '" + name + "' must have at least one coordinate");
    }
    std::set<std::string_view> seen;
    for (const auto &l : labels) {
        if (!seen.insert(l).second) {
            throw DimensionError("duplicate label '" + l + "' in dimension '" + name + "'");
        }
    }
}

std::string_view Dimension::particle() const {
    auto dot = name.find('.');
    if (dot == std::string::npos) {
        return {};
    }
    return std::string_view(name).substr(0, dot);
}

std::string_view Dimension::base_name() const {
    auto dot = name.find('.');
    if (dot == std::string::npos) {
        return name;
    }
    return std::string_view(name).substr(dot + 1);
}

size_t Dimension::index_of(std::string_view label) const {
    for (size_t k = 0; k < labels.size(); k++) {
        if (labels[k] == label) {
            return k;
        }
    }
    throw DimensionError("label '" + std::string(label) + "' not in dimension " + describe(*this));
}

Dimension tagged(const Dimension &dim, std::string_view tag) {
    return Dimension(std::string(tag) + "." + std::string(dim.base_name()), dim.labels);
}

Layout::Layout(std::vector<Dimension> dims) : dims_(std::move(dims)) {
    std::set<std::string_view> names;
    for (const auto &d : dims_) {
        if (!names.insert(d.name).second) {
            throw DimensionError("duplicate dimension name '" + d.name + "'");
        }
    }
    strides_.assign(dims_.size(), 1);
    total_ = 1;
    for (size_t k = dims_.size(); k-- > 0;) {
        strides_[k] = total_;
        auto size = static_cast<uint64_t>(dims_[k].size());
        if (total_ > std::numeric_limits<uint64_t>::max() / 2 / size) {
            throw DimensionError("tensor space too large for 64-bit keys");
        }
        total_ *= size;
    }
}

uint64_t Layout::encode(std::span<const uint32_t> coords) const {
    if (coords.size() != dims_.size()) {
        throw DimensionError("coordinate count does not match rank");
    }
    uint64_t key = 0;
    for (size_t k = 0; k < coords.size(); k++) {
        if (coords[k] >= dims_[k].size()) {
            throw DimensionError("coordinate out of bounds in dimension '" + dims_[k].name + "'");
        }
        key += coords[k] * strides_[k];
    }
    return key;
}

std::vector<uint32_t> Layout::decode(uint64_t key) const {
    std::vector<uint32_t> coords(dims_.size());
    for (size_t k = 0; k < dims_.size(); k++) {
        coords[k] = coordinate(key, k);
    }
    return coords;
}

std::optional<size_t> Layout::find(std::string_view name) const {
    for (size_t k = 0; k < dims_.size(); k++) {
        if (dims_[k].name == name) {
            return k;
        }
    }
    return std::nullopt;
}

size_t Layout::require(std::string_view name) const {
    auto k = find(name);
    if (!k) {
        throw DimensionError("no dimension named '" + std::string(name) + "'");
    }
    return *k;
}

std::vector<std::string> Layout::particles() const {
    std::vector<std::string> out;
    for (const auto &d : dims_) {
        std::string tag(d.particle());
        if (!tag.empty() && std::find(out.begin(), out.end(), tag) == out.end()) {
            out.push_back(tag);
        }
    }
    return out;
}

std::vector<size_t> Layout::axes_of(std::string_view particle) const {
    std::vector<size_t> out;
    for (size_t k = 0; k < dims_.size(); k++) {
        if (dims_[k].particle() == particle) {
            out.push_back(k);
        }
    }
    return out;
}

SparseVector::SparseVector(std::vector<Dimension> dims, std::vector<Entry> entries)
    : SparseVector(Layout(std::move(dims)), std::move(entries)) {
}

SparseVector::SparseVector(Layout layout, std::vector<Entry> entries)
    : layout_(std::move(layout)), entries_(canonicalize(std::move(entries))) {
    if (!entries_.empty() && entries_.back().key >= layout_.total_size()) {
        throw DimensionError("entry key out of bounds");
    }
}

SparseVector SparseVector::basis(std::vector<Dimension> dims, std::span<const uint32_t> coords, Complex amplitude) {
    Layout layout(std::move(dims));
    auto key = layout.encode(coords);
    return SparseVector(std::move(layout), {{key, amplitude}});
}

SparseVector SparseVector::scalar(Complex value) {
    return SparseVector(Layout{}, {{0, value}});
}

SparseVector SparseVector::from_dense(std::vector<Dimension> dims, std::span<const Complex> amplitudes) {
    Layout layout(std::move(dims));
    if (amplitudes.size() != layout.total_size()) {
        throw DimensionError("dense vector size does not match dimensions");
    }
    std::vector<Entry> entries;
    for (size_t k = 0; k < amplitudes.size(); k++) {
        if (amplitudes[k] != Complex{}) {
            entries.push_back({k, amplitudes[k]});
        }
    }
    return SparseVector(std::move(layout), std::move(entries));
}

Complex SparseVector::at(uint64_t key) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key, [](const Entry &e, uint64_t k) {
        return e.key < k;
    });
    if (it != entries_.end() && it->key == key) {
        return it->amplitude;
    }
    return {};
}

double SparseVector::norm_squared() const {
    double total = 0;
    for (const auto &e : entries_) {
        total += std::norm(e.amplitude);
    }
    return total;
}

double SparseVector::norm() const {
    return std::sqrt(norm_squared());
}

SparseVector SparseVector::scaled(Complex factor) const {
    std::vector<Entry> out(entries_.begin(), entries_.end());
    for (auto &e : out) {
        e.amplitude *= factor;
    }
    return SparseVector(layout_, std::move(out));
}

SparseVector SparseVector::normalized() const {
    double n = norm();
    if (n == 0) {
        throw std::domain_error("cannot normalize a zero vector");
    }
    return scaled(1.0 / n);
}

std::vector<Complex> SparseVector::to_dense() const {
    if (layout_.total_size() > (uint64_t{1} << 24)) {
        throw std::length_error("vector too large to densify");
    }
    std::vector<Complex> out(layout_.total_size());
    for (const auto &e : entries_) {
        out[e.key] = e.amplitude;
    }
    return out;
}

SparseOperator::SparseOperator(
    std::vector<Dimension> out_dims, std::vector<Dimension> in_dims, std::vector<OperatorEntry> entries)
    : out_(std::move(out_dims)), in_(std::move(in_dims)), entries_(canonicalize(std::move(entries))) {
    for (const auto &e : entries_) {
        if (e.out >= out_.total_size() || e.in >= in_.total_size()) {
            throw DimensionError("operator entry out of bounds");
        }
    }
}

SparseOperator SparseOperator::identity(std::vector<Dimension> dims) {
    Layout layout(dims);
    std::vector<OperatorEntry> entries;
    entries.reserve(layout.total_size());
    for (uint64_t k = 0; k < layout.total_size(); k++) {
        entries.push_back({k, k, 1});
    }
    return SparseOperator(dims, dims, std::move(entries));
}

SparseOperator SparseOperator::from_dense(
    std::vector<Dimension> out_dims, std::vector<Dimension> in_dims, std::span<const Complex> matrix) {
    Layout out(out_dims);
    Layout in(in_dims);
    if (matrix.size() != out.total_size() * in.total_size()) {
        throw DimensionError("dense matrix size does not match dimensions");
    }
    std::vector<OperatorEntry> entries;
    for (uint64_t r = 0; r < out.total_size(); r++) {
        for (uint64_t c = 0; c < in.total_size(); c++) {
            auto z = matrix[r * in.total_size() + c];
            if (z != Complex{}) {
                entries.push_back({r, c, z});
            }
        }
    }
    return SparseOperator(std::move(out_dims), std::move(in_dims), std::move(entries));
}

SparseOperator SparseOperator::outer(const SparseVector &ket, const SparseVector &bra) {
    std::vector<OperatorEntry> entries;
    entries.reserve(ket.size() * bra.size());
    for (const auto &k : ket.entries()) {
        for (const auto &b : bra.entries()) {
            entries.push_back({k.key, b.key, k.amplitude * std::conj(b.amplitude)});
        }
    }
    return SparseOperator(ket.dims(), bra.dims(), std::move(entries));
}

std::span<const OperatorEntry> SparseOperator::column(uint64_t in_key) const {
    auto lo = std::lower_bound(entries_.begin(), entries_.end(), in_key, [](const OperatorEntry &e, uint64_t k) {
        return e.in < k;
    });
    auto hi = lo;
    while (hi != entries_.end() && hi->in == in_key) {
        ++hi;
    }
    return {lo, hi};
}

Complex SparseOperator::at(uint64_t out_key, uint64_t in_key) const {
    for (const auto &e : column(in_key)) {
        if (e.out == out_key) {
            return e.value;
        }
    }
    return {};
}

std::vector<Complex> SparseOperator::to_dense() const {
    auto rows = out_.total_size();
    auto cols = in_.total_size();
    if (rows * cols > (uint64_t{1} << 24)) {
        throw std::length_error("operator too large to densify");
    }
    std::vector<Complex> out(rows * cols);
    for (const auto &e : entries_) {
        out[e.out * cols + e.in] = e.value;
    }
    return out;
}

SparseVector tensor_product(const SparseVector &a, const SparseVector &b) {
    std::vector<Dimension> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    Layout layout(std::move(dims));  // throws on name collision
    auto scale = b.layout().total_size();
    std::vector<Entry> entries;
    entries.reserve(a.size() * b.size());
    for (const auto &x : a.entries()) {
        for (const auto &y : b.entries()) {
            entries.push_back({x.key * scale + y.key, x.amplitude * y.amplitude});
        }
    }
    return SparseVector(std::move(layout), std::move(entries));
}

SparseOperator tensor_product(const SparseOperator &a, const SparseOperator &b) {
    std::vector<Dimension> out = a.out_dims();
    out.insert(out.end(), b.out_dims().begin(), b.out_dims().end());
    std::vector<Dimension> in = a.in_dims();
    in.insert(in.end(), b.in_dims().begin(), b.in_dims().end());
    auto out_scale = b.out_layout().total_size();
    auto in_scale = b.in_layout().total_size();
    std::vector<OperatorEntry> entries;
    entries.reserve(a.entries().size() * b.entries().size());
    for (const auto &x : a.entries()) {
        for (const auto &y : b.entries()) {
            entries.push_back({x.out * out_scale + y.out, x.in * in_scale + y.in, x.value * y.value});
        }
    }
    return SparseOperator(std::move(out), std::move(in), std::move(entries));
}

SparseVector apply_on_subset(
    const SparseOperator &op, std::span<const std::string> target_dims, const SparseVector &v, MissingColumns missing) {
    const auto &in = op.in_layout();
    const auto &out = op.out_layout();
    if (target_dims.size() != in.rank() || target_dims.size() != out.rank()) {
        throw DimensionError("apply_on_subset: operator rank does not match target dimension count");
    }
    const auto &src = v.layout();
    std::vector<size_t> axes(target_dims.size());
    std::vector<Dimension> result_dims = src.dims();
    for (size_t k = 0; k < target_dims.size(); k++) {
        axes[k] = src.require(target_dims[k]);
        const auto &vd = src.dims()[axes[k]];
        const auto &od = in.dims()[k];
        if (od.name != vd.name && od.name != vd.base_name()) {
            throw DimensionError("apply_on_subset: operator dimension '" + od.name + "' cannot act on '" + vd.name + "'");
        }
        if (!same_shape(od, vd)) {
            throw DimensionError(
                "apply_on_subset: label mismatch between " + describe(od) + " and " + describe(vd));
        }
        result_dims[axes[k]] = Dimension(vd.name, out.dims()[k].labels);
    }
    Layout dst(std::move(result_dims));

    std::vector<uint32_t> coords;
    std::vector<uint32_t> sub(axes.size());
    Accumulator acc;
    for (const auto &e : v.entries()) {
        coords = src.decode(e.key);
        for (size_t k = 0; k < axes.size(); k++) {
            sub[k] = coords[axes[k]];
        }
        auto in_key = in.encode(sub);
        auto column = op.column(in_key);
        if (column.empty()) {
            if (missing == MissingColumns::kIdentity) {
                if (!(in == out)) {
                    throw DimensionError("apply_on_subset: identity fallback needs a square operator");
                }
                acc.add(dst.encode(coords), e.amplitude);
            }
            continue;
        }
        for (const auto &c : column) {
            for (size_t k = 0; k < axes.size(); k++) {
                coords[axes[k]] = out.coordinate(c.out, k);
            }
            acc.add(dst.encode(coords), c.value * e.amplitude);
        }
    }
    return SparseVector(std::move(dst), acc.take());
}

SparseVector apply(const SparseOperator &op, const SparseVector &v) {
    require_same_layout(op.in_layout(), v.layout(), "apply");
    Accumulator acc;
    for (const auto &e : v.entries()) {
        for (const auto &c : op.column(e.key)) {
            acc.add(c.out, c.value * e.amplitude);
        }
    }
    return SparseVector(op.out_layout(), acc.take());
}

Complex inner_product(const SparseVector &a, const SparseVector &b) {
    require_same_layout(a.layout(), b.layout(), "inner_product");
    Complex total = 0;
    auto ia = a.entries().begin();
    auto ib = b.entries().begin();
    while (ia != a.entries().end() && ib != b.entries().end()) {
        if (ia->key < ib->key) {
            ++ia;
        } else if (ib->key < ia->key) {
            ++ib;
        } else {
            total += std::conj(ia->amplitude) * ib->amplitude;
            ++ia;
            ++ib;
        }
    }
    return total;
}

SparseVector partial_inner(const SparseVector &bra, const SparseVector &v) {
    const auto &src = v.layout();
    const auto &bl = bra.layout();
    std::vector<size_t> axes(bl.rank());
    std::vector<bool> contracted(src.rank(), false);
    for (size_t k = 0; k < bl.rank(); k++) {
        auto found = src.find(bl.dims()[k].name);
        if (!found) {
            throw DimensionError("partial_inner: subsystem dimension '" + bl.dims()[k].name + "' not found");
        }
        if (!(src.dims()[*found] == bl.dims()[k])) {
            throw DimensionError("partial_inner: label mismatch on '" + bl.dims()[k].name + "'");
        }
        axes[k] = *found;
        contracted[*found] = true;
    }
    std::vector<Dimension> rest_dims;
    std::vector<size_t> rest_axes;
    for (size_t k = 0; k < src.rank(); k++) {
        if (!contracted[k]) {
            rest_dims.push_back(src.dims()[k]);
            rest_axes.push_back(k);
        }
    }
    Layout dst(std::move(rest_dims));

    std::vector<uint32_t> sub(axes.size());
    std::vector<uint32_t> rest(rest_axes.size());
    Accumulator acc;
    for (const auto &e : v.entries()) {
        for (size_t k = 0; k < axes.size(); k++) {
            sub[k] = src.coordinate(e.key, axes[k]);
        }
        auto b = bra.at(bl.encode(sub));
        if (b == Complex{}) {
            continue;
        }
        for (size_t k = 0; k < rest_axes.size(); k++) {
            rest[k] = src.coordinate(e.key, rest_axes[k]);
        }
        acc.add(dst.encode(rest), std::conj(b) * e.amplitude);
    }
    return SparseVector(std::move(dst), acc.take());
}

double subsystem_purity(const SparseVector &v, size_t particle) {
    const auto &layout = v.layout();
    auto tags = layout.particles();
    if (particle >= tags.size()) {
        throw std::out_of_range("subsystem_purity: particle index out of range");
    }
    if (std::abs(v.norm_squared() - 1) > 1e-9) {
        throw std::domain_error("subsystem_purity: state is not normalized");
    }
    auto kept = layout.axes_of(tags[particle]);
    // Key of the kept particle and key of everything else, as separate mixed-radix numbers.
    std::vector<uint64_t> kept_stride(layout.rank(), 0);
    std::vector<uint64_t> rest_stride(layout.rank(), 0);
    uint64_t ks = 1;
    uint64_t rs = 1;
    for (size_t k = layout.rank(); k-- > 0;) {
        if (std::find(kept.begin(), kept.end(), k) != kept.end()) {
            kept_stride[k] = ks;
            ks *= layout.dims()[k].size();
        } else {
            rest_stride[k] = rs;
            rs *= layout.dims()[k].size();
        }
    }
    std::unordered_map<uint64_t, std::vector<std::pair<uint64_t, Complex>>> by_rest;
    for (const auto &e : v.entries()) {
        uint64_t a = 0;
        uint64_t r = 0;
        for (size_t k = 0; k < layout.rank(); k++) {
            auto c = layout.coordinate(e.key, k);
            a += c * kept_stride[k];
            r += c * rest_stride[k];
        }
        by_rest[r].emplace_back(a, e.amplitude);
    }
    // rho(i, j) = sum_rest psi(i, rest) conj(psi(j, rest))
    std::unordered_map<uint64_t, std::unordered_map<uint64_t, Complex>> rho;
    for (const auto &[r, column] : by_rest) {
        for (const auto &[i, ai] : column) {
            for (const auto &[j, aj] : column) {
                rho[i][j] += ai * std::conj(aj);
            }
        }
    }
    double purity = 0;
    for (const auto &[i, row] : rho) {
        for (const auto &[j, z] : row) {
            purity += std::norm(z);
        }
    }
    return purity;
}

SparseOperator compose(const SparseOperator &a, const SparseOperator &b) {
    require_same_layout(a.in_layout(), b.out_layout(), "compose");
    std::vector<OperatorEntry> entries;
    for (const auto &eb : b.entries()) {
        for (const auto &ea : a.column(eb.out)) {
            entries.push_back({ea.out, eb.in, ea.value * eb.value});
        }
    }
    return SparseOperator(a.out_dims(), b.in_dims(), std::move(entries));
}

SparseOperator dagger(const SparseOperator &a) {
    std::vector<OperatorEntry> entries;
    entries.reserve(a.entries().size());
    for (const auto &e : a.entries()) {
        entries.push_back({e.in, e.out, std::conj(e.value)});
    }
    return SparseOperator(a.in_dims(), a.out_dims(), std::move(entries));
}

SparseOperator add(const SparseOperator &a, const SparseOperator &b) {
    require_same_layout(a.out_layout(), b.out_layout(), "add");
    require_same_layout(a.in_layout(), b.in_layout(), "add");
    std::vector<OperatorEntry> entries(a.entries().begin(), a.entries().end());
    entries.insert(entries.end(), b.entries().begin(), b.entries().end());
    return SparseOperator(a.out_dims(), a.in_dims(), std::move(entries));
}

SparseOperator scale(const SparseOperator &a, Complex factor) {
    std::vector<OperatorEntry> entries(a.entries().begin(), a.entries().end());
    for (auto &e : entries) {
        e.value *= factor;
    }
    return SparseOperator(a.out_dims(), a.in_dims(), std::move(entries));
}

double max_abs_difference(const SparseOperator &a, const SparseOperator &b) {
    auto diff = add(a, scale(b, -1));
    double worst = 0;
    for (const auto &e : diff.entries()) {
        worst = std::max(worst, std::abs(e.value));
    }
    return worst;
}

double max_abs_difference(const SparseVector &a, const SparseVector &b) {
    require_same_layout(a.layout(), b.layout(), "max_abs_difference");
    double worst = 0;
    for (const auto &e : a.entries()) {
        worst = std::max(worst, std::abs(e.amplitude - b.at(e.key)));
    }
    for (const auto &e : b.entries()) {
        worst = std::max(worst, std::abs(e.amplitude - a.at(e.key)));
    }
    return worst;
}

double unitarity_error(const SparseOperator &a) {
    if (!a.is_square()) {
        throw DimensionError("unitarity_error: operator is not square");
    }
    return max_abs_difference(compose(dagger(a), a), SparseOperator::identity(a.in_dims()));
}

namespace {

std::vector<Dimension> retagged(const std::vector<Dimension> &dims, std::string_view from, std::string_view to) {
    std::vector<Dimension> out;
    out.reserve(dims.size());
    for (const auto &d : dims) {
        out.push_back(d.particle() == from ? tagged(d, to) : d);
    }
    return out;
}

std::vector<uint64_t> permuted_keys_map(const Layout &old_layout, const Layout &new_layout, std::span<const size_t> order,
                                        std::span<const uint64_t> keys) {
    std::vector<uint64_t> out;
    out.reserve(keys.size());
    std::vector<uint32_t> coords(order.size());
    for (auto key : keys) {
        for (size_t k = 0; k < order.size(); k++) {
            coords[k] = old_layout.coordinate(key, order[k]);
        }
        out.push_back(new_layout.encode(coords));
    }
    return out;
}

std::vector<Dimension> permuted_dims(const std::vector<Dimension> &dims, std::span<const size_t> order) {
    if (order.size() != dims.size()) {
        throw DimensionError("permutation size does not match rank");
    }
    std::vector<bool> used(dims.size(), false);
    std::vector<Dimension> out;
    for (auto k : order) {
        if (k >= dims.size() || used[k]) {
            throw DimensionError("invalid axis permutation");
        }
        used[k] = true;
        out.push_back(dims[k]);
    }
    return out;
}

}  // namespace

SparseVector retag(const SparseVector &v, std::string_view from, std::string_view to) {
    std::vector<Entry> entries(v.entries().begin(), v.entries().end());
    return SparseVector(retagged(v.dims(), from, to), std::move(entries));
}

SparseOperator retag(const SparseOperator &op, std::string_view from, std::string_view to) {
    std::vector<OperatorEntry> entries(op.entries().begin(), op.entries().end());
    return SparseOperator(retagged(op.out_dims(), from, to), retagged(op.in_dims(), from, to), std::move(entries));
}

SparseVector permute_axes(const SparseVector &v, std::span<const size_t> order) {
    Layout dst(permuted_dims(v.dims(), order));
    std::vector<uint64_t> keys;
    for (const auto &e : v.entries()) {
        keys.push_back(e.key);
    }
    auto mapped = permuted_keys_map(v.layout(), dst, order, keys);
    std::vector<Entry> entries;
    for (size_t k = 0; k < keys.size(); k++) {
        entries.push_back({mapped[k], v.entries()[k].amplitude});
    }
    return SparseVector(std::move(dst), std::move(entries));
}

SparseOperator permute_axes(const SparseOperator &op, std::span<const size_t> order) {
    Layout out(permuted_dims(op.out_dims(), order));
    Layout in(permuted_dims(op.in_dims(), order));
    std::vector<uint64_t> outs;
    std::vector<uint64_t> ins;
    for (const auto &e : op.entries()) {
        outs.push_back(e.out);
        ins.push_back(e.in);
    }
    auto mo = permuted_keys_map(op.out_layout(), out, order, outs);
    auto mi = permuted_keys_map(op.in_layout(), in, order, ins);
    std::vector<OperatorEntry> entries;
    for (size_t k = 0; k < outs.size(); k++) {
        entries.push_back({mo[k], mi[k], op.entries()[k].value});
    }
    return SparseOperator(out.dims(), in.dims(), std::move(entries));
}

SparseVector swap_particles(const SparseVector &v, std::string_view a, std::string_view b) {
    const auto &layout = v.layout();
    auto axes_a = layout.axes_of(a);
    auto axes_b = layout.axes_of(b);
    if (axes_a.empty() || axes_a.size() != axes_b.size()) {
        throw DimensionError("swap_particles: particles have different structure");
    }
    for (size_t k = 0; k < axes_a.size(); k++) {
        const auto &da = layout.dims()[axes_a[k]];
        const auto &db = layout.dims()[axes_b[k]];
        if (da.base_name() != db.base_name() || da.labels != db.labels) {
            throw DimensionError("swap_particles: particles have different structure");
        }
    }
    std::vector<Entry> entries;
    entries.reserve(v.size());
    for (const auto &e : v.entries()) {
        auto coords = layout.decode(e.key);
        for (size_t k = 0; k < axes_a.size(); k++) {
            std::swap(coords[axes_a[k]], coords[axes_b[k]]);
        }
        entries.push_back({layout.encode(coords), e.amplitude});
    }
    return SparseVector(layout, std::move(entries));
}

}  // namespace photonlab
