#pragma once

#include "tcalc/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tcalc {

/// Extents of a dense multidimensional array. Rank 0 is a scalar (one element).
class Shape {
  public:
    Shape() = default;

    Shape(std::initializer_list<std::size_t> extents)
        : Shape(std::vector<std::size_t>(extents)) {}

    explicit Shape(std::vector<std::size_t> extents) : dims_(std::move(extents)) {
        for (std::size_t e : dims_)
            if (e == 0)
                throw argument_error("shape extents must be >= 1");
    }

    std::size_t rank() const { return dims_.size(); }
    std::size_t extent(std::size_t axis) const {
        if (axis >= dims_.size())
            throw argument_error("axis " + std::to_string(axis) +
                                 " out of range for rank " + std::to_string(rank()));
        return dims_[axis];
    }
    const std::vector<std::size_t> &dims() const { return dims_; }

    /// Number of elements: product of extents (1 for rank 0).
    std::size_t count() const {
        std::size_t n = 1;
        for (std::size_t e : dims_)
            n *= e;
        return n;
    }

    bool operator==(const Shape &) const = default;

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < dims_.size(); ++i) {
            if (i)
                s += ",";
            s += std::to_string(dims_[i]);
        }
        return s + ")";
    }

  private:
    std::vector<std::size_t> dims_;
};

/// One (axis-in-a, axis-in-b) pair of a generalized dot product.
struct AxisPair {
    std::size_t first;
    std::size_t second;
    bool operator==(const AxisPair &) const = default;
};

/// A set of axis pairs. Axes within each side must be distinct, and every
/// paired axis in the first tensor must have the same extent as its partner.
class AxisPairing {
  public:
    AxisPairing() = default;
    AxisPairing(std::initializer_list<AxisPair> pairs) : pairs_(pairs) {}
    explicit AxisPairing(std::vector<AxisPair> pairs) : pairs_(std::move(pairs)) {}

    const std::vector<AxisPair> &pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }

    /// Checks structural validity against concrete shapes. Problems with the
    /// pairing itself (out-of-range or duplicate axes) throw pairing_error and
    /// are diagnosed before extent mismatches, which throw shape_error.
    void validate(const Shape &a, const Shape &b) const {
        for (const AxisPair &p : pairs_) {
            if (p.first >= a.rank())
                throw pairing_error("paired axis " + std::to_string(p.first) +
                                    " out of range for shape " + a.str());
            if (p.second >= b.rank())
                throw pairing_error("paired axis " + std::to_string(p.second) +
                                    " out of range for shape " + b.str());
        }
        for (std::size_t i = 0; i < pairs_.size(); ++i)
            for (std::size_t j = i + 1; j < pairs_.size(); ++j) {
                if (pairs_[i].first == pairs_[j].first)
                    throw pairing_error("axis " + std::to_string(pairs_[i].first) +
                                        " of first tensor paired twice");
                if (pairs_[i].second == pairs_[j].second)
                    throw pairing_error("axis " + std::to_string(pairs_[i].second) +
                                        " of second tensor paired twice");
            }
        for (const AxisPair &p : pairs_) {
            if (a.extent(p.first) != b.extent(p.second))
                throw shape_error("paired axes have unequal extents: axis " +
                                  std::to_string(p.first) + " of " + a.str() +
                                  " vs axis " + std::to_string(p.second) + " of " +
                                  b.str());
        }
    }

  private:
    std::vector<AxisPair> pairs_;
};

/// Visits every multi-index of `shape` in row-major order.
template <typename Fn> void for_each_index(const Shape &shape, Fn &&fn) {
    std::vector<std::size_t> idx(shape.rank(), 0);
    const std::size_t n = shape.count();
    for (std::size_t flat = 0; flat < n; ++flat) {
        fn(std::span<const std::size_t>(idx));
        for (std::size_t axis = shape.rank(); axis-- > 0;) {
            if (++idx[axis] < shape.extent(axis))
                break;
            idx[axis] = 0;
        }
    }
}

/// Dense tensor with row-major flat storage and value semantics. Immutable in
/// practice: all operations below return fresh tensors. One element domain per
/// tensor; domains are never coerced implicitly.
template <typename T> class Tensor {
  public:
    /// Rank-0 tensor holding a default (zero) element.
    Tensor() : shape_(), data_(1, T{}) {}

    explicit Tensor(Shape shape) : shape_(std::move(shape)), data_(shape_.count(), T{}) {}

    Tensor(Shape shape, T fill)
        : shape_(std::move(shape)), data_(shape_.count(), std::move(fill)) {}

    Tensor(Shape shape, std::vector<T> data)
        : shape_(std::move(shape)), data_(std::move(data)) {
        if (data_.size() != shape_.count())
            throw shape_error("data length " + std::to_string(data_.size()) +
                              " does not match shape " + shape_.str());
    }

    static Tensor scalar(T value) { return Tensor(Shape{}, {std::move(value)}); }

    const Shape &shape() const { return shape_; }
    std::size_t rank() const { return shape_.rank(); }
    std::size_t size() const { return data_.size(); }

    const std::vector<T> &data() const { return data_; }
    const T &flat(std::size_t i) const {
        if (i >= data_.size())
            throw argument_error("flat index out of range");
        return data_[i];
    }
    T &flat(std::size_t i) {
        if (i >= data_.size())
            throw argument_error("flat index out of range");
        return data_[i];
    }

    std::size_t offset_of(std::span<const std::size_t> idx) const {
        if (idx.size() != shape_.rank())
            throw argument_error("index of length " + std::to_string(idx.size()) +
                                 " for tensor of rank " + std::to_string(rank()));
        std::size_t off = 0;
        for (std::size_t axis = 0; axis < idx.size(); ++axis) {
            if (idx[axis] >= shape_.extent(axis))
                throw argument_error("index " + std::to_string(idx[axis]) +
                                     " out of range on axis " + std::to_string(axis));
            off = off * shape_.extent(axis) + idx[axis];
        }
        return off;
    }

    const T &at(std::span<const std::size_t> idx) const { return data_[offset_of(idx)]; }
    T &at(std::span<const std::size_t> idx) { return data_[offset_of(idx)]; }
    const T &at(std::initializer_list<std::size_t> idx) const {
        return at(std::span<const std::size_t>(idx.begin(), idx.size()));
    }
    T &at(std::initializer_list<std::size_t> idx) {
        return at(std::span<const std::size_t>(idx.begin(), idx.size()));
    }

    template <typename... Ix> const T &operator()(Ix... ix) const {
        const std::size_t idx[] = {static_cast<std::size_t>(ix)...};
        return at(std::span<const std::size_t>(idx, sizeof...(ix)));
    }
    const T &operator()() const { return at(std::span<const std::size_t>{}); }

    bool operator==(const Tensor &) const = default;

  private:
    Shape shape_;
    std::vector<T> data_;
};

/// Outer product: shape(a) ++ shape(b), result[i,j] = a[i] * b[j].
template <typename T> Tensor<T> tensor_product(const Tensor<T> &a, const Tensor<T> &b) {
    std::vector<std::size_t> dims = a.shape().dims();
    dims.insert(dims.end(), b.shape().dims().begin(), b.shape().dims().end());
    std::vector<T> data;
    data.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            data.push_back(a.flat(i) * b.flat(j));
    return Tensor<T>(Shape(std::move(dims)), std::move(data));
}

/// Contraction of a single tensor: sums entries where axes p and q carry the
/// same index. Rank drops by two; remaining axes keep their relative order.
template <typename T>
Tensor<T> contract(const Tensor<T> &a, std::size_t p, std::size_t q) {
    if (p == q)
        throw pairing_error("cannot contract an axis with itself");
    if (p >= a.rank() || q >= a.rank())
        throw pairing_error("contraction axis out of range for shape " +
                            a.shape().str());
    if (a.shape().extent(p) != a.shape().extent(q))
        throw shape_error("contraction over axes of unequal extent: " +
                          a.shape().str());

    std::vector<std::size_t> kept;
    std::vector<std::size_t> out_dims;
    for (std::size_t axis = 0; axis < a.rank(); ++axis)
        if (axis != p && axis != q) {
            kept.push_back(axis);
            out_dims.push_back(a.shape().extent(axis));
        }
    const std::size_t extent = a.shape().extent(p);

    Tensor<T> out{Shape(out_dims)};
    std::vector<std::size_t> full(a.rank());
    for_each_index(out.shape(), [&](std::span<const std::size_t> idx) {
        T acc{};
        for (std::size_t k = 0; k < extent; ++k) {
            for (std::size_t i = 0; i < kept.size(); ++i)
                full[kept[i]] = idx[i];
            full[p] = k;
            full[q] = k;
            acc = acc + a.at(full);
        }
        out.at(idx) = acc;
    });
    return out;
}

/// Generalized dot product: outer product followed by reduction over every
/// pair, done in one pass. Unpaired axes of `a` (original order) precede
/// unpaired axes of `b`. An empty pairing degenerates to the outer product.
/// Matrix multiplication is dot with pairing {(last axis of a, first of b)}.
template <typename T>
Tensor<T> dot(const Tensor<T> &a, const Tensor<T> &b, const AxisPairing &pairing) {
    pairing.validate(a.shape(), b.shape());

    std::vector<bool> a_paired(a.rank(), false), b_paired(b.rank(), false);
    for (const AxisPair &p : pairing.pairs()) {
        a_paired[p.first] = true;
        b_paired[p.second] = true;
    }
    std::vector<std::size_t> a_free, b_free, out_dims, pair_dims;
    for (std::size_t axis = 0; axis < a.rank(); ++axis)
        if (!a_paired[axis]) {
            a_free.push_back(axis);
            out_dims.push_back(a.shape().extent(axis));
        }
    for (std::size_t axis = 0; axis < b.rank(); ++axis)
        if (!b_paired[axis]) {
            b_free.push_back(axis);
            out_dims.push_back(b.shape().extent(axis));
        }
    for (const AxisPair &p : pairing.pairs())
        pair_dims.push_back(a.shape().extent(p.first));

    Tensor<T> out{Shape(out_dims)};
    const Shape pair_shape{pair_dims};
    std::vector<std::size_t> ia(a.rank()), ib(b.rank());
    for_each_index(out.shape(), [&](std::span<const std::size_t> idx) {
        T acc{};
        for_each_index(pair_shape, [&](std::span<const std::size_t> k) {
            for (std::size_t i = 0; i < a_free.size(); ++i)
                ia[a_free[i]] = idx[i];
            for (std::size_t i = 0; i < b_free.size(); ++i)
                ib[b_free[i]] = idx[a_free.size() + i];
            for (std::size_t t = 0; t < pairing.size(); ++t) {
                ia[pairing.pairs()[t].first] = k[t];
                ib[pairing.pairs()[t].second] = k[t];
            }
            acc = acc + a.at(ia) * b.at(ib);
        });
        out.at(idx) = acc;
    });
    return out;
}

/// Reorders axes: axis j of the result is axis perm[j] of the input
/// (so permuting (0,1,2) -> (2,0,1) turns shape (2,3,4) into (4,2,3)).
template <typename T>
Tensor<T> permute_axes(const Tensor<T> &a, const std::vector<std::size_t> &perm) {
    if (perm.size() != a.rank())
        throw argument_error("permutation length " + std::to_string(perm.size()) +
                             " does not match rank " + std::to_string(a.rank()));
    std::vector<bool> seen(a.rank(), false);
    for (std::size_t axis : perm) {
        if (axis >= a.rank() || seen[axis])
            throw argument_error("invalid axis permutation");
        seen[axis] = true;
    }

    std::vector<std::size_t> out_dims(a.rank());
    for (std::size_t j = 0; j < a.rank(); ++j)
        out_dims[j] = a.shape().extent(perm[j]);
    Tensor<T> out{Shape(out_dims)};
    std::vector<std::size_t> src(a.rank());
    for_each_index(out.shape(), [&](std::span<const std::size_t> idx) {
        for (std::size_t j = 0; j < a.rank(); ++j)
            src[perm[j]] = idx[j];
        out.at(idx) = a.at(src);
    });
    return out;
}

/// True iff the tensor is invariant under every permutation of the listed axes.
template <typename T>
bool is_symmetric_in_axes(const Tensor<T> &a, const std::vector<std::size_t> &axes) {
    std::vector<std::size_t> sorted(axes);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw argument_error("symmetry axes must be distinct");
    for (std::size_t axis : sorted) {
        if (axis >= a.rank())
            throw argument_error("symmetry axis out of range");
        if (a.shape().extent(axis) != a.shape().extent(sorted[0]))
            throw shape_error("symmetry requires equal extents on the listed axes");
    }
    if (sorted.size() < 2)
        return true;

    std::vector<std::size_t> arrangement(sorted);
    std::vector<std::size_t> perm(a.rank());
    do {
        for (std::size_t j = 0; j < a.rank(); ++j)
            perm[j] = j;
        for (std::size_t i = 0; i < sorted.size(); ++i)
            perm[sorted[i]] = arrangement[i];
        if (!(permute_axes(a, perm) == a))
            return false;
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));
    return true;
}

/// Elementwise sum of same-shape tensors.
template <typename T> Tensor<T> operator+(const Tensor<T> &a, const Tensor<T> &b) {
    if (!(a.shape() == b.shape()))
        throw shape_error("cannot add tensors of shapes " + a.shape().str() +
                          " and " + b.shape().str());
    std::vector<T> data;
    data.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        data.push_back(a.flat(i) + b.flat(i));
    return Tensor<T>(a.shape(), std::move(data));
}

/// Elementwise map to a possibly different element domain. This is the only
/// way to move a tensor between domains.
template <typename U, typename T, typename Fn>
Tensor<U> map_elements(const Tensor<T> &a, Fn &&fn) {
    std::vector<U> data;
    data.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        data.push_back(fn(a.flat(i)));
    return Tensor<U>(a.shape(), std::move(data));
}

} // namespace tcalc
