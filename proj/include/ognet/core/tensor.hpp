#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "ognet/core/errors.hpp"

namespace ognet {

// Dense row-major tensor of small dynamic rank. Value semantics; a copy is a
// deep copy, which is what snapshotting relies on.
template <typename T>
class Tensor {
public:
    Tensor() = default;

    explicit Tensor(std::vector<std::size_t> shape, T fill = T{})
        : shape_(std::move(shape)), data_(count(shape_), fill) {}

    Tensor(std::initializer_list<std::size_t> shape, T fill = T{})
        : Tensor(std::vector<std::size_t>(shape), fill) {}

    static Tensor zeros_like(const Tensor& other) { return Tensor(other.shape_); }

    const std::vector<std::size_t>& shape() const { return shape_; }
    std::size_t rank() const { return shape_.size(); }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    std::size_t dim(std::size_t i) const { return shape_.at(i); }

    std::span<T> values() { return data_; }
    std::span<const T> values() const { return data_; }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    T& operator[](std::size_t flat) { return data_[flat]; }
    const T& operator[](std::size_t flat) const { return data_[flat]; }

    template <typename... Ix>
    T& operator()(Ix... ix) { return data_[offset(ix...)]; }
    template <typename... Ix>
    const T& operator()(Ix... ix) const { return data_[offset(ix...)]; }

    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

    void fill(T v) { std::fill(data_.begin(), data_.end(), v); }

    // this += alpha * other
    void add_scaled(const Tensor& other, T alpha) {
        require(same_shape(other), "add_scaled: shape mismatch");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += alpha * other.data_[i];
    }

    void scale(T alpha) {
        for (auto& v : data_) v *= alpha;
    }

    void clamp(T lo, T hi) {
        for (auto& v : data_) v = std::min(hi, std::max(lo, v));
    }

    T min() const { return data_.empty() ? T{} : *std::min_element(data_.begin(), data_.end()); }
    T max() const { return data_.empty() ? T{} : *std::max_element(data_.begin(), data_.end()); }

    T sum() const { return std::accumulate(data_.begin(), data_.end(), T{}); }

    bool all_finite() const {
        return std::all_of(data_.begin(), data_.end(), [](T v) { return std::isfinite(v); });
    }

    bool operator==(const Tensor& other) const = default;

    std::string shape_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < shape_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(shape_[i]);
        }
        return s + ")";
    }

private:
    static std::size_t count(const std::vector<std::size_t>& shape) {
        std::size_t n = 1;
        for (auto d : shape) n *= d;
        return shape.empty() ? 0 : n;
    }

    static void require(bool ok, const char* msg) {
        if (!ok) throw ArgumentError(msg);
    }

    template <typename... Ix>
    std::size_t offset(Ix... ix) const {
        const std::size_t idx[] = {static_cast<std::size_t>(ix)...};
        std::size_t off = 0;
        for (std::size_t d = 0; d < sizeof...(Ix); ++d) off = off * shape_[d] + idx[d];
        return off;
    }

    std::vector<std::size_t> shape_;
    std::vector<T> data_;
};

} // namespace ognet
