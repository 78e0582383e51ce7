#pragma once

#include <cmath>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ognet/core/errors.hpp"
#include "ognet/core/rng.hpp"
#include "ognet/core/sha256.hpp"
#include "ognet/core/tensor.hpp"
#include "ognet/nn/arch.hpp"

namespace ognet {

template <typename T>
struct NamedParam {
    std::string name;
    Tensor<T> value;

    bool operator==(const NamedParam&) const = default;
};

// A named, ordered parameter collection for one model. Plain value type: a
// copy is a deep, independent snapshot.
template <typename T>
struct ModelStateT {
    std::string name;
    Role role = Role::generator;
    ArchitectureSpec arch;
    std::vector<NamedParam<T>> params;
    Provenance provenance;

    Tensor<T>& param(std::string_view pname) {
        for (auto& p : params)
            if (p.name == pname) return p.value;
        throw ArgumentError("no such parameter: " + std::string(pname));
    }

    const Tensor<T>& param(std::string_view pname) const {
        for (const auto& p : params)
            if (p.name == pname) return p.value;
        throw ArgumentError("no such parameter: " + std::string(pname));
    }

    std::size_t parameter_count() const {
        std::size_t n = 0;
        for (const auto& p : params) n += p.value.size();
        return n;
    }

    bool all_finite() const {
        for (const auto& p : params)
            if (!p.value.all_finite()) return false;
        return true;
    }

    ModelStateT snapshot(Provenance tag) const {
        ModelStateT copy = *this;
        copy.provenance = tag;
        return copy;
    }
};

using ModelState = ModelStateT<double>;

// Gradients mirror the parameter list element-for-element.
template <typename T>
using Gradients = std::vector<NamedParam<T>>;

template <typename T>
Gradients<T> zero_gradients(const ModelStateT<T>& m) {
    Gradients<T> g;
    g.reserve(m.params.size());
    for (const auto& p : m.params) g.push_back({p.name, Tensor<T>::zeros_like(p.value)});
    return g;
}

namespace detail {

template <typename T>
void append_param_tensors(std::vector<NamedParam<T>>& out, const LayerPlan& l, Rng& rng) {
    auto he_normal = [&rng](Tensor<T>& t, std::size_t fan_in) {
        const double std_dev = std::sqrt(2.0 / static_cast<double>(fan_in));
        for (auto& v : t.values()) v = static_cast<T>(rng.gaussian(0.0, std_dev));
    };
    switch (l.kind) {
        case LayerPlan::Kind::conv: {
            Tensor<T> w({l.out_c, l.in_c, ArchitectureSpec::kernel, ArchitectureSpec::kernel});
            he_normal(w, l.in_c * ArchitectureSpec::kernel * ArchitectureSpec::kernel);
            out.push_back({l.name + ".w", std::move(w)});
            out.push_back({l.name + ".b", Tensor<T>({l.out_c})});
            break;
        }
        case LayerPlan::Kind::conv_transpose: {
            Tensor<T> w({l.in_c, l.out_c, ArchitectureSpec::kernel, ArchitectureSpec::kernel});
            he_normal(w, l.in_c * ArchitectureSpec::kernel * ArchitectureSpec::kernel);
            out.push_back({l.name + ".w", std::move(w)});
            out.push_back({l.name + ".b", Tensor<T>({l.out_c})});
            break;
        }
        case LayerPlan::Kind::linear: {
            Tensor<T> w({l.out_c, l.in_features});
            he_normal(w, l.in_features);
            out.push_back({l.name + ".w", std::move(w)});
            out.push_back({l.name + ".b", Tensor<T>({l.out_c})});
            break;
        }
    }
}

} // namespace detail

template <typename T = double>
ModelStateT<T> make_generator(const ArchitectureSpec& arch, Rng& rng, std::string name = "generator") {
    ModelStateT<T> m;
    m.name = std::move(name);
    m.role = Role::generator;
    m.arch = arch;
    for (const auto& l : generator_plan(arch)) detail::append_param_tensors(m.params, l, rng);
    return m;
}

template <typename T = double>
ModelStateT<T> make_discriminator(const ArchitectureSpec& arch, Rng& rng, std::string name = "discriminator") {
    ModelStateT<T> m;
    m.name = std::move(name);
    m.role = Role::discriminator;
    m.arch = arch;
    for (const auto& l : discriminator_plan(arch)) detail::append_param_tensors(m.params, l, rng);
    return m;
}

// Uniform element-wise mean across states sharing one architecture and role.
template <typename T>
ModelStateT<T> average_parameters(const std::vector<ModelStateT<T>>& states) {
    if (states.empty()) throw ArgumentError("average_parameters: empty state list");
    ModelStateT<T> mean = states.front();
    for (std::size_t s = 1; s < states.size(); ++s) {
        const auto& st = states[s];
        if (st.arch != mean.arch || st.role != mean.role)
            throw ArgumentError("average_parameters: states do not share an architecture");
        for (std::size_t p = 0; p < mean.params.size(); ++p) {
            if (st.params[p].name != mean.params[p].name ||
                !st.params[p].value.same_shape(mean.params[p].value))
                throw ArgumentError("average_parameters: parameter list mismatch");
            mean.params[p].value.add_scaled(st.params[p].value, T{1});
        }
    }
    const T inv = T{1} / static_cast<T>(states.size());
    for (auto& p : mean.params) p.value.scale(inv);
    return mean;
}

// Little-endian raw parameter payload; the same bytes back the checkpoint
// file and the content hash, so "equal hash" means "bit-exact parameters".
template <typename T>
std::vector<std::uint8_t> parameter_payload(const ModelStateT<T>& m) {
    static_assert(std::is_trivially_copyable_v<T>);
    std::vector<std::uint8_t> bytes;
    std::size_t total = 0;
    for (const auto& p : m.params) total += p.value.size() * sizeof(T);
    bytes.resize(total);
    std::size_t off = 0;
    for (const auto& p : m.params) {
        const std::size_t n = p.value.size() * sizeof(T);
        std::memcpy(bytes.data() + off, p.value.data(), n);
        off += n;
    }
    return bytes;
}

template <typename T>
std::string content_hash(const ModelStateT<T>& m) {
    const auto payload = parameter_payload(m);
    return sha256_hex(std::span<const std::uint8_t>(payload));
}

} // namespace ognet
