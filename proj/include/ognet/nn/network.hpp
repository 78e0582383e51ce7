#pragma once

#include <vector>

#include "ognet/core/errors.hpp"
#include "ognet/core/tensor.hpp"
#include "ognet/nn/arch.hpp"
#include "ognet/nn/layers.hpp"
#include "ognet/nn/model_state.hpp"

namespace ognet {

// Per-layer record kept during a forward pass so the adjoint can be run
// without recomputation.
template <typename T>
struct ForwardCache {
    std::vector<Tensor<T>> inputs;   // layer input (post-activation of previous layer)
    std::vector<Tensor<T>> preacts;  // pre-activation output
    std::vector<Tensor<T>> outputs;  // post-activation output
};

namespace detail {

template <typename T>
Tensor<T> apply_activation(const std::vector<LayerPlan>& plan, std::size_t li, const ArchitectureSpec& arch,
                           const Tensor<T>& pre) {
    Tensor<T> out = pre;
    switch (plan[li].act) {
        case LayerPlan::Act::none:
            break;
        case LayerPlan::Act::hidden:
            for (auto& v : out.values()) v = activation_apply(arch.hidden_act, v);
            break;
        case LayerPlan::Act::sigmoid:
            for (auto& v : out.values()) v = sigmoid(v);
            break;
    }
    return out;
}

template <typename T>
Tensor<T> forward_pass(const std::vector<LayerPlan>& plan, const ModelStateT<T>& m, const Tensor<T>& x,
                       ForwardCache<T>* cache) {
    Tensor<T> cur = x;
    for (std::size_t li = 0; li < plan.size(); ++li) {
        const auto& l = plan[li];
        const Tensor<T>& w = m.param(l.name + ".w");
        const Tensor<T>& b = m.param(l.name + ".b");
        Tensor<T> pre;
        switch (l.kind) {
            case LayerPlan::Kind::conv:
                pre = conv2d_forward(cur, w, b, ArchitectureSpec::stride, ArchitectureSpec::padding);
                break;
            case LayerPlan::Kind::conv_transpose:
                pre = conv_transpose2d_forward(cur, w, b, ArchitectureSpec::stride, ArchitectureSpec::padding,
                                               l.out_pad_h, l.out_pad_w);
                break;
            case LayerPlan::Kind::linear:
                pre = linear_forward(cur, w, b);
                break;
        }
        Tensor<T> out = apply_activation(plan, li, m.arch, pre);
        if (cache) {
            cache->inputs.push_back(std::move(cur));
            cache->preacts.push_back(std::move(pre));
            cache->outputs.push_back(out);
        }
        cur = std::move(out);
    }
    return cur;
}

// Backpropagates d_output through the cached pass. Parameter gradients are
// accumulated into `grads`; returns dL/d(input) when requested.
template <typename T>
Tensor<T> backward_pass(const std::vector<LayerPlan>& plan, const ModelStateT<T>& m,
                        const ForwardCache<T>& cache, Tensor<T> d_output, Gradients<T>& grads,
                        bool need_dinput) {
    auto grad_of = [&grads](const std::string& pname) -> Tensor<T>& {
        for (auto& g : grads)
            if (g.name == pname) return g.value;
        throw ArgumentError("backward_pass: no gradient slot for " + pname);
    };

    Tensor<T> d_out = std::move(d_output);
    for (std::size_t li = plan.size(); li-- > 0;) {
        const auto& l = plan[li];
        // through the activation
        Tensor<T> d_pre = std::move(d_out);
        switch (l.act) {
            case LayerPlan::Act::none:
                break;
            case LayerPlan::Act::hidden: {
                const auto& pre = cache.preacts[li];
                for (std::size_t i = 0; i < d_pre.size(); ++i)
                    d_pre[i] *= activation_derivative(m.arch.hidden_act, pre[i]);
                break;
            }
            case LayerPlan::Act::sigmoid: {
                const auto& out = cache.outputs[li];
                for (std::size_t i = 0; i < d_pre.size(); ++i)
                    d_pre[i] *= sigmoid_derivative_from_output(out[i]);
                break;
            }
        }
        // through the linear map
        const bool want_dx = li > 0 || need_dinput;
        const Tensor<T>& w = m.param(l.name + ".w");
        ConvGrads<T> g;
        switch (l.kind) {
            case LayerPlan::Kind::conv:
                g = conv2d_backward(cache.inputs[li], w, d_pre, ArchitectureSpec::stride, ArchitectureSpec::padding, want_dx);
                break;
            case LayerPlan::Kind::conv_transpose:
                g = conv_transpose2d_backward(cache.inputs[li], w, d_pre, ArchitectureSpec::stride,
                                              ArchitectureSpec::padding, want_dx);
                break;
            case LayerPlan::Kind::linear:
                g = linear_backward(cache.inputs[li], w, d_pre, want_dx);
                break;
        }
        grad_of(l.name + ".w").add_scaled(g.dw, T{1});
        grad_of(l.name + ".b").add_scaled(g.db, T{1});
        d_out = std::move(g.dx);
    }
    return d_out;
}

template <typename T>
void check_model_input(const ModelStateT<T>& m, const Tensor<T>& batch, Role expected) {
    if (m.role != expected)
        throw ConfigError("model role mismatch: expected " + to_string(expected) + ", got " + to_string(m.role));
    if (batch.rank() != 4)
        throw ConfigError("expected NCHW batch, got shape " + batch.shape_string());
    if (batch.dim(1) != m.arch.in_channels || batch.dim(2) != m.arch.in_height || batch.dim(3) != m.arch.in_width)
        throw ConfigError("batch shape " + batch.shape_string() + " does not match architecture input (" +
                          std::to_string(m.arch.in_channels) + "," + std::to_string(m.arch.in_height) + "," +
                          std::to_string(m.arch.in_width) + ")");
    if (!m.all_finite()) throw NumericError("model '" + m.name + "' has non-finite parameters");
}

} // namespace detail

// Denoising-autoencoder pass: output has the input's shape and lies in
// [0, 1] thanks to the sigmoid output stage.
template <typename T>
Tensor<T> generator_forward(const ModelStateT<T>& g, const Tensor<T>& batch, ForwardCache<T>* cache = nullptr) {
    detail::check_model_input(g, batch, Role::generator);
    return detail::forward_pass(generator_plan(g.arch), g, batch, cache);
}

// One score per batch item, in [0, 1].
template <typename T>
Tensor<T> discriminator_forward(const ModelStateT<T>& d, const Tensor<T>& batch, ForwardCache<T>* cache = nullptr) {
    detail::check_model_input(d, batch, Role::discriminator);
    Tensor<T> out = detail::forward_pass(discriminator_plan(d.arch), d, batch, cache); // (N, 1)
    Tensor<T> scores({out.dim(0)});
    for (std::size_t i = 0; i < scores.size(); ++i) scores[i] = out(i, std::size_t{0});
    return scores;
}

// Backward helpers. d_scores is dL/d(score_i); d_recon is dL/d(output pixel).

template <typename T>
Tensor<T> generator_backward(const ModelStateT<T>& g, const ForwardCache<T>& cache, const Tensor<T>& d_recon,
                             Gradients<T>& grads, bool need_dinput = false) {
    return detail::backward_pass(generator_plan(g.arch), g, cache, d_recon, grads, need_dinput);
}

template <typename T>
Tensor<T> discriminator_backward(const ModelStateT<T>& d, const ForwardCache<T>& cache, const Tensor<T>& d_scores,
                                 Gradients<T>& grads, bool need_dinput = false) {
    Tensor<T> d_out({d_scores.dim(0), std::size_t{1}});
    for (std::size_t i = 0; i < d_scores.size(); ++i) d_out(i, std::size_t{0}) = d_scores[i];
    return detail::backward_pass(discriminator_plan(d.arch), d, cache, std::move(d_out), grads, need_dinput);
}

} // namespace ognet
