#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "ognet/core/errors.hpp"

namespace ognet {

enum class Role { generator, discriminator };
enum class Phase { one, two };

// Hidden-layer nonlinearity. tanh is useful for float64 gradient probes
// (smooth everywhere); leaky_relu is the training default.
enum class Nonlinearity { relu, leaky_relu, tanh };

inline std::string to_string(Role r) { return r == Role::generator ? "generator" : "discriminator"; }
inline std::string to_string(Phase p) { return p == Phase::one ? "one" : "two"; }
inline std::string to_string(Nonlinearity n) {
    switch (n) {
        case Nonlinearity::relu: return "relu";
        case Nonlinearity::leaky_relu: return "leaky_relu";
        case Nonlinearity::tanh: return "tanh";
    }
    return "leaky_relu";
}

inline Role role_from_string(const std::string& s) {
    if (s == "generator") return Role::generator;
    if (s == "discriminator") return Role::discriminator;
    throw ConfigError("unknown role: " + s);
}

inline Phase phase_from_string(const std::string& s) {
    if (s == "one") return Phase::one;
    if (s == "two") return Phase::two;
    throw ConfigError("unknown phase: " + s);
}

inline Nonlinearity nonlinearity_from_string(const std::string& s) {
    if (s == "relu") return Nonlinearity::relu;
    if (s == "leaky_relu") return Nonlinearity::leaky_relu;
    if (s == "tanh") return Nonlinearity::tanh;
    throw ConfigError("unknown nonlinearity: " + s);
}

// Where a parameter state came from.
struct Provenance {
    Phase phase = Phase::one;
    int epoch = 0;
    int iteration = 0;

    bool operator==(const Provenance&) const = default;
};

// Describes the whole model family: a denoising autoencoder generator
// (stride-2 conv encoder, mirrored transposed-conv decoder, sigmoid output
// so reconstructions stay in [0, 1]) and a conv discriminator ending in one
// sigmoid unit. Kernel 3, stride 2, padding 1 throughout; channel widths are
// the scaling knob so tests can shrink the nets.
struct ArchitectureSpec {
    std::size_t in_channels = 1;
    std::size_t in_height = 45;
    std::size_t in_width = 45;
    std::vector<std::size_t> generator_channels{16, 32, 64, 128};
    std::vector<std::size_t> discriminator_channels{16, 32, 64, 128};
    Nonlinearity hidden_act = Nonlinearity::leaky_relu;

    static constexpr std::size_t kernel = 3;
    static constexpr std::size_t stride = 2;
    static constexpr std::size_t padding = 1;
    static constexpr double leaky_slope = 0.2;

    bool operator==(const ArchitectureSpec&) const = default;

    void validate() const {
        if (in_channels == 0 || in_height == 0 || in_width == 0)
            throw ConfigError("architecture: input size must be positive");
        if (generator_channels.empty() || discriminator_channels.empty())
            throw ConfigError("architecture: need at least one conv block per model");
        std::size_t h = in_height, w = in_width;
        for (std::size_t i = 0; i < std::max(generator_channels.size(), discriminator_channels.size()); ++i) {
            h = (h + 1) / 2;
            w = (w + 1) / 2;
            if (h == 0 || w == 0) throw ConfigError("architecture: too many stride-2 blocks for input size");
        }
    }

    nlohmann::json to_json() const {
        return {{"input", {in_channels, in_height, in_width}},
                {"generator_channels", generator_channels},
                {"discriminator_channels", discriminator_channels},
                {"nonlinearity", to_string(hidden_act)}};
    }

    static ArchitectureSpec from_json(const nlohmann::json& j) {
        ArchitectureSpec a;
        const auto& input = j.at("input");
        a.in_channels = input.at(0).get<std::size_t>();
        a.in_height = input.at(1).get<std::size_t>();
        a.in_width = input.at(2).get<std::size_t>();
        a.generator_channels = j.at("generator_channels").get<std::vector<std::size_t>>();
        a.discriminator_channels = j.at("discriminator_channels").get<std::vector<std::size_t>>();
        a.hidden_act = nonlinearity_from_string(j.at("nonlinearity").get<std::string>());
        a.validate();
        return a;
    }
};

// One resolved layer of a model built from an ArchitectureSpec.
struct LayerPlan {
    enum class Kind { conv, conv_transpose, linear };
    enum class Act { none, hidden, sigmoid };

    Kind kind = Kind::conv;
    Act act = Act::none;
    std::string name;
    std::size_t in_c = 0, out_c = 0;
    std::size_t in_h = 0, in_w = 0;
    std::size_t out_h = 0, out_w = 0;
    std::size_t out_pad_h = 0, out_pad_w = 0; // conv_transpose only
    std::size_t in_features = 0;              // linear only
};

inline std::size_t conv_out_dim(std::size_t in) { return (in + 1) / 2; } // k3 s2 p1

// Generator: encoder convs then mirrored decoder transposed convs; the
// decoder's output_padding is chosen per layer so each stage restores the
// exact encoder input size.
inline std::vector<LayerPlan> generator_plan(const ArchitectureSpec& arch) {
    arch.validate();
    std::vector<LayerPlan> plan;
    const auto& widths = arch.generator_channels;
    std::vector<std::size_t> hs{arch.in_height}, ws{arch.in_width};
    std::size_t c = arch.in_channels;
    for (std::size_t i = 0; i < widths.size(); ++i) {
        LayerPlan l;
        l.kind = LayerPlan::Kind::conv;
        l.act = LayerPlan::Act::hidden;
        l.name = "enc" + std::to_string(i + 1);
        l.in_c = c;
        l.out_c = widths[i];
        l.in_h = hs.back();
        l.in_w = ws.back();
        l.out_h = conv_out_dim(l.in_h);
        l.out_w = conv_out_dim(l.in_w);
        hs.push_back(l.out_h);
        ws.push_back(l.out_w);
        c = widths[i];
        plan.push_back(l);
    }
    for (std::size_t i = widths.size(); i-- > 0;) {
        LayerPlan l;
        l.kind = LayerPlan::Kind::conv_transpose;
        l.name = "dec" + std::to_string(widths.size() - i);
        l.in_c = widths[i];
        l.out_c = i == 0 ? arch.in_channels : widths[i - 1];
        l.in_h = hs[i + 1];
        l.in_w = ws[i + 1];
        l.out_h = hs[i];
        l.out_w = ws[i];
        // (in-1)*2 - 2 + 3 + out_pad == out
        const std::size_t base_h = 2 * l.in_h - 1, base_w = 2 * l.in_w - 1;
        if (l.out_h < base_h || l.out_h > base_h + 1 || l.out_w < base_w || l.out_w > base_w + 1)
            throw ConfigError("generator_plan: decoder cannot restore stage size");
        l.out_pad_h = l.out_h - base_h;
        l.out_pad_w = l.out_w - base_w;
        l.act = i == 0 ? LayerPlan::Act::sigmoid : LayerPlan::Act::hidden;
        plan.push_back(l);
    }
    return plan;
}

// Discriminator: conv blocks then a single-unit linear head with sigmoid.
inline std::vector<LayerPlan> discriminator_plan(const ArchitectureSpec& arch) {
    arch.validate();
    std::vector<LayerPlan> plan;
    std::size_t c = arch.in_channels, h = arch.in_height, w = arch.in_width;
    for (std::size_t i = 0; i < arch.discriminator_channels.size(); ++i) {
        LayerPlan l;
        l.kind = LayerPlan::Kind::conv;
        l.act = LayerPlan::Act::hidden;
        l.name = "conv" + std::to_string(i + 1);
        l.in_c = c;
        l.out_c = arch.discriminator_channels[i];
        l.in_h = h;
        l.in_w = w;
        l.out_h = conv_out_dim(h);
        l.out_w = conv_out_dim(w);
        c = l.out_c;
        h = l.out_h;
        w = l.out_w;
        plan.push_back(l);
    }
    LayerPlan head;
    head.kind = LayerPlan::Kind::linear;
    head.act = LayerPlan::Act::sigmoid;
    head.name = "head";
    head.in_features = c * h * w;
    head.in_c = c;
    head.in_h = h;
    head.in_w = w;
    head.out_c = 1;
    plan.push_back(head);
    return plan;
}

} // namespace ognet
