#pragma once

#include <string>
#include <vector>

#include "ognet/core/errors.hpp"
#include "ognet/core/rng.hpp"
#include "ognet/core/tensor.hpp"
#include "ognet/nn/arch.hpp"

namespace ognet {

// Which stage of the pipeline a batch of images came from.
enum class SampleRole {
    real_x,            // X: training images
    noisy_x,           // X~: X plus gaussian noise (generator input only)
    recon_xhat,        // X^: G(X) / G(X~)
    low_xhat,          // X^low: G_old(X)
    pseudo_mix_xbar,   // Xbar^: pixel mean of two low-quality reconstructions
    pseudo_recon_xpseudo, // X^pseudo: G(Xbar^)
};

inline std::string to_string(SampleRole r) {
    switch (r) {
        case SampleRole::real_x: return "real_x";
        case SampleRole::noisy_x: return "noisy_x";
        case SampleRole::recon_xhat: return "recon_xhat";
        case SampleRole::low_xhat: return "low_xhat";
        case SampleRole::pseudo_mix_xbar: return "pseudo_mix_xbar";
        case SampleRole::pseudo_recon_xpseudo: return "pseudo_recon_xpseudo";
    }
    return "?";
}

// The discriminator target is a pure function of (role, phase). Phase one:
// real 0, reconstruction 1. Phase two: good reconstructions (real or from
// the trained generator) 0, bad ones (old generator, pseudo-anomaly) 1. The
// raw pseudo mix is only a discriminator input in the ablation that skips
// its reconstruction step; it counts as a bad example.
inline int quasi_gt(SampleRole role, Phase phase) {
    if (phase == Phase::one) {
        switch (role) {
            case SampleRole::real_x: return 0;
            case SampleRole::recon_xhat: return 1;
            default: break;
        }
    } else {
        switch (role) {
            case SampleRole::real_x: return 0;
            case SampleRole::recon_xhat: return 0;
            case SampleRole::low_xhat: return 1;
            case SampleRole::pseudo_recon_xpseudo: return 1;
            case SampleRole::pseudo_mix_xbar: return 1;
            default: break;
        }
    }
    throw ArgumentError("role " + to_string(role) + " is not a discriminator input in phase " + to_string(phase));
}

// A batch of images (N, C, H, W) in [0, 1] tagged with its pipeline role and,
// once labelled for a phase, its discriminator target.
template <typename T>
struct SampleBatchT {
    Tensor<T> images;
    SampleRole role = SampleRole::real_x;
    int quasi_gt_bit = -1; // set by labelled()

    std::size_t count() const { return images.rank() == 4 ? images.dim(0) : 0; }

    SampleBatchT labelled(Phase phase) const {
        SampleBatchT out = *this;
        out.quasi_gt_bit = quasi_gt(role, phase);
        return out;
    }

    SampleBatchT with_role(SampleRole r) const {
        SampleBatchT out = *this;
        out.role = r;
        out.quasi_gt_bit = -1;
        return out;
    }
};

using SampleBatch = SampleBatchT<double>;

// X~ = clamp(X + N(0, sigma), [0, 1]). sigma = 0 reproduces the input
// exactly (no draws are consumed in that case either).
template <typename T>
SampleBatchT<T> add_noise(const SampleBatchT<T>& batch, double sigma, Rng& rng) {
    if (sigma < 0) throw ArgumentError("add_noise: sigma must be >= 0");
    SampleBatchT<T> out = batch;
    out.role = SampleRole::noisy_x;
    out.quasi_gt_bit = -1;
    if (sigma == 0) return out;
    for (auto& v : out.images.values()) {
        v = static_cast<T>(v + rng.gaussian(0.0, sigma));
        v = std::min(T{1}, std::max(T{0}, v));
    }
    return out;
}

// Stacks rank-3 images into an NCHW batch.
template <typename T>
Tensor<T> stack_images(const std::vector<Tensor<T>>& images) {
    if (images.empty()) throw ArgumentError("stack_images: empty image list");
    const auto& s = images.front().shape();
    if (s.size() != 3) throw ArgumentError("stack_images: expected rank-3 images");
    Tensor<T> batch({images.size(), s[0], s[1], s[2]});
    const std::size_t stride = images.front().size();
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (images[i].shape() != s) throw ArgumentError("stack_images: inconsistent image shapes");
        std::copy(images[i].values().begin(), images[i].values().end(), batch.values().begin() + i * stride);
    }
    return batch;
}

template <typename T>
Tensor<T> select_rows(const Tensor<T>& batch, const std::vector<std::size_t>& rows) {
    const std::size_t row_size = batch.size() / batch.dim(0);
    Tensor<T> out({rows.size(), batch.dim(1), batch.dim(2), batch.dim(3)});
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] >= batch.dim(0)) throw ArgumentError("select_rows: index out of range");
        std::copy_n(batch.values().begin() + rows[i] * row_size, row_size, out.values().begin() + i * row_size);
    }
    return out;
}

} // namespace ognet
