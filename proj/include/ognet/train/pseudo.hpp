#pragma once

#include <vector>

#include "ognet/core/errors.hpp"
#include "ognet/core/rng.hpp"
#include "ognet/nn/network.hpp"
#include "ognet/train/sample_batch.hpp"

namespace ognet {

// Pseudo-anomaly module: two arbitrary training images are regenerated
// through the old generator and averaged pixel-wise; the mix is then (unless
// an ablation says otherwise) reconstructed by the trained generator so the
// discriminator sees what G does to unusual input.

// Pixel-wise mean of two equally-shaped reconstructions.
template <typename T>
Tensor<T> pseudo_mix(const Tensor<T>& recon_i, const Tensor<T>& recon_j) {
    if (!recon_i.same_shape(recon_j)) throw ArgumentError("pseudo_mix: shape mismatch");
    Tensor<T> out = recon_i;
    for (std::size_t p = 0; p < out.size(); ++p) out[p] = (recon_i[p] + recon_j[p]) / T{2};
    return out;
}

// Xbar^ = (G_old(X_i) + G_old(X_j)) / 2 for two distinct rows of a batch of
// training images.
template <typename T>
Tensor<T> make_pseudo_anomaly(const ModelStateT<T>& g_old, const Tensor<T>& images, std::size_t i, std::size_t j) {
    if (i == j) throw ArgumentError("make_pseudo_anomaly: the two source images must have distinct indices");
    const Tensor<T> pair = select_rows(images, {i, j});
    const Tensor<T> recon = generator_forward(g_old, pair);
    const std::size_t row = recon.size() / 2;
    Tensor<T> out({std::size_t{1}, recon.dim(1), recon.dim(2), recon.dim(3)});
    for (std::size_t p = 0; p < row; ++p) out[p] = (recon[p] + recon[row + p]) / T{2};
    return out;
}

// Batch form used in phase two: the rows of `low_recons` are G_old
// reconstructions of the batch; each row is paired with a distinct partner
// row (a seeded fixed-point-free permutation) and averaged.
template <typename T>
SampleBatchT<T> make_pseudo_batch(const Tensor<T>& low_recons, Rng& rng) {
    if (low_recons.rank() != 4 || low_recons.dim(0) < 2)
        throw ArgumentError("make_pseudo_batch: need at least two reconstructions");
    const auto partner = rng.derangement(low_recons.dim(0));
    const std::size_t row = low_recons.size() / low_recons.dim(0);
    SampleBatchT<T> out;
    out.images = Tensor<T>::zeros_like(low_recons);
    out.role = SampleRole::pseudo_mix_xbar;
    for (std::size_t i = 0; i < low_recons.dim(0); ++i)
        for (std::size_t p = 0; p < row; ++p)
            out.images[i * row + p] = (low_recons[i * row + p] + low_recons[partner[i] * row + p]) / T{2};
    return out;
}

// X^pseudo = G(Xbar^); the generator runs on the clean mix (no noise).
template <typename T>
SampleBatchT<T> reconstruct_pseudo(const ModelStateT<T>& g, const SampleBatchT<T>& xbar) {
    if (xbar.role != SampleRole::pseudo_mix_xbar)
        throw ArgumentError("reconstruct_pseudo: input role must be pseudo_mix_xbar, got " + to_string(xbar.role));
    SampleBatchT<T> out;
    out.images = generator_forward(g, xbar.images);
    out.role = SampleRole::pseudo_recon_xpseudo;
    return out;
}

} // namespace ognet
