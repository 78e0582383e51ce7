#pragma once

#include <cmath>
#include <string>

#include "ognet/core/errors.hpp"
#include "ognet/core/tensor.hpp"

namespace ognet {

// Loss terms over discriminator scores. Every log argument is floored at
// kLogEps because the phase-two objective is unbounded below when a score
// saturates at exactly 0 or 1; gradients vanish inside the floor.
inline constexpr double kLogEps = 1e-7;

template <typename T>
T safe_log(T x) {
    return std::log(std::max(x, static_cast<T>(kLogEps)));
}

template <typename T>
struct TermGrad {
    T value{};
    Tensor<T> dscores; // d(value)/d(score_i)
};

// -mean(log(1 - s)): the "this is a good reconstruction / real image" term
// (target 0 under the inverted label convention).
template <typename T>
TermGrad<T> nll_target_zero(const Tensor<T>& scores) {
    const std::size_t n = scores.size();
    if (n == 0) throw ArgumentError("loss term over empty score set");
    TermGrad<T> out{T{}, Tensor<T>::zeros_like(scores)};
    const T inv_n = T{1} / static_cast<T>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const T one_minus = T{1} - scores[i];
        out.value -= safe_log(one_minus) * inv_n;
        if (one_minus > static_cast<T>(kLogEps)) out.dscores[i] = inv_n / one_minus;
    }
    return out;
}

// -mean(log(s)): the "this is a bad reconstruction" term (target 1).
template <typename T>
TermGrad<T> nll_target_one(const Tensor<T>& scores) {
    const std::size_t n = scores.size();
    if (n == 0) throw ArgumentError("loss term over empty score set");
    TermGrad<T> out{T{}, Tensor<T>::zeros_like(scores)};
    const T inv_n = T{1} / static_cast<T>(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.value -= safe_log(scores[i]) * inv_n;
        if (scores[i] > static_cast<T>(kLogEps)) out.dscores[i] = -inv_n / scores[i];
    }
    return out;
}

template <typename T>
TermGrad<T> nll_toward(const Tensor<T>& scores, int target) {
    if (target == 0) return nll_target_zero(scores);
    if (target == 1) return nll_target_one(scores);
    throw ArgumentError("quasi ground truth must be 0 or 1, got " + std::to_string(target));
}

// Mean squared reconstruction error over all pixels of the batch, plus its
// gradient with respect to the reconstruction.
template <typename T>
struct ReconGrad {
    T value{};
    Tensor<T> drecon;
};

template <typename T>
ReconGrad<T> reconstruction_loss(const Tensor<T>& target, const Tensor<T>& recon) {
    if (!target.same_shape(recon)) throw ArgumentError("reconstruction_loss: shape mismatch");
    ReconGrad<T> out{T{}, Tensor<T>::zeros_like(recon)};
    const T inv_n = T{1} / static_cast<T>(recon.size());
    for (std::size_t i = 0; i < recon.size(); ++i) {
        const T diff = recon[i] - target[i];
        out.value += diff * diff * inv_n;
        out.drecon[i] = T{2} * diff * inv_n;
    }
    return out;
}

template <typename T>
void require_finite(T value, const std::string& what) {
    if (!std::isfinite(value)) throw NumericError("non-finite " + what + " (= " + std::to_string(value) + ")");
}

} // namespace ognet
