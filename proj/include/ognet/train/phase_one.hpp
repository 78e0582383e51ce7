#pragma once

#include <functional>
#include <vector>

#include "ognet/core/errors.hpp"
#include "ognet/core/rng.hpp"
#include "ognet/nn/adam.hpp"
#include "ognet/nn/hyperparams.hpp"
#include "ognet/nn/network.hpp"
#include "ognet/train/losses.hpp"
#include "ognet/train/sample_batch.hpp"
#include "ognet/train/trace.hpp"

namespace ognet {

// Phase one: joint adversarial training of the denoising autoencoder and
// the discriminator. The discriminator learns real -> 0, reconstruction -> 1;
// the generator minimizes -log(1 - D(G(X~))) (non-saturating form of the
// joint objective, same optimum) plus lambda times the reconstruction error.

template <typename T>
struct PhaseOneStepResult {
    T d_loss{};
    T g_adv_loss{};
    T recon_loss{};
};

template <typename T>
PhaseOneStepResult<T> phase_one_step(ModelStateT<T>& g, ModelStateT<T>& d, const SampleBatchT<T>& batch,
                                     const HyperParams& hp, AdamT<T>& opt_g, AdamT<T>& opt_d, Rng& rng) {
    if (batch.role != SampleRole::real_x)
        throw ArgumentError("phase_one_step: batch role must be real_x, got " + to_string(batch.role));

    const SampleBatchT<T> noisy = add_noise(batch, hp.noise_sigma, rng);

    ForwardCache<T> g_cache;
    const Tensor<T> recon = generator_forward(g, noisy.images, &g_cache);

    // Discriminator update toward the phase-one quasi ground truth.
    PhaseOneStepResult<T> result;
    {
        ForwardCache<T> d_real_cache, d_fake_cache;
        const Tensor<T> s_real = discriminator_forward(d, batch.images, &d_real_cache);
        const Tensor<T> s_fake = discriminator_forward(d, recon, &d_fake_cache);
        const auto real_term = nll_toward(s_real, quasi_gt(SampleRole::real_x, Phase::one));
        const auto fake_term = nll_toward(s_fake, quasi_gt(SampleRole::recon_xhat, Phase::one));
        result.d_loss = real_term.value + fake_term.value;
        require_finite(result.d_loss, "phase-one discriminator loss");

        Gradients<T> d_grads = zero_gradients(d);
        discriminator_backward(d, d_real_cache, real_term.dscores, d_grads);
        discriminator_backward(d, d_fake_cache, fake_term.dscores, d_grads);
        opt_d.step(d, d_grads);
    }

    // Generator update through the (just updated) discriminator.
    {
        ForwardCache<T> d_cache;
        const Tensor<T> s_fake = discriminator_forward(d, recon, &d_cache);
        const auto adv = nll_target_zero(s_fake);
        const auto rec = reconstruction_loss(batch.images, recon);
        result.g_adv_loss = adv.value;
        result.recon_loss = rec.value;
        require_finite(result.g_adv_loss, "phase-one generator adversarial loss");
        require_finite(result.recon_loss, "phase-one reconstruction loss");

        Gradients<T> d_scratch = zero_gradients(d);
        Tensor<T> d_recon = discriminator_backward(d, d_cache, adv.dscores, d_scratch, /*need_dinput=*/true);
        d_recon.add_scaled(rec.drecon, static_cast<T>(hp.lambda_recon));

        Gradients<T> g_grads = zero_gradients(g);
        generator_backward(g, g_cache, d_recon, g_grads);
        opt_g.step(g, g_grads);
    }
    return result;
}

template <typename T>
struct PhaseOneResultT {
    std::vector<ModelStateT<T>> g_epochs; // g_epochs[e-1] is the snapshot after epoch e
    std::vector<ModelStateT<T>> d_epochs;
    std::vector<TraceEntry> trace;
};

using PhaseOneResult = PhaseOneResultT<double>;

// Runs phase one over a pool of training images (N, C, H, W), snapshotting
// both models after every epoch. `on_epoch` is invoked with each snapshot
// pair (checkpoint persistence hooks in here).
template <typename T>
PhaseOneResultT<T> run_phase_one(
    const Tensor<T>& train_pool, const ArchitectureSpec& arch, const HyperParams& hp,
    const std::function<void(int, const ModelStateT<T>&, const ModelStateT<T>&)>& on_epoch = {},
    const std::function<void(const TraceEntry&)>& on_trace = {}) {
    hp.validate();
    if (train_pool.rank() != 4 || train_pool.dim(0) == 0)
        throw ArgumentError("run_phase_one: empty training pool");

    Rng init_g_rng(Rng::derive_seed(hp.seed, 0));
    Rng init_d_rng(Rng::derive_seed(hp.seed, 1));
    Rng train_rng(Rng::derive_seed(hp.seed, 2));

    PhaseOneResultT<T> result;
    ModelStateT<T> g = make_generator<T>(arch, init_g_rng);
    ModelStateT<T> d = make_discriminator<T>(arch, init_d_rng);
    AdamT<T> opt_g(g, hp.lr_g);
    AdamT<T> opt_d(d, hp.lr_d_phase1);

    const std::size_t n = train_pool.dim(0);
    const std::size_t batch_size = std::min<std::size_t>(n, static_cast<std::size_t>(hp.phase1_batch_size));
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;

    int step = 0;
    for (int epoch = 1; epoch <= hp.phase1_epochs; ++epoch) {
        train_rng.shuffle(order);
        for (std::size_t start = 0; start + batch_size <= n; start += batch_size) {
            SampleBatchT<T> batch;
            batch.images = select_rows(train_pool, {order.begin() + start, order.begin() + start + batch_size});
            batch.role = SampleRole::real_x;
            const auto losses = phase_one_step(g, d, batch, hp, opt_g, opt_d, train_rng);
            ++step;
            TraceEntry entry{Phase::one, epoch, step,
                             {{"d_loss", static_cast<double>(losses.d_loss)},
                              {"g_adv_loss", static_cast<double>(losses.g_adv_loss)},
                              {"recon_loss", static_cast<double>(losses.recon_loss)}}};
            if (on_trace) on_trace(entry);
            result.trace.push_back(std::move(entry));
        }
        const Provenance tag{Phase::one, epoch, step};
        result.g_epochs.push_back(g.snapshot(tag));
        result.d_epochs.push_back(d.snapshot(tag));
        if (on_epoch) on_epoch(epoch, result.g_epochs.back(), result.d_epochs.back());
    }
    return result;
}

} // namespace ognet
