#pragma once

#include <cstdint>

#include <json.hpp>

#include "ognet/core/errors.hpp"

namespace ognet {

// Scalar knobs of both training phases and the decision threshold.
// Defaults follow the reference setup: lambda 0.2, alpha 0.1, beta 0.001,
// generator lr 1e-3, discriminator lr 1e-4 halved to 5e-5 for phase two,
// 75 phase-two iterations.
struct HyperParams {
    double lambda_recon = 0.2;
    double alpha = 0.1;
    double beta = 0.001;
    double noise_sigma = 0.1;
    double lr_g = 1e-3;
    double lr_d_phase1 = 1e-4;
    double lr_d_phase2 = 5e-5;
    int phase1_epochs = 20;
    int phase2_iterations = 75;
    int phase1_batch_size = 32;
    int phase2_batch_size = 32;
    double tau = 0.5;
    std::uint64_t seed = 0;

    bool operator==(const HyperParams&) const = default;

    void validate() const {
        if (lambda_recon < 0) throw ConfigError("lambda_recon must be >= 0");
        if (alpha < 0 || alpha > 1) throw ConfigError("alpha must be in [0,1]");
        if (beta < 0 || beta > 1) throw ConfigError("beta must be in [0,1]");
        if (noise_sigma < 0) throw ConfigError("noise_sigma must be >= 0");
        if (lr_g <= 0 || lr_d_phase1 <= 0 || lr_d_phase2 <= 0) throw ConfigError("learning rates must be > 0");
        if (phase1_epochs < 1) throw ConfigError("phase1_epochs must be >= 1");
        if (phase2_iterations < 0) throw ConfigError("phase2_iterations must be >= 0");
        if (phase1_batch_size < 1 || phase2_batch_size < 2)
            throw ConfigError("batch sizes too small (phase two needs >= 2 for pseudo-anomaly pairs)");
        if (tau < 0 || tau > 1) throw ConfigError("tau must be in [0,1]");
    }

    nlohmann::json to_json() const {
        return {{"lambda_recon", lambda_recon},
                {"alpha", alpha},
                {"beta", beta},
                {"noise_sigma", noise_sigma},
                {"lr_g", lr_g},
                {"lr_d_phase1", lr_d_phase1},
                {"lr_d_phase2", lr_d_phase2},
                {"phase1_epochs", phase1_epochs},
                {"phase2_iterations", phase2_iterations},
                {"phase1_batch_size", phase1_batch_size},
                {"phase2_batch_size", phase2_batch_size},
                {"tau", tau},
                {"seed", seed}};
    }
};

} // namespace ognet
