#pragma once

#include <cmath>

#include "ognet/core/errors.hpp"
#include "ognet/nn/model_state.hpp"

namespace ognet {

// Adam with standard moment defaults and bias correction.
template <typename T>
class AdamT {
public:
    explicit AdamT(const ModelStateT<T>& m, double lr, double beta1 = 0.9, double beta2 = 0.999,
                   double eps = 1e-8)
        : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps), m_(zero_gradients(m)), v_(zero_gradients(m)) {}

    double learning_rate() const { return lr_; }
    void set_learning_rate(double lr) { lr_ = lr; }

    void step(ModelStateT<T>& model, const Gradients<T>& grads) {
        if (grads.size() != m_.size()) throw ArgumentError("adam: gradient list mismatch");
        ++t_;
        const double bc1 = 1.0 - std::pow(beta1_, t_);
        const double bc2 = 1.0 - std::pow(beta2_, t_);
        for (std::size_t p = 0; p < grads.size(); ++p) {
            auto& theta = model.params[p].value;
            const auto& g = grads[p].value;
            auto& m1 = m_[p].value;
            auto& m2 = v_[p].value;
            for (std::size_t i = 0; i < theta.size(); ++i) {
                m1[i] = static_cast<T>(beta1_ * m1[i] + (1.0 - beta1_) * g[i]);
                m2[i] = static_cast<T>(beta2_ * m2[i] + (1.0 - beta2_) * g[i] * g[i]);
                const double mhat = m1[i] / bc1;
                const double vhat = m2[i] / bc2;
                theta[i] -= static_cast<T>(lr_ * mhat / (std::sqrt(vhat) + eps_));
            }
        }
    }

private:
    double lr_;
    double beta1_, beta2_, eps_;
    int t_ = 0;
    Gradients<T> m_, v_;
};

using Adam = AdamT<double>;

} // namespace ognet
