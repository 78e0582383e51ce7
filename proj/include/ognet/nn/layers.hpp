#pragma once

#include <cmath>
#include <cstddef>

#include "ognet/core/errors.hpp"
#include "ognet/core/tensor.hpp"
#include "ognet/nn/arch.hpp"

namespace ognet {

// Plain-loop conv / transposed-conv / linear kernels plus elementwise
// activations, each with an explicit adjoint. Shapes are NCHW. All loops are
// sequential with a fixed iteration order, so results are reproducible to
// the bit for a given input.

template <typename T>
Tensor<T> conv2d_forward(const Tensor<T>& x, const Tensor<T>& w, const Tensor<T>& b,
                         std::size_t stride, std::size_t pad) {
    const std::size_t n = x.dim(0), in_c = x.dim(1), in_h = x.dim(2), in_w = x.dim(3);
    const std::size_t out_c = w.dim(0), k = w.dim(2);
    if (w.dim(1) != in_c) throw ConfigError("conv2d: channel mismatch");
    const std::size_t out_h = (in_h + 2 * pad - k) / stride + 1;
    const std::size_t out_w = (in_w + 2 * pad - k) / stride + 1;
    Tensor<T> y({n, out_c, out_h, out_w});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t oc = 0; oc < out_c; ++oc)
            for (std::size_t oh = 0; oh < out_h; ++oh)
                for (std::size_t ow = 0; ow < out_w; ++ow) {
                    T acc = b[oc];
                    for (std::size_t ic = 0; ic < in_c; ++ic)
                        for (std::size_t kh = 0; kh < k; ++kh) {
                            const std::ptrdiff_t ih = static_cast<std::ptrdiff_t>(oh * stride + kh) - static_cast<std::ptrdiff_t>(pad);
                            if (ih < 0 || ih >= static_cast<std::ptrdiff_t>(in_h)) continue;
                            for (std::size_t kw = 0; kw < k; ++kw) {
                                const std::ptrdiff_t iw = static_cast<std::ptrdiff_t>(ow * stride + kw) - static_cast<std::ptrdiff_t>(pad);
                                if (iw < 0 || iw >= static_cast<std::ptrdiff_t>(in_w)) continue;
                                acc += x(i, ic, static_cast<std::size_t>(ih), static_cast<std::size_t>(iw)) * w(oc, ic, kh, kw);
                            }
                        }
                    y(i, oc, oh, ow) = acc;
                }
    return y;
}

template <typename T>
struct ConvGrads {
    Tensor<T> dx, dw, db;
};

template <typename T>
ConvGrads<T> conv2d_backward(const Tensor<T>& x, const Tensor<T>& w, const Tensor<T>& dy,
                             std::size_t stride, std::size_t pad, bool need_dx = true) {
    const std::size_t n = x.dim(0), in_c = x.dim(1), in_h = x.dim(2), in_w = x.dim(3);
    const std::size_t out_c = w.dim(0), k = w.dim(2);
    const std::size_t out_h = dy.dim(2), out_w = dy.dim(3);
    ConvGrads<T> g{need_dx ? Tensor<T>::zeros_like(x) : Tensor<T>{}, Tensor<T>::zeros_like(w), Tensor<T>({out_c})};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t oc = 0; oc < out_c; ++oc)
            for (std::size_t oh = 0; oh < out_h; ++oh)
                for (std::size_t ow = 0; ow < out_w; ++ow) {
                    const T gy = dy(i, oc, oh, ow);
                    g.db[oc] += gy;
                    for (std::size_t ic = 0; ic < in_c; ++ic)
                        for (std::size_t kh = 0; kh < k; ++kh) {
                            const std::ptrdiff_t ih = static_cast<std::ptrdiff_t>(oh * stride + kh) - static_cast<std::ptrdiff_t>(pad);
                            if (ih < 0 || ih >= static_cast<std::ptrdiff_t>(in_h)) continue;
                            for (std::size_t kw = 0; kw < k; ++kw) {
                                const std::ptrdiff_t iw = static_cast<std::ptrdiff_t>(ow * stride + kw) - static_cast<std::ptrdiff_t>(pad);
                                if (iw < 0 || iw >= static_cast<std::ptrdiff_t>(in_w)) continue;
                                const auto ihs = static_cast<std::size_t>(ih), iws = static_cast<std::size_t>(iw);
                                g.dw(oc, ic, kh, kw) += gy * x(i, ic, ihs, iws);
                                if (need_dx) g.dx(i, ic, ihs, iws) += gy * w(oc, ic, kh, kw);
                            }
                        }
                }
    return g;
}

// Transposed conv; weight layout (in_c, out_c, k, k). Output size is
// (in-1)*stride - 2*pad + k + out_pad.
template <typename T>
Tensor<T> conv_transpose2d_forward(const Tensor<T>& x, const Tensor<T>& w, const Tensor<T>& b,
                                   std::size_t stride, std::size_t pad,
                                   std::size_t out_pad_h, std::size_t out_pad_w) {
    const std::size_t n = x.dim(0), in_c = x.dim(1), in_h = x.dim(2), in_w = x.dim(3);
    if (w.dim(0) != in_c) throw ConfigError("conv_transpose2d: channel mismatch");
    const std::size_t out_c = w.dim(1), k = w.dim(2);
    const std::size_t out_h = (in_h - 1) * stride + k - 2 * pad + out_pad_h;
    const std::size_t out_w = (in_w - 1) * stride + k - 2 * pad + out_pad_w;
    Tensor<T> y({n, out_c, out_h, out_w});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t oc = 0; oc < out_c; ++oc)
            for (std::size_t p = 0; p < out_h * out_w; ++p) y(i, oc, p / out_w, p % out_w) = b[oc];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t ic = 0; ic < in_c; ++ic)
            for (std::size_t ih = 0; ih < in_h; ++ih)
                for (std::size_t iw = 0; iw < in_w; ++iw) {
                    const T xv = x(i, ic, ih, iw);
                    for (std::size_t oc = 0; oc < out_c; ++oc)
                        for (std::size_t kh = 0; kh < k; ++kh) {
                            const std::ptrdiff_t oh = static_cast<std::ptrdiff_t>(ih * stride + kh) - static_cast<std::ptrdiff_t>(pad);
                            if (oh < 0 || oh >= static_cast<std::ptrdiff_t>(out_h)) continue;
                            for (std::size_t kw = 0; kw < k; ++kw) {
                                const std::ptrdiff_t ow = static_cast<std::ptrdiff_t>(iw * stride + kw) - static_cast<std::ptrdiff_t>(pad);
                                if (ow < 0 || ow >= static_cast<std::ptrdiff_t>(out_w)) continue;
                                y(i, oc, static_cast<std::size_t>(oh), static_cast<std::size_t>(ow)) += xv * w(ic, oc, kh, kw);
                            }
                        }
                }
    return y;
}

template <typename T>
ConvGrads<T> conv_transpose2d_backward(const Tensor<T>& x, const Tensor<T>& w, const Tensor<T>& dy,
                                       std::size_t stride, std::size_t pad, bool need_dx = true) {
    const std::size_t n = x.dim(0), in_c = x.dim(1), in_h = x.dim(2), in_w = x.dim(3);
    const std::size_t out_c = w.dim(1), k = w.dim(2);
    const std::size_t out_h = dy.dim(2), out_w = dy.dim(3);
    ConvGrads<T> g{need_dx ? Tensor<T>::zeros_like(x) : Tensor<T>{}, Tensor<T>::zeros_like(w), Tensor<T>({out_c})};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t oc = 0; oc < out_c; ++oc)
            for (std::size_t oh = 0; oh < out_h; ++oh)
                for (std::size_t ow = 0; ow < out_w; ++ow) g.db[oc] += dy(i, oc, oh, ow);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t ic = 0; ic < in_c; ++ic)
            for (std::size_t ih = 0; ih < in_h; ++ih)
                for (std::size_t iw = 0; iw < in_w; ++iw) {
                    const T xv = x(i, ic, ih, iw);
                    T acc = T{};
                    for (std::size_t oc = 0; oc < out_c; ++oc)
                        for (std::size_t kh = 0; kh < k; ++kh) {
                            const std::ptrdiff_t oh = static_cast<std::ptrdiff_t>(ih * stride + kh) - static_cast<std::ptrdiff_t>(pad);
                            if (oh < 0 || oh >= static_cast<std::ptrdiff_t>(out_h)) continue;
                            for (std::size_t kw = 0; kw < k; ++kw) {
                                const std::ptrdiff_t ow = static_cast<std::ptrdiff_t>(iw * stride + kw) - static_cast<std::ptrdiff_t>(pad);
                                if (ow < 0 || ow >= static_cast<std::ptrdiff_t>(out_w)) continue;
                                const T gy = dy(i, oc, static_cast<std::size_t>(oh), static_cast<std::size_t>(ow));
                                g.dw(ic, oc, kh, kw) += xv * gy;
                                if (need_dx) acc += gy * w(ic, oc, kh, kw);
                            }
                        }
                    if (need_dx) g.dx(i, ic, ih, iw) += acc;
                }
    return g;
}

template <typename T>
Tensor<T> linear_forward(const Tensor<T>& x, const Tensor<T>& w, const Tensor<T>& b) {
    const std::size_t n = x.dim(0);
    const std::size_t features = x.size() / n;
    const std::size_t out = w.dim(0);
    if (w.dim(1) != features) throw ConfigError("linear: feature count mismatch");
    Tensor<T> y({n, out});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t o = 0; o < out; ++o) {
            T acc = b[o];
            for (std::size_t f = 0; f < features; ++f) acc += x[i * features + f] * w(o, f);
            y(i, o) = acc;
        }
    return y;
}

template <typename T>
ConvGrads<T> linear_backward(const Tensor<T>& x, const Tensor<T>& w, const Tensor<T>& dy, bool need_dx = true) {
    const std::size_t n = x.dim(0);
    const std::size_t features = x.size() / n;
    const std::size_t out = w.dim(0);
    ConvGrads<T> g{need_dx ? Tensor<T>::zeros_like(x) : Tensor<T>{}, Tensor<T>::zeros_like(w), Tensor<T>({out})};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t o = 0; o < out; ++o) {
            const T gy = dy(i, o);
            g.db[o] += gy;
            for (std::size_t f = 0; f < features; ++f) {
                g.dw(o, f) += gy * x[i * features + f];
                if (need_dx) g.dx[i * features + f] += gy * w(o, f);
            }
        }
    return g;
}

template <typename T>
T activation_apply(Nonlinearity act, T v) {
    switch (act) {
        case Nonlinearity::relu: return v > T{} ? v : T{};
        case Nonlinearity::leaky_relu: return v > T{} ? v : static_cast<T>(ArchitectureSpec::leaky_slope) * v;
        case Nonlinearity::tanh: return std::tanh(v);
    }
    return v;
}

// Derivative in terms of the pre-activation value.
template <typename T>
T activation_derivative(Nonlinearity act, T pre) {
    switch (act) {
        case Nonlinearity::relu: return pre > T{} ? T{1} : T{};
        case Nonlinearity::leaky_relu: return pre > T{} ? T{1} : static_cast<T>(ArchitectureSpec::leaky_slope);
        case Nonlinearity::tanh: {
            const T t = std::tanh(pre);
            return T{1} - t * t;
        }
    }
    return T{1};
}

template <typename T>
T sigmoid(T v) {
    return T{1} / (T{1} + std::exp(-v));
}

template <typename T>
T sigmoid_derivative_from_output(T s) {
    return s * (T{1} - s);
}

} // namespace ognet
