#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "ognet/core/errors.hpp"
#include "ognet/core/tensor.hpp"

namespace ognet {

// Images are rank-3 CHW tensors with values in [0, 1]. On-disk format is
// binary PGM (P5, single channel) / PPM (P6, RGB), 8-bit.
using Image = Tensor<double>;

namespace detail {

inline int next_pnm_token(std::istream& in, std::string& tok) {
    tok.clear();
    int c = in.get();
    while (c != EOF) {
        if (c == '#') { // comment to end of line
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    while (c != EOF && !std::isspace(c)) {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    }
    return tok.empty() ? EOF : 0;
}

} // namespace detail

inline Image load_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open image: " + path.string());
    std::string magic;
    if (detail::next_pnm_token(in, magic) == EOF || (magic != "P5" && magic != "P6"))
        throw IoError("unsupported image format (expected binary PGM/PPM): " + path.string());
    const std::size_t channels = magic == "P5" ? 1 : 3;

    std::string tok;
    std::size_t dims[3]; // width, height, maxval
    for (auto& d : dims) {
        if (detail::next_pnm_token(in, tok) == EOF) throw IoError("truncated PNM header: " + path.string());
        d = static_cast<std::size_t>(std::stoull(tok));
    }
    const auto [width, height, maxval] = std::tuple{dims[0], dims[1], dims[2]};
    if (maxval == 0 || maxval > 255) throw IoError("unsupported PNM maxval: " + path.string());

    std::vector<std::uint8_t> raw(width * height * channels);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size())
        throw IoError("truncated PNM payload: " + path.string());

    Image img({channels, height, width});
    const double scale = 1.0 / static_cast<double>(maxval);
    for (std::size_t y = 0; y < height; ++y)
        for (std::size_t x = 0; x < width; ++x)
            for (std::size_t c = 0; c < channels; ++c)
                img(c, y, x) = static_cast<double>(raw[(y * width + x) * channels + c]) * scale;
    return img;
}

inline void save_image(const std::filesystem::path& path, const Image& img) {
    if (img.rank() != 3 || (img.dim(0) != 1 && img.dim(0) != 3))
        throw ArgumentError("save_image: expected (1|3, H, W) image, got " + img.shape_string());
    const std::size_t channels = img.dim(0), height = img.dim(1), width = img.dim(2);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write image: " + path.string());
    out << (channels == 1 ? "P5" : "P6") << "\n" << width << " " << height << "\n255\n";
    std::vector<std::uint8_t> raw(width * height * channels);
    for (std::size_t y = 0; y < height; ++y)
        for (std::size_t x = 0; x < width; ++x)
            for (std::size_t c = 0; c < channels; ++c) {
                const double v = std::min(1.0, std::max(0.0, img(c, y, x)));
                raw[(y * width + x) * channels + c] = static_cast<std::uint8_t>(std::lround(v * 255.0));
            }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) throw IoError("short write: " + path.string());
}

// Rec. 601 luma weights.
inline Image to_grayscale(const Image& img) {
    if (img.rank() != 3) throw ArgumentError("to_grayscale: expected rank-3 image");
    if (img.dim(0) == 1) return img;
    if (img.dim(0) != 3) throw ArgumentError("to_grayscale: expected 1 or 3 channels");
    Image out({1, img.dim(1), img.dim(2)});
    for (std::size_t y = 0; y < img.dim(1); ++y)
        for (std::size_t x = 0; x < img.dim(2); ++x)
            out(0, y, x) = 0.299 * img(0, y, x) + 0.587 * img(1, y, x) + 0.114 * img(2, y, x);
    return out;
}

// Bilinear resize with pixel-center sampling. Identity when the size is
// already the target.
inline Image resize_bilinear(const Image& img, std::size_t out_h, std::size_t out_w) {
    if (img.rank() != 3 || img.empty()) throw ArgumentError("resize_bilinear: empty or non rank-3 image");
    const std::size_t ch = img.dim(0), in_h = img.dim(1), in_w = img.dim(2);
    if (in_h == out_h && in_w == out_w) return img;
    Image out({ch, out_h, out_w});
    const double sy = static_cast<double>(in_h) / static_cast<double>(out_h);
    const double sx = static_cast<double>(in_w) / static_cast<double>(out_w);
    for (std::size_t y = 0; y < out_h; ++y) {
        double fy = (static_cast<double>(y) + 0.5) * sy - 0.5;
        fy = std::min(std::max(fy, 0.0), static_cast<double>(in_h - 1));
        const std::size_t y0 = static_cast<std::size_t>(fy);
        const std::size_t y1 = std::min(y0 + 1, in_h - 1);
        const double wy = fy - static_cast<double>(y0);
        for (std::size_t x = 0; x < out_w; ++x) {
            double fx = (static_cast<double>(x) + 0.5) * sx - 0.5;
            fx = std::min(std::max(fx, 0.0), static_cast<double>(in_w - 1));
            const std::size_t x0 = static_cast<std::size_t>(fx);
            const std::size_t x1 = std::min(x0 + 1, in_w - 1);
            const double wx = fx - static_cast<double>(x0);
            for (std::size_t c = 0; c < ch; ++c) {
                const double top = img(c, y0, x0) * (1.0 - wx) + img(c, y0, x1) * wx;
                const double bot = img(c, y1, x0) * (1.0 - wx) + img(c, y1, x1) * wx;
                out(c, y, x) = top * (1.0 - wy) + bot * wy;
            }
        }
    }
    return out;
}

// Adapts an arbitrary loaded image to a model input size: channel conversion
// (grayscale when one channel is requested), bilinear spatial resize. Values
// are already in [0, 1] from load_image.
inline Image resize_and_normalize(const Image& img, std::size_t channels, std::size_t height, std::size_t width) {
    if (img.empty() || img.rank() != 3) throw ArgumentError("resize_and_normalize: empty image");
    Image out = img;
    if (channels == 1 && out.dim(0) != 1) out = to_grayscale(out);
    if (channels == 3 && out.dim(0) == 1) {
        Image rgb({3, out.dim(1), out.dim(2)});
        for (std::size_t y = 0; y < out.dim(1); ++y)
            for (std::size_t x = 0; x < out.dim(2); ++x)
                rgb(0, y, x) = rgb(1, y, x) = rgb(2, y, x) = out(0, y, x);
        out = rgb;
    }
    if (out.dim(0) != channels)
        throw ArgumentError("resize_and_normalize: cannot convert to requested channel count");
    return resize_bilinear(out, height, width);
}

} // namespace ognet
