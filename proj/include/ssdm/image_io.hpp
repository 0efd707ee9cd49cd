#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "ssdm/tensor.hpp"

namespace ssdm {

namespace detail {

// skips whitespace and '#' comment lines in a PNM header
inline void skip_pnm_space(std::istream& in) {
    for (;;) {
        const int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            return;
        }
    }
}

inline int read_pnm_int(std::istream& in, const std::string& path, const char* what) {
    skip_pnm_space(in);
    int v = 0;
    if (!(in >> v)) throw format_error(path + ": malformed PNM header (" + what + ")");
    return v;
}

}  // namespace detail

// Decodes binary PGM (P5, 1 channel) and PPM (P6, 3 channels) into a
// [C,H,W] tensor with values in [0,1]. Only 8-bit depth is supported.
inline Tensor read_pnm(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw data_error(path + ": cannot open image");
    std::string magic;
    f >> magic;
    int channels = 0;
    if (magic == "P5") channels = 1;
    else if (magic == "P6") channels = 3;
    else throw format_error(path + ": unsupported image format '" + magic + "' (need binary P5/P6)");

    const int w = detail::read_pnm_int(f, path, "width");
    const int h = detail::read_pnm_int(f, path, "height");
    const int maxval = detail::read_pnm_int(f, path, "maxval");
    if (w <= 0 || h <= 0) throw format_error(path + ": non-positive image dimensions");
    if (maxval != 255) {
        throw format_error(path + ": unsupported depth (maxval " + std::to_string(maxval) +
                           ", only 8-bit images are supported)");
    }
    f.get();  // single whitespace after maxval

    std::vector<unsigned char> raw(static_cast<std::size_t>(w) * h * channels);
    f.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (f.gcount() != static_cast<std::streamsize>(raw.size())) {
        throw format_error(path + ": truncated pixel data");
    }

    Tensor img({channels, h, w});
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < channels; ++c) {
                img.ptr()[(static_cast<std::size_t>(c) * h + y) * w + x] =
                    raw[(static_cast<std::size_t>(y) * w + x) * channels + c] / 255.f;
            }
        }
    }
    return img;
}

inline void write_pnm(const std::string& path, const Tensor& img) {
    if (img.shape.size() != 3 || (img.shape[0] != 1 && img.shape[0] != 3)) {
        throw dimension_error("write_pnm: image must be [1|3,H,W]");
    }
    const int c = img.shape[0], h = img.shape[1], w = img.shape[2];
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw data_error(path + ": cannot open for writing");
    f << (c == 1 ? "P5" : "P6") << "\n" << w << " " << h << "\n255\n";
    std::vector<unsigned char> raw(static_cast<std::size_t>(w) * h * c);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int ch = 0; ch < c; ++ch) {
                const float v = img.ptr()[(static_cast<std::size_t>(ch) * h + y) * w + x];
                raw[(static_cast<std::size_t>(y) * w + x) * c + ch] =
                    static_cast<unsigned char>(std::lround(std::clamp(v, 0.f, 1.f) * 255.f));
            }
        }
    }
    f.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!f) throw data_error(path + ": write failed");
}

// bilinear resize with pixel-center alignment
inline Tensor resize_bilinear(const Tensor& img, int out_h, int out_w) {
    if (img.shape.size() != 3) throw dimension_error("resize_bilinear: image must be [C,H,W]");
    const int C = img.shape[0], H = img.shape[1], W = img.shape[2];
    if (H == out_h && W == out_w) return img;
    Tensor out({C, out_h, out_w});
    const double sy = static_cast<double>(H) / out_h;
    const double sx = static_cast<double>(W) / out_w;
    for (int c = 0; c < C; ++c) {
        const float* src = img.ptr() + static_cast<std::size_t>(c) * H * W;
        float* dst = out.ptr() + static_cast<std::size_t>(c) * out_h * out_w;
        for (int y = 0; y < out_h; ++y) {
            const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, static_cast<double>(H - 1));
            const int y0 = static_cast<int>(fy);
            const int y1 = std::min(y0 + 1, H - 1);
            const double wy = fy - y0;
            for (int x = 0; x < out_w; ++x) {
                const double fx =
                    std::clamp((x + 0.5) * sx - 0.5, 0.0, static_cast<double>(W - 1));
                const int x0 = static_cast<int>(fx);
                const int x1 = std::min(x0 + 1, W - 1);
                const double wx = fx - x0;
                const double v =
                    src[static_cast<std::size_t>(y0) * W + x0] * (1 - wy) * (1 - wx) +
                    src[static_cast<std::size_t>(y0) * W + x1] * (1 - wy) * wx +
                    src[static_cast<std::size_t>(y1) * W + x0] * wy * (1 - wx) +
                    src[static_cast<std::size_t>(y1) * W + x1] * wy * wx;
                dst[static_cast<std::size_t>(y) * out_w + x] = static_cast<float>(v);
            }
        }
    }
    return out;
}

}  // namespace ssdm
