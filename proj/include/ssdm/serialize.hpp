#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssdm/model.hpp"

namespace ssdm {

// Model file layout (all integers little-endian):
//   magic "SSDM" | u16 format version | u8 precision tag | u32 json length |
//   json (rng_seed + network spec) | parameter blobs in declaration order.
// Precision tags: 0 = float32, 1 = float64, 2 = int8-quantized (each tensor
// blob prefixed by its float32 scale). No trailing bytes permitted.
inline constexpr char kModelMagic[4] = {'S', 'S', 'D', 'M'};
inline constexpr std::uint16_t kModelFormatVersion = 1;

namespace detail {

template <typename I>
void put_le(std::string& out, I v) {
    for (std::size_t i = 0; i < sizeof(I); ++i) {
        out.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff));
    }
}

struct ByteReader {
    const std::uint8_t* p;
    std::size_t size;
    std::size_t pos = 0;

    void need(std::size_t n, const char* what) const {
        if (pos + n > size) {
            throw format_error(std::string("model file truncated at offset ") +
                               std::to_string(pos) + " while reading " + what);
        }
    }
    template <typename I>
    I get_le(const char* what) {
        need(sizeof(I), what);
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < sizeof(I); ++i) {
            v |= static_cast<std::uint64_t>(p[pos + i]) << (8 * i);
        }
        pos += sizeof(I);
        return static_cast<I>(v);
    }
    void get_bytes(void* dst, std::size_t n, const char* what) {
        need(n, what);
        std::memcpy(dst, p + pos, n);
        pos += n;
    }
};

template <typename T>
void append_scalar_blob(std::string& out, const T* data, std::size_t n) {
    using Bits = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
    if constexpr (std::endian::native == std::endian::little) {
        out.append(reinterpret_cast<const char*>(data), n * sizeof(T));
    } else {
        for (std::size_t i = 0; i < n; ++i) put_le(out, std::bit_cast<Bits>(data[i]));
    }
}

template <typename T>
void read_scalar_blob(ByteReader& r, T* data, std::size_t n, const char* what) {
    using Bits = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
    if constexpr (std::endian::native == std::endian::little) {
        r.get_bytes(data, n * sizeof(T), what);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            data[i] = std::bit_cast<T>(r.template get_le<Bits>(what));
        }
    }
}

inline std::string model_header(const NetworkSpec& spec, std::uint64_t rng_seed,
                                std::uint8_t precision_tag) {
    std::string out(kModelMagic, 4);
    put_le(out, kModelFormatVersion);
    out.push_back(static_cast<char>(precision_tag));
    nlohmann::json j;
    j["rng_seed"] = rng_seed;
    j["spec"] = spec.to_json();
    const std::string js = j.dump();
    put_le(out, static_cast<std::uint32_t>(js.size()));
    out += js;
    return out;
}

struct ParsedHeader {
    NetworkSpec spec;
    std::uint64_t rng_seed = 0;
    std::uint8_t precision_tag = 0;
};

inline ParsedHeader parse_model_header(ByteReader& r) {
    char magic[4];
    r.get_bytes(magic, 4, "magic");
    if (std::memcmp(magic, kModelMagic, 4) != 0) {
        throw format_error("bad magic bytes at offset 0 (not a model file)");
    }
    const auto version = r.get_le<std::uint16_t>("format version");
    if (version != kModelFormatVersion) {
        throw format_error("unsupported model format version " + std::to_string(version) +
                           " at offset 4");
    }
    ParsedHeader h;
    h.precision_tag = r.get_le<std::uint8_t>("precision tag");
    if (h.precision_tag > 2) {
        throw format_error("unknown precision tag " + std::to_string(int(h.precision_tag)) +
                           " at offset 6");
    }
    const auto jlen = r.get_le<std::uint32_t>("spec length");
    std::string js(jlen, '\0');
    r.get_bytes(js.data(), jlen, "spec json");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(js);
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("invalid spec json: ") + e.what());
    }
    h.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    h.spec = NetworkSpec::from_json(j.at("spec"));
    return h;
}

inline std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw data_error("cannot open file: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

inline void write_file_bytes(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw data_error("cannot open file for writing: " + path);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw data_error("write failed: " + path);
}

}  // namespace detail

template <typename T>
std::string serialize_model(const ModelT<T>& m) {
    static_assert(std::is_same_v<T, float> || std::is_same_v<T, double>);
    const std::uint8_t tag = std::is_same_v<T, float> ? 0 : 1;
    std::string out = detail::model_header(m.spec, m.rng_seed, tag);
    for (const auto& [name, t] : m.params) {
        detail::append_scalar_blob(out, t.ptr(), t.size());
    }
    return out;
}

template <typename T>
void save_model(const ModelT<T>& m, const std::string& path) {
    detail::write_file_bytes(path, serialize_model(m));
}

template <typename T>
ModelT<T> deserialize_model(const std::vector<std::uint8_t>& bytes) {
    static_assert(std::is_same_v<T, float> || std::is_same_v<T, double>);
    detail::ByteReader r{bytes.data(), bytes.size()};
    const auto h = detail::parse_model_header(r);
    const std::uint8_t want = std::is_same_v<T, float> ? 0 : 1;
    if (h.precision_tag != want) {
        throw format_error("model precision tag " + std::to_string(int(h.precision_tag)) +
                           " does not match requested load precision");
    }
    ModelT<T> m = init_model<T>(h.spec, h.rng_seed);
    for (auto& [name, t] : m.params) {
        detail::read_scalar_blob(r, t.ptr(), t.size(), name.c_str());
    }
    if (r.pos != r.size) {
        throw format_error("trailing bytes after parameter blobs at offset " +
                           std::to_string(r.pos));
    }
    return m;
}

template <typename T>
ModelT<T> load_model(const std::string& path) {
    return deserialize_model<T>(detail::read_file_bytes(path));
}

// Precision tag of a model file without loading the blobs.
inline int model_file_precision(const std::string& path) {
    const auto bytes = detail::read_file_bytes(path);
    detail::ByteReader r{bytes.data(), bytes.size()};
    const auto h = detail::parse_model_header(r);
    return h.precision_tag;
}

template <typename T>
bool models_equal(const ModelT<T>& a, const ModelT<T>& b) {
    if (a.rng_seed != b.rng_seed) return false;
    if (a.spec.canonical_json() != b.spec.canonical_json()) return false;
    if (a.params.size() != b.params.size()) return false;
    for (std::size_t i = 0; i < a.params.size(); ++i) {
        if (a.params[i].first != b.params[i].first) return false;
        if (a.params[i].second.shape != b.params[i].second.shape) return false;
        if (std::memcmp(a.params[i].second.ptr(), b.params[i].second.ptr(),
                        a.params[i].second.size() * sizeof(T)) != 0) {
            return false;
        }
    }
    return true;
}

}  // namespace ssdm
