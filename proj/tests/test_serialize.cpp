#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <unistd.h>

#include "ssdm/serialize.hpp"

using namespace ssdm;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("ssdm_ser_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("save/load round-trip is bitwise identical") {
    Model m = init_model(compact_net(3, {1, 8, 8}, 4, 8), 77);
    TempDir dir;
    const std::string path = dir.file("m.ssdm");
    save_model(m, path);
    const Model r = load_model<float>(path);
    CHECK(models_equal(m, r));

    // serialize twice -> identical bytes
    CHECK(serialize_model(m) == serialize_model(r));
}

TEST_CASE("float64 models round-trip with precision tag 1") {
    Model64 m = init_model<double>(compact_net(2, {1, 4, 4}, 2, 4), 5);
    TempDir dir;
    save_model(m, dir.file("m64.ssdm"));
    CHECK(model_file_precision(dir.file("m64.ssdm")) == 1);
    const Model64 r = load_model<double>(dir.file("m64.ssdm"));
    CHECK(models_equal(m, r));
    CHECK_THROWS_AS(load_model<float>(dir.file("m64.ssdm")), format_error);
}

TEST_CASE("payload section is exactly 4 bytes per float32 parameter") {
    NetworkSpec s;
    s.input = {1, 1, 199};
    s.head = {LayerSpec::flatten(), LayerSpec::dense(199, 5), LayerSpec::softmax_output()};
    Model m = init_model(s, 1);
    CHECK(count_params(s) == 1000);
    const std::string bytes = serialize_model(m);
    const std::string header = detail::model_header(m.spec, m.rng_seed, 0);
    CHECK(bytes.size() - header.size() == 4000);
}

TEST_CASE("corrupted files fail cleanly") {
    Model m = init_model(compact_net(2, {1, 4, 4}, 2, 4), 9);
    std::string bytes = serialize_model(m);

    SUBCASE("bad magic") {
        bytes[0] = 'X';
        std::vector<std::uint8_t> v(bytes.begin(), bytes.end());
        CHECK_THROWS_WITH_AS(deserialize_model<float>(v), doctest::Contains("magic"),
                             format_error);
    }
    SUBCASE("truncated blob") {
        bytes.resize(bytes.size() - 3);
        std::vector<std::uint8_t> v(bytes.begin(), bytes.end());
        CHECK_THROWS_AS(deserialize_model<float>(v), format_error);
    }
    SUBCASE("trailing bytes rejected") {
        bytes += "zz";
        std::vector<std::uint8_t> v(bytes.begin(), bytes.end());
        CHECK_THROWS_WITH_AS(deserialize_model<float>(v), doctest::Contains("trailing"),
                             format_error);
    }
    SUBCASE("bad version") {
        bytes[4] = 9;
        std::vector<std::uint8_t> v(bytes.begin(), bytes.end());
        CHECK_THROWS_WITH_AS(deserialize_model<float>(v), doctest::Contains("version"),
                             format_error);
    }
}

TEST_CASE("count_params equals serialized parameter element count") {
    for (const auto& spec : {compact_net(3), standard_net(5), compact_net(7, {3, 16, 16}, 4, 8)}) {
        Model m = init_model(spec, 2);
        long long total = 0;
        for (const auto& [n, t] : m.params) total += static_cast<long long>(t.size());
        CHECK(total == count_params(spec));
    }
}
