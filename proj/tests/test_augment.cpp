#include <doctest.h>

#include <map>

#include "ssdm/augment.hpp"

using namespace ssdm;

namespace {

Tensor random_image(int c, int h, int w, std::uint64_t seed) {
    Tensor img({c, h, w});
    Rng rng(seed);
    for (auto& v : img.data) v = static_cast<float>(rng.uniform());
    return img;
}

Tensor constant_image(int c, int h, int w, float value) {
    Tensor img({c, h, w});
    std::fill(img.data.begin(), img.data.end(), value);
    return img;
}

bool images_equal(const Tensor& a, const Tensor& b, float tol = 0.f) {
    if (a.shape != b.shape) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > tol) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("flips are involutions") {
    const Tensor img = random_image(1, 9, 12, 3);
    for (auto t : {Transform::hflip(), Transform::vflip(), Transform::hvflip()}) {
        CHECK(images_equal(apply(t, apply(t, img)), img));
    }
}

TEST_CASE("gamma with exponent 1 is the identity") {
    const Tensor img = random_image(1, 8, 8, 4);
    CHECK(images_equal(apply(Transform::gamma(1.0), img), img, 1e-7f));
}

TEST_CASE("box blur leaves constant images unchanged") {
    const Tensor img = constant_image(1, 8, 8, 0.37f);
    CHECK(images_equal(apply(Transform::box_blur(3), img), img, 1e-6f));
}

TEST_CASE("rotate(90) four times is the identity on square images") {
    const Tensor img = random_image(1, 16, 16, 5);
    Tensor out = img;
    for (int i = 0; i < 4; ++i) out = apply(Transform::rotate(90), out);
    CHECK(images_equal(out, img, 1e-5f));
}

TEST_CASE("every transform preserves shape and range") {
    const Tensor img = random_image(3, 10, 14, 6);
    const Transform cases[] = {
        Transform::hflip(),       Transform::vflip(),
        Transform::hvflip(),      Transform::rotate(33),
        Transform::zoom(1.4),     Transform::zoom(0.6),
        Transform::brightness(0.5), Transform::brightness(-0.5),
        Transform::gamma(2.2),    Transform::box_blur(5),
        Transform::gaussian_blur(1.5, 5), Transform::translate(3.5, -2.25),
        Transform::contrast(1.8), Transform::posterize(3),
    };
    for (const auto& t : cases) {
        const Tensor out = apply(t, img);
        CHECK(out.shape == img.shape);
        for (float v : out.data) {
            CHECK(v >= 0.f);
            CHECK(v <= 1.f);
        }
    }
}

TEST_CASE("transform parameter validation") {
    const Tensor img = random_image(1, 8, 8, 1);
    CHECK_THROWS_AS(apply(Transform::gamma(0.0), img), parameter_error);
    CHECK_THROWS_AS(apply(Transform::box_blur(4), img), parameter_error);
    CHECK_THROWS_AS(apply(Transform::zoom(3.0), img), parameter_error);
    CHECK_THROWS_AS(apply(Transform::gaussian_blur(1.0, 4), img), parameter_error);
    CHECK_THROWS_AS(apply(Transform::posterize(9), img), parameter_error);
}

TEST_CASE("weak_augment is seeded, bounded, and edge-padded") {
    const Tensor img = random_image(1, 16, 16, 7);
    const AugmentPolicy policy = AugmentPolicy::weak(1234);

    SUBCASE("deterministic per seed") {
        CHECK(images_equal(weak_augment(policy, img), weak_augment(policy, img)));
        bool any_diff = false;
        for (std::uint64_t s = 0; s < 8; ++s) {
            any_diff |= !images_equal(weak_augment(policy.with_seed(s), img), img);
        }
        CHECK(any_diff);
    }
    SUBCASE("translation bound: a lone bright pixel moves at most 12.5% of width") {
        Tensor spot = constant_image(1, 16, 16, 0.f);
        spot.data[8 * 16 + 8] = 1.f;
        const int max_shift = static_cast<int>(0.125 * 16);
        for (std::uint64_t s = 0; s < 50; ++s) {
            const Tensor out = weak_augment(policy.with_seed(s), spot);
            for (int y = 0; y < 16; ++y) {
                for (int x = 0; x < 16; ++x) {
                    if (out.data[y * 16 + x] > 0.5f) {
                        CHECK(std::abs(y - 8) <= max_shift);
                        // horizontal flip may mirror the column first
                        const bool near_orig = std::abs(x - 8) <= max_shift;
                        const bool near_flip = std::abs(x - 7) <= max_shift;
                        CHECK((near_orig || near_flip));
                    }
                }
            }
        }
    }
    SUBCASE("constant images stay constant under edge padding") {
        const Tensor flat = constant_image(1, 16, 16, 0.42f);
        for (std::uint64_t s = 0; s < 10; ++s) {
            CHECK(images_equal(weak_augment(policy.with_seed(s), flat), flat, 1e-6f));
        }
    }
}

TEST_CASE("strong_augment honors N and stays in range") {
    const Tensor img = random_image(1, 16, 16, 9);

    SUBCASE("N=0 is the identity") {
        CHECK(images_equal(strong_augment(AugmentPolicy::strong(5, 0), img), img));
    }
    SUBCASE("N=2 keeps shape and range") {
        const Tensor out = strong_augment(AugmentPolicy::strong(3, 2), img);
        CHECK(out.shape == img.shape);
        for (float v : out.data) {
            CHECK(v >= 0.f);
            CHECK(v <= 1.f);
        }
    }
    SUBCASE("op selection is near-uniform over the 8-op pool") {
        std::map<TransformKind, int> counts;
        for (std::uint64_t s = 0; s < 1000; ++s) {
            std::vector<Transform> applied;
            strong_augment(AugmentPolicy::strong(s, 1), img, &applied);
            REQUIRE(applied.size() == 1);
            counts[applied[0].kind]++;
        }
        CHECK(counts.size() == 8);
        for (const auto& [kind, n] : counts) {
            CHECK(n > 125 - 40);
            CHECK(n < 125 + 40);
        }
    }
}

TEST_CASE("tta_variants prepends the identity") {
    const Tensor img = random_image(1, 12, 12, 11);
    const TTASet tta = default_tta();
    CHECK(tta.transforms.size() == 6);

    const auto variants = tta_variants(tta, img);
    CHECK(variants.size() == 7);
    CHECK(images_equal(variants[0], img));

    CHECK(tta_variants(TTASet{}, img).size() == 1);

    // constant image with flips-only set: all variants identical
    const Tensor flat = constant_image(1, 12, 12, 0.6f);
    TTASet flips;
    flips.transforms = {Transform::hflip(), Transform::vflip(), Transform::hvflip()};
    for (const auto& v : tta_variants(flips, flat)) CHECK(images_equal(v, flat));
}

TEST_CASE("transform grammar parses the documented string") {
    const TTASet t = parse_transforms("hflip,vflip,HVFLIP,blur,gblur,gamma:0.8");
    REQUIRE(t.transforms.size() == 6);
    CHECK(t.transforms[0].kind == TransformKind::hflip);
    CHECK(t.transforms[2].kind == TransformKind::hvflip);
    CHECK(t.transforms[3].kind == TransformKind::box_blur);
    CHECK(t.transforms[3].p1 == 3);
    CHECK(t.transforms[4].kind == TransformKind::gaussian_blur);
    CHECK(t.transforms[5].p1 == doctest::Approx(0.8));

    CHECK(parse_transforms("").transforms.empty());
    CHECK(parse_transforms("rotate:15,zoom:1.2,translate:2:3").transforms.size() == 3);
    CHECK_THROWS_AS(parse_transforms("wat"), parameter_error);
    CHECK_THROWS_AS(parse_transforms("gamma:zzz"), parameter_error);
    CHECK_THROWS_AS(parse_transforms("blur:4"), parameter_error);
}
