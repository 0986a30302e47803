#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "reference.hpp"
#include "tubeforge/augment.hpp"
#include "tubeforge/error.hpp"

using namespace tubeforge;

TEST_SUITE_BEGIN("augment");

namespace {

Image mask_of(int w, int h, std::uint8_t value) {
  Image m(w, h, 1);
  for (auto& p : m.pixels) p = value;
  return m;
}

}  // namespace

TEST_CASE("an all-foreground mask returns fg exactly") {
  std::mt19937_64 rng(51);
  const Image fg = test::random_image(rng, 12, 9);
  const Image bg = test::random_image(rng, 12, 9);
  CHECK(composite_frame(fg, mask_of(12, 9, 255), bg, {}) == fg);
}

TEST_CASE("an all-background mask returns bg exactly") {
  std::mt19937_64 rng(52);
  const Image fg = test::random_image(rng, 12, 9);
  const Image bg = test::random_image(rng, 12, 9);
  CHECK(composite_frame(fg, mask_of(12, 9, 0), bg, {}) == bg);
}

TEST_CASE("a split mask selects per pixel, bit-exact") {
  std::mt19937_64 rng(53);
  const Image fg = test::random_image(rng, 16, 10);
  const Image bg = test::random_image(rng, 16, 10);
  Image mask(16, 10, 1);
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 16; ++x) mask.at(x, y, 0) = x < 8 ? 255 : 0;

  const Image out = composite_frame(fg, mask, bg, {});
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 16; ++x)
      for (int c = 0; c < 3; ++c)
        CHECK(out.at(x, y, c) == (x < 8 ? fg.at(x, y, c) : bg.at(x, y, c)));
}

TEST_CASE("hard composites partition every pixel between fg and bg") {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 50; ++trial) {
    const int w = 1 + static_cast<int>(rng() % 32);
    const int h = 1 + static_cast<int>(rng() % 32);
    const Image fg = test::random_image(rng, w, h);
    const Image bg = test::random_image(rng, w, h);
    const Image mask = test::random_image(rng, w, h, 1);
    AugmentSpec spec;
    spec.binarize_threshold = 1 + static_cast<int>(rng() % 254);
    const Image out = composite_frame(fg, mask, bg, spec);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const bool fg_side = mask.at(x, y, 0) >= spec.binarize_threshold;
        for (int c = 0; c < 3; ++c)
          CHECK(out.at(x, y, c) ==
                (fg_side ? fg.at(x, y, c) : bg.at(x, y, c)));
      }
  }
}

TEST_CASE("compositing an image onto itself is the identity for any mask") {
  std::mt19937_64 rng(55);
  for (int feather : {0, 2}) {
    const Image img = test::random_image(rng, 20, 14);
    const Image mask = test::random_image(rng, 20, 14, 1);
    AugmentSpec spec;
    spec.feather_radius = feather;
    CHECK(composite_frame(img, mask, img, spec) == img);
  }
}

TEST_CASE("feathered composites match the naive window oracle") {
  std::mt19937_64 rng(56);
  for (int trial = 0; trial < 20; ++trial) {
    const int w = 4 + static_cast<int>(rng() % 24);
    const int h = 4 + static_cast<int>(rng() % 24);
    const int radius = 1 + static_cast<int>(rng() % 4);
    const Image fg = test::random_image(rng, w, h);
    const Image bg = test::random_image(rng, w, h);
    const Image mask = test::random_image(rng, w, h, 1);
    AugmentSpec spec;
    spec.feather_radius = radius;
    const Image fast = composite_frame(fg, mask, bg, spec);
    const Image naive =
        ref::composite_naive(fg, mask, bg, spec.binarize_threshold, radius);
    REQUIRE(fast.pixels.size() == naive.pixels.size());
    for (std::size_t i = 0; i < fast.pixels.size(); ++i) {
      const int diff = std::abs(static_cast<int>(fast.pixels[i]) -
                                static_cast<int>(naive.pixels[i]));
      CHECK(diff <= 1);
    }
  }
}

TEST_CASE("size mismatches are rejected") {
  std::mt19937_64 rng(57);
  const Image fg = test::random_image(rng, 8, 8);
  const Image bg = test::random_image(rng, 8, 8);
  try {
    composite_frame(fg, mask_of(9, 8, 255), bg, {});
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::dimension_mismatch);
  }
  CHECK_THROWS_AS(
      composite_frame(fg, mask_of(8, 8, 255), test::random_image(rng, 4, 4), {}),
      Error);
}

TEST_CASE("clips composite frame by frame with a looping background") {
  std::mt19937_64 rng(58);
  std::vector<Image> frames;
  std::vector<Image> masks;
  for (int i = 0; i < 128; ++i) {
    frames.push_back(test::random_image(rng, 8, 6));
    masks.push_back(test::random_image(rng, 8, 6, 1));
  }
  AugmentSpec spec;
  for (int i = 0; i < 64; ++i)
    spec.background.push_back(test::random_image(rng, 8, 6));

  const auto out = augment_clip(frames, masks, spec);
  REQUIRE(out.size() == 128);
  // the background wraps: frame 64 uses background 0 again
  CHECK(out[64] ==
        composite_frame(frames[64], masks[64], spec.background[0], spec));
  CHECK(out[127] ==
        composite_frame(frames[127], masks[127], spec.background[63], spec));
}

TEST_CASE("a static background applies to every frame") {
  std::mt19937_64 rng(59);
  std::vector<Image> frames(3, test::random_image(rng, 8, 6));
  std::vector<Image> masks(3, test::random_image(rng, 8, 6, 1));
  AugmentSpec spec;
  spec.background.push_back(test::random_image(rng, 8, 6));
  CHECK(augment_clip(frames, masks, spec).size() == 3);
}

TEST_CASE("frame/mask length mismatches are rejected") {
  std::mt19937_64 rng(60);
  std::vector<Image> frames(4, test::random_image(rng, 8, 6));
  std::vector<Image> masks(3, test::random_image(rng, 8, 6, 1));
  AugmentSpec spec;
  spec.background.push_back(test::random_image(rng, 8, 6));
  try {
    augment_clip(frames, masks, spec);
    FAIL("expected LengthMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::length_mismatch);
  }
}

TEST_CASE("wrong-size masks surface as DimensionMismatch through clips") {
  std::mt19937_64 rng(61);
  std::vector<Image> frames(2, test::random_image(rng, 8, 6));
  std::vector<Image> masks(2, test::random_image(rng, 4, 4, 1));
  AugmentSpec spec;
  spec.background.push_back(test::random_image(rng, 8, 6));
  try {
    augment_clip(frames, masks, spec);
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::dimension_mismatch);
  }
}

TEST_SUITE_END();
