#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "reference.hpp"
#include "tubeforge/error.hpp"
#include "tubeforge/resize.hpp"

using namespace tubeforge;

TEST_SUITE_BEGIN("resize");

TEST_CASE("bilinear preserves constant images") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const int w = 1 + static_cast<int>(rng() % 48);
    const int h = 1 + static_cast<int>(rng() % 48);
    const Image in = test::constant_image(w, h, 100, 50, 25);
    const Image out = resize_bilinear(in, {224, 224});
    CHECK(out == test::constant_image(224, 224, 100, 50, 25));
  }
}

TEST_CASE("same-size resize is the identity") {
  std::mt19937_64 rng(32);
  const Image in = test::random_image(rng, 224, 224);
  CHECK(resize_bilinear(in, {224, 224}) == in);

  const Image small = test::random_image(rng, 13, 9);
  CHECK(resize_bilinear(small, {13, 9}) == small);
}

TEST_CASE("2x2 checker column upsamples to the frozen 4x4 values") {
  // grayscale [[0,255],[0,255]] replicated to RGB; sx = (d+0.5)/2 - 0.5
  Image in(2, 2, 3);
  for (int y = 0; y < 2; ++y)
    for (int c = 0; c < 3; ++c) {
      in.at(0, y, c) = 0;
      in.at(1, y, c) = 255;
    }
  const Image out = resize_bilinear(in, {4, 4});
  // per row: 0, round(0.25*255)=64, round(0.75*255)=191, 255
  const std::uint8_t expected_row[4] = {0, 64, 191, 255};
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x)
      for (int c = 0; c < 3; ++c) CHECK(out.at(x, y, c) == expected_row[x]);
  CHECK(out == ref::resize_naive(in, 4, 4));
}

TEST_CASE("kernel agrees with the naive oracle within one step per channel") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    const int w = 1 + static_cast<int>(rng() % 32);
    const int h = 1 + static_cast<int>(rng() % 32);
    const Image in = test::random_image(rng, w, h);
    const int out_w = trial % 2 ? 224 : 1 + static_cast<int>(rng() % 64);
    const int out_h = trial % 2 ? 224 : 1 + static_cast<int>(rng() % 64);
    const Image fast = resize_bilinear(in, {out_w, out_h});
    const Image naive = ref::resize_naive(in, out_w, out_h);
    REQUIRE(fast.pixels.size() == naive.pixels.size());
    for (std::size_t i = 0; i < fast.pixels.size(); ++i) {
      const int diff = std::abs(static_cast<int>(fast.pixels[i]) -
                                static_cast<int>(naive.pixels[i]));
      CHECK(diff <= 1);
    }
  }
}

TEST_CASE("output values stay inside the input range per channel") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const int w = 1 + static_cast<int>(rng() % 24);
    const int h = 1 + static_cast<int>(rng() % 24);
    const Image in = test::random_image(rng, w, h);
    std::uint8_t lo[3] = {255, 255, 255};
    std::uint8_t hi[3] = {0, 0, 0};
    for (std::size_t i = 0; i < in.pixels.size(); ++i) {
      const int c = static_cast<int>(i % 3);
      lo[c] = std::min(lo[c], in.pixels[i]);
      hi[c] = std::max(hi[c], in.pixels[i]);
    }
    const Image out = resize_bilinear(in, {37, 53});
    for (std::size_t i = 0; i < out.pixels.size(); ++i) {
      const int c = static_cast<int>(i % 3);
      CHECK(out.pixels[i] >= lo[c]);
      CHECK(out.pixels[i] <= hi[c]);
    }
  }
}

TEST_CASE("crop of the full frame is the frame") {
  std::mt19937_64 rng(35);
  const Image frame = test::random_image(rng, 10, 10);
  CHECK(crop_frame(frame, {0, 0, 10, 10}) == frame);
}

TEST_CASE("single-pixel crop picks the exact pixel") {
  Image frame(10, 10, 3);
  frame.at(3, 4, 0) = 9;
  frame.at(3, 4, 1) = 8;
  frame.at(3, 4, 2) = 7;
  const Image out = crop_frame(frame, {3, 4, 4, 5});
  REQUIRE(out.width == 1);
  REQUIRE(out.height == 1);
  CHECK(out.at(0, 0, 0) == 9);
  CHECK(out.at(0, 0, 1) == 8);
  CHECK(out.at(0, 0, 2) == 7);
}

TEST_CASE("out-of-frame boxes are clamped before cropping") {
  std::mt19937_64 rng(36);
  const Image frame = test::random_image(rng, 10, 10);
  const Image out = crop_frame(frame, {-5, 0, 5, 5});
  CHECK(out == crop_frame(frame, {0, 0, 5, 5}));
  CHECK(out.width == 5);
  CHECK(out.height == 5);
}

TEST_CASE("fully outside boxes are degenerate") {
  std::mt19937_64 rng(37);
  const Image frame = test::random_image(rng, 10, 10);
  try {
    crop_frame(frame, {50, 50, 60, 60});
    FAIL("expected DegenerateBox");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::degenerate_box);
  }
}

TEST_CASE("the fused crop+resize path matches the two-step composition") {
  std::mt19937_64 rng(38);
  for (int trial = 0; trial < 20; ++trial) {
    const int w = 8 + static_cast<int>(rng() % 40);
    const int h = 8 + static_cast<int>(rng() % 40);
    const Image frame = test::random_image(rng, w, h);
    const BoundingBox box = test::random_box(rng, std::min(w, h));
    const ResizeSpec spec{31, 17};

    Image fused(spec.out_width, spec.out_height, 3);
    resize_bilinear_into(frame.pixels.data(), w, h, box, spec,
                         fused.pixels.data());
    CHECK(fused == resize_bilinear(crop_frame(frame, box), spec));
  }
}

TEST_SUITE_END();
