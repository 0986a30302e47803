// Regenerates the checked-in NPY conformance fixtures from fixture_spec.hpp.
// Usage: npy_fixture_gen <output-dir>

#include <cstdio>
#include <filesystem>

#include "fixture_spec.hpp"
#include "tubeforge/bench.hpp"
#include "tubeforge/tensor_io.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <output-dir>\n", argv[0]);
    return 2;
  }
  const std::filesystem::path out_dir = argv[1];
  std::filesystem::create_directories(out_dir);
  int written = 0;
  for (const tubeforge::test::NpyFixture& fixture :
       tubeforge::test::npy_fixtures()) {
    const auto payload = tubeforge::corpus_payload(
        fixture.seed, 0, tubeforge::shape_product(fixture.shape));
    tubeforge::write_npy(payload, fixture.shape, out_dir / fixture.filename());
    ++written;
  }
  std::printf("wrote %d fixtures to %s\n", written, out_dir.c_str());
  return 0;
}
