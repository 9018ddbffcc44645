// Generates the procedural test targets into a directory. Run at build time
// so the repository carries no binary image blobs.

#include <cstdio>
#include <filesystem>

#include "defog/pnm.hpp"
#include "defog/targets.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: make_targets <out-dir>\n");
    return 1;
  }
  try {
    const std::filesystem::path dir(argv[1]);
    std::filesystem::create_directories(dir);
    defog::save_pnm(dir / "letter_g.pgm", defog::make_letter_g(64),
                    defog::PnmFormat::P5, 255);
    defog::save_pnm(dir / "color_bars.ppm", defog::make_color_bars(64),
                    defog::PnmFormat::P6, 255);
    defog::save_pnm(dir / "color_shapes.ppm", defog::make_color_shapes(64),
                    defog::PnmFormat::P6, 255);
    defog::save_pnm(dir / "color_gradient.ppm", defog::make_color_gradient(64),
                    defog::PnmFormat::P6, 255);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "make_targets: %s\n", e.what());
    return 1;
  }
  return 0;
}
