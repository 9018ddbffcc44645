#pragma once

#include "defog/types.hpp"

namespace defog {

/// Procedural test scenes, all with pixel values in [0,1].

/// Binary letter G, upscaled from an 8x8 glyph. size must be a positive
/// multiple of 8.
Frame make_letter_g(int size = 64);

/// Three-channel vertical color bars (R, G, B, yellow, cyan, magenta, white,
/// gray).
Frame make_color_bars(int size = 64);

/// Red square, green disk and blue cross on a dark background.
Frame make_color_shapes(int size = 64);

/// Smooth per-channel gradients (non-binary content).
Frame make_color_gradient(int size = 64);

}  // namespace defog
