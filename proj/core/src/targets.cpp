#include "defog/targets.hpp"

#include <array>
#include <cmath>

namespace defog {

namespace {

void require_multiple_of_8(int size) {
  if (size < 8 || size % 8 != 0) {
    throw Error(ErrorKind::InvalidArgument,
                "size must be a positive multiple of 8, got " +
                    std::to_string(size));
  }
}

void require_positive(int size) {
  if (size < 1) {
    throw Error(ErrorKind::InvalidArgument,
                "size must be >= 1, got " + std::to_string(size));
  }
}

}  // namespace

Frame make_letter_g(int size) {
  require_multiple_of_8(size);
  constexpr std::array<std::uint8_t, 8> glyph = {
      0x3C, 0x66, 0xC0, 0xC0, 0xCE, 0x66, 0x3E, 0x00};
  const int cell = size / 8;
  Frame f = Frame::zeros(size, size, 1);
  for (int y = 0; y < size; ++y) {
    const std::uint8_t row = glyph[static_cast<std::size_t>(y / cell)];
    for (int x = 0; x < size; ++x) {
      const int bit = 7 - x / cell;
      if ((row >> bit) & 1) f.at(x, y) = 1.0;
    }
  }
  return f;
}

Frame make_color_bars(int size) {
  require_positive(size);
  constexpr std::array<std::array<double, 3>, 8> bars = {{
      {1.0, 0.0, 0.0},
      {0.0, 1.0, 0.0},
      {0.0, 0.0, 1.0},
      {1.0, 1.0, 0.0},
      {0.0, 1.0, 1.0},
      {1.0, 0.0, 1.0},
      {1.0, 1.0, 1.0},
      {0.5, 0.5, 0.5},
  }};
  Frame f = Frame::zeros(size, size, 3);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const auto& bar = bars[static_cast<std::size_t>(x * 8 / size)];
      for (int c = 0; c < 3; ++c) f.at(x, y, c) = bar[static_cast<std::size_t>(c)];
    }
  }
  return f;
}

Frame make_color_shapes(int size) {
  require_positive(size);
  Frame f = Frame::filled(size, size, 3, 0.05);
  const double s = static_cast<double>(size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double u = (x + 0.5) / s;
      const double v = (y + 0.5) / s;
      // Red square, upper left.
      if (u >= 0.10 && u <= 0.42 && v >= 0.10 && v <= 0.42) {
        f.at(x, y, 0) = 1.0;
        f.at(x, y, 1) = 0.1;
        f.at(x, y, 2) = 0.1;
      }
      // Green disk, lower right.
      const double du = u - 0.68;
      const double dv = v - 0.68;
      if (du * du + dv * dv <= 0.18 * 0.18) {
        f.at(x, y, 0) = 0.1;
        f.at(x, y, 1) = 1.0;
        f.at(x, y, 2) = 0.1;
      }
      // Blue cross, lower left.
      const bool in_vertical = u >= 0.18 && u <= 0.26 && v >= 0.55 && v <= 0.92;
      const bool in_horizontal =
          u >= 0.08 && u <= 0.36 && v >= 0.68 && v <= 0.78;
      if (in_vertical || in_horizontal) {
        f.at(x, y, 0) = 0.1;
        f.at(x, y, 1) = 0.1;
        f.at(x, y, 2) = 1.0;
      }
    }
  }
  return f;
}

Frame make_color_gradient(int size) {
  require_positive(size);
  Frame f = Frame::zeros(size, size, 3);
  const double denom = size > 1 ? static_cast<double>(size - 1) : 1.0;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      f.at(x, y, 0) = x / denom;
      f.at(x, y, 1) = y / denom;
      f.at(x, y, 2) = (x + y) / (2.0 * denom);
    }
  }
  return f;
}

}  // namespace defog
