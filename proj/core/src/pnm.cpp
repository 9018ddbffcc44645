#include "defog/pnm.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace defog {

const char* to_string(PnmFormat format) {
  switch (format) {
    case PnmFormat::P2: return "P2";
    case PnmFormat::P3: return "P3";
    case PnmFormat::P5: return "P5";
    case PnmFormat::P6: return "P6";
  }
  return "?";
}

namespace {

// Decoded images are capped at 16M samples so that a forged header cannot
// trigger a huge allocation before the truncation check runs.
constexpr std::uint64_t kMaxSamples = std::uint64_t{1} << 24;

bool is_plain(PnmFormat f) {
  return f == PnmFormat::P2 || f == PnmFormat::P3;
}

int channels_of(PnmFormat f) {
  return (f == PnmFormat::P3 || f == PnmFormat::P6) ? 3 : 1;
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
         c == '\f';
}

// Cursor over the input bytes. All reads are bounds-checked; running past
// the end throws instead of touching memory.
struct Cursor {
  std::string_view bytes;
  std::size_t pos = 0;

  bool done() const { return pos >= bytes.size(); }
  char peek() const { return bytes[pos]; }
};

// Skips whitespace and '#' comments (comment runs to end of line). Returns
// false if the input ended.
bool skip_space_and_comments(Cursor& c) {
  for (;;) {
    while (!c.done() && is_space(c.peek())) ++c.pos;
    if (c.done()) return false;
    if (c.peek() != '#') return true;
    while (!c.done() && c.peek() != '\n') ++c.pos;
  }
}

std::uint32_t parse_uint(Cursor& c, std::uint32_t limit, ErrorKind overflow,
                         const char* what) {
  if (!skip_space_and_comments(c)) {
    throw Error(ErrorKind::TruncatedData,
                std::string("input ended before ") + what);
  }
  if (c.peek() < '0' || c.peek() > '9') {
    throw Error(ErrorKind::BadHeader,
                std::string("expected a decimal ") + what);
  }
  std::uint64_t value = 0;
  while (!c.done() && c.peek() >= '0' && c.peek() <= '9') {
    value = value * 10 + static_cast<std::uint64_t>(c.peek() - '0');
    if (value > limit) {
      throw Error(overflow, std::string(what) + " exceeds " +
                                std::to_string(limit));
    }
    ++c.pos;
  }
  return static_cast<std::uint32_t>(value);
}

}  // namespace

PnmImage decode_pnm(std::string_view bytes) {
  Cursor c{bytes};
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw Error(ErrorKind::BadMagic, "not a PNM payload");
  }
  PnmImage image;
  switch (bytes[1]) {
    case '2': image.format = PnmFormat::P2; break;
    case '3': image.format = PnmFormat::P3; break;
    case '5': image.format = PnmFormat::P5; break;
    case '6': image.format = PnmFormat::P6; break;
    default:
      throw Error(ErrorKind::BadMagic,
                  std::string("unsupported magic 'P") + bytes[1] + "'");
  }
  c.pos = 2;
  if (!c.done() && !is_space(c.peek()) && c.peek() != '#') {
    throw Error(ErrorKind::BadMagic, "magic not followed by whitespace");
  }

  const std::uint32_t width =
      parse_uint(c, 1u << 20, ErrorKind::BadHeader, "width");
  const std::uint32_t height =
      parse_uint(c, 1u << 20, ErrorKind::BadHeader, "height");
  if (width == 0 || height == 0) {
    throw Error(ErrorKind::BadHeader, "zero image dimension");
  }
  const std::uint32_t maxval =
      parse_uint(c, 65535, ErrorKind::BadHeader, "maxval");
  if (maxval == 0) {
    throw Error(ErrorKind::BadHeader, "maxval must be >= 1");
  }
  image.width = static_cast<int>(width);
  image.height = static_cast<int>(height);
  image.maxval = static_cast<int>(maxval);

  const int channels = channels_of(image.format);
  const std::uint64_t n_samples =
      std::uint64_t{width} * height * static_cast<std::uint64_t>(channels);
  if (n_samples > kMaxSamples) {
    throw Error(ErrorKind::BadHeader,
                "image holds " + std::to_string(n_samples) +
                    " samples, decoder limit is " + std::to_string(kMaxSamples));
  }
  image.samples.resize(static_cast<std::size_t>(n_samples));

  if (is_plain(image.format)) {
    for (std::size_t i = 0; i < image.samples.size(); ++i) {
      const std::uint32_t v =
          parse_uint(c, maxval, ErrorKind::SampleOutOfRange, "sample");
      image.samples[i] = static_cast<std::uint16_t>(v);
    }
    return image;
  }

  // Binary rasters begin after exactly one whitespace byte following maxval.
  if (c.done() || !is_space(c.peek())) {
    throw Error(ErrorKind::BadHeader, "missing separator before raster");
  }
  ++c.pos;
  const int bytes_per_sample = maxval > 255 ? 2 : 1;
  const std::uint64_t need = n_samples * bytes_per_sample;
  if (bytes.size() - c.pos < need) {
    throw Error(ErrorKind::TruncatedData,
                "raster needs " + std::to_string(need) + " bytes, " +
                    std::to_string(bytes.size() - c.pos) + " remain");
  }
  for (std::size_t i = 0; i < image.samples.size(); ++i) {
    std::uint32_t v;
    if (bytes_per_sample == 1) {
      v = static_cast<std::uint8_t>(bytes[c.pos++]);
    } else {
      const std::uint32_t hi = static_cast<std::uint8_t>(bytes[c.pos++]);
      const std::uint32_t lo = static_cast<std::uint8_t>(bytes[c.pos++]);
      v = (hi << 8) | lo;
    }
    if (v > maxval) {
      throw Error(ErrorKind::SampleOutOfRange,
                  "sample " + std::to_string(v) + " exceeds maxval " +
                      std::to_string(maxval));
    }
    image.samples[i] = static_cast<std::uint16_t>(v);
  }
  return image;
}

std::string encode_pnm(const PnmImage& image) {
  if (image.width < 1 || image.height < 1) {
    throw Error(ErrorKind::InvalidArgument, "cannot encode an empty image");
  }
  if (image.maxval < 1 || image.maxval > 65535) {
    throw Error(ErrorKind::InvalidArgument,
                "maxval must be in [1, 65535], got " +
                    std::to_string(image.maxval));
  }
  const std::uint64_t expected = std::uint64_t{1} *
                                 static_cast<std::uint64_t>(image.width) *
                                 image.height * channels_of(image.format);
  if (image.samples.size() != expected) {
    throw Error(ErrorKind::ShapeMismatch,
                "sample buffer does not match the header dimensions");
  }
  for (std::uint16_t s : image.samples) {
    if (static_cast<int>(s) > image.maxval) {
      throw Error(ErrorKind::SampleOutOfRange,
                  "sample " + std::to_string(s) + " exceeds maxval " +
                      std::to_string(image.maxval));
    }
  }

  std::ostringstream out;
  out << to_string(image.format) << '\n'
      << image.width << ' ' << image.height << '\n'
      << image.maxval << '\n';
  if (is_plain(image.format)) {
    // Plain rasters keep lines at 70 characters or fewer.
    std::size_t line_len = 0;
    for (std::size_t i = 0; i < image.samples.size(); ++i) {
      const std::string token = std::to_string(image.samples[i]);
      if (line_len == 0) {
        out << token;
        line_len = token.size();
      } else if (line_len + 1 + token.size() > 70) {
        out << '\n' << token;
        line_len = token.size();
      } else {
        out << ' ' << token;
        line_len += 1 + token.size();
      }
    }
    out << '\n';
    return out.str();
  }
  if (image.maxval > 255) {
    for (std::uint16_t s : image.samples) {
      out << static_cast<char>(s >> 8) << static_cast<char>(s & 0xff);
    }
  } else {
    for (std::uint16_t s : image.samples) {
      out << static_cast<char>(s & 0xff);
    }
  }
  return out.str();
}

Frame pnm_to_frame(const PnmImage& image) {
  Frame f = Frame::zeros(image.width, image.height, channels_of(image.format));
  const double inv = 1.0 / static_cast<double>(image.maxval);
  for (std::size_t i = 0; i < f.pixels.size(); ++i) {
    f.pixels[i] = static_cast<double>(image.samples[i]) * inv;
  }
  return f;
}

PnmImage frame_to_pnm(const Frame& frame, PnmFormat format, int maxval) {
  if (maxval < 1 || maxval > 65535) {
    throw Error(ErrorKind::InvalidArgument,
                "maxval must be in [1, 65535], got " + std::to_string(maxval));
  }
  if (frame.channels != channels_of(format)) {
    throw Error(ErrorKind::ChannelMismatch,
                std::string(to_string(format)) + " needs " +
                    std::to_string(channels_of(format)) +
                    " channel(s), frame has " +
                    std::to_string(frame.channels));
  }
  if (frame.width < 1 || frame.height < 1) {
    throw Error(ErrorKind::InvalidArgument, "cannot encode an empty frame");
  }
  PnmImage image;
  image.format = format;
  image.maxval = maxval;
  image.width = frame.width;
  image.height = frame.height;
  image.samples.resize(frame.pixels.size());
  const double scale = static_cast<double>(maxval);
  for (std::size_t i = 0; i < frame.pixels.size(); ++i) {
    const double v = frame.pixels[i];
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::NonFinitePixel,
                  "cannot quantize a non-finite pixel");
    }
    double q = std::round(v * scale);
    if (q < 0.0) q = 0.0;
    if (q > scale) q = scale;
    image.samples[i] = static_cast<std::uint16_t>(q);
  }
  return image;
}

Frame read_pnm(std::string_view bytes) { return pnm_to_frame(decode_pnm(bytes)); }

std::string write_pnm(const Frame& frame, PnmFormat format, int maxval) {
  return encode_pnm(frame_to_pnm(frame, format, maxval));
}

Frame load_pnm(const std::filesystem::path& path) {
  return read_pnm(read_binary_file(path));
}

void save_pnm(const std::filesystem::path& path, const Frame& frame,
              PnmFormat format, int maxval) {
  write_binary_file(path, write_pnm(frame, format, maxval));
}

std::string read_binary_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::IoError, "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorKind::IoError, "read failed on " + path.string());
  }
  return buf.str();
}

void write_binary_file(const std::filesystem::path& path,
                       std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::IoError, "cannot create " + path.string());
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw Error(ErrorKind::IoError, "write failed on " + path.string());
  }
}

}  // namespace defog
