#include "sdc/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "sdc/error.hpp"

namespace sdc {

namespace {

// Distribution helpers built on raw engine output so the corpus is identical
// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    spare_ = radius * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return radius * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

using Field = std::vector<double>;

void box_blur(Field& f, int w, int h, int radius) {
  Field tmp(f.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int d = -radius; d <= radius; ++d) acc += f[y * w + std::clamp(x + d, 0, w - 1)];
      tmp[y * w + x] = acc / (2 * radius + 1);
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int d = -radius; d <= radius; ++d) acc += tmp[std::clamp(y + d, 0, h - 1) * w + x];
      f[y * w + x] = acc / (2 * radius + 1);
    }
  }
}

void normalize(Field& f, double target_sd) {
  double mean = 0.0;
  for (double v : f) mean += v;
  mean /= static_cast<double>(f.size());
  double var = 0.0;
  for (double v : f) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / static_cast<double>(f.size()));
  for (double& v : f) v = sd > 0 ? (v - mean) / sd * target_sd : 0.0;
}

PixelImage to_image(const Field& f, int w, int h) {
  PixelImage img(w, h);
  for (std::size_t i = 0; i < f.size(); ++i) {
    img.samples[i] = static_cast<std::uint8_t>(std::clamp(std::round(f[i]), 0.0, 255.0));
  }
  return img;
}

}  // namespace

std::string_view texture_name(TextureFamily f) noexcept {
  switch (f) {
    case TextureFamily::kSmoothedNoise:
      return "smoothed-noise";
    case TextureFamily::kGradientNoise:
      return "gradient-noise";
    case TextureFamily::kBlobs:
      return "blobs";
  }
  return "?";
}

TextureFamily texture_of(std::size_t index) noexcept { return static_cast<TextureFamily>(index % 3); }

PixelImage generate_cover(TextureFamily family, int width, int height, std::uint64_t seed) {
  if (width <= 0 || height <= 0) throw ParameterError("generate_cover: dimensions must be positive");
  Rng rng(seed);
  const int w = width;
  const int h = height;
  Field f(static_cast<std::size_t>(w) * h);

  switch (family) {
    case TextureFamily::kSmoothedNoise: {
      for (double& v : f) v = rng.normal();
      box_blur(f, w, h, 1 + static_cast<int>(rng.uniform() * 2.0));
      normalize(f, rng.uniform(22.0, 40.0));
      const double base = rng.uniform(90.0, 165.0);
      for (double& v : f) v += base + 4.0 * rng.normal();
      break;
    }
    case TextureFamily::kGradientNoise: {
      const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double span = rng.uniform(60.0, 160.0);
      const double base = rng.uniform(100.0, 155.0);
      Field texture(f.size());
      for (double& v : texture) v = rng.normal();
      box_blur(texture, w, h, 1);
      normalize(texture, rng.uniform(16.0, 28.0));
      const double sigma = rng.uniform(3.0, 8.0);
      const double dx = std::cos(angle) / w;
      const double dy = std::sin(angle) / h;
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          const double t = (x - w / 2.0) * dx + (y - h / 2.0) * dy;
          f[y * w + x] = base + span * t + texture[y * w + x] + sigma * rng.normal();
        }
      }
      break;
    }
    case TextureFamily::kBlobs: {
      const double base = rng.uniform(80.0, 175.0);
      for (double& v : f) v = base;
      const int blobs = 6 + static_cast<int>(rng.uniform() * 10.0);
      for (int b = 0; b < blobs; ++b) {
        const double cx = rng.uniform(0.0, w);
        const double cy = rng.uniform(0.0, h);
        const double r = rng.uniform(3.0, std::max(4.0, std::min(w, h) / 4.0));
        const double amp = rng.uniform(-70.0, 70.0);
        for (int y = 0; y < h; ++y) {
          for (int x = 0; x < w; ++x) {
            const double d2 = ((x - cx) * (x - cx) + (y - cy) * (y - cy)) / (r * r);
            if (d2 < 9.0) f[y * w + x] += amp * std::exp(-0.5 * d2);
          }
        }
      }
      Field texture(f.size());
      for (double& v : texture) v = rng.normal();
      box_blur(texture, w, h, 1);
      normalize(texture, rng.uniform(14.0, 24.0));
      const double sigma = rng.uniform(3.0, 8.0);
      for (std::size_t i = 0; i < f.size(); ++i) f[i] += texture[i] + sigma * rng.normal();
      break;
    }
  }
  return to_image(f, w, h);
}

std::vector<PixelImage> generate_corpus(std::size_t n, int width, int height, std::uint64_t seed) {
  if (n == 0) throw ParameterError("generate_corpus: n must be at least 1");
  std::vector<PixelImage> out;
  out.reserve(n);
  std::mt19937_64 seeder(seed);
  for (std::size_t i = 0; i < n; ++i) out.push_back(generate_cover(texture_of(i), width, height, seeder()));
  return out;
}

std::vector<std::filesystem::path> write_corpus(const std::vector<PixelImage>& corpus,
                                                const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> paths;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "cover_%04zu.pgm", i);
    paths.push_back(dir / name);
    write_pgm(paths.back(), corpus[i]);
  }
  return paths;
}

std::vector<std::filesystem::path> list_corpus(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::directory_iterator it(dir, ec);
  if (ec) throw IoError("cannot read corpus directory " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : it) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

}  // namespace sdc
