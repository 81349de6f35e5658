#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "mecrl/nn/mlp.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint serialization assumes a little-endian host");

namespace mecrl::nn {

namespace {

constexpr char kMagic[4] = {'M', 'E', 'C', 'Q'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint32_t read_u32(std::istream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!in) {
    throw std::runtime_error("checkpoint truncated");
  }
  return v;
}

void write_doubles(std::ostream& out, const std::vector<double>& v) {
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
}

void read_doubles(std::istream& in, std::vector<double>& v) {
  in.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(v.size() * sizeof(double)));
  if (!in) {
    throw std::runtime_error("checkpoint truncated");
  }
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw std::runtime_error("checkpoint contains non-finite values");
    }
  }
}

}  // namespace

void save_checkpoint(const MlpParams& params, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open checkpoint for writing: " + file.string());
  }
  out.write(kMagic, sizeof(kMagic));
  write_u32(out, kVersion);
  write_u32(out, static_cast<std::uint32_t>(params.layer_sizes.size()));
  for (std::size_t s : params.layer_sizes) {
    write_u32(out, static_cast<std::uint32_t>(s));
  }
  for (std::size_t l = 0; l < params.weights.size(); ++l) {
    write_doubles(out, params.weights[l]);
    write_doubles(out, params.biases[l]);
  }
  if (!out) {
    throw std::runtime_error("failed writing checkpoint: " + file.string());
  }
}

MlpParams load_checkpoint(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open checkpoint: " + file.string());
  }
  char magic[4] = {};
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("not a checkpoint file: " + file.string());
  }
  const std::uint32_t version = read_u32(in);
  if (version != kVersion) {
    throw std::runtime_error("unsupported checkpoint version " + std::to_string(version));
  }
  const std::uint32_t n_sizes = read_u32(in);
  if (n_sizes < 2) {
    throw std::runtime_error("checkpoint has fewer than two layers");
  }

  MlpParams p;
  p.layer_sizes.resize(n_sizes);
  for (auto& s : p.layer_sizes) {
    s = read_u32(in);
    if (s == 0) {
      throw std::runtime_error("checkpoint has a zero-width layer");
    }
  }
  for (std::size_t l = 0; l + 1 < n_sizes; ++l) {
    std::vector<double> w(p.layer_sizes[l + 1] * p.layer_sizes[l]);
    std::vector<double> b(p.layer_sizes[l + 1]);
    read_doubles(in, w);
    read_doubles(in, b);
    p.weights.push_back(std::move(w));
    p.biases.push_back(std::move(b));
  }
  // Trailing bytes indicate a shape mismatch between header and payload.
  in.peek();
  if (!in.eof()) {
    throw std::runtime_error("checkpoint has trailing data: " + file.string());
  }
  return p;
}

}  // namespace mecrl::nn
