#include "fracheat/field_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace fracheat {
namespace {

constexpr char kMagic[4] = {'F', 'R', 'H', 'T'};
constexpr std::uint32_t kVersion = 1;

struct Header {
  std::uint32_t version;
  std::uint32_t kind;  // 0 physical, 1 spectral
  std::uint32_t dim;
  std::uint32_t m[3];
  double half_length;
};

void write_header(std::ofstream& out, const Grid& g, std::uint32_t kind) {
  out.write(kMagic, 4);
  Header h{kVersion, kind, static_cast<std::uint32_t>(g.dim), {0, 0, 0}, g.half_length};
  for (int a = 0; a < g.dim; ++a) h.m[a] = static_cast<std::uint32_t>(g.points);
  out.write(reinterpret_cast<const char*>(&h.version), sizeof h.version);
  out.write(reinterpret_cast<const char*>(&h.kind), sizeof h.kind);
  out.write(reinterpret_cast<const char*>(&h.dim), sizeof h.dim);
  out.write(reinterpret_cast<const char*>(h.m), sizeof h.m);
  out.write(reinterpret_cast<const char*>(&h.half_length), sizeof h.half_length);
}

Header read_header(std::ifstream& in, const std::string& path) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("field container " + path + ": bad magic");
  Header h{};
  in.read(reinterpret_cast<char*>(&h.version), sizeof h.version);
  in.read(reinterpret_cast<char*>(&h.kind), sizeof h.kind);
  in.read(reinterpret_cast<char*>(&h.dim), sizeof h.dim);
  in.read(reinterpret_cast<char*>(h.m), sizeof h.m);
  in.read(reinterpret_cast<char*>(&h.half_length), sizeof h.half_length);
  if (!in) throw std::runtime_error("field container " + path + ": truncated header");
  if (h.version != kVersion)
    throw std::runtime_error("field container " + path + ": unsupported version");
  if (h.dim < 1 || h.dim > 3 || h.m[0] == 0)
    throw std::runtime_error("field container " + path + ": invalid grid");
  for (std::uint32_t a = 1; a < h.dim; ++a)
    if (h.m[a] != h.m[0])
      throw std::runtime_error("field container " + path + ": anisotropic grids unsupported");
  return h;
}

Grid header_grid(const Header& h) {
  return Grid(static_cast<int>(h.dim), static_cast<int>(h.m[0]), h.half_length);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path + " for reading");
  return in;
}

}  // namespace

void save_field(const std::string& path, const PhysicalField& f) {
  auto out = open_out(path);
  write_header(out, f.grid, 0);
  out.write(reinterpret_cast<const char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  if (!out) throw std::runtime_error("write failed: " + path);
}

void save_field(const std::string& path, const SpectralField& f) {
  auto out = open_out(path);
  write_header(out, f.grid, 1);
  out.write(reinterpret_cast<const char*>(f.coeff.data()),
            static_cast<std::streamsize>(f.coeff.size() * 2 * sizeof(double)));
  if (!out) throw std::runtime_error("write failed: " + path);
}

PhysicalField load_physical_field(const std::string& path) {
  auto in = open_in(path);
  const Header h = read_header(in, path);
  if (h.kind != 0) throw std::runtime_error(path + ": contains a spectral field");
  PhysicalField f(header_grid(h));
  in.read(reinterpret_cast<char*>(f.values.data()),
          static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  if (!in) throw std::runtime_error(path + ": truncated payload");
  return f;
}

SpectralField load_spectral_field(const std::string& path) {
  auto in = open_in(path);
  const Header h = read_header(in, path);
  if (h.kind != 1) throw std::runtime_error(path + ": contains a physical field");
  SpectralField f(header_grid(h));
  in.read(reinterpret_cast<char*>(f.coeff.data()),
          static_cast<std::streamsize>(f.coeff.size() * 2 * sizeof(double)));
  if (!in) throw std::runtime_error(path + ": truncated payload");
  return f;
}

bool stored_field_is_spectral(const std::string& path) {
  auto in = open_in(path);
  return read_header(in, path).kind == 1;
}

}  // namespace fracheat
