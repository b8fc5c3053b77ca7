#include "crossdiff/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "crossdiff/error.hpp"

namespace crossdiff {
namespace {

constexpr char kMagic[4] = {'C', 'D', 'L', '1'};

void put_u32(std::string& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xffu));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xffu));
}

void put_f64(std::string& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  std::uint64_t take(int width) {
    if (pos_ + width > bytes_.size()) throw InputError("checkpoint: truncated file");
    std::uint64_t v = 0;
    for (int b = 0; b < width; ++b)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + b])) << (8 * b);
    pos_ += width;
    return v;
  }
  std::int32_t i32() { return static_cast<std::int32_t>(static_cast<std::uint32_t>(take(4))); }
  double f64() { return std::bit_cast<double>(take(8)); }
  bool at_end() const { return pos_ == bytes_.size(); }

 private:
  const std::string& bytes_;
  std::size_t pos_ = 4;
};

}  // namespace

std::string encode_checkpoint(const Field& state, double t) {
  const Grid2D& g = state.grid();
  std::string out(kMagic, 4);
  out.reserve(4 + 12 + 16 + 8 * state.values().size());
  put_u32(out, static_cast<std::uint32_t>(g.nx()));
  put_u32(out, static_cast<std::uint32_t>(g.ny()));
  put_u32(out, static_cast<std::uint32_t>(state.components()));
  put_f64(out, g.h());
  put_f64(out, t);
  for (double v : state.values()) put_f64(out, v);
  return out;
}

Checkpoint decode_checkpoint(const std::string& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw InputError("checkpoint: bad magic (expected CDL1)");
  Reader r(bytes);
  const int nx = r.i32();
  const int ny = r.i32();
  const int m = r.i32();
  const double h = r.f64();
  const double t = r.f64();
  if (m < 1) throw InputError("checkpoint: component count must be >= 1");
  Field f(Grid2D(nx, ny, h), m);
  for (double& v : f.values()) v = r.f64();
  if (!r.at_end()) throw InputError("checkpoint: trailing bytes after field data");
  return {std::move(f), t};
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw InputError("cannot open " + tmp.string() + " for writing");
    os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    os.flush();
    if (!os) throw InputError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_checkpoint(const std::filesystem::path& path, const Field& state, double t) {
  write_file_atomic(path, encode_checkpoint(state, t));
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open checkpoint " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return decode_checkpoint(ss.str());
}

}  // namespace crossdiff
