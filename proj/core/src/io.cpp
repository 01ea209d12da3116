#include "tielab/io.hpp"

#include <atomic>
#include <fstream>

#include "tielab/error.hpp"

namespace tielab {

std::uint64_t fnv1a_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open input file: " + path.string());
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  char buf[1 << 14];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001B3ULL;
    }
    if (!in) break;
  }
  return hash;
}

void atomic_write(const std::filesystem::path& path, const std::string& contents) {
  static std::atomic<unsigned> counter{0};
  auto tmp = path;
  tmp += ".tmp" + std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw RuntimeFailure("cannot open output file: " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw RuntimeFailure("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace tielab
