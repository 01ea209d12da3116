#ifndef TIELAB_IO_HPP
#define TIELAB_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>

namespace tielab {

// FNV-1a over the file bytes; enough to tell whether an input changed.
std::uint64_t fnv1a_digest(const std::filesystem::path& path);

// Write-to-temp-then-rename so readers never observe partial results.
void atomic_write(const std::filesystem::path& path, const std::string& contents);

}  // namespace tielab

#endif  // TIELAB_IO_HPP
