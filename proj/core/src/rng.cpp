#include "tielab/rng.hpp"

#include <stdexcept>

namespace tielab {

std::vector<std::uint32_t> Rng::sample_without_replacement(std::uint32_t n, std::uint32_t k) {
  if (k > n) throw std::invalid_argument("sample_without_replacement: k > n");
  std::vector<std::uint32_t> pool(n);
  for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
  std::vector<std::uint32_t> picked;
  picked.reserve(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    const std::uint64_t j = i + next_below(n - i);
    std::swap(pool[i], pool[j]);
    picked.push_back(pool[i]);
  }
  return picked;
}

}  // namespace tielab
