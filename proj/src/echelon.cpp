#include "echelon.hpp"

namespace koszul::detail {

std::vector<std::size_t> dense_eliminate(std::vector<std::uint32_t>& a, std::size_t rows,
                                         std::size_t cols, std::uint32_t p, bool reduce_above) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = r;
    while (pr < rows && a[pr * cols + c] == 0) ++pr;
    if (pr == rows) continue;
    if (pr != r) {
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(pr * cols),
                       a.begin() + static_cast<std::ptrdiff_t>((pr + 1) * cols),
                       a.begin() + static_cast<std::ptrdiff_t>(r * cols));
    }
    std::uint32_t* prow = a.data() + r * cols;
    const std::uint64_t inv = inverse_mod(prow[c], p);
    for (std::size_t j = c; j < cols; ++j) prow[j] = static_cast<std::uint32_t>(prow[j] * inv % p);
    const std::size_t start = reduce_above ? 0 : r + 1;
    for (std::size_t i = start; i < rows; ++i) {
      if (i == r) continue;
      std::uint32_t* row = a.data() + i * cols;
      const std::uint32_t f = row[c];
      if (f == 0) continue;
      const std::uint64_t neg = p - f;
      for (std::size_t j = c; j < cols; ++j) {
        if (prow[j] != 0) row[j] = static_cast<std::uint32_t>((row[j] + neg * prow[j]) % p);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace koszul::detail
