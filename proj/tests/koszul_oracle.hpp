#pragma once

#include <map>
#include <vector>

#include "koszul/koszul_module.hpp"
#include "oracle.hpp"

namespace oracle {

// Exponent vectors of total degree d1 in the first n1 variables and e1 in
// the last n2, enumerated recursively.
inline void exponents(std::size_t n1, std::size_t n2, int d, int e, std::vector<int>& cur, std::size_t pos,
               std::vector<std::vector<int>>& out) {
  const std::size_t n = n1 + n2;
  if (pos == n) {
    int s1 = 0, s2 = 0;
    for (std::size_t i = 0; i < n1; ++i) s1 += cur[i];
    for (std::size_t i = n1; i < n; ++i) s2 += cur[i];
    if (s1 == d && s2 == e) out.push_back(cur);
    return;
  }
  const int cap = pos < n1 ? d : e;
  for (int k = 0; k <= cap; ++k) {
    cur[pos] = k;
    exponents(n1, n2, d, e, cur, pos + 1, out);
  }
  cur[pos] = 0;
}

inline std::map<std::vector<int>, std::size_t> piece(std::size_t n1, std::size_t n2, int d, int e) {
  std::vector<std::vector<int>> out;
  if (d >= 0 && e >= 0) {
    std::vector<int> cur(n1 + n2, 0);
    exponents(n1, n2, d, e, cur, 0, out);
  }
  std::map<std::vector<int>, std::size_t> idx;
  for (std::size_t i = 0; i < out.size(); ++i) idx[out[i]] = i;
  return idx;
}

// Independent dense computation of nullity(beta) - rank(alpha).
inline std::size_t w_dim(const koszul::KoszulInstance& inst, koszul::BiDegree b) {
  const std::size_t n1 = inst.n1, n2 = inst.n2;
  const std::uint32_t p = inst.field.characteristic();
  const auto s_de = piece(n1, n2, b.d, b.e), s_d_e1 = piece(n1, n2, b.d, b.e + 1),
             s_d1_e = piece(n1, n2, b.d + 1, b.e), top = piece(n1, n2, b.d + 1, b.e + 1);
  // Middle basis: (variable v, monomial) for v in V1 with S_{d,e+1}, V2 with S_{d+1,e}.
  std::map<std::pair<std::size_t, std::vector<int>>, std::size_t> mid;
  for (std::size_t v = 0; v < n1; ++v)
    for (const auto& [mono, i] : s_d_e1) mid[{v, mono}] = mid.size();
  for (std::size_t v = n1; v < n1 + n2; ++v)
    for (const auto& [mono, i] : s_d1_e) mid[{v, mono}] = mid.size();
  Dense beta(top.size(), std::vector<mpq_class>(mid.size()));
  for (const auto& [key, col] : mid) {
    auto mono = key.second;
    ++mono[key.first];
    beta[top.at(mono)][col] = 1;
  }
  const auto K = inst.K.span().to_dense();
  Dense alpha(mid.size(), std::vector<mpq_class>(K.size() * s_de.size()));
  for (std::size_t k = 0; k < K.size(); ++k) {
    for (const auto& [mono, s] : s_de) {
      const std::size_t col = k * s_de.size() + s;
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) {
          const mpq_class c = K[k][i * n2 + j];
          if (c == 0) continue;
          auto bs = mono;
          ++bs[n1 + j];
          alpha[mid.at({i, bs})][col] = reduce(alpha[mid.at({i, bs})][col] + c, p);
          auto as = mono;
          ++as[i];
          alpha[mid.at({n1 + j, as})][col] = reduce(alpha[mid.at({n1 + j, as})][col] - c, p);
        }
    }
  }
  const std::size_t rb = rank(beta, p), ra = rank(alpha, p);
  return mid.size() - rb - ra;
}

}  // namespace oracle
