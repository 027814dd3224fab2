#include "koszul/multilinear.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>

#include "combinatorics.hpp"
#include "koszul/errors.hpp"

namespace koszul {

// ---------------------------------------------------------------------------
// SpaceExpr

namespace {

std::size_t binom_size(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  return binomial(static_cast<long long>(n), static_cast<long long>(k)).get_ui();
}

}  // namespace

SpaceExpr SpaceExpr::sym_u(int d) {
  return SpaceExpr(std::make_shared<Node>(Node{Kind::SymU, d, {}, d < 0 ? 0u : std::size_t(d) + 1}));
}

SpaceExpr SpaceExpr::div_u(int d) {
  return SpaceExpr(std::make_shared<Node>(Node{Kind::DivU, d, {}, d < 0 ? 0u : std::size_t(d) + 1}));
}

SpaceExpr SpaceExpr::wedge(int i, const SpaceExpr& inner) {
  const std::size_t dim = i < 0 ? 0 : binom_size(inner.dim(), static_cast<std::size_t>(i));
  return SpaceExpr(std::make_shared<Node>(Node{Kind::WedgeOf, i, {inner}, dim}));
}

SpaceExpr SpaceExpr::sym_of(int d, const SpaceExpr& inner) {
  std::size_t dim = 0;
  if (d == 0) {
    dim = 1;
  } else if (d > 0 && inner.dim() > 0) {
    dim = binom_size(inner.dim() + static_cast<std::size_t>(d) - 1, static_cast<std::size_t>(d));
  }
  return SpaceExpr(std::make_shared<Node>(Node{Kind::SymOf, d, {inner}, dim}));
}

SpaceExpr SpaceExpr::tensor(const std::vector<SpaceExpr>& factors) {
  std::vector<SpaceExpr> flat;
  for (const auto& f : factors) {
    if (f.kind() == Kind::Tensor) {
      flat.insert(flat.end(), f.parts().begin(), f.parts().end());
    } else {
      flat.push_back(f);
    }
  }
  if (flat.size() == 1) return flat.front();
  std::size_t dim = 1;
  for (const auto& f : flat) dim *= f.dim();
  return SpaceExpr(std::make_shared<Node>(Node{Kind::Tensor, 0, flat, dim}));
}

SpaceExpr SpaceExpr::sum(const std::vector<SpaceExpr>& parts) {
  std::size_t dim = 0;
  for (const auto& p : parts) dim += p.dim();
  return SpaceExpr(std::make_shared<Node>(Node{Kind::Sum, 0, parts, dim}));
}

std::string SpaceExpr::to_string() const {
  auto join = [&](const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < parts().size(); ++i) {
      if (i) s += sep;
      s += parts()[i].to_string();
    }
    return s;
  };
  switch (kind()) {
    case Kind::SymU:
      return "Sym^" + std::to_string(degree()) + "(U)";
    case Kind::DivU:
      return "D^" + std::to_string(degree()) + "(U)";
    case Kind::WedgeOf:
      return "Wedge^" + std::to_string(degree()) + "(" + parts()[0].to_string() + ")";
    case Kind::SymOf:
      return "Sym^" + std::to_string(degree()) + "(" + parts()[0].to_string() + ")";
    case Kind::Tensor:
      return "(" + join(" x ") + ")";
    case Kind::Sum:
      return "(" + join(" + ") + ")";
  }
  return "?";
}

bool operator==(const SpaceExpr& a, const SpaceExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.dim() != b.dim()) return false;
  if (a.kind() == SpaceExpr::Kind::SymU || a.kind() == SpaceExpr::Kind::DivU) {
    // All negative degrees describe the same zero space.
    return a.degree() == b.degree() || (a.degree() < 0 && b.degree() < 0);
  }
  if (a.degree() != b.degree()) return false;
  return a.parts() == b.parts();
}

// ---------------------------------------------------------------------------
// Basis labels

std::string BasisIndex::to_string() const {
  std::ostringstream os;
  if (tag >= 0) os << "#" << tag << ":";
  if (!ints.empty()) {
    os << "[";
    for (std::size_t i = 0; i < ints.size(); ++i) os << (i ? "," : "") << ints[i];
    os << "]";
  }
  if (!parts.empty()) {
    os << "(";
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "|" : "") << parts[i].to_string();
    os << ")";
  }
  return os.str();
}

bool operator==(const BasisIndex& a, const BasisIndex& b) {
  return a.tag == b.tag && a.ints == b.ints && a.parts == b.parts;
}

bool operator<(const BasisIndex& a, const BasisIndex& b) {
  if (a.tag != b.tag) return a.tag < b.tag;
  if (a.ints != b.ints) return a.ints < b.ints;
  return std::lexicographical_compare(a.parts.begin(), a.parts.end(), b.parts.begin(),
                                      b.parts.end());
}

namespace {

using detail::multisets;
using detail::subsets;

// Compositions (u_1..u_r) of total with 0 <= u_j <= caps[j], lexicographic.
void compositions(const std::vector<int>& caps, int total, std::size_t pos, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (pos + 1 == caps.size()) {
    if (total <= caps[pos]) {
      cur[pos] = total;
      out.push_back(cur);
    }
    return;
  }
  for (int u = 0; u <= std::min(total, caps[pos]); ++u) {
    cur[pos] = u;
    compositions(caps, total - u, pos + 1, cur, out);
  }
}

std::vector<BasisIndex> wedge_of_sum(int i, const SpaceExpr& sum) {
  const auto& summands = sum.parts();
  std::vector<BasisIndex> out;
  if (summands.empty()) {
    if (i == 0) out.push_back(BasisIndex{});
    return out;
  }
  std::vector<int> caps, offsets;
  int off = 0;
  for (const auto& s : summands) {
    caps.push_back(static_cast<int>(s.dim()));
    offsets.push_back(off);
    off += static_cast<int>(s.dim());
  }
  std::vector<std::vector<int>> comps;
  std::vector<int> cur(caps.size());
  compositions(caps, i, 0, cur, comps);
  for (const auto& comp : comps) {
    std::vector<std::vector<std::vector<int>>> choices;
    for (std::size_t j = 0; j < comp.size(); ++j) choices.push_back(subsets(caps[j], comp[j]));
    // Left-major product over summands.
    std::vector<std::size_t> idx(comp.size(), 0);
    while (true) {
      BasisIndex b;
      for (std::size_t j = 0; j < comp.size(); ++j) {
        for (int x : choices[j][idx[j]]) b.ints.push_back(x + offsets[j]);
      }
      out.push_back(std::move(b));
      std::size_t j = comp.size();
      bool carried_out = true;
      while (j > 0) {
        --j;
        if (++idx[j] < choices[j].size()) {
          carried_out = false;
          break;
        }
        idx[j] = 0;
      }
      if (carried_out) break;
    }
  }
  return out;
}

}  // namespace

std::vector<BasisIndex> enumerate_basis(const SpaceExpr& s) {
  std::vector<BasisIndex> out;
  switch (s.kind()) {
    case SpaceExpr::Kind::SymU:
    case SpaceExpr::Kind::DivU:
      for (int k = 0; k <= s.degree(); ++k) out.push_back(BasisIndex{-1, {k}, {}});
      break;
    case SpaceExpr::Kind::WedgeOf: {
      const SpaceExpr& inner = s.parts()[0];
      if (s.degree() < 0) break;
      if (inner.kind() == SpaceExpr::Kind::Sum) return wedge_of_sum(s.degree(), inner);
      for (auto& set : subsets(static_cast<int>(inner.dim()), s.degree())) {
        out.push_back(BasisIndex{-1, std::move(set), {}});
      }
      break;
    }
    case SpaceExpr::Kind::SymOf:
      for (auto& ms : multisets(static_cast<int>(s.parts()[0].dim()), s.degree())) {
        out.push_back(BasisIndex{-1, std::move(ms), {}});
      }
      break;
    case SpaceExpr::Kind::Tensor: {
      if (s.dim() == 0) break;
      std::vector<std::vector<BasisIndex>> factors;
      for (const auto& f : s.parts()) factors.push_back(enumerate_basis(f));
      std::vector<std::size_t> idx(factors.size(), 0);
      while (true) {
        BasisIndex b;
        for (std::size_t j = 0; j < factors.size(); ++j) b.parts.push_back(factors[j][idx[j]]);
        out.push_back(std::move(b));
        std::size_t j = factors.size();
        bool carried_out = true;
        while (j > 0) {
          --j;
          if (++idx[j] < factors[j].size()) {
            carried_out = false;
            break;
          }
          idx[j] = 0;
        }
        if (carried_out) break;
      }
      break;
    }
    case SpaceExpr::Kind::Sum:
      for (std::size_t t = 0; t < s.parts().size(); ++t) {
        for (auto& inner : enumerate_basis(s.parts()[t])) {
          out.push_back(BasisIndex{static_cast<int>(t), {}, {std::move(inner)}});
        }
      }
      break;
  }
  return out;
}

Basis::Basis(const SpaceExpr& s) : labels_(enumerate_basis(s)) {
  for (std::size_t i = 0; i < labels_.size(); ++i) lookup_.emplace(labels_[i], i);
}

std::optional<std::size_t> Basis::find(const BasisIndex& b) const {
  auto it = lookup_.find(b);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t Basis::index(const BasisIndex& b) const {
  auto i = find(b);
  if (!i) throw InvariantViolation("unknown basis label " + b.to_string());
  return *i;
}

// ---------------------------------------------------------------------------
// LinMap plumbing

LinMap::LinMap(SpaceExpr dom, SpaceExpr cod, Matrix m)
    : domain(std::move(dom)), codomain(std::move(cod)), matrix(std::move(m)) {
  if (matrix.cols() != domain.dim() || matrix.rows() != codomain.dim()) {
    throw InvariantViolation("LinMap " + domain.to_string() + " -> " + codomain.to_string() +
                             ": matrix is " + std::to_string(matrix.rows()) + "x" +
                             std::to_string(matrix.cols()));
  }
}

LinMap compose(const LinMap& g, const LinMap& f) {
  if (!(f.codomain == g.domain)) {
    throw InputError("compose: " + f.codomain.to_string() + " is not " + g.domain.to_string());
  }
  return LinMap(f.domain, g.codomain, g.matrix * f.matrix);
}

LinMap tensor(const LinMap& f, const LinMap& g) {
  return LinMap(SpaceExpr::tensor({f.domain, g.domain}), SpaceExpr::tensor({f.codomain, g.codomain}),
                kron(f.matrix, g.matrix));
}

LinMap identity_map(const SpaceExpr& s, FieldSpec f) {
  return LinMap(s, s, Matrix::identity(f, s.dim()));
}

LinMap permute_factors(const std::vector<SpaceExpr>& factors, const std::vector<std::size_t>& perm,
                       FieldSpec f) {
  const std::size_t r = factors.size();
  if (perm.size() != r) throw InputError("permute_factors: permutation length mismatch");
  std::vector<SpaceExpr> out_factors;
  for (std::size_t k = 0; k < r; ++k) out_factors.push_back(factors[perm[k]]);
  const SpaceExpr dom = SpaceExpr::tensor(factors);
  const SpaceExpr cod = SpaceExpr::tensor(out_factors);
  std::vector<std::size_t> dims(r), out_strides(r, 1);
  for (std::size_t k = 0; k < r; ++k) dims[k] = factors[k].dim();
  for (std::size_t k = r; k-- > 1;) out_strides[k - 1] = out_strides[k] * dims[perm[k]];
  // Position of input factor j in the output.
  std::vector<std::size_t> where(r);
  for (std::size_t k = 0; k < r; ++k) where[perm[k]] = k;
  MatrixBuilder b(f, cod.dim(), dom.dim());
  std::vector<std::size_t> digits(r, 0);
  for (std::size_t col = 0; col < dom.dim(); ++col) {
    std::size_t row = 0;
    for (std::size_t j = 0; j < r; ++j) row += digits[j] * out_strides[where[j]];
    b.add(row, col, 1LL);
    for (std::size_t j = r; j-- > 0;) {
      if (++digits[j] < dims[j]) break;
      digits[j] = 0;
    }
  }
  return LinMap(dom, cod, b.build());
}

// ---------------------------------------------------------------------------
// Memoization of structure maps

namespace {

template <class T>
class Cache {
 public:
  T get(const std::string& key, const std::function<T()>& build) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    T value = build();
    std::lock_guard<std::mutex> lock(mu_);
    return map_.emplace(key, std::move(value)).first->second;
  }

 private:
  std::mutex mu_;
  std::map<std::string, T> map_;
};

Cache<LinMap>& map_cache() {
  static Cache<LinMap> cache;
  return cache;
}

Cache<Subspace>& subspace_cache() {
  static Cache<Subspace> cache;
  return cache;
}

std::string key(const char* op, std::initializer_list<long long> params, FieldSpec f) {
  std::string k = op;
  for (long long p : params) k += ":" + std::to_string(p);
  return k + "@" + std::to_string(f.characteristic());
}

std::size_t dim_u(int d) { return d < 0 ? 0 : static_cast<std::size_t>(d) + 1; }

}  // namespace

// ---------------------------------------------------------------------------
// Structure maps

LinMap mult_sym(int u, int v, FieldSpec f) {
  return map_cache().get(key("mult_sym", {u, v}, f), [&] {
    const SpaceExpr dom = SpaceExpr::tensor({SpaceExpr::sym_u(u), SpaceExpr::sym_u(v)});
    const SpaceExpr cod = SpaceExpr::sym_u(u + v);
    MatrixBuilder b(f, cod.dim(), dom.dim());
    for (int i = 0; i <= u; ++i)
      for (int j = 0; j <= v; ++j) b.add(static_cast<std::size_t>(i + j), static_cast<std::size_t>(i) * dim_u(v) + static_cast<std::size_t>(j), 1LL);
    return LinMap(dom, cod, b.build());
  });
}

LinMap comult_div(int u, int v, FieldSpec f) {
  return map_cache().get(key("comult_div", {u, v}, f), [&] {
    const SpaceExpr dom = SpaceExpr::div_u(u + v);
    const SpaceExpr cod = SpaceExpr::tensor({SpaceExpr::div_u(u), SpaceExpr::div_u(v)});
    MatrixBuilder b(f, cod.dim(), dom.dim());
    if (u >= 0 && v >= 0) {
      for (int k = 0; k <= u + v; ++k)
        for (int a = std::max(0, k - v); a <= std::min(u, k); ++a)
          b.add(static_cast<std::size_t>(a) * dim_u(v) + static_cast<std::size_t>(k - a), static_cast<std::size_t>(k), 1LL);
    }
    return LinMap(dom, cod, b.build());
  });
}

LinMap comult_wedge(int u, int v, const SpaceExpr& e, FieldSpec f) {
  const SpaceExpr dom = SpaceExpr::wedge(u + v, e);
  const SpaceExpr wu = SpaceExpr::wedge(u, e);
  const SpaceExpr wv = SpaceExpr::wedge(v, e);
  const SpaceExpr cod = SpaceExpr::tensor({wu, wv});
  MatrixBuilder b(f, cod.dim(), dom.dim());
  if (u < 0 || v < 0) return LinMap(dom, cod, b.build());
  const Basis bd(dom), bu(wu), bv(wv);
  for (std::size_t col = 0; col < bd.size(); ++col) {
    const std::vector<int>& s = bd[col].ints;
    for (const auto& pos : subsets(u + v, u)) {
      BasisIndex s1, s2;
      std::vector<char> in1(s.size(), 0);
      for (int p : pos) in1[static_cast<std::size_t>(p)] = 1;
      // Sign of the shuffle: pairs (a in S1, b in S2) with b before a.
      long long inversions = 0, seen2 = 0;
      for (std::size_t q = 0; q < s.size(); ++q) {
        if (in1[q]) {
          s1.ints.push_back(s[q]);
          inversions += seen2;
        } else {
          s2.ints.push_back(s[q]);
          ++seen2;
        }
      }
      const std::size_t row = bu.index(s1) * bv.size() + bv.index(s2);
      b.add(row, col, inversions % 2 ? -1LL : 1LL);
    }
  }
  return LinMap(dom, cod, b.build());
}

LinMap iota_power(int u, int v, int t, FieldSpec f) {
  return map_cache().get(key("iota_power", {u, v, t}, f), [&] {
    const SpaceExpr dom = SpaceExpr::tensor({SpaceExpr::sym_u(u - t), SpaceExpr::sym_u(v - t)});
    const SpaceExpr cod = SpaceExpr::tensor({SpaceExpr::sym_u(u), SpaceExpr::sym_u(v)});
    MatrixBuilder b(f, cod.dim(), dom.dim());
    for (int i = 0; i <= u - t; ++i) {
      for (int j = 0; j <= v - t; ++j) {
        const std::size_t col = static_cast<std::size_t>(i) * dim_u(v - t) + static_cast<std::size_t>(j);
        for (int k = 0; k <= t; ++k) {
          mpq_class c(binomial(t, k));
          if (k % 2) c = -c;
          b.add(static_cast<std::size_t>(i + k) * dim_u(v) + static_cast<std::size_t>(j + t - k), col, c);
        }
      }
    }
    return LinMap(dom, cod, b.build());
  });
}

LinMap iota_dual(int u, int v, FieldSpec f) {
  return map_cache().get(key("iota_dual", {u, v}, f), [&] {
    const SpaceExpr dom = SpaceExpr::tensor({SpaceExpr::div_u(u), SpaceExpr::div_u(v)});
    const SpaceExpr cod = SpaceExpr::tensor({SpaceExpr::div_u(u - 1), SpaceExpr::div_u(v - 1)});
    MatrixBuilder b(f, cod.dim(), dom.dim());
    for (int i = 0; i <= u; ++i) {
      for (int j = 0; j <= v; ++j) {
        const std::size_t col = static_cast<std::size_t>(i) * dim_u(v) + static_cast<std::size_t>(j);
        if (i >= 1 && j <= v - 1) b.add(static_cast<std::size_t>(i - 1) * dim_u(v - 1) + static_cast<std::size_t>(j), col, 1LL);
        if (i <= u - 1 && j >= 1) b.add(static_cast<std::size_t>(i) * dim_u(v - 1) + static_cast<std::size_t>(j - 1), col, -1LL);
      }
    }
    return LinMap(dom, cod, b.build());
  });
}

Subspace psi_kernel(int u, int v, FieldSpec f) {
  return subspace_cache().get(key("psi_kernel", {u, v}, f), [&] {
    return Subspace::column_span(iota_power(u, v, 2, f).matrix);
  });
}

Subspace weyman_K(int u, int v, FieldSpec f) {
  if (u < 1 || v < 1) throw RangeError("weyman_K needs u, v >= 1");
  return subspace_cache().get(key("weyman_K", {u, v}, f), [&] {
    return kernel_basis(compose(iota_dual(u - 1, v - 1, f), iota_dual(u, v, f)).matrix);
  });
}

namespace {

using WedgeVec = std::map<std::vector<int>, mpq_class>;

// nu applied to x^(j) in D^d U and a wedge of d monomials.
void nu_apply(int j, const std::vector<int>& ks, const mpq_class& coeff, WedgeVec& out) {
  const int d = static_cast<int>(ks.size());
  for (const auto& pos : subsets(d, j)) {
    std::vector<int> next = ks;
    for (int p : pos) ++next[static_cast<std::size_t>(p)];
    bool strict = true;
    for (std::size_t r = 1; r < next.size(); ++r) strict = strict && next[r - 1] < next[r];
    if (strict) out[next] += coeff;
  }
}

}  // namespace

LinMap nu(int d, int e, FieldSpec f) {
  return map_cache().get(key("nu", {d, e}, f), [&] {
    const SpaceExpr wd = SpaceExpr::wedge(d, SpaceExpr::sym_u(e));
    const SpaceExpr dom = SpaceExpr::tensor({SpaceExpr::div_u(d), wd});
    const SpaceExpr cod = SpaceExpr::wedge(d, SpaceExpr::sym_u(e + 1));
    const Basis bw(wd), bc(cod);
    MatrixBuilder b(f, cod.dim(), dom.dim());
    for (int j = 0; j <= d; ++j) {
      for (std::size_t w = 0; w < bw.size(); ++w) {
        WedgeVec out;
        nu_apply(j, bw[w].ints, 1, out);
        const std::size_t col = static_cast<std::size_t>(j) * bw.size() + w;
        for (const auto& [set, c] : out) b.add(bc.index(BasisIndex{-1, set, {}}), col, c);
      }
    }
    return LinMap(dom, cod, b.build());
  });
}

LinMap hermite_iso(int d, int i, FieldSpec f) {
  if (d < 1 || i < 1) throw RangeError("hermite_iso needs d, i >= 1");
  return map_cache().get(key("hermite", {d, i}, f), [&] {
    const SpaceExpr dom = SpaceExpr::sym_of(d, SpaceExpr::div_u(i));
    const SpaceExpr cod = SpaceExpr::wedge(i, SpaceExpr::sym_u(d + i - 1));
    const Basis bd(dom), bc(cod);
    MatrixBuilder b(f, cod.dim(), dom.dim());
    std::vector<int> base(static_cast<std::size_t>(i));
    for (int r = 0; r < i; ++r) base[static_cast<std::size_t>(r)] = r;
    for (std::size_t col = 0; col < bd.size(); ++col) {
      WedgeVec cur{{base, mpq_class(1)}};
      const auto& js = bd[col].ints;
      for (auto it = js.rbegin(); it != js.rend(); ++it) {
        WedgeVec next;
        for (const auto& [set, c] : cur) nu_apply(*it, set, c, next);
        cur = std::move(next);
      }
      for (const auto& [set, c] : cur) b.add(bc.index(BasisIndex{-1, set, {}}), col, c);
    }
    return LinMap(dom, cod, b.build());
  });
}

// ---------------------------------------------------------------------------
// Group actions and weights

namespace {

mpq_class small_det(std::vector<std::vector<mpq_class>> a) {
  const std::size_t n = a.size();
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      mpq_class fct = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= fct * a[c][k];
    }
  }
  return det;
}

}  // namespace

Matrix unipotent_action(const SpaceExpr& s, FieldSpec f) {
  const std::size_t n = s.dim();
  MatrixBuilder b(f, n, n);
  switch (s.kind()) {
    case SpaceExpr::Kind::SymU:
      for (int k = 0; k <= s.degree(); ++k)
        for (int j = 0; j <= k; ++j) b.add(static_cast<std::size_t>(j), static_cast<std::size_t>(k), mpq_class(binomial(k, j)));
      return b.build();
    case SpaceExpr::Kind::DivU:
      for (int k = 0; k <= s.degree(); ++k)
        for (int j = 0; j <= k; ++j)
          b.add(static_cast<std::size_t>(j), static_cast<std::size_t>(k), mpq_class(binomial(s.degree() - j, k - j)));
      return b.build();
    case SpaceExpr::Kind::Tensor: {
      Matrix m = unipotent_action(s.parts()[0], f);
      for (std::size_t k = 1; k < s.parts().size(); ++k) m = kron(m, unipotent_action(s.parts()[k], f));
      return m;
    }
    case SpaceExpr::Kind::Sum: {
      std::vector<Matrix> blocks;
      for (const auto& p : s.parts()) blocks.push_back(unipotent_action(p, f));
      return block_diag(blocks);
    }
    case SpaceExpr::Kind::WedgeOf: {
      const auto g = unipotent_action(s.parts()[0], f).to_dense();
      const Basis basis(s);
      for (std::size_t col = 0; col < basis.size(); ++col) {
        for (std::size_t row = 0; row < basis.size(); ++row) {
          const auto& rs = basis[row].ints;
          const auto& cs = basis[col].ints;
          std::vector<std::vector<mpq_class>> minor(rs.size(), std::vector<mpq_class>(cs.size()));
          for (std::size_t x = 0; x < rs.size(); ++x)
            for (std::size_t y = 0; y < cs.size(); ++y)
              minor[x][y] = g[static_cast<std::size_t>(rs[x])][static_cast<std::size_t>(cs[y])];
          b.add(row, col, small_det(std::move(minor)));
        }
      }
      return b.build();
    }
    case SpaceExpr::Kind::SymOf: {
      const Matrix g = unipotent_action(s.parts()[0], f);
      const Matrix gt = g.transpose();  // row a: image of basis vector a
      const Basis basis(s);
      for (std::size_t col = 0; col < basis.size(); ++col) {
        std::map<std::vector<int>, mpq_class> poly{{{}, mpq_class(1)}};
        for (int a : basis[col].ints) {
          std::map<std::vector<int>, mpq_class> next;
          auto cs = gt.row_cols(static_cast<std::size_t>(a));
          auto vs = gt.row_values(static_cast<std::size_t>(a));
          for (const auto& [mono, c] : poly) {
            for (std::size_t k = 0; k < cs.size(); ++k) {
              std::vector<int> m2 = mono;
              m2.insert(std::upper_bound(m2.begin(), m2.end(), static_cast<int>(cs[k])), static_cast<int>(cs[k]));
              next[m2] += c * vs[k];
            }
          }
          poly = std::move(next);
        }
        for (const auto& [mono, c] : poly) b.add(basis.index(BasisIndex{-1, mono, {}}), col, c);
      }
      return b.build();
    }
  }
  return b.build();
}

int x_weight(const SpaceExpr& s, const BasisIndex& b) {
  switch (s.kind()) {
    case SpaceExpr::Kind::SymU:
    case SpaceExpr::Kind::DivU:
      return b.ints.at(0);
    case SpaceExpr::Kind::WedgeOf:
    case SpaceExpr::Kind::SymOf: {
      const auto inner = enumerate_basis(s.parts()[0]);
      int w = 0;
      for (int k : b.ints) w += x_weight(s.parts()[0], inner[static_cast<std::size_t>(k)]);
      return w;
    }
    case SpaceExpr::Kind::Tensor: {
      int w = 0;
      for (std::size_t k = 0; k < s.parts().size(); ++k) w += x_weight(s.parts()[k], b.parts[k]);
      return w;
    }
    case SpaceExpr::Kind::Sum:
      return x_weight(s.parts()[static_cast<std::size_t>(b.tag)], b.parts.at(0));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Low-rank tensor search

std::optional<std::size_t> min_nonzero_rank(const Subspace& t, std::size_t w1, std::size_t w2,
                                            std::uint64_t budget) {
  const FieldSpec f = t.field();
  if (f.is_rational()) throw InputError("min_nonzero_rank needs a finite field");
  if (t.ambient_dim() != w1 * w2) throw InputError("min_nonzero_rank: ambient dim is not w1*w2");
  const std::size_t k = t.dim();
  if (k == 0) return std::nullopt;
  const std::uint32_t p = f.characteristic();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    total *= p;
    if (total > budget) {
      throw BudgetExceeded("enumerating " + std::to_string(p) + "^" + std::to_string(k) +
                           " vectors exceeds the budget of " + std::to_string(budget));
    }
  }
  std::vector<std::vector<std::uint32_t>> basis(k, std::vector<std::uint32_t>(w1 * w2, 0));
  for (std::size_t i = 0; i < k; ++i) {
    auto cs = t.span().row_cols(i);
    auto vs = t.span().row_values(i);
    for (std::size_t q = 0; q < cs.size(); ++q) basis[i][cs[q]] = static_cast<std::uint32_t>(vs[q].get_num().get_ui());
  }
  std::size_t best = std::min(w1, w2) + 1;
  std::vector<std::uint32_t> coeff(k, 0);
  std::vector<std::uint32_t> vec(w1 * w2);
  while (true) {
    // Advance the odometer; the last digit varies fastest.
    std::size_t j = k;
    bool wrapped = true;
    while (j > 0) {
      --j;
      if (++coeff[j] < p) {
        wrapped = false;
        break;
      }
      coeff[j] = 0;
    }
    if (wrapped) break;
    // Projective normalization: first nonzero coefficient equals one.
    std::size_t lead = 0;
    while (coeff[lead] == 0) ++lead;
    if (coeff[lead] != 1) continue;
    std::fill(vec.begin(), vec.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
      if (!coeff[i]) continue;
      for (std::size_t q = 0; q < vec.size(); ++q) {
        vec[q] = static_cast<std::uint32_t>((vec[q] + static_cast<std::uint64_t>(coeff[i]) * basis[i][q]) % p);
      }
    }
    // Rank of the w1 x w2 reshaping by elimination mod p.
    std::vector<std::uint32_t> a = vec;
    std::size_t r = 0;
    for (std::size_t c = 0; c < w2 && r < w1; ++c) {
      std::size_t pr = r;
      while (pr < w1 && a[pr * w2 + c] == 0) ++pr;
      if (pr == w1) continue;
      for (std::size_t q = 0; q < w2; ++q) std::swap(a[pr * w2 + q], a[r * w2 + q]);
      const std::uint64_t inv = inverse_mod(a[r * w2 + c], p);
      for (std::size_t i = r + 1; i < w1; ++i) {
        const std::uint64_t fct = a[i * w2 + c] * inv % p;
        if (!fct) continue;
        for (std::size_t q = c; q < w2; ++q) {
          a[i * w2 + q] = static_cast<std::uint32_t>((a[i * w2 + q] + (p - fct) * a[r * w2 + q]) % p);
        }
      }
      ++r;
    }
    best = std::min(best, r);
    if (best == 1) break;
  }
  return best;
}

}  // namespace koszul
