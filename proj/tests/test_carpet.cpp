#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <thread>

#include "koszul/carpet.hpp"
#include "koszul/errors.hpp"
#include "koszul/weyman.hpp"

using namespace koszul;

namespace {

const FieldSpec QQ = FieldSpec::rationals();

std::vector<std::pair<int, int>> bidegrees_up_to(int total) {
  std::vector<std::pair<int, int>> out;
  for (int n = 0; n <= total; ++n)
    for (int d = 0; d <= n; ++d) out.emplace_back(d, n - d);
  return out;
}

}  // namespace

TEST_CASE("carpet instance validation") {
  CHECK_THROWS_AS(CarpetInstance(0, 2, QQ), InputError);
  CHECK_THROWS_AS(CarpetInstance(2, 0, QQ), InputError);
  const Carpet c(CarpetInstance(2, 3, QQ));
  CHECK(c.num_variables() == 7);
  CHECK(c.num_generators() == 1 + 6 + 3);
  CHECK(std::string(to_string(ModuleKind::Omega)) == "Omega");
}

TEST_CASE("evaluation map examples") {
  const Carpet c22(CarpetInstance(2, 2, QQ));
  CHECK(rank(c22.eval_map({2, 0})) == 5);
  CHECK(c22.ideal_piece({2, 0}).dim() == 1);
  const Matrix e11 = c22.eval_map({1, 1});
  CHECK(e11.rows() == 5);
  CHECK(e11.cols() == 9);
  CHECK(c22.ideal_piece({1, 1}).dim() == 4);
  const Carpet c3(CarpetInstance(3, 2, FieldSpec(5)));
  CHECK(c3.eval_map({1, 0}) == Matrix::identity(FieldSpec(5), 4));
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      const Carpet c(CarpetInstance(a, b, QQ));
      for (auto [d, e] : bidegrees_up_to(4)) {
        CHECK(rank(c.eval_map({d, e})) == c.module_dim(ModuleKind::B, {d, e}));
        CHECK(c.ideal_piece({d, e}).dim() == c.module_dim(ModuleKind::I, {d, e}));
      }
    }
}

TEST_CASE("module actions") {
  const Carpet c(CarpetInstance(2, 2, QQ));
  CHECK(c.module_action(ModuleKind::B, VariableBlock::First, {0, 0}) == Matrix::identity(QQ, 3));
  const Matrix om = c.module_action(ModuleKind::Omega, VariableBlock::First, {1, 1});
  CHECK(om.rows() == 5);
  CHECK(om.cols() == 9);
  CHECK(rank(om) == 5);
  const Matrix zero = c.module_action(ModuleKind::Omega, VariableBlock::Second, {0, 2});
  CHECK(zero.cols() == 0);
  CHECK(zero.is_zero());
  CHECK_THROWS_AS(c.variable_action(ModuleKind::R, 6, {0, 0}), InputError);
}

TEST_CASE("the action on I is the restriction of the action on R") {
  for (auto [a, b] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}})
    for (const FieldSpec f : {QQ, FieldSpec(2)}) {
      const Carpet c(CarpetInstance(a, b, f));
      for (auto [d, e] : bidegrees_up_to(3))
        for (std::size_t v = 0; v < c.num_variables(); ++v) {
          const BiDegree src{d, e};
          const BiDegree dst = v < static_cast<std::size_t>(a + 1) ? BiDegree{d + 1, e} : BiDegree{d, e + 1};
          const Matrix lhs = c.variable_action(ModuleKind::R, v, src) * c.ideal_piece(src).span().transpose();
          const Matrix rhs = c.ideal_piece(dst).span().transpose() * c.variable_action(ModuleKind::I, v, src);
          CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("generators span I in degree two") {
  for (auto [a, b] : {std::pair{1, 1}, std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 4}}) {
    const Carpet c(CarpetInstance(a, b, QQ));
    for (BiDegree bd : {BiDegree{2, 0}, BiDegree{1, 1}, BiDegree{0, 2}}) {
      const Matrix g = c.generators(bd);
      CHECK(g.rows() == c.ideal_piece(bd).dim());
      CHECK(Subspace::row_span(g) == c.ideal_piece(bd));
    }
  }
}

TEST_CASE("phi on generators") {
  const Carpet c22(CarpetInstance(2, 2, QQ));
  const Matrix phi = c22.phi_on_generators();
  // generator order: one pure y minor, mixed (s,t) left-major, one pure z minor
  REQUIRE(phi.cols() == 6);
  REQUIRE(phi.rows() == 3);
  CHECK(phi.at(2, 4) == 1);  // (s,t) = (1,1) -> x^2
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(phi.at(r, 0) == 0);
    CHECK(phi.at(r, 5) == 0);
  }
  const Carpet c23(CarpetInstance(2, 3, QQ));
  CHECK(rank(c23.phi_on_generators()) == 4);
}

TEST_CASE("phi_at examples") {
  const Carpet c(CarpetInstance(2, 2, QQ));
  CHECK(rank(c.phi_at({1, 1})) == 3);
  const Matrix z = c.phi_at({2, 0});
  CHECK(z.rows() == 0);
  CHECK(z.cols() == c.ideal_piece({2, 0}).dim());
  CHECK(c.phi_at({2, 1}).rows() == 5);
  CHECK(rank(c.phi_at({2, 1})) == 5);
  const Carpet c34(CarpetInstance(3, 4, FieldSpec(7)));
  CHECK(rank(c34.phi_at({1, 1})) == 6);
}

TEST_CASE("phi is independent of the lift and R-linear") {
  for (auto [a, b] : {std::pair{2, 2}, std::pair{2, 3}})
    for (const FieldSpec f : {QQ, FieldSpec(3)}) {
      const Carpet c(CarpetInstance(a, b, f));
      std::vector<std::size_t> order(c.num_generators());
      std::iota(order.begin(), order.end(), 0);
      std::reverse(order.begin(), order.end());
      std::rotate(order.begin(), order.begin() + 1, order.end());
      for (auto [d, e] : bidegrees_up_to(4)) {
        INFO("a=" << a << " b=" << b << " d=" << d << " e=" << e);
        CHECK(c.phi_at({d, e}) == c.phi_at_with_order({d, e}, order));
      }
      for (auto [d, e] : bidegrees_up_to(3))
        for (std::size_t v = 0; v < c.num_variables(); ++v) {
          const BiDegree src{d, e};
          const BiDegree dst = v < static_cast<std::size_t>(a + 1) ? BiDegree{d + 1, e} : BiDegree{d, e + 1};
          CHECK(c.phi_at(dst) * c.variable_action(ModuleKind::I, v, src) ==
                c.variable_action(ModuleKind::Omega, v, src) * c.phi_at(src));
        }
    }
  const Carpet c(CarpetInstance(2, 2, QQ));
  CHECK_THROWS_AS(c.phi_at_with_order({1, 1}, {0, 1, 2}), InputError);
  CHECK_THROWS_AS(c.phi_at_with_order({1, 1}, {0, 0, 1, 2, 3, 4}), InputError);
}

TEST_CASE("Koszul Tor examples") {
  const Carpet c33(CarpetInstance(3, 3, QQ));
  CHECK(c33.koszul_tor_total(ModuleKind::B, 1, 2) == 15);
  CHECK(c33.koszul_tor_total(ModuleKind::B, 2, 3) == 40);
  const Carpet c22(CarpetInstance(2, 2, QQ));
  CHECK(c22.koszul_tor(ModuleKind::Omega, 0, {1, 1}).dim == 3);
  CHECK(c22.koszul_tor(ModuleKind::B, 0, {0, 0}).dim == 1);
  CHECK(c22.koszul_tor(ModuleKind::B, 0, {1, 0}).dim == 0);
  CHECK(c22.koszul_tor(ModuleKind::I, -1, {1, 0}).dim == 0);
}

TEST_CASE("Koszul differentials square to zero") {
  const Carpet c(CarpetInstance(2, 3, FieldSpec(5)));
  for (ModuleKind k : {ModuleKind::R, ModuleKind::B, ModuleKind::I, ModuleKind::Omega})
    for (auto [d, e] : bidegrees_up_to(5))
      for (int j = 1; j <= d + e; ++j) {
        CHECK((c.koszul_differential(k, j, {d, e}) * c.koszul_differential(k, j + 1, {d, e})).is_zero());
      }
}

TEST_CASE("Tor of R vanishes in positive homological degree") {
  for (auto [a, b] : {std::pair{1, 2}, std::pair{2, 2}, std::pair{2, 3}}) {
    const Carpet c(CarpetInstance(a, b, QQ));
    for (auto [d, e] : bidegrees_up_to(4)) {
      for (int i = 1; i <= 3; ++i) CHECK(c.koszul_tor(ModuleKind::R, i, {d, e}).dim == 0);
      CHECK(c.koszul_tor(ModuleKind::R, 0, {d, e}).dim == (d == 0 && e == 0 ? 1u : 0u));
    }
  }
}

TEST_CASE("Euler characteristic of the Koszul complexes") {
  const Carpet c(CarpetInstance(2, 3, QQ));
  for (ModuleKind k : {ModuleKind::B, ModuleKind::I, ModuleKind::Omega})
    for (auto [d, e] : bidegrees_up_to(4)) {
      long long chains = 0, homology = 0;
      for (int j = 0; j <= d + e; ++j) {
        const long long sign = j % 2 == 0 ? 1 : -1;
        chains += sign * static_cast<long long>(c.koszul_term_dim(k, j, {d, e}));
        homology += sign * static_cast<long long>(c.koszul_tor(k, j, {d, e}).dim);
      }
      CHECK(chains == homology);
    }
}

TEST_CASE("scroll resolution") {
  for (auto [a, b] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}})
    for (const FieldSpec f : {QQ, FieldSpec(2)}) {
      const Carpet c(CarpetInstance(a, b, f));
      for (int i = 1; i <= a + b - 1; ++i) {
        const auto s = c.scroll_tor_check(i);
        CHECK(s.holds);
        CHECK(s.linear == scroll_tor_dim(a, b, i));
        CHECK(s.quadratic == 0);
      }
    }
  CHECK(scroll_tor_dim(3, 3, 1) == 15);
  CHECK(scroll_tor_dim(2, 3, 2) == 20);
  CHECK(scroll_tor_dim(2, 2, 3) == 3);
  const Carpet c(CarpetInstance(2, 2, QQ));
  CHECK_THROWS_AS(c.scroll_tor_check(0), RangeError);
  CHECK_THROWS_AS(c.scroll_tor_check(4), RangeError);
}

TEST_CASE("Tor dimensions of I and Omega") {
  CHECK(canonical_tor_dim(2, 2, 1, 0) == 4);
  CHECK(ideal_tor_dim(2, 2, 1, 0) == 4);
  for (auto [a, b] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}, std::pair{3, 4}}) {
    const Carpet c(CarpetInstance(a, b, FieldSpec(7)));
    for (int u = 0; u <= a - 1; ++u)
      for (int v = 0; v <= b - 1 && u + v <= 3; ++v) {
        INFO("a=" << a << " b=" << b << " u=" << u << " v=" << v);
        CHECK(c.koszul_tor(ModuleKind::I, u + v, {u + 1, v + 1}).dim == ideal_tor_dim(a, b, u, v));
        CHECK(c.koszul_tor(ModuleKind::Omega, u + v, {u + 1, v + 1}).dim == canonical_tor_dim(a, b, u, v));
      }
  }
}

TEST_CASE("Tor of Omega equals the small K Koszul module") {
  for (auto [a, b] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}})
    for (const FieldSpec f : {QQ, FieldSpec(5)}) {
      const Carpet c(CarpetInstance(a, b, f));
      for (int u = 0; u <= a - 1; ++u)
        for (int v = 0; v <= b - 1 && u + v <= 3; ++v) {
          const auto small = delta_instance(u, v, f);
          CHECK(c.koszul_tor(ModuleKind::Omega, u + v, {u + 1, v + 1}).dim ==
                w_dim(small, {a - 1 - u, b - 1 - v}).w_dim);
        }
    }
}

TEST_CASE("induced maps on Tor") {
  const Carpet c(CarpetInstance(2, 2, QQ));
  const TorMap m = c.tor_map_phi(1, {2, 1});
  CHECK(m.source_dim == 4);
  CHECK(m.target_dim == 4);
  CHECK(m.rank == 4);
  const TorMap g = c.tor_map_phi(0, {1, 1});
  CHECK(g.source_dim == 4);
  CHECK(g.target_dim == 3);
  CHECK(g.cokernel_dim() == 0);
  const TorMap empty = c.tor_map_phi(1, {2, 0});
  CHECK(empty.target_dim == 0);
  CHECK(empty.rank == 0);
}

TEST_CASE("genus 5 carpet") {
  for (const FieldSpec f : {QQ, FieldSpec(2), FieldSpec(3), FieldSpec(5)}) {
    const Carpet c(CarpetInstance(2, 2, f));
    CHECK(c.tor_A(1, {2, 0}) == 1);
    CHECK(c.tor_A(1, {1, 1}) == 1);
    CHECK(c.tor_A(1, {0, 2}) == 1);
    CHECK(c.tor_A_total(1, 3) == 0);
    const auto table = c.betti_table(1);
    REQUIRE(table.size() == 2);
    CHECK(table[0].j == 2);
    CHECK(table[0].dim == 3);
    CHECK(table[0].bigraded.size() == 3);
    CHECK(table[1].dim == 0);
    CHECK(c.tor_A(0, {0, 0}) == 1);
    CHECK(c.tor_A(1, {0, 0}) == 0);
  }
}

TEST_CASE("genus 7 carpet") {
  const Carpet q(CarpetInstance(3, 3, QQ));
  CHECK(q.tor_A_total(1, 3) == 0);
  CHECK(q.tor_A_total(2, 4) == 0);
  CHECK(q.tor_A_total(1, 2) == 10);
  CHECK(q.tor_A_total(2, 3) == 16);
  const Carpet two(CarpetInstance(3, 3, FieldSpec(2)));
  CHECK(two.tor_A_total(2, 4) > 0);
  CHECK_THROWS_AS(q.betti_table(6), RangeError);
}

TEST_CASE("carpet Tor against the Weyman module") {
  const Carpet c22(CarpetInstance(2, 2, QQ));
  const auto x = c22.cross_check_weyman(1, 0);
  CHECK(x.carpet == 0);
  CHECK(x.agree());
  const Carpet q(CarpetInstance(3, 3, QQ));
  CHECK(q.cross_check_weyman(1, 1).carpet == 0);
  CHECK(q.cross_check_weyman(1, 1).agree());
  const Carpet two(CarpetInstance(3, 3, FieldSpec(2)));
  const auto y = two.cross_check_weyman(1, 1);
  CHECK(y.agree());
  CHECK(y.carpet > 0);
  CHECK_THROWS_AS(c22.cross_check_weyman(2, 0), RangeError);
  for (auto [a, b] : {std::pair{2, 3}, std::pair{3, 2}})
    for (const FieldSpec f : {QQ, FieldSpec(3)}) {
      const Carpet c(CarpetInstance(a, b, f));
      for (int u = 0; u <= a - 1; ++u)
        for (int v = 0; v <= b - 1; ++v) CHECK(c.cross_check_weyman(u, v).agree());
    }
}

TEST_CASE("swapping a and b transposes the tables") {
  const Carpet ab(CarpetInstance(2, 3, FieldSpec(5)));
  const Carpet ba(CarpetInstance(3, 2, FieldSpec(5)));
  for (int i = 0; i <= 3; ++i)
    for (auto [d, e] : bidegrees_up_to(i + 2)) CHECK(ab.tor_A(i, {d, e}) == ba.tor_A(i, {e, d}));
}

TEST_CASE("Hilbert function of A") {
  const auto h33 = hilbert_A(3, 3, 4);
  CHECK(h33.dims == std::vector<std::uint64_t>{1, 8, 26, 56, 98});
  const auto h23 = hilbert_A(2, 3, 6);
  CHECK(h23.dims[1] == 7);
  CHECK(h23.numerator == std::vector<long long>{1, 4, 4, 1, 0, 0, 0});
  CHECK(hilbert_A(2, 2, 0).dims == std::vector<std::uint64_t>{1});
  CHECK_THROWS_AS(hilbert_A(2, 2, -1), InputError);
}

TEST_CASE("concurrent queries agree with serial ones") {
  const Carpet shared(CarpetInstance(3, 3, FieldSpec(7)));
  std::vector<std::size_t> results(4);
  std::vector<std::thread> workers;
  for (int t = 0; t < 4; ++t)
    workers.emplace_back([&, t] { results[static_cast<std::size_t>(t)] = shared.tor_A_total(1 + t % 2, 3 + t % 2); });
  for (auto& w : workers) w.join();
  const Carpet serial(CarpetInstance(3, 3, FieldSpec(7)));
  for (int t = 0; t < 4; ++t) CHECK(results[static_cast<std::size_t>(t)] == serial.tor_A_total(1 + t % 2, 3 + t % 2));
}
