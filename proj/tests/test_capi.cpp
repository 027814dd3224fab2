#include <catch_amalgamated.hpp>

#include <string>
#include <thread>
#include <vector>

#include "koszul/koszul.h"

TEST_CASE("status codes and error messages") {
  kz_instance* inst = nullptr;
  CHECK(kz_instance_random(3, 3, 8, 4, 1, &inst) == KZ_INPUT_ERROR);
  CHECK(inst == nullptr);
  CHECK(std::string(kz_last_error()).size() > 0);
  CHECK(kz_instance_random(3, 3, 8, 0, 1, nullptr) == KZ_NULL_ARGUMENT);
  CHECK(kz_instance_parse("2 2 0 1\n1 2 3\n", &inst) == KZ_INPUT_ERROR);

  kz_closed_form cf;
  CHECK(kz_closed_form_chi(3, 3, 5, 0, &cf) == KZ_RANGE_ERROR);
  CHECK(std::string(kz_status_name(KZ_BUDGET_EXCEEDED)) == "budget exceeded");

  kz_carpet* c = nullptr;
  CHECK(kz_carpet_new(0, 2, 0, &c) == KZ_INPUT_ERROR);
  REQUIRE(kz_carpet_new(2, 2, 0, &c) == KZ_OK);
  size_t x = 0, y = 0;
  CHECK(kz_carpet_cross_check_weyman(c, 2, 0, &x, &y) == KZ_RANGE_ERROR);
  CHECK(kz_carpet_tor(c, static_cast<kz_module>(9), 0, 0, 0, &x) == KZ_INPUT_ERROR);
  kz_carpet_free(c);

  REQUIRE(kz_instance_random(4, 4, 12, 101, 1, &inst) == KZ_OK);
  kz_secant s;
  CHECK(kz_secant_condition(inst, 1000, &s) == KZ_BUDGET_EXCEEDED);
  kz_instance_free(inst);
}

TEST_CASE("Koszul module queries") {
  kz_instance* inst = nullptr;
  REQUIRE(kz_instance_random(3, 3, 8, 0, 1, &inst) == KZ_OK);
  kz_instance_info info;
  REQUIRE(kz_instance_get_info(inst, &info) == KZ_OK);
  CHECK(info.n1 == 3);
  CHECK(info.m == 8);
  CHECK(info.characteristic == 0);

  kz_cell cell;
  REQUIRE(kz_w_dim(inst, 0, 0, &cell) == KZ_OK);
  CHECK(static_cast<long long>(cell.w_dim) == cell.chi);
  CHECK(cell.w_dim == 1);
  REQUIRE(kz_w_dim(inst, 1, 1, &cell) == KZ_OK);
  CHECK(cell.w_dim == 0);
  kz_vanishing v;
  REQUIRE(kz_vanishing_check(inst, &v) == KZ_OK);
  CHECK(v.corner_zero == 1);
  CHECK(v.corner_d == 1);
  kz_instance_free(inst);

  REQUIRE(kz_instance_parse("2 2 3 1\n1 0 0 1\n", &inst) == KZ_OK);
  REQUIRE(kz_instance_get_info(inst, &info) == KZ_OK);
  CHECK(info.characteristic == 3);
  CHECK(info.m == 1);
  kz_instance_free(inst);

  REQUIRE(kz_instance_trace_kernel(3, 3, &inst) == KZ_OK);
  kz_secant s;
  REQUIRE(kz_secant_condition(inst, 10'000'000, &s) == KZ_OK);
  CHECK(s.holds == 1);
  kz_instance_free(inst);

  REQUIRE(kz_instance_rank_one_perp(3, 3, 3, &inst) == KZ_OK);
  REQUIRE(kz_secant_condition(inst, 10'000'000, &s) == KZ_OK);
  CHECK(s.holds == 0);
  CHECK(s.has_min_rank == 1);
  CHECK(s.min_rank == 1);
  kz_instance_free(inst);

  kz_closed_form cf;
  REQUIRE(kz_closed_form_chi(2, 2, 0, 0, &cf) == KZ_OK);
  CHECK(cf.euler_chi == 0);
  CHECK(cf.anomaly == 0);
}

TEST_CASE("Weyman module queries") {
  size_t dim = 7;
  REQUIRE(kz_weyman_dim(1, 1, 0, 1, 1, &dim) == KZ_OK);
  CHECK(dim == 0);
  int applies = 0;
  REQUIRE(kz_weyman_theorem_applies(2, 2, 2, &applies) == KZ_OK);
  CHECK(applies == 0);
  REQUIRE(kz_weyman_theorem_applies(2, 2, 5, &applies) == KZ_OK);
  CHECK(applies == 1);

  kz_instance* inst = nullptr;
  REQUIRE(kz_instance_weyman(1, 2, 0, &inst) == KZ_OK);
  kz_instance_info info;
  REQUIRE(kz_instance_get_info(inst, &info) == KZ_OK);
  CHECK(info.n1 == 3);
  CHECK(info.n2 == 4);
  CHECK(info.m == 10);
  kz_instance_free(inst);
  REQUIRE(kz_instance_delta(1, 2, 0, &inst) == KZ_OK);
  REQUIRE(kz_instance_get_info(inst, &info) == KZ_OK);
  CHECK(info.m == 6);
  kz_instance_free(inst);
}

TEST_CASE("carpet queries") {
  kz_carpet* c = nullptr;
  REQUIRE(kz_carpet_new(2, 2, 0, &c) == KZ_OK);
  size_t v = 0;
  REQUIRE(kz_carpet_tor_A_total(c, 1, 2, &v) == KZ_OK);
  CHECK(v == 3);
  REQUIRE(kz_carpet_tor_A_total(c, 1, 3, &v) == KZ_OK);
  CHECK(v == 0);
  REQUIRE(kz_carpet_tor_A(c, 1, 1, 1, &v) == KZ_OK);
  CHECK(v == 1);
  REQUIRE(kz_carpet_tor_total(c, KZ_MODULE_B, 1, 2, &v) == KZ_OK);
  CHECK(v == 6);
  REQUIRE(kz_carpet_tor(c, KZ_MODULE_R, 1, 1, 0, &v) == KZ_OK);
  CHECK(v == 0);
  size_t x = 0, y = 0;
  REQUIRE(kz_carpet_cross_check_weyman(c, 1, 0, &x, &y) == KZ_OK);
  CHECK(x == y);
  kz_carpet_free(c);

  std::vector<uint64_t> dims(5);
  std::vector<long long> num(5);
  REQUIRE(kz_hilbert_A(3, 3, 4, dims.data(), num.data()) == KZ_OK);
  CHECK(dims == std::vector<uint64_t>{1, 8, 26, 56, 98});
  CHECK(num == std::vector<long long>{1, 5, 5, 1, 0});
}

TEST_CASE("concurrent queries on one carpet") {
  kz_carpet* c = nullptr;
  REQUIRE(kz_carpet_new(3, 3, 2, &c) == KZ_OK);
  std::vector<size_t> got(4, 99);
  std::vector<kz_status> status(4, KZ_INTERNAL_ERROR);
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&, t] { status[t] = kz_carpet_tor_A(c, 2, 2, 2, &got[t]); });
  for (auto& th : pool) th.join();
  for (int t = 0; t < 4; ++t) {
    CHECK(status[t] == KZ_OK);
    CHECK(got[t] == 3);
  }
  kz_carpet_free(c);
}

TEST_CASE("acceptance criteria through the C interface") {
  CHECK(kz_acceptance_count() == 11);
  kz_criterion* r = nullptr;
  CHECK(kz_acceptance_run(0, 1000, &r) == KZ_RANGE_ERROR);
  REQUIRE(kz_acceptance_run(11, 10'000'000, &r) == KZ_OK);
  CHECK(kz_criterion_passed(r) == 1);
  CHECK(kz_criterion_checks(r) > 0);
  CHECK(kz_criterion_failure_count(r) == 0);
  CHECK(kz_criterion_failure(r, 0) == nullptr);
  CHECK(std::string(kz_criterion_title(r)).find("genus 5") != std::string::npos);
  kz_criterion_free(r);
}
