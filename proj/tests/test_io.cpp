#include "helpers.hpp"

#include "sstqp/generate.hpp"
#include "sstqp/io.hpp"
#include "sstqp/lift.hpp"
#include "sstqp/oracle.hpp"
#include "sstqp/report.hpp"
#include "sstqp/verify.hpp"

#include <doctest.h>

#include <cstring>

using namespace sstqp;
using namespace testing;

TEST_SUITE("io") {

TEST_CASE("instance round trip is bit identical") {
  std::mt19937_64 g(113);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 7;
    InstanceFile f{random_symmetric(g, n, true), 1 + trial % n, "case", 42u, -0.125};
    const InstanceFile back = parse_instance(dump_instance(f));
    REQUIRE(back.Q.n() == n);
    CHECK(std::memcmp(back.Q.dense().data(), f.Q.dense().data(), sizeof(double) * n * n) == 0);
    CHECK(back.rho == f.rho);
    CHECK(back.label == "case");
    CHECK(back.seed == f.seed);
    CHECK(back.known_value == f.known_value);
  }
}

TEST_CASE("instance parsing") {
  std::vector<std::string> warnings;
  const InstanceFile f = parse_instance(R"({"Q": [[1, 2], [2.5, 1]]})", &warnings);
  CHECK(warnings.size() == 1);
  CHECK(f.Q(0, 1) == doctest::Approx(2.25));
  warnings.clear();
  parse_instance(R"({"Q": [[1, 2], [2, 1]], "n": 2, "rho": 1})", &warnings);
  CHECK(warnings.empty());

  CHECK_THROWS_AS(parse_instance(R"({"n": 2})"), InvalidArgument);
  CHECK_THROWS_AS(parse_instance(R"({"Q": [[1, 2], [2, 1]], "n": 3})"), InvalidArgument);
  CHECK_THROWS_AS(parse_instance(R"({"Q": [[1, 2, 3], [2, 1, 0]]})"), InvalidArgument);
  CHECK_THROWS_AS(parse_instance(R"({"Q": [[1, "a"], [2, 1]]})"), InvalidArgument);
  CHECK_THROWS_AS(parse_instance(R"({"Q": [[1, 2], [2, 1]], "rho": 3})"), InvalidArgument);
  CHECK_THROWS_AS(parse_instance("{not json"), InvalidArgument);
}

TEST_CASE("witness round trip") {
  const ExtendedLiftedPoint p = witness_general_construct(Vector::Constant(3, 1.0 / 3), 2);
  int rho = 0;
  const ExtendedLiftedPoint q = parse_witness(dump_witness(p, 2), &rho);
  CHECK(rho == 2);
  CHECK(q.x == p.x);
  CHECK(q.u == p.u);
  CHECK(q.X.dense() == p.X.dense());
  CHECK(q.U.dense() == p.U.dense());
  CHECK(q.R == p.R);
  CHECK_THROWS_AS(parse_witness(R"({"x": [1]})"), InvalidArgument);
}

TEST_CASE("vector and list parsing") {
  CHECK(parse_vector("0.5,0.25, 0.25").isApprox(vec({0.5, 0.25, 0.25})));
  CHECK(parse_vector("[1, 0]").isApprox(vec({1, 0})));
  CHECK_THROWS_AS(parse_vector("1,x"), InvalidArgument);
  CHECK_THROWS_AS(parse_vector(""), InvalidArgument);
  CHECK(parse_int_list("3,1-2,2") == std::vector<int>{1, 2, 3});
  CHECK_THROWS_AS(parse_int_list("4-2"), InvalidArgument);
  CHECK_THROWS_AS(parse_int_list("a"), InvalidArgument);
}

TEST_CASE("generators are deterministic") {
  for (auto d : {Distribution::kUniform, Distribution::kGaussian}) {
    const auto a = generate_instance(4, d, std::nullopt, 7);
    const auto b = generate_instance(4, d, std::nullopt, 7);
    const auto c = generate_instance(4, d, std::nullopt, 8);
    CHECK(dump_instance(to_file(a)) == dump_instance(to_file(b)));
    CHECK(dump_instance(to_file(a)) != dump_instance(to_file(c)));
  }
  const auto g2 = generate_instance(2, Distribution::kGaussian, std::nullopt, 0);
  CHECK(g2.instance.Q.n() == 2);
  CHECK(g2.instance.Q(0, 1) == g2.instance.Q(1, 0));
  const auto u = generate_instance(5, Distribution::kUniform, std::nullopt, 3);
  CHECK(u.instance.Q.dense().minCoeff() >= 0.0);
  CHECK(u.instance.Q.dense().maxCoeff() < 1.0);
  CHECK_THROWS_AS(generate_instance(1, Distribution::kUniform, std::nullopt, 0), InvalidArgument);
  CHECK_THROWS_AS(generate_instance(4, Distribution::kStructured, std::nullopt, 0), InvalidArgument);
  CHECK_THROWS_AS(parse_distribution("cauchy"), InvalidArgument);
}

TEST_CASE("structured instances recover the planted value") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int n = 4 + static_cast<int>(seed % 4);
    const int rho = 1 + static_cast<int>(seed % n);
    const auto g = generate_instance(n, Distribution::kStructured, rho, seed);
    REQUIRE(g.certificate);
    REQUIRE(g.known_value);
    CHECK_NOTHROW(g.certificate->validate());
    CHECK(support_of(g.certificate->x).nu == rho);
    const double l = solve_sparse_stqp_exact(g.instance.Q, rho).value;
    CHECK(std::fabs(l - *g.known_value) <= 1e-6);
  }
  const auto g = generate_instance(6, Distribution::kStructured, 3, 1);
  CHECK(std::fabs(bound_chain(g.instance.Q)[2] - *g.known_value) <= 1e-6);
}

TEST_CASE("bounds table") {
  const auto rows = compute_bounds(SymMatrix::identity(4), {1, 2, 3, 4});
  REQUIRE(rows.size() == 4);
  for (int k = 0; k < 4; ++k) {
    REQUIRE(rows[k].ell_rho_oracle);
    CHECK(*rows[k].ell_rho_oracle == doctest::Approx(1.0 / (k + 1)));
    REQUIRE(rows[k].r2.value);
    CHECK(*rows[k].r2.value == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(rows[k].sandwich_ok == true);
  }

  const auto two = compute_bounds(sym({{1, -1}, {-1, 1}}), {2});
  REQUIRE(two.size() == 1);
  CHECK(*two[0].r1.value == doctest::Approx(-1.0).epsilon(1e-7));
  CHECK(std::fabs(*two[0].r2.value) <= 1e-6);
  CHECK(std::fabs(*two[0].r3.value) <= 1e-6);
  CHECK(std::fabs(*two[0].ell_rho_oracle) <= 1e-12);
  CHECK(two[0].r3_exact == true);

  const auto bad = compute_bounds(sym({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}), {1, 2, 3});
  for (const auto& r : bad) {
    CHECK(r.r2.text() == "unbounded");
    CHECK(r.sandwich_ok == true);
  }
  const std::string csv = bounds_to_csv(bad);
  CHECK(csv.find("unbounded") != std::string::npos);
  const std::string json = bounds_to_json(two);
  CHECK(json.find("\"r3_exact\": true") != std::string::npos);
  CHECK_THROWS_AS(compute_bounds(SymMatrix::identity(2), {3}), InvalidArgument);
}

TEST_CASE("bounds table without the oracle") {
  BoundsOptions o;
  o.oracle.cap = 2;
  const auto rows = compute_bounds(SymMatrix::identity(3), {1, 3}, o);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].ell_rho_oracle);
  CHECK_FALSE(rows[1].ell_rho_oracle);
  CHECK_FALSE(rows[1].r3_exact);
}

TEST_CASE("verify suite names") {
  CHECK_THROWS_AS(run_verify_suite("nope"), InvalidArgument);
  const auto r = run_verify_suite("rankone", 0);
  REQUIRE(r.size() == 1);
  CHECK(r[0].ok());
}

}
