#include <doctest.h>

#include <json.hpp>

#include "apsp/error.hpp"
#include "apsp/fw_core.hpp"
#include "apsp/graph_gen.hpp"
#include "apsp/oracle.hpp"
#include "test_support.hpp"

using namespace apsp;
using apsp_test::brute_force_apsp;
using apsp_test::kInf;
using apsp_test::matrix_from;

namespace {

DistanceMatrix seeded(std::size_t n, double density, std::uint64_t seed,
                      ElemType t = ElemType::F32) {
  GraphGenSpec s;
  s.n = n;
  s.density = density;
  s.seed = seed;
  s.elem_type = t;
  return generate(s);
}

}  // namespace

TEST_CASE_TEMPLATE("dijkstra_apsp: worked 3x3 instance", T, float, double) {
  const auto input = matrix_from<T>({{0, 5, kInf}, {kInf, 0, 2}, {1, kInf, 0}});
  const DistanceMatrix solved = dijkstra_apsp(DistanceMatrix(input));
  const auto expected = matrix_from<T>({{0, 5, 7}, {3, 0, 2}, {1, 6, 0}});
  CHECK(solved.as<T>() == expected);
  CHECK(brute_force_apsp(input) == expected);
}

TEST_CASE("dijkstra_apsp: empty graph and single vertex") {
  const DistanceMatrix empty = seeded(5, 0.0, 1);
  CHECK(bit_equal(dijkstra_apsp(empty), empty));

  const DistanceMatrix one = seeded(1, 0.5, 1);
  CHECK(dijkstra_apsp(one).at(0, 0) == 0.0);
}

TEST_CASE("dijkstra_apsp: rejects negative weights and nonzero diagonals") {
  CHECK_THROWS_AS(dijkstra_apsp(DistanceMatrix(matrix_from<double>({{0, 1}, {-2, 0}}))),
                  DomainError);
  CHECK_THROWS_AS(dijkstra_apsp(DistanceMatrix(matrix_from<double>({{1, 1}, {1, 1}}))),
                  DomainError);
}

TEST_CASE("dijkstra_apsp: agrees exactly with fw_naive on seeded instances") {
  for (const ElemType t : {ElemType::F32, ElemType::F64}) {
    for (const std::size_t n : {64UL, 128UL, 256UL}) {
      for (const double density : {0.05, 0.5}) {
        const DistanceMatrix input = seeded(n, density, 1000 + n, t);
        const NaiveResult fw = fw_naive(input);
        CHECK(bit_equal(dijkstra_apsp(input), fw.distances));
      }
    }
  }
  // top of the agreement range
  const DistanceMatrix big = seeded(512, 0.2, 1512);
  CHECK(bit_equal(dijkstra_apsp(big), fw_naive(big).distances));
}

TEST_CASE("reconstruct_path: worked instance, trivial pair, unreachable pair") {
  const auto input = matrix_from<float>({{0, 5, kInf}, {kInf, 0, 2}, {1, kInf, 0}});
  const DistanceMatrix original{DistanceMatrix(input)};
  const NaiveResult fw = fw_naive(original);

  const auto path = reconstruct_path(fw.predecessors, original, 0, 2);
  REQUIRE(path.has_value());
  CHECK(path->vertices == std::vector<std::int32_t>{0, 1, 2});
  CHECK(path->total_cost == 7.0);

  const auto self = reconstruct_path(fw.predecessors, original, 1, 1);
  REQUIRE(self.has_value());
  CHECK(self->vertices == std::vector<std::int32_t>{1});
  CHECK(self->total_cost == 0.0);

  const DistanceMatrix disconnected = seeded(4, 0.0, 1);
  const NaiveResult fw2 = fw_naive(disconnected);
  CHECK_FALSE(reconstruct_path(fw2.predecessors, disconnected, 0, 3).has_value());

  CHECK_THROWS_AS(reconstruct_path(fw.predecessors, original, 0, 7), DomainError);
}

TEST_CASE("reconstruct_path: malformed predecessor matrices are rejected") {
  SquareMatrix<float> m(3, 1.0f);
  for (std::size_t i = 0; i < 3; ++i) m(i, i) = 0.0f;
  const DistanceMatrix input{DistanceMatrix(std::move(m))};

  SUBCASE("expansion cycle") {
    PredecessorMatrix p(3, kNoVertex);
    p(0, 1) = 2;
    p(0, 2) = 1;  // (0,1) -> (0,2) -> (0,1) -> ...
    CHECK_THROWS_WITH_AS(reconstruct_path(p, input, 0, 1), doctest::Contains("cycle"),
                         VerifyError);
  }

  SUBCASE("self-referential entry") {
    PredecessorMatrix p(3, kNoVertex);
    p(0, 1) = 0;
    CHECK_THROWS_AS(reconstruct_path(p, input, 0, 1), VerifyError);
  }

  SUBCASE("entry pointing at a missing edge") {
    SquareMatrix<float> sparse(3, std::numeric_limits<float>::infinity());
    for (std::size_t i = 0; i < 3; ++i) sparse(i, i) = 0.0f;
    sparse(2, 1) = 1.0f;
    PredecessorMatrix p(3, kNoVertex);
    p(0, 1) = 2;  // requires edge (0,2), which does not exist
    CHECK_THROWS_WITH_AS(reconstruct_path(p, DistanceMatrix(std::move(sparse)), 0, 1),
                         doctest::Contains("missing edge"), VerifyError);
  }
}

TEST_CASE("verify_solution: passes on solver output") {
  const DistanceMatrix input = seeded(64, 0.4, 17);
  const NaiveResult fw = fw_naive(input);
  const VerificationReport report =
      verify_solution(input, fw.distances, fw.predecessors);
  CHECK(report.all_passed());
  REQUIRE(report.checks.size() == 4);
  for (const CheckResult& c : report.checks) {
    CHECK(c.passed);
    CHECK(c.checked > 0);
    CHECK(c.failures == 0);
  }
}

TEST_CASE("verify_solution: a corrupted entry is pinpointed") {
  const DistanceMatrix input = seeded(48, 0.5, 23);
  const NaiveResult fw = fw_naive(input);

  // lower one finite off-diagonal entry by 1
  DistanceMatrix corrupted = fw.distances;
  std::size_t ci = 0, cj = 0;
  auto& m = corrupted.as<float>();
  for (std::size_t i = 0; i < m.size() && ci == cj; ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i != j && m(i, j) < std::numeric_limits<float>::infinity()) {
        ci = i;
        cj = j;
        m(i, j) -= 1.0f;
        break;
      }
    }
  }
  REQUIRE(ci != cj);

  const VerificationReport report = verify_solution(input, corrupted, fw.predecessors);
  CHECK_FALSE(report.all_passed());
  const CheckResult& eq = report.checks.at(0);
  CHECK(eq.name == "distance_equality");
  CHECK_FALSE(eq.passed);
  CHECK(eq.failures == 1);
  REQUIRE(eq.samples.size() == 1);
  CHECK(eq.samples[0].i == static_cast<std::int64_t>(ci));
  CHECK(eq.samples[0].j == static_cast<std::int64_t>(cj));

  // the JSON rendering names the same entry
  const auto doc = nlohmann::json::parse(report.to_json_text());
  CHECK(doc.at("all_passed") == false);
  bool found = false;
  for (const auto& check : doc.at("checks")) {
    if (check.at("name") != "distance_equality") continue;
    for (const auto& site : check.at("sites")) {
      found |= site.at("i") == ci && site.at("j") == cj;
    }
  }
  CHECK(found);
}

TEST_CASE("verify_solution: empty graph passes with no reconstructable pairs") {
  const DistanceMatrix input = seeded(6, 0.0, 3);
  const NaiveResult fw = fw_naive(input);
  const VerificationReport report =
      verify_solution(input, fw.distances, fw.predecessors);
  CHECK(report.all_passed());
}

TEST_CASE("verify_solution: sampling kicks in past the exhaustive limit") {
  const DistanceMatrix input = seeded(40, 0.5, 29);
  const NaiveResult fw = fw_naive(input);
  VerifyOptions opts;
  opts.exhaustive_limit = 16;
  opts.path_samples = 500;
  const VerificationReport report =
      verify_solution(input, fw.distances, fw.predecessors, opts);
  CHECK(report.all_passed());
  CHECK(report.checks.at(1).checked == 500);
  CHECK(report.sample_seed == opts.sample_seed);
}

TEST_CASE("verify_solution: shape or type mismatch is an error") {
  const DistanceMatrix input = seeded(8, 0.5, 1);
  const NaiveResult fw = fw_naive(input);
  const DistanceMatrix small = seeded(4, 0.5, 1);
  CHECK_THROWS_AS(verify_solution(small, fw.distances, fw.predecessors), DomainError);
  const DistanceMatrix f64 = seeded(8, 0.5, 1, ElemType::F64);
  CHECK_THROWS_AS(verify_solution(f64, fw.distances, fw.predecessors), DomainError);
}

TEST_CASE("verification report renders text with a verdict") {
  const DistanceMatrix input = seeded(8, 0.5, 2);
  const NaiveResult fw = fw_naive(input);
  const std::string text = verify_solution(input, fw.distances, fw.predecessors).to_text();
  CHECK(text.find("distance_equality") != std::string::npos);
  CHECK(text.find("verification PASSED") != std::string::npos);
}
