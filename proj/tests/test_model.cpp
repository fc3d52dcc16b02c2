#include <random>

#include "doctest.h"
#include "qinv/model.hpp"
#include "testutil.hpp"

using namespace qinv;
using test::load_bundled;
using test::make_spec;

TEST_SUITE_BEGIN("model");

TEST_CASE("both bundled scenarios validate") {
  for (const char* name : {"low_traffic.json", "high_traffic.json"}) {
    const Scenario scenario = load_bundled(name);
    const ValidationResult result = validate_spec(scenario.spec);
    CAPTURE(name);
    for (const auto& violation : result.violations) CAPTURE(violation);
    CHECK(result.ok());
  }
}

TEST_CASE("bad generator row sum is a violation") {
  ModelSpec spec = make_spec({1.0, 2.0}, {3.0, 3.0}, {0.1, 0.1}, {1.0, 1.0},
                             {1.0, 1.0}, {{-1.0, 1.1}, {1.0, -1.0}}, 0, 2);
  const auto result = validate_spec(spec);
  REQUIRE_FALSE(result.ok());
  bool found = false;
  for (const auto& violation : result.violations)
    found |= violation.find("row sum nonzero") != std::string::npos;
  CHECK(found);
}

TEST_CASE("s must be strictly below S") {
  ModelSpec spec = make_spec({1.0}, {3.0}, {0.1}, {1.0}, {1.0}, {{0.0}}, 35, 35);
  const auto result = validate_spec(spec);
  REQUIRE_FALSE(result.ok());
  bool found = false;
  for (const auto& violation : result.violations)
    found |= violation.find("strictly less") != std::string::npos;
  CHECK(found);
}

TEST_CASE("negative and zero rates are violations") {
  ModelSpec spec = make_spec({0.0, 1.0}, {3.0, -1.0}, {0.1, 0.1}, {1.0, 1.0},
                             {1.0, 1.0}, {{-1.0, 1.0}, {1.0, -1.0}}, 0, 2);
  const auto result = validate_spec(spec);
  CHECK(result.violations.size() >= 2);
}

TEST_CASE("all-zero retrial rates rejected") {
  ModelSpec spec = make_spec({1.0}, {3.0}, {0.1}, {1.0}, {0.0}, {{0.0}}, 0, 2);
  const auto result = validate_spec(spec);
  REQUIRE_FALSE(result.ok());
  CHECK(result.violations.front().find("retrial") != std::string::npos);
}

TEST_CASE("reducible environment generator rejected") {
  ModelSpec spec = make_spec({1.0, 1.0}, {3.0, 3.0}, {0.1, 0.1}, {1.0, 1.0},
                             {1.0, 1.0}, {{0.0, 0.0}, {0.0, 0.0}}, 0, 2);
  const auto result = validate_spec(spec);
  REQUIRE_FALSE(result.ok());
  bool found = false;
  for (const auto& violation : result.violations)
    found |= violation.find("reducible") != std::string::npos;
  CHECK(found);
}

TEST_CASE("phase index mapping") {
  const PhaseIndex index({10, 35}, 7);
  CHECK(index.count() == 525);
  CHECK(index(11, ServerStatus::idle, 1) == 0);
  CHECK(index(35, ServerStatus::failed, 7) == 524);
  CHECK(index(12, ServerStatus::busy, 3) == 30);  // (1*3 + 1)*7 + 2
  CHECK(index.label(0) == "I11-idle-z1");
  CHECK(index.label(524) == "I35-failed-z7");
}

TEST_CASE("phase index is a bijection for random policies") {
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<int> s_dist(0, 20), span_dist(1, 12),
      m_dist(1, 9);
  for (int trial = 0; trial < 50; ++trial) {
    const int s = s_dist(rng);
    const InventoryPolicy policy{s, s + span_dist(rng)};
    const PhaseIndex index(policy, m_dist(rng));
    for (int k = 0; k < index.count(); ++k) {
      auto [inventory, status, env] = index.unindex(k);
      CHECK(index(inventory, status, env) == k);
    }
  }
}

TEST_CASE("phase index rejects out-of-range components") {
  const PhaseIndex index({10, 35}, 7);
  CHECK_THROWS_AS(index(10, ServerStatus::idle, 1), std::out_of_range);
  CHECK_THROWS_AS(index(36, ServerStatus::idle, 1), std::out_of_range);
  CHECK_THROWS_AS(index(11, ServerStatus::idle, 0), std::out_of_range);
  CHECK_THROWS_AS(index(11, ServerStatus::idle, 8), std::out_of_range);
  CHECK_THROWS_AS(index.unindex(525), std::out_of_range);
}

TEST_SUITE_END();
