#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <random>

#include "mlbiv/evaluator.hpp"
#include "mlbiv/gamma.hpp"
#include "mlbiv/sweep.hpp"

using namespace mlbiv;

namespace {

Complex random_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  for (;;) {
    const Complex z(u(rng), u(rng));
    if (std::abs(z) <= radius) return z;
  }
}

bool has_prefix(const std::vector<std::string>& ws, const std::string& prefix) {
  for (const auto& w : ws)
    if (w.rfind(prefix, 0) == 0) return true;
  return false;
}

}  // namespace

TEST_CASE("dispatch examples") {
  const auto small = evaluate(0.5, 0.5, {0.9, 0.9, 1.0});
  CHECK(small.method == Method::Series);
  CHECK(small.region.empty());
  CHECK(small.series.has_value());

  const auto far = evaluate(-80.0, -90.0, {0.9, 0.7, 1.0});
  CHECK(far.method == Method::Asymptotic);
  CHECK(far.region == "case4");
  CHECK(far.orders.has_value());

  const auto mid = evaluate(12.0, -15.0, {0.9, 0.7, 1.0});
  CHECK(mid.method == Method::Contour);
  CHECK(mid.contour.has_value());
}

TEST_CASE("forced contour outside its hypotheses") {
  try {
    evaluate(1.0, 1.0, {2.5, 0.5, 1.0}, {.method = Method::Contour});
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AllMethodsFailed);
    CHECK(std::string(e.what()).find("0 < alpha < 2") != std::string::npos);
  }
  // Auto still has the series.
  const auto r = evaluate(1.0, 1.0, {2.5, 0.5, 1.0});
  CHECK(r.method == Method::Series);
}

TEST_CASE("nothing applicable: all causes are listed") {
  // Far outside the series range, parameters outside every other method.
  try {
    evaluate(1e6, 1e6, {0.1, 3.0, 1.0});
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AllMethodsFailed);
    const std::string msg = e.what();
    CHECK(msg.find("series") != std::string::npos);
    CHECK(msg.find("contour") != std::string::npos);
  }
}

TEST_CASE("anchors across methods") {
  for (Complex mu : {Complex(0.5), Complex(1.0), Complex(2.0), Complex(3.0), Complex(1.0, 2.0)}) {
    const Params p{0.9, 0.8, mu};
    const Complex want = recip_gamma(mu);
    for (Method m : {Method::Auto, Method::Series, Method::Contour}) {
      const auto r = evaluate(0.0, 0.0, p, {.method = m, .tol = 1e-14});
      CHECK(std::abs(r.value - want) <= 1e-13);
    }
  }
}

TEST_CASE("fallback soundness") {
  // Series attempted first, rejected for cancellation; the record shows it.
  const auto r = evaluate(-7.5, -7.9, {0.5, 0.5, 1.0}, {.tol = 1e-10});
  REQUIRE(r.attempts.size() >= 2);
  CHECK(r.attempts.front().method == Method::Series);
  CHECK_FALSE(r.attempts.front().met_tolerance);
  CHECK(r.method == Method::Contour);
  CHECK(meets_tolerance(r.value, r.error_estimate, 1e-10));

  // Whenever the first auto choice misses tol, another method was tried.
  std::mt19937_64 rng(41);
  for (int i = 0; i < 40; ++i) {
    const Complex x = random_point(rng, 60.0), y = random_point(rng, 60.0);
    const auto e = evaluate(x, y, {0.8, 0.9, 1.0});
    if (!e.attempts.front().met_tolerance) CHECK(e.attempts.size() >= 2);
  }
}

TEST_CASE("degenerate residues fall back to the series") {
  const auto r = evaluate(40.0, 40.0, {0.9, 0.9, 1.0}, {.r_series = 0, .r_asym = 30});
  CHECK(r.attempts.front().method == Method::Asymptotic);
  CHECK(r.attempts.front().cause.find("degenerate") != std::string::npos);
  CHECK(std::isfinite(r.value.real()));
}

TEST_CASE("best value with a warning when nothing meets tol") {
  const auto r = evaluate(2.0, 1.0, {0.9, 0.8, 1.0}, {.method = Method::Asymptotic, .tol = 1e-12});
  CHECK(r.method == Method::Asymptotic);
  CHECK(has_prefix(r.warnings, "tolerance-not-met"));
  CHECK(has_prefix(r.warnings, "validity-floor"));
}

TEST_CASE("dispatch determinism") {
  const Complex x(3.0, 17.0), y(-22.0, 1.0);
  const Params p{0.7, 1.1, {1.0, 0.5}};
  const auto a = evaluate(x, y, p), b = evaluate(x, y, p);
  CHECK(a.method == b.method);
  CHECK(std::memcmp(&a.value, &b.value, sizeof a.value) == 0);
}

TEST_CASE("envelope honesty: series vs contour") {
  std::mt19937_64 rng(43);
  int honest = 0, total = 0;
  const Params ps[] = {{0.6, 1.3, 0.5}, {0.9, 0.9, 1.0}, {1.8, 0.6, 2.0}};
  for (const auto& p : ps)
    for (int i = 0; i < 30; ++i) {
      const Complex x = random_point(rng, 4.0), y = random_point(rng, 4.0);
      const auto s = evaluate(x, y, p, {.method = Method::Series, .tol = 1e-12});
      const auto c = evaluate(x, y, p, {.method = Method::Contour, .tol = 1e-12});
      ++total;
      honest += std::abs(s.value - c.value) <= s.error_estimate + c.error_estimate;
    }
  CHECK(honest >= 0.95 * total);
}

TEST_CASE("method names") {
  CHECK(parse_method("asym") == Method::Asymptotic);
  CHECK(parse_method("asymptotic") == Method::Asymptotic);
  CHECK(std::string(to_string(parse_method("contour"))) == "contour");
  CHECK_THROWS_AS(parse_method("fast"), Error);
  CHECK_THROWS_AS(evaluate(1.0, 1.0, {0.9, 0.9, 1.0}, {.tol = -1}), Error);
}

TEST_CASE("cross_validate") {
  SweepSpec grid;
  grid.x = {0.5, 3.0, 3};
  grid.y = {0.5, 3.0, 3};
  const auto rep = cross_validate(grid, {0.9, 0.9, 1.0}, 1e-10);
  CHECK(rep.points.size() == 9);
  CHECK(rep.pass);
  CHECK(rep.max_rel_deviation <= 1e-7);
  CHECK(rep.pairs_compared >= 9);
  CHECK(rep.median_rel_deviation <= rep.max_rel_deviation);

  SweepSpec origin;
  const auto o = cross_validate(origin, {0.9, 0.9, 2.0}, 1e-12);
  REQUIRE(o.points.size() == 1);
  for (Complex v : o.points[0].values) CHECK(std::abs(v - 1.0) < 1e-14);

  // Only the series qualifies here: the point is recorded, not failed.
  SweepSpec lonely;
  lonely.x = {1.0, 1.0, 1};
  lonely.y = {1.0, 1.0, 1};
  const auto l = cross_validate(lonely, {2.5, 0.5, 1.0}, 1e-10);
  CHECK(l.points[0].status == "no-pair");
  CHECK(l.pass);
}
