#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "mlbiv/gamma.hpp"
#include "mlbiv/integral_reps.hpp"

using namespace mlbiv;
using std::numbers::pi;

namespace {

double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

Complex series(Complex x, Complex y, const Params& p) { return ml_two_var_series(x, y, p, 1e-15).value; }

Complex random_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  for (;;) {
    const Complex z(u(rng), u(rng));
    if (std::abs(z) <= radius) return z;
  }
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("residue terms by hand") {
  const double e = std::exp(1.0);
  CHECK(residue_x(1.0, 0.0, {1, 1, 1.0}).real() == doctest::Approx(e).epsilon(1e-15));
  CHECK(residue_x(4.0, 0.0, {2, 1, 1.0}).real() == doctest::Approx(e * e / 2).epsilon(1e-15));
  CHECK(residue_y(0.0, 1.0, {1, 1, 1.0}).real() == doctest::Approx(e).epsilon(1e-15));
  CHECK(residue_y(0.0, 1.0, {1, 2, 1.0}).real() == doctest::Approx(e / 2).epsilon(1e-15));

  CHECK(code_of([] { residue_x(4.0, 8.0, {2, 3, 1.0}); }) == ErrorCode::DegenerateDenominator);
  CHECK(code_of([] { residue_y(2.0, 2.0, {1, 1, 1.0}); }) == ErrorCode::DegenerateDenominator);
  CHECK(code_of([] { residue_x(0.0, 1.0, {1, 1, 1.0}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("residue_y mirrors residue_x") {
  const Params p{0.7, 1.3, {0.5, 0.2}};
  const Params q{1.3, 0.7, {0.5, 0.2}};
  const Complex x(1.5, -0.4), y(-0.3, 2.0);
  CHECK(residue_y(x, y, p) == residue_x(y, x, q));
}

TEST_CASE("eta interval") {
  auto [lo, hi] = eta_interval({0.9, 0.9, 1.0});
  CHECK(lo == doctest::Approx(0.405 * pi));
  CHECK(hi == doctest::Approx(0.81 * pi));
  std::tie(lo, hi) = eta_interval({1.8, 0.6, 1.0});
  CHECK(lo == doctest::Approx(0.54 * pi));
  CHECK(hi == doctest::Approx(0.6 * pi));
  std::tie(lo, hi) = eta_interval({1.3, 1.3, 1.0});
  CHECK(hi == doctest::Approx(pi));
  std::tie(lo, hi) = eta_interval({2.0, 0.5, 1.0});
  CHECK(lo == hi);
  CHECK(lo == doctest::Approx(0.5 * pi));
  CHECK(code_of([] { eta_interval({2.5, 0.5, 1.0}); }) == ErrorCode::ParameterOutOfRange);
  CHECK(code_of([] { eta_interval({1.5, 1.5, 1.0}); }) == ErrorCode::ParameterOutOfRange);
}

TEST_CASE("select_contour examples") {
  const Params p{0.9, 0.9, 1.0};
  const auto origin = select_contour(0.0, 0.0, p);
  CHECK(origin.rep_case == RepCase::BothLeft);
  CHECK(origin.base.eta == doctest::Approx(default_eta(p)));
  CHECK(origin.base.epsilon == 1.0);

  CHECK(select_contour(20.0, 30.0, p).rep_case == RepCase::BothRight);
  const auto neg = select_contour(-10.0, -10.0, p);
  CHECK(neg.rep_case == RepCase::BothLeft);
  CHECK(neg.eta_alpha < pi);

  CHECK(select_contour(5.0, -5.0, p).rep_case == RepCase::XRightYLeft);
  CHECK(select_contour(-5.0, 5.0, p).rep_case == RepCase::XLeftYRight);
}

TEST_CASE("selection invariants") {
  const Params p{0.8, 1.3, 1.0};
  const auto s = select_contour({1.0, 2.0}, {-0.5, 0.3}, p, {.epsilon = 0.7});
  CHECK(s.eps_alpha == doctest::Approx(std::pow(s.base.epsilon, 1 / 1.3)));
  CHECK(s.eps_beta == doctest::Approx(std::pow(s.base.epsilon, 1 / 0.8)));
  CHECK(s.eta_alpha == doctest::Approx(s.base.eta / 1.3));
  CHECK(s.eta_beta == doctest::Approx(s.base.eta / 0.8));
  const auto [lo, hi] = eta_interval(p);
  CHECK(s.base.eta > lo);
  CHECK(s.base.eta <= hi);
  CHECK(s.clearance >= kPreferredClearance);

  // Deterministic.
  const auto t = select_contour({1.0, 2.0}, {-0.5, 0.3}, p, {.epsilon = 0.7});
  CHECK(t.base.epsilon == s.base.epsilon);
  CHECK(t.base.eta == s.base.eta);
}

TEST_CASE("selection steps around a point on the default contour") {
  const Params p{0.9, 0.9, 1.0};
  const double eta = default_eta(p);
  const Complex x = std::polar(3.0, eta / 0.9);  // on the default x-path ray
  CHECK(code_of([&] { make_selection(x, 0.0, p, 1.0, eta); }) == ErrorCode::NoAdmissibleContour);
  const auto s = select_contour(x, 0.0, p);
  CHECK(s.base.eta != eta);
  CHECK(s.clearance >= kPreferredClearance);
}

TEST_CASE("make_selection validates eta") {
  const Params p{0.9, 0.9, 1.0};
  CHECK(code_of([&] { make_selection(1.0, 1.0, p, 1.0, 0.3 * pi); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { make_selection(1.0, 1.0, p, 1.0, 0.9 * pi); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { make_selection(1.0, 1.0, p, -1.0, 0.6 * pi); }) == ErrorCode::InvalidArgument);
  const double hi = eta_interval(p).second;
  CHECK(make_selection(2.0, 0.3, p, 1.0, hi).base.eta == hi);
}

TEST_CASE("degenerate residues are avoided or reported") {
  // alpha = beta, x = y right of the contour: both residues blow up, the
  // search moves to a contour with both points inside.
  const Params p{0.9, 0.9, 1.0};
  const auto s = select_contour(3.0, 3.0, p);
  CHECK(s.rep_case == RepCase::BothLeft);
  CHECK(code_of([&] { make_selection(3.0, 3.0, p, 1.0, default_eta(p)); }) == ErrorCode::DegenerateDenominator);
}

TEST_CASE("eval_contour examples") {
  CHECK(eval_contour(0.0, 0.0, {0.9, 0.9, 3.0}, 1e-9).value.real() == doctest::Approx(0.5).epsilon(1e-12));
  const Params p{0.9, 0.9, 1.0};
  CHECK(rel_err(eval_contour(1.0, 0.5, p, 1e-10).value, series(1.0, 0.5, p)) < 1e-8);
  const Params q{0.8, 0.9, 1.0};
  const auto r = eval_contour(3.0, 0.2, q, 1e-9);
  CHECK(rel_err(r.value, series(3.0, 0.2, q)) < 1e-7);
  CHECK(r.rep_case == RepCase::XRightYLeft);
  CHECK(r.error_estimate >= 0);
}

TEST_CASE("contour-parameter invariance, including case changes") {
  const Params p{0.8, 0.9, 1.0};
  const auto [lo, hi] = eta_interval(p);
  std::mt19937_64 rng(17);
  int case_changes = 0;
  for (int i = 0; i < 20; ++i) {
    const Complex x = random_point(rng, 3.0), y = random_point(rng, 3.0);
    const auto a = eval_contour(x, y, p, 1e-11, select_contour(x, y, p, {.epsilon = 0.3, .eta_fraction = 0.3}));
    const auto b = eval_contour(x, y, p, 1e-11, select_contour(x, y, p, {.epsilon = 4.0, .eta_fraction = 0.8}));
    CHECK(a.selection.base.epsilon != b.selection.base.epsilon);
    case_changes += a.rep_case != b.rep_case;
    INFO(x, y);
    CHECK(rel_err(a.value, b.value) < 2e-10);
  }
  CHECK(case_changes > 0);
  (void)lo;
  (void)hi;
}

TEST_CASE("residue continuity across the y-contour") {
  const Params p{0.9, 0.8, 1.0};
  const double eps = 1.0, eta = default_eta(p);
  const auto ref = make_selection(0.5, 0.0, p, eps, eta);
  for (double phi : {0.0, 0.4, -0.7}) {
    const Complex inside = std::polar(ref.eps_beta * (1 - 1e-3), phi);
    const Complex outside = std::polar(ref.eps_beta * (1 + 1e-3), phi);
    const auto a = eval_contour(0.5, inside, p, 1e-12, make_selection(0.5, inside, p, eps, eta));
    const auto b = eval_contour(0.5, outside, p, 1e-12, make_selection(0.5, outside, p, eps, eta));
    CHECK(a.rep_case == RepCase::BothLeft);
    CHECK(b.rep_case == RepCase::XLeftYRight);
    // The total is continuous; the jump sits entirely in the residue term.
    const Complex jump = b.value - a.value;
    const Complex smooth = series(0.5, outside, p) - series(0.5, inside, p);
    CHECK(std::abs(jump - smooth) <= 2e-11 * std::abs(a.value));
  }
}

TEST_CASE("series agreement on the validation grid") {
  std::mt19937_64 rng(23);
  const double ab[] = {0.6, 0.9, 1.3, 1.8};
  for (double a : ab)
    for (double b : ab) {
      if (a * b >= 2) continue;
      for (double mu : {0.5, 1.0, 2.0}) {
        const Params p{a, b, mu};
        for (int i = 0; i < 4; ++i) {
          const Complex x = random_point(rng, 4.0), y = random_point(rng, 4.0);
          const auto s = ml_two_var_series(x, y, p, 1e-15);
          if (s.diagnostics.cancellation_ratio > kCancellationLimit) continue;
          INFO(a, b, mu, x, y);
          CHECK(rel_err(eval_contour(x, y, p, 1e-11).value, s.value) < 1e-7);
        }
      }
    }
}

TEST_CASE("conjugate symmetry") {
  std::mt19937_64 rng(29);
  const Params p{0.7, 1.2, 1.5};
  for (int i = 0; i < 20; ++i) {
    const Complex x = random_point(rng, 4.0), y = random_point(rng, 4.0);
    const Complex a = eval_contour(std::conj(x), std::conj(y), p, 1e-12).value;
    const Complex b = std::conj(eval_contour(x, y, p, 1e-12).value);
    CHECK(std::abs(a - b) <= 1e-10 * std::abs(b));
  }
}

TEST_CASE("alpha = 2 limit") {
  const Params p{2.0, 1.0, 1.0};
  for (double x = 0.5; x <= 4.0; x += 0.25) {
    INFO(x);
    CHECK(rel_err(eval_contour_edge(x, 0.0, p, 1e-10).value, ml_one_var(x, 2.0, 1.0, 1e-15).value) < kEdgeTolerance);
  }
  CHECK(eval_contour_edge(0.0, 0.0, {2.0, 1.0, 2.0}, 1e-10).value.real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(code_of([] { eval_contour_edge(1.0, 1.0, {2.0, 1.0, -1.0}, 1e-8); }) == ErrorCode::ParameterOutOfRange);
  CHECK(code_of([] { eval_contour_edge(1.0, 1.0, {0.9, 1.0, 1.0}, 1e-8); }) == ErrorCode::ParameterOutOfRange);
  CHECK(code_of([] { eval_contour_edge(1.0, 1.0, {2.0, 1.5, 1.0}, 1e-8); }) == ErrorCode::ParameterOutOfRange);
}

TEST_CASE("alpha = 2 / beta = 2 limit against the series, both variables") {
  std::mt19937_64 rng(31);
  const Params ps[] = {{2.0, 0.5, 1.0}, {2.0, 1.0, {0.5, 0.5}}, {0.7, 2.0, 1.5}};
  for (const auto& p : ps)
    for (int i = 0; i < 8; ++i) {
      const Complex x = random_point(rng, 3.0), y = random_point(rng, 3.0);
      INFO(p.alpha, p.beta, x, y);
      CHECK(rel_err(eval_contour(x, y, p, 1e-10).value, series(x, y, p)) < kEdgeTolerance);
    }
}

TEST_CASE("hypothesis violations") {
  CHECK(code_of([] { eval_contour(1.0, 1.0, {2.5, 0.5, 1.0}, 1e-8); }) == ErrorCode::ParameterOutOfRange);
  try {
    eval_contour(1.0, 1.0, {2.5, 0.5, 1.0}, 1e-8);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("0 < alpha < 2") != std::string::npos);
  }
  CHECK(code_of([] { eval_contour(1.0, 1.0, {0.9, 0.9, 1.0}, 0.0); }) == ErrorCode::InvalidArgument);
}
