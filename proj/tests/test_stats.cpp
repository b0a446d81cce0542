#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <random>

#include "doctest.h"
#include "mace/errors.hpp"
#include "mace/stats.hpp"

using namespace mace;

namespace {

EntropyCurve curve(std::size_t n, std::size_t lo, std::size_t hi, double (*f)(double), int horizon = 1) {
  EntropyCurve c;
  c.n = n;
  c.horizon = horizon;
  for (std::size_t t = lo; t <= hi; ++t) c.points[t] = f(static_cast<double>(t));
  return c;
}

double boost_two_sided(double t, double dof) {
  boost::math::students_t dist(dof);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

}  // namespace

TEST_SUITE("stats") {
  TEST_CASE("incomplete beta against boost") {
    for (double a : {0.5, 1.0, 2.5, 10.0, 150.0}) {
      for (double b : {0.5, 1.0, 3.0, 40.0}) {
        for (double x : {1e-6, 0.01, 0.2, 0.5, 0.77, 0.99, 0.999999}) {
          CAPTURE(a);
          CAPTURE(b);
          CAPTURE(x);
          const double ref = boost::math::ibeta(a, b, x);
          CHECK(std::abs(incomplete_beta(a, b, x) - ref) <= 1e-10 * std::max(ref, 1e-300) + 1e-15);
        }
      }
    }
    CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
    CHECK_THROWS_AS(incomplete_beta(0.0, 1.0, 0.5), ParameterError);
    CHECK_THROWS_AS(incomplete_beta(1.0, 1.0, 1.5), ParameterError);
  }

  TEST_CASE("student-t tail against boost and the dof=2 closed form") {
    for (double dof : {1.0, 2.0, 5.0, 29.0, 1000.0, 50000.0}) {
      for (double t : {0.0, 0.3, 1.0, 2.0, 3.4641, 8.0, 30.0}) {
        CAPTURE(dof);
        CAPTURE(t);
        const double ref = boost_two_sided(t, dof);
        CHECK(std::abs(student_t_two_sided(t, dof) - ref) <= 1e-10 * ref + 1e-300);
        CHECK(student_t_two_sided(-t, dof) == student_t_two_sided(t, dof));
      }
    }
    for (double t : {0.5, 1.5, 2.0 * std::sqrt(3.0), 12.0}) {
      CHECK(std::abs(student_t_two_sided(t, 2.0) - (1.0 - t / std::sqrt(2.0 + t * t))) < 1e-12);
    }
  }

  TEST_CASE("paired t-test examples") {
    const std::vector<double> d{1.0, 2.0, 3.0};
    const auto r = paired_t_test(d);
    CHECK(r.t_stat == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-14));
    CHECK(r.dof == 2);
    CHECK(r.p_value == doctest::Approx(1.0 - r.t_stat / std::sqrt(2.0 + r.t_stat * r.t_stat)).epsilon(1e-12));
    CHECK(r.p_value == doctest::Approx(0.0742).epsilon(1e-3));
    CHECK_FALSE(r.reject_at_5pct);

    const std::vector<double> zero(5, 0.0);
    CHECK(paired_t_test(zero).p_value == 1.0);
    const std::vector<double> constant(5, 0.3);
    const auto c = paired_t_test(constant);
    CHECK(c.p_value == 0.0);
    CHECK(c.reject_at_5pct);
    CHECK(std::isinf(c.t_stat));
    CHECK_THROWS_AS(paired_t_test(std::vector<double>{1.0}), DataError);
  }

  TEST_CASE("t symmetry and scale invariance") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal(0.2, 1.0);
    std::vector<double> a(40), b(40);
    for (auto& v : a) v = normal(rng);
    for (auto& v : b) v = normal(rng);
    PairedSample s{a, b, {}, 0, 0};
    PairedSample r{b, a, {}, 0, 0};
    const auto fwd = paired_t_test(s), rev = paired_t_test(r);
    CHECK(fwd.t_stat == doctest::Approx(-rev.t_stat).epsilon(1e-14));
    CHECK(fwd.p_value == doctest::Approx(rev.p_value).epsilon(1e-14));
    std::vector<double> diff(40), scaled(40);
    for (std::size_t i = 0; i < 40; ++i) {
      diff[i] = a[i] - b[i];
      scaled[i] = 7.5 * diff[i];
    }
    CHECK(paired_t_test(scaled).t_stat == doctest::Approx(paired_t_test(diff).t_stat).epsilon(1e-13));
  }

  TEST_CASE("log10 p survives underflow") {
    std::vector<double> d;
    for (int i = 0; i < 3000; ++i) d.push_back(1.0 + 0.01 * ((i * 7919) % 101 - 50) / 50.0);
    const auto r = paired_t_test(d);
    CHECK(r.p_value == 0.0);
    CHECK(std::isfinite(r.log10_p));
    CHECK(r.log10_p < -300.0);

    const std::vector<double> moderate{1.0, 1.2, 0.9, 1.1, 0.95, 1.05, 1.0, 1.02};
    const auto m = paired_t_test(moderate);
    CHECK(m.log10_p == doctest::Approx(std::log10(boost_two_sided(m.t_stat, 7.0))).epsilon(1e-10));
  }

  TEST_CASE("p-value calibration under the null") {
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::size_t rejected = 0;
    const std::size_t tests = 10'000;
    std::vector<double> d(25);
    for (std::size_t k = 0; k < tests; ++k) {
      for (auto& v : d) v = normal(rng);
      rejected += paired_t_test(d).reject_at_5pct ? 1 : 0;
    }
    const double rate = static_cast<double>(rejected) / tests;
    CHECK(rate > 0.04);
    CHECK(rate < 0.06);
  }

  TEST_CASE("align_curves") {
    const auto x = curve(200, 1, 100, [](double t) { return std::log(t); });
    CHECK(align_curves(x, x).size() == 100);
    const auto same = align_curves(x, x);
    for (std::size_t i = 0; i < same.size(); ++i) CHECK(same.a[i] - same.b[i] == 0.0);
    const auto y = curve(200, 50, 150, [](double t) { return std::sqrt(t); });
    const auto s = align_curves(x, y);
    CHECK(s.size() == 51);
    CHECK(s.dropped_a == 49);
    CHECK(s.dropped_b == 50);
    CHECK(s.keys.front() == CurveCoord{200, 50});
    CHECK(s.keys.back() == CurveCoord{200, 100});
    const auto z = curve(200, 101, 120, [](double t) { return t; });
    CHECK_THROWS_AS(align_curves(x, z), DataError);
    const auto other_n = curve(300, 1, 100, [](double t) { return t; });
    CHECK_THROWS_AS(align_curves(x, other_n), DataError);
    CHECK_THROWS_AS(align_curves(x, EntropyCurve{}), DataError);
  }

  TEST_CASE("ensemble median curves") {
    std::vector<std::vector<EntropyCurve>> members(3, std::vector<EntropyCurve>(1));
    for (std::size_t k = 0; k < 3; ++k) {
      members[k][0].n = 10;
      members[k][0].points = {{1, 1.0 + k}, {2, 5.0 - k}};
    }
    members[2][0].points[9] = 4.0;
    members[1][0].points[9] = 2.0;
    const auto med = ensemble_median_curves(members);
    CHECK(med[0].points.at(1) == 2.0);
    CHECK(med[0].points.at(2) == 4.0);
    CHECK(med[0].points.at(9) == 3.0);
  }

  TEST_CASE("ttest_table") {
    CurveFamilies fam;
    ReferenceFamilies ref;
    fam[{1, "b1"}] = {curve(10, 1, 30, [](double t) { return std::log(t) + 0.01 * std::sin(t); })};
    ref[1] = {curve(10, 1, 30, [](double t) { return std::log(t); })};
    const auto table = ttest_table(fam, ref);
    CHECK(table.horizons == std::vector<int>{1});
    CHECK(table.sets == std::vector<std::string>{"b1"});
    CHECK(table.cells.size() == 1);
    CHECK(table.at(1, "b1").pairs == 30);
    fam[{2, "b1"}] = fam[{1, "b1"}];
    CHECK_THROWS_AS(ttest_table(fam, ref), DataError);
  }
}
