#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "mace/cluster_entropy.hpp"
#include "mace/errors.hpp"
#include "mace/series_gen.hpp"
#include "support.hpp"

using namespace mace;

namespace {

double fit_h(const std::vector<double>& path, std::size_t n) {
  return fit_power_law(cluster_pdf(cluster_histogram(path, n), n)).H;
}

struct Pool {
  double sum = 0.0;
  std::size_t count = 0;
  void add(const EntropyCurve& c, std::size_t lo, std::size_t hi) {
    for (auto it = c.points.lower_bound(lo); it != c.points.end() && it->first <= hi; ++it, ++count) sum += it->second;
  }
  [[nodiscard]] double mean() const { return sum / static_cast<double>(count); }
};

}  // namespace

TEST_SUITE("cluster-entropy") {
  TEST_CASE("cluster_pdf") {
    const auto one = cluster_pdf({{1, 3}}, 10);
    CHECK(one.probs == std::map<std::size_t, double>{{1, 1.0}});
    CHECK(one.total == 3);
    const auto two = cluster_pdf({{4, 1}, {7, 1}}, 10);
    CHECK(two.probs.at(4) == 0.5);
    CHECK(two.probs.at(7) == 0.5);
    CHECK_THROWS_AS(cluster_pdf({}, 10), DataError);
  }

  TEST_CASE("pdf normalization on random histograms") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 500; ++trial) {
      ClusterHistogram hist;
      const int bins = 1 + static_cast<int>(rng() % 400);
      for (int b = 0; b < bins; ++b) hist[1 + rng() % 5000] += 1 + rng() % 100000;
      const auto pdf = cluster_pdf(hist, 100);
      long double sum = 0.0L;
      for (const auto& [tau, p] : pdf.probs) sum += p;
      REQUIRE(std::abs(static_cast<double>(sum) - 1.0) < 1e-12);
    }
  }

  TEST_CASE("entropy limit cases") {
    const auto single = entropy_curve(cluster_pdf({{17, 12345}}, 50));
    CHECK(single.points.at(17) == 0.0);
    for (std::size_t k : {2, 3, 7, 10, 64, 1000}) {
      ClusterHistogram hist;
      for (std::size_t t = 1; t <= k; ++t) hist[t * 3] = 11;
      const auto curve = entropy_curve(cluster_pdf(hist, 20));
      for (const auto& [tau, s] : curve.points) CHECK(s == std::log(static_cast<double>(k)));
    }
    const auto e = entropy_curve(ClusterPdf::from_probabilities({{1, 1.0 / std::exp(1.0)}, {2, 1.0 - 1.0 / std::exp(1.0)}}, 5));
    CHECK(e.points.at(1) == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("entropy is non-negative and zero only for full mass") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
      ClusterHistogram hist;
      for (int b = 0; b < 2 + static_cast<int>(rng() % 50); ++b) hist[1 + rng() % 300] += 1 + rng() % 1000;
      for (const auto& [tau, s] : entropy_curve(cluster_pdf(hist, 10)).points) {
        CHECK(s >= 0.0);
        if (hist.size() > 1) CHECK(s > 0.0);
      }
    }
  }

  TEST_CASE("mdi") {
    EntropyCurve single;
    single.n = 10;
    single.points = {{1, 0.0}};
    CHECK(mdi(single) == MdiValue{0.0, 0.0, 0.0});
    EntropyCurve two;
    two.n = 10;
    two.points = {{2, 0.7}, {13, 1.2}};
    const auto v = mdi(two);
    CHECK(v.total == doctest::Approx(1.9));
    CHECK(v.power_law == 0.7);
    CHECK(v.linear == 1.2);
    EntropyCurve boundary;
    boundary.n = 10;
    boundary.points = {{9, 1.0}, {10, 2.0}};
    CHECK(mdi(boundary).power_law == 1.0);
    CHECK(mdi(boundary).linear == 2.0);
    CHECK_THROWS_AS(mdi(EntropyCurve{}), DataError);
  }

  TEST_CASE("mdi split is exactly additive") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 12.0);
    for (int trial = 0; trial < 1000; ++trial) {
      EntropyCurve c;
      c.n = 2 + rng() % 100;
      for (int k = 0; k < 1 + static_cast<int>(rng() % 300); ++k) c.points[1 + rng() % 1000] = u(rng);
      const auto v = mdi(c);
      REQUIRE(v.total == v.power_law + v.linear);
    }
  }

  TEST_CASE("power-law fit on an exact power law") {
    std::map<std::size_t, double> w;
    for (std::size_t t = 1; t <= 50; ++t) w[t] = std::pow(static_cast<double>(t), -1.5);
    const auto fit = fit_power_law(ClusterPdf::from_probabilities(w, 100), {1, 50});
    CHECK(std::abs(fit.D - 1.5) < 1e-6);
    CHECK(std::abs(fit.H - 0.5) < 1e-6);
    CHECK(fit.distinct_tau == 50);

    std::map<std::size_t, double> w2;
    for (std::size_t t = 1; t <= 5000; ++t) w2[t] = std::pow(static_cast<double>(t), -1.2);
    CHECK(std::abs(fit_power_law(ClusterPdf::from_probabilities(w2, 10000)).D - 1.2) < 1e-6);
  }

  TEST_CASE("power-law fit needs support") {
    std::map<std::size_t, double> w{{5, 1.0}, {6, 1.0}, {7, 1.0}, {8, 1.0}};
    CHECK_THROWS_AS(fit_power_law(ClusterPdf::from_probabilities(w, 1000)), DataError);
    CHECK_THROWS_AS(fit_power_law(ClusterPdf::from_probabilities(w, 20)), DataError);
  }

  TEST_CASE("fbm H=0.8 fit at n=500") {
    std::vector<double> hs;
    for (std::uint64_t s = 0; s < 9; ++s) hs.push_back(fit_h(gen_fbm({0.8, 1 << 17, 500 + s}).path.values, 500));
    CHECK(std::abs(testsupport::median(hs) - 0.8) < 0.1);
  }

  TEST_CASE("shuffling increments destroys long memory") {
    std::vector<double> original, shuffled;
    std::mt19937_64 rng(77);
    for (std::uint64_t s = 0; s < 7; ++s) {
      const auto path = gen_fbm({0.8, 1 << 17, 600 + s}).path.values;
      original.push_back(fit_h(path, 1000));
      std::vector<double> inc;
      for (std::size_t i = 1; i < path.size(); ++i) inc.push_back(path[i] - path[i - 1]);
      const double drift = testsupport::mean(inc);
      for (double& v : inc) v -= drift;
      std::shuffle(inc.begin(), inc.end(), rng);
      shuffled.push_back(fit_h(integrate(TimeSeries(inc)).values, 1000));
    }
    CHECK(testsupport::median(original) > 0.7);
    CHECK(std::abs(testsupport::median(shuffled) - 0.5) < 0.1);
  }

  TEST_CASE("window ordering for fbm H=0.5") {
    const std::vector<std::size_t> windows{30, 100, 300};
    std::vector<Pool> small(3);
    std::vector<Pool> lower(2), upper(2);  // pair (w-1, w) on tau in [n_w, 3 n_w]
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto path = gen_fbm({0.5, 1 << 17, 800 + s}).path.values;
      for (std::size_t w = 0; w < 3; ++w) {
        const auto c = entropy_curve(path, windows[w]);
        small[w].add(c, 1, 5);
        if (w + 1 < 3) lower[w].add(c, windows[w + 1], 3 * windows[w + 1]);
        if (w > 0) upper[w - 1].add(c, windows[w], 3 * windows[w]);
      }
    }
    for (std::size_t w = 1; w < 3; ++w) {
      CHECK(std::abs(small[w].mean() - small[0].mean()) < 0.1);
      CAPTURE(windows[w]);
      REQUIRE(lower[w - 1].count > 0);
      CHECK(lower[w - 1].mean() >= upper[w - 1].mean());
    }
  }

  TEST_CASE("curve from a series without clusters is empty") {
    std::vector<double> ramp(100);
    std::iota(ramp.begin(), ramp.end(), 0.0);
    const auto c = entropy_curve(ramp, 5, {}, 3);
    CHECK(c.empty());
    CHECK(c.n == 5);
    CHECK(c.horizon == 3);
  }
}
