#include <doctest.h>

#include <cmath>
#include <random>

#include "zrank/normal.hpp"

using zrank::erfc_cody;
using zrank::standard_normal_cdf;

namespace {

// Reference values computed before the build with mpmath at 40 decimal
// digits, cross-checked by direct Gauss-Legendre quadrature of the normal
// density.
struct RefPoint {
  double x;
  double value;
};

constexpr RefPoint kPhiRef[] = {
    {-8, 6.2209605742717841e-16},
    {-5, 2.8665157187919391e-7},
    {-3, 0.0013498980316300945},
    {-2.576, 0.0049975323157350184},
    {-2, 0.022750131948179207},
    {-1.96, 0.024997895148220434},
    {-1, 0.15865525393145705},
    {-0.5, 0.3085375387259869},
    {-0.1, 0.46017216272297102},
    {0.5, 0.6914624612740131},
    {1, 0.84134474606854295},
    {1.5, 0.93319279873114193},
    {1.96, 0.97500210485177957},
    {2, 0.97724986805182079},
    {2.326, 0.98999072465913233},
    {2.576, 0.99500246768426498},
    {3, 0.99865010196836991},
    {4, 0.99996832875816688},
    {5, 0.99999971334842812},
    {8, 0.99999999999999938},
};

constexpr RefPoint kErfcRef[] = {
    {-2, 1.9953222650189527},
    {-1, 1.8427007929497149},
    {-0.25, 1.2763263901682369},
    {0.25, 0.72367360983176307},
    {0.5, 0.47950012218695346},
    {1, 0.15729920705028513},
    {2, 0.0046777349810472658},
    {4.5, 1.9661604415428875e-10},
    {10, 2.0884875837625448e-45},
    {26, 5.6631924088561428e-296},
};

}  // namespace

TEST_CASE("erfc matches the high-precision reference grid") {
  CHECK(erfc_cody(0.0) == 1.0);
  for (const auto& ref : kErfcRef) {
    const double got = erfc_cody(ref.x);
    CHECK(std::fabs(got - ref.value) <= 1e-12);
    CHECK(std::fabs(got / ref.value - 1.0) <= 1e-13);  // tails need relative accuracy
  }
}

TEST_CASE("erfc extremes") {
  CHECK(erfc_cody(27.0) == 0.0);  // below the double underflow horizon
  CHECK(erfc_cody(-27.0) == 2.0);
  CHECK(erfc_cody(1e9) == 0.0);
}

TEST_CASE("Phi matches the high-precision reference grid") {
  CHECK(standard_normal_cdf(0.0) == 0.5);  // exact, not just close
  for (const auto& ref : kPhiRef) {
    const double got = standard_normal_cdf(ref.x);
    CHECK(std::fabs(got - ref.value) <= 1e-12);
    if (ref.value < 0.5) {
      CHECK(std::fabs(got / ref.value - 1.0) <= 1e-13);
    }
  }
}

TEST_CASE("Phi symmetry: Phi(x) + Phi(-x) == 1 within 1e-12") {
  std::mt19937_64 gen(20260808);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int i = 0; i < 10000; ++i) {
    const double x = dist(gen);
    CHECK(std::fabs(standard_normal_cdf(x) + standard_normal_cdf(-x) - 1.0) <= 1e-12);
  }
}

TEST_CASE("Phi is monotone non-decreasing") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> dist(-12.0, 12.0);
  for (int i = 0; i < 10000; ++i) {
    double a = dist(gen);
    double b = dist(gen);
    if (a > b) std::swap(a, b);
    CHECK(standard_normal_cdf(a) <= standard_normal_cdf(b));
  }
}

TEST_CASE("Phi saturates sanely far out") {
  CHECK(standard_normal_cdf(-40.0) == 0.0);
  CHECK(standard_normal_cdf(40.0) == 1.0);
  CHECK(standard_normal_cdf(-37.0) > 0.0);  // still a genuine subnormal-free tail value
}
