#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "lscsvm/errors.hpp"
#include "lscsvm/kernel.hpp"
#include "lscsvm/log.hpp"
#include "lscsvm/random.hpp"
#include "oracles.hpp"

using namespace lscsvm;

namespace {

PointMatrix points(std::initializer_list<std::initializer_list<double>> rows) {
  PointMatrix p(static_cast<Eigen::Index>(rows.size()),
                static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) p(i, j++) = v;
    ++i;
  }
  return p;
}

PointMatrix random_points(Rng& rng, int n, int d, double lo, double hi) {
  PointMatrix p(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) p(i, j) = rng.uniform(lo, hi);
  return p;
}

}  // namespace

TEST_CASE("eval_kernel matches the closed forms") {
  const std::vector<double> zero{0.0, 0.0}, e1{1.0, 0.0}, ones{1.0, 1.0};
  const KernelSpec g1{KernelFamily::gaussian, 1.0};
  const KernelSpec m2{KernelFamily::matern1, 2.0};
  CHECK(eval_kernel(g1, zero, zero) == 1.0);
  CHECK(eval_kernel(g1, zero, e1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(eval_kernel(g1, zero, e1) == doctest::Approx(0.367879).epsilon(1e-6));
  CHECK(eval_kernel(m2, ones, zero) == doctest::Approx(std::exp(-4.0)).epsilon(1e-15));
  CHECK(eval_kernel(m2, ones, zero) == doctest::Approx(0.018316).epsilon(1e-5));
}

TEST_CASE("eval_kernel rejects mismatched dimensions") {
  const std::vector<double> a{0.0, 0.0}, b{1.0};
  CHECK_THROWS_AS(eval_kernel({}, a, b), InputError);
}

TEST_CASE("kernel spec validation") {
  CHECK_THROWS_AS(validate(KernelSpec{KernelFamily::gaussian, 0.0}), InputError);
  CHECK_THROWS_AS(validate(KernelSpec{KernelFamily::matern1, -1.0}), InputError);
  CHECK_NOTHROW(validate(KernelSpec{KernelFamily::matern1, 0.5}));
  CHECK(parse_kernel_family("gaussian") == KernelFamily::gaussian);
  CHECK(parse_kernel_family("matern1") == KernelFamily::matern1);
  CHECK_FALSE(parse_kernel_family("rbf"));
}

TEST_CASE("kernel symmetry and range on random inputs") {
  Rng rng(11);
  for (auto family : {KernelFamily::gaussian, KernelFamily::matern1}) {
    const KernelSpec spec{family, rng.uniform(0.1, 3.0)};
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> x(3), y(3);
      for (auto& v : x) v = rng.uniform(-5, 5);
      for (auto& v : y) v = rng.uniform(-5, 5);
      const double kxy = eval_kernel(spec, x, y);
      CHECK(kxy == eval_kernel(spec, y, x));
      CHECK(kxy > 0.0);
      CHECK(kxy < 1.0);
      CHECK(eval_kernel(spec, x, x) == 1.0);
    }
  }
}

TEST_CASE("gram builds the kernel matrix") {
  const KernelSpec g1{KernelFamily::gaussian, 1.0};
  const auto single = gram(g1, points({{0.0, 0.0}}));
  REQUIRE(single.size() == 1);
  CHECK(single(0, 0) == 1.0);

  const auto pair = gram(g1, points({{0.0, 0.0}, {1.0, 0.0}}));
  CHECK(pair(0, 0) == 1.0);
  CHECK(pair(1, 1) == 1.0);
  CHECK(pair(0, 1) == eval_kernel(g1, std::vector<double>{0, 0},
                                  std::vector<double>{1, 0}));
  CHECK(pair(0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(pair(1, 0) == pair(0, 1));
}

TEST_CASE("gram entries equal eval_kernel and satisfy the invariants") {
  Rng rng(5);
  for (auto family : {KernelFamily::gaussian, KernelFamily::matern1}) {
    const KernelSpec spec{family, 0.7};
    const auto x = random_points(rng, 25, 3, -2, 2);
    const auto a = gram(spec, x);
    const auto ref = oracle::gram_entries(spec, x);
    for (Eigen::Index i = 0; i < 25; ++i) {
      CHECK(a(i, i) == 1.0);
      for (Eigen::Index j = 0; j < 25; ++j) {
        CHECK(a(i, j) == a(j, i));
        CHECK(a(i, j) > 0.0);
        CHECK(a(i, j) <= 1.0);
        CHECK(a(i, j) == doctest::Approx(ref(i, j)).epsilon(1e-14));
        CHECK(a(i, j) == eval_kernel(spec, row_span(x, i), row_span(x, j)));
      }
    }
  }
}

TEST_CASE("gram rejects duplicate points by default") {
  const auto dup = points({{1.0, 2.0}, {0.0, 0.0}, {1.0, 2.0}});
  try {
    gram(KernelSpec{}, dup);
    FAIL("expected DuplicatePointError");
  } catch (const DuplicatePointError& e) {
    CHECK(e.first() == 0);
    CHECK(e.second() == 2);
    CHECK(std::string(e.what()).find("0 and 2") != std::string::npos);
  }
  CHECK_THROWS_AS(gram(KernelSpec{}, points({{0.0, 0.0}, {0.0, 0.0}})),
                  DuplicatePointError);
}

TEST_CASE("gram jitter is opt-in and warns") {
  std::vector<std::string> messages;
  auto previous = set_warning_sink(
      [&messages](std::string_view m) { messages.emplace_back(m); });
  const auto a = gram(KernelSpec{}, points({{0.0, 0.0}, {0.0, 0.0}}), true);
  set_warning_sink(previous);
  CHECK(a.jittered());
  CHECK(a(0, 0) == 1.0 + kGramJitter);
  CHECK(a(0, 1) == 1.0);
  REQUIRE(messages.size() == 1);
  CHECK(min_eigenvalue(a) == doctest::Approx(kGramJitter).epsilon(1e-6));
}

TEST_CASE("min_eigenvalue on small matrices") {
  CHECK(min_eigenvalue(Eigen::MatrixXd::Identity(2, 2)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  Eigen::MatrixXd two(2, 2);
  two << 1.0, std::exp(-1.0), std::exp(-1.0), 1.0;
  CHECK(min_eigenvalue(two, 1e-12) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-10));
  CHECK(min_eigenvalue(two) == doctest::Approx(0.632121).epsilon(1e-6));

  Eigen::MatrixXd diag = Eigen::Vector4d(3.0, 0.25, 7.0, 1.5).asDiagonal();
  CHECK(min_eigenvalue(diag, 1e-12) == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("min_eigenvalue agrees with a dense eigensolver") {
  Rng rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    // Well-separated: a jittered lattice with spacing 2.
    PointMatrix x(10, 2);
    for (int i = 0; i < 10; ++i) {
      x(i, 0) = 2.0 * (i % 5) + rng.uniform(-0.3, 0.3);
      x(i, 1) = 2.0 * (i / 5) + rng.uniform(-0.3, 0.3);
    }
    const auto a = gram({KernelFamily::gaussian, 0.5}, x);
    const double expected = oracle::dense_min_eigenvalue(a.matrix());
    CHECK(min_eigenvalue(a, 1e-10) == doctest::Approx(expected).epsilon(1e-8));
  }
  // A clustered Gram with a small lambda_min.
  const auto x = random_points(rng, 40, 2, -2, 2);
  const auto a = gram({KernelFamily::gaussian, 1.0}, x);
  const double expected = oracle::dense_min_eigenvalue(a.matrix());
  CHECK(min_eigenvalue(a, 1e-10) == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("min_eigenvalue rejects indefinite matrices") {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3 and -1
  CHECK_THROWS_AS(min_eigenvalue(m), DefinitenessError);
}
