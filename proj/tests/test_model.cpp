#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "lscsvm/data.hpp"
#include "lscsvm/errors.hpp"
#include "lscsvm/log.hpp"
#include "lscsvm/model.hpp"
#include "lscsvm/random.hpp"
#include "oracles.hpp"

using namespace lscsvm;

namespace {

TrainedModel two_point_model() {
  TrainedModel m;
  m.kernel = {KernelFamily::gaussian, 1.0};
  m.lambda = 0.1;
  m.inputs.resize(2, 2);
  m.inputs << 0.0, 0.0, 1.0, 0.0;
  m.coeffs = Eigen::Vector2d(1.0, -1.0);
  m.meta.loss = "hinge";
  m.meta.rho = 1.0;
  return m;
}

std::string serialize(const TrainedModel& m) {
  std::ostringstream out;
  write_model(out, m);
  return out.str();
}

TrainedModel parse(const std::string& text) {
  std::istringstream in(text);
  return read_model(in);
}

AdmmConfig quiet_config(double lambda, double rho) {
  AdmmConfig cfg;
  cfg.lambda = lambda;
  cfg.rho = rho;
  cfg.enforce_rho_condition = RhoCheck::off;
  cfg.check_descent = false;
  return cfg;
}

}  // namespace

TEST_CASE("decision value reference points") {
  const auto m = two_point_model();
  const double x0[] = {0.0, 0.0};
  CHECK(decision_value(m, x0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  const double mid[] = {0.5, 0.0};
  CHECK(std::abs(decision_value(m, mid)) <= 1e-16);
  CHECK(classify(m, mid) == 1);
  const double x1[] = {1.0, 0.0};
  CHECK(classify(m, x1) == -1);
}

TEST_CASE("sign convention") {
  CHECK(sign_label(0.0) == 1);
  CHECK(sign_label(-0.3) == -1);
  CHECK(sign_label(2.5) == 1);
}

TEST_CASE("decision value input checks") {
  const auto m = two_point_model();
  const double bad_dim[] = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(decision_value(m, bad_dim), InputError);
  const double non_finite[] = {std::nan(""), 0.0};
  CHECK_THROWS_AS(decision_value(m, non_finite), InputError);
}

TEST_CASE("decision values at training points equal Ac") {
  const auto d = fixtures::separated_instance();
  TrainedModel m;
  m.kernel = {KernelFamily::matern1, 0.7};
  m.inputs = d.inputs;
  Rng rng(4);
  m.coeffs = Eigen::VectorXd::NullaryExpr(10, [&rng] { return rng.uniform(-2, 2); });
  const auto a = gram(m.kernel, d.inputs);
  const Eigen::VectorXd ac = a.matrix() * m.coeffs;
  for (Eigen::Index i = 0; i < 10; ++i) {
    CHECK(decision_value(m, row_span(d.inputs, i)) == doctest::Approx(ac(i)).epsilon(1e-12));
  }
  CHECK(rkhs_norm_sq(a, m.coeffs) ==
        doctest::Approx(oracle::quad_form(a.matrix(), m.coeffs)).epsilon(1e-12));
  CHECK(rkhs_norm_sq(a, Eigen::VectorXd::Zero(10)) == 0.0);
}

TEST_CASE("classify_all and evaluate") {
  const auto m = two_point_model();
  Dataset d;
  d.inputs.resize(3, 2);
  d.inputs << 0.0, 0.0, 1.0, 0.0, -3.0, 0.0;
  d.labels = {1, -1, -1};
  const auto labels = classify_all(m, d.inputs);
  CHECK(labels == std::vector<int>{1, -1, 1});
  const auto acc = evaluate(m, d);
  CHECK(acc.correct == 2);
  CHECK(acc.total == 3);
  CHECK(acc.percent() == doctest::Approx(200.0 / 3.0));
}

TEST_CASE("multistart with one start matches a single run") {
  const auto [train, test] = generate_synthetic(40, 2, 5);
  const auto loss = MarginLoss::make(LossKind::trunc_log);
  const auto cfg = quiet_config(0.1, 1.0);
  const auto ms = train_multistart(train, {KernelFamily::gaussian, 1.0}, loss, cfg, 1, 42);
  REQUIRE(ms.starts.size() == 1);
  CHECK(ms.starts[0].seed == start_seed(42, 0));

  const auto a = gram({KernelFamily::gaussian, 1.0}, train.inputs);
  const RiskData risk{loss, train.labels};
  const auto run = admm_run(risk, a, cfg, random_initial_state(a, cfg.lambda, start_seed(42, 0)));
  CHECK(run.state.c == ms.model.coeffs);
  CHECK(ms.starts[0].iterations == static_cast<int>(run.trace.size()));
}

TEST_CASE("multistart keeps the smallest objective") {
  const auto [train, test] = generate_synthetic(40, 2, 6);
  const auto loss = MarginLoss::make(LossKind::ramp);
  const auto cfg = quiet_config(0.5, 5.0);
  const auto ms = train_multistart(train, {KernelFamily::gaussian, 2.0}, loss, cfg, 5, 9);
  REQUIRE(ms.starts.size() == 5);
  for (const auto& s : ms.starts) {
    CHECK(s.ok);
    CHECK(ms.starts[static_cast<std::size_t>(ms.best)].objective <= s.objective);
  }
  for (int i = 0; i < ms.best; ++i) {
    CHECK(ms.starts[static_cast<std::size_t>(i)].objective >
          ms.starts[static_cast<std::size_t>(ms.best)].objective);
  }
  const auto a = gram({KernelFamily::gaussian, 2.0}, train.inputs);
  CHECK(regularized_objective(RiskData{loss, train.labels}, a, cfg.lambda, ms.model.coeffs) ==
        doctest::Approx(ms.model.meta.objective).epsilon(1e-12));
  CHECK(ms.model.meta.loss == "ramp");
  CHECK(ms.model.meta.rho == 5.0);
}

TEST_CASE("hinge objective never exceeds its value at zero") {
  const auto [train, test] = generate_synthetic(30, 2, 11);
  const auto ms = train_multistart(train, {KernelFamily::gaussian, 1.0},
                                   MarginLoss::make(LossKind::hinge),
                                   quiet_config(0.5, 5.0), 3, 1);
  CHECK(ms.model.meta.objective <= 1.0 + 1e-9);
}

TEST_CASE("multistart argument checks") {
  const auto [train, test] = generate_synthetic(10, 2, 1);
  const auto loss = MarginLoss::make(LossKind::hinge);
  CHECK_THROWS_AS(train_multistart(train, {KernelFamily::gaussian, 1.0}, loss,
                                   quiet_config(0.1, 1.0), 0, 1),
                  InputError);
  Dataset dup = train;
  dup.inputs.row(1) = dup.inputs.row(0);
  CHECK_THROWS_AS(train_multistart(dup, {KernelFamily::gaussian, 1.0}, loss,
                                   quiet_config(0.1, 1.0), 1, 1),
                  DuplicatePointError);
  std::vector<std::string> warnings;
  auto prev = set_warning_sink([&](std::string_view w) { warnings.emplace_back(w); });
  TrainOptions opt;
  opt.allow_jitter = true;
  CHECK_NOTHROW(train_multistart(dup, {KernelFamily::gaussian, 1.0}, loss,
                                 quiet_config(0.1, 1.0), 1, 1, opt));
  set_warning_sink(prev);
  CHECK_FALSE(warnings.empty());
}

TEST_CASE("scaling does not change predictions relative to scaled training") {
  const auto [train, test] = generate_synthetic(40, 20, 13);
  const auto st = standardize(train, {test});
  const auto loss = MarginLoss::make(LossKind::piecewise_linear);
  const auto cfg = quiet_config(0.1, 1.0);
  TrainOptions opt;
  opt.scaling = FeatureScaling{st.means, st.stds};
  const auto with = train_multistart(train, {KernelFamily::gaussian, 1.0}, loss, cfg, 2, 3, opt);
  const auto without = train_multistart(st.train, {KernelFamily::gaussian, 1.0}, loss, cfg, 2, 3);
  CHECK(with.model.coeffs == without.model.coeffs);
  for (Eigen::Index i = 0; i < test.size(); ++i) {
    CHECK(decision_value(with.model, row_span(test.inputs, i)) ==
          doctest::Approx(decision_value(without.model, row_span(st.others[0].inputs, i)))
              .epsilon(1e-12));
  }
}

TEST_CASE("model text round trip") {
  const auto [train, test] = generate_synthetic(20, 2, 2);
  const auto ms = train_multistart(train, {KernelFamily::matern1, 0.5},
                                   MarginLoss::make(LossKind::trunc_log),
                                   quiet_config(0.2, 2.0), 2, 8);
  const std::string text = serialize(ms.model);
  CHECK(text.rfind("lscsvm-model 1\nkernel matern1 0.5\n", 0) == 0);
  const auto back = parse(text);
  CHECK(back.kernel.family == KernelFamily::matern1);
  CHECK(back.kernel.sigma == 0.5);
  CHECK(back.lambda == 0.2);
  CHECK(back.inputs == ms.model.inputs);
  CHECK(back.coeffs == ms.model.coeffs);
  CHECK(back.meta.loss == "tlog");
  CHECK(back.meta.objective == ms.model.meta.objective);
  CHECK(serialize(back) == text);
  for (Eigen::Index i = 0; i < test.size(); ++i) {
    CHECK(decision_value(back, row_span(test.inputs, i)) ==
          decision_value(ms.model, row_span(test.inputs, i)));
  }
}

TEST_CASE("model round trip with scaling") {
  auto m = two_point_model();
  m.scaling = FeatureScaling{Eigen::Vector2d(1.5, -2.0), Eigen::Vector2d(0.25, 3.0)};
  const auto back = parse(serialize(m));
  REQUIRE(back.scaling);
  CHECK(back.scaling->means == m.scaling->means);
  CHECK(back.scaling->stds == m.scaling->stds);
  const double x[] = {1.7, -1.0};
  CHECK(decision_value(back, x) == decision_value(m, x));
}

TEST_CASE("model read errors") {
  const std::string good = serialize(two_point_model());

  SUBCASE("truncated file") {
    const auto cut = good.substr(0, good.find("n 2"));
    CHECK_THROWS_AS(parse(cut), ParseError);
  }
  SUBCASE("wrong version") {
    std::string v = good;
    v.replace(0, 14, "lscsvm-model 2");
    CHECK_THROWS_AS(parse(v), VersionError);
  }
  SUBCASE("missing coefficient") {
    std::string t = good;
    const auto last = t.rfind(' ');
    t.erase(last, t.size() - last - 1);
    CHECK_THROWS_AS(parse(t), ValidationError);
  }
  SUBCASE("extra row") {
    CHECK_THROWS_AS(parse(good + "5 5 1\n"), ValidationError);
  }
  SUBCASE("bad number reports its line") {
    std::string t = good;
    t.replace(t.find("lambda 0.10000000000000001"), 26, "lambda abc");
    try {
      parse(t);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_model("/nonexistent/model.txt"), InputError);
  }
}
