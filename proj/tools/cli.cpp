#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>

#include "lscsvm/admm.hpp"
#include "lscsvm/data.hpp"
#include "lscsvm/errors.hpp"
#include "lscsvm/experiments.hpp"
#include "lscsvm/format.hpp"
#include "lscsvm/io.hpp"
#include "lscsvm/kernel.hpp"
#include "lscsvm/loss.hpp"
#include "lscsvm/model.hpp"

namespace lscsvm::cli {
namespace {

AdmmConfig admm_config(const RunConfig& rc) {
  AdmmConfig cfg;
  cfg.lambda = rc.lambda;
  cfg.rho = rc.rho;
  cfg.eps0 = rc.eps0;
  cfg.max_iter = rc.max_iter;
  const auto mode = parse_rho_check(rc.check_rho);
  if (!mode) throw InputError("--check-rho must be off, warn or error");
  cfg.enforce_rho_condition = *mode;
  cfg.check_descent = *mode != RhoCheck::off;
  validate(cfg);
  return cfg;
}

KernelSpec kernel_spec(const RunConfig& rc) {
  const auto family = parse_kernel_family(rc.kernel);
  if (!family) throw InputError("--kernel must be gaussian or matern1");
  KernelSpec spec{*family, rc.sigma};
  validate(spec);
  return spec;
}

MarginLoss margin_loss(const RunConfig& rc) {
  const auto kind = parse_loss_kind(rc.loss);
  if (!kind) throw InputError("--loss must be hinge, pl2, tlog or ramp");
  return MarginLoss::make(*kind);
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw InputError(std::string(flag) + " is required");
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void write_trace_file(const std::string& path, const IterationTrace& trace,
                      bool cumulative) {
  write_atomically(path, [&](std::ostream& os) {
    write_trace_csv(os, trace, cumulative);
  });
}

}  // namespace

int cmd_gen_data(const RunConfig& rc, std::ostream& out) {
  require(rc.train_path, "--train");
  require(rc.test_path, "--test");
  const auto [train, test] = generate_synthetic(rc.n_train, rc.n_test, rc.seed);
  write_atomically(rc.train_path, [&](std::ostream& os) { write_csv(os, train); });
  write_atomically(rc.test_path, [&](std::ostream& os) { write_csv(os, test); });
  out << "wrote " << train.size() << " training rows to " << rc.train_path
      << " and " << test.size() << " test rows to " << rc.test_path << '\n';
  return 0;
}

int cmd_train(const RunConfig& rc, std::ostream& out) {
  const AdmmConfig cfg = admm_config(rc);
  const KernelSpec kernel = kernel_spec(rc);
  const MarginLoss loss = margin_loss(rc);
  if (rc.starts < 1) throw InputError("--starts must be >= 1");
  require(rc.train_path, "--train");
  require(rc.model_path, "--model");

  const Dataset train = load_csv(rc.train_path);
  validate(train);
  TrainOptions options;
  options.allow_jitter = rc.jitter;
  if (rc.standardize) {
    const auto st = standardize(train);
    options.scaling = FeatureScaling{st.means, st.stds};
  }

  const auto fit =
      train_multistart(train, kernel, loss, cfg, rc.starts, rc.seed, options);

  if (fit.lambda_min) {
    const auto cond = check_rho_condition(cfg, *fit.lambda_min);
    out << "rho-condition: lambda_min(A) = " << sci(*fit.lambda_min)
        << ", threshold 4*lambda/lambda_min = " << sci(cond.threshold)
        << ", rho = " << format_double(cfg.rho) << " -> "
        << (cond.satisfied ? "satisfied" : "NOT satisfied (advisory)") << '\n';
  }
  out << "start  objective            iterations  residual    converged\n";
  for (const auto& s : fit.starts) {
    char line[160];
    if (s.ok) {
      std::snprintf(line, sizeof line, "%5d  %-19.12g  %10d  %-10.3e  %s\n",
                    s.index, s.objective, s.iterations, s.residual,
                    s.converged ? "yes" : "no");
      out << line;
    } else {
      out << s.index << "  failed: " << s.error << '\n';
    }
  }
  const auto& best = fit.starts[static_cast<std::size_t>(fit.best)];
  out << "chosen start " << fit.best << " (objective "
      << format_double(best.objective) << ")\n";
  if (!fit.best_run.diagnostics.descent_violations.empty()) {
    out << "descent check: " << fit.best_run.diagnostics.descent_violations.size()
        << " Lagrangian increase(s) in the chosen run\n";
  }
  const auto acc = evaluate(fit.model, train);
  out << "training accuracy " << acc.correct << '/' << acc.total << " ("
      << fixed(acc.percent(), 1) << "%)\n";

  save_model(fit.model, rc.model_path);
  out << "model written to " << rc.model_path << '\n';
  if (!rc.trace_path.empty()) {
    write_trace_file(rc.trace_path, fit.best_run.trace, false);
    out << "trace written to " << rc.trace_path << '\n';
  }
  return 0;
}

int cmd_predict(const RunConfig& rc, std::ostream& out) {
  require(rc.model_path, "--model");
  require(rc.test_path, "--test");
  const TrainedModel model = load_model(rc.model_path);
  const PointMatrix x = load_features_csv(rc.test_path);
  if (x.cols() != model.dim()) {
    throw InputError("input has " + std::to_string(x.cols()) +
                     " features, model expects " + std::to_string(model.dim()));
  }
  const auto labels = classify_all(model, x);
  auto emit = [&labels](std::ostream& os) {
    for (int y : labels) os << (y > 0 ? "1" : "-1") << '\n';
  };
  if (rc.output_path.empty()) {
    emit(out);
  } else {
    write_atomically(rc.output_path, emit);
  }
  return 0;
}

int cmd_evaluate(const RunConfig& rc, std::ostream& out) {
  require(rc.model_path, "--model");
  require(rc.test_path, "--test");
  const TrainedModel model = load_model(rc.model_path);
  const Dataset data = load_csv(rc.test_path);
  validate(data);
  if (data.dim() != model.dim()) {
    throw InputError("data has " + std::to_string(data.dim()) +
                     " features, model expects " + std::to_string(model.dim()));
  }
  const auto acc = evaluate(model, data);
  out << acc.correct << '/' << acc.total << " correct, accuracy "
      << fixed(acc.percent(), 1) << "%\n";
  return 0;
}

int cmd_reproduce(const RunConfig& rc, std::ostream& out) {
  if (rc.starts < 1) throw InputError("--starts must be >= 1");
  if (rc.table == "t1") {
    write_size_table(out, run_size_sweep(rc.seed, default_sweep_sizes(), rc.starts));
    return 0;
  }
  if (rc.table == "t2") {
    write_grid_table(out, run_loss_kernel_grid(rc.seed, rc.starts));
    return 0;
  }
  if (rc.table == "fig3") {
    const auto conv = run_convergence_trace(rc.seed);
    if (rc.trace_path.empty()) {
      write_trace_csv(out, conv.run.trace, true);
      return 0;
    }
    write_trace_file(rc.trace_path, conv.run.trace, true);
    const auto& last = conv.run.trace.back();
    out << "iterations " << conv.run.trace.size() << ", status "
        << (conv.run.status == AdmmStatus::converged ? "converged" : "max_iter")
        << ", final residual " << sci(last.residual)
        << ", stationarity residual " << sci(conv.stationarity) << '\n';
    out << "trace written to " << rc.trace_path << '\n';
    return 0;
  }
  throw InputError("reproduce: unknown table '" + rc.table +
                   "' (expected t1, t2 or fig3)");
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kernel SVM training with nonconvex margin losses by ADMM splitting"};
  app.require_subcommand(1);
  RunConfig rc;

  auto add_training_flags = [&rc](CLI::App* sub) {
    sub->add_option("--loss", rc.loss, "hinge | pl2 | tlog | ramp")
        ->capture_default_str();
    sub->add_option("--kernel", rc.kernel, "gaussian | matern1")
        ->capture_default_str();
    sub->add_option("--sigma", rc.sigma, "kernel shape parameter")
        ->capture_default_str();
    sub->add_option("--lambda", rc.lambda, "regularization weight")
        ->capture_default_str();
    sub->add_option("--rho", rc.rho, "augmented Lagrangian penalty")
        ->capture_default_str();
    sub->add_option("--eps0", rc.eps0, "stopping threshold on ||alpha - Ac||")
        ->capture_default_str();
    sub->add_option("--max-iter", rc.max_iter, "outer iteration cap")
        ->capture_default_str();
    sub->add_option("--starts", rc.starts, "random restarts")
        ->capture_default_str();
    sub->add_option("--check-rho", rc.check_rho,
                    "rho > 4*lambda/lambda_min(A) check: off | warn | error")
        ->capture_default_str();
    sub->add_flag("--standardize", rc.standardize,
                  "z-score features with training statistics");
    sub->add_flag("--jitter", rc.jitter,
                  "add 1e-8*I to the Gram matrix instead of rejecting duplicates");
  };

  auto* gen = app.add_subcommand("gen-data", "sample the two-square synthetic data");
  gen->add_option("--n-train", rc.n_train, "training points (even)")
      ->capture_default_str();
  gen->add_option("--n-test", rc.n_test, "test points (even)")->capture_default_str();
  gen->add_option("--seed", rc.seed, "random seed")->capture_default_str();
  gen->add_option("--train", rc.train_path, "output training CSV")->required();
  gen->add_option("--test", rc.test_path, "output test CSV")->required();

  auto* train = app.add_subcommand("train", "train a model from a labelled CSV");
  add_training_flags(train);
  train->add_option("--seed", rc.seed, "random seed")->capture_default_str();
  train->add_option("--train", rc.train_path, "training CSV")->required();
  train->add_option("--model", rc.model_path, "output model file")->required();
  train->add_option("--trace", rc.trace_path, "output trace CSV of the chosen start");

  auto* predict = app.add_subcommand("predict", "label a feature-only CSV");
  predict->add_option("--model", rc.model_path, "model file")->required();
  predict->add_option("--test", rc.test_path, "feature CSV")->required();
  predict->add_option("--output", rc.output_path, "label output (default stdout)");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "accuracy on a labelled CSV");
  evaluate_cmd->add_option("--model", rc.model_path, "model file")->required();
  evaluate_cmd->add_option("--test", rc.test_path, "labelled CSV")->required();

  auto* reproduce = app.add_subcommand("reproduce", "run a synthetic-data experiment");
  reproduce->add_option("table", rc.table, "t1 | t2 | fig3")->required();
  reproduce->add_option("--seed", rc.seed, "random seed")->capture_default_str();
  reproduce->add_option("--starts", rc.starts, "random restarts per row")
      ->capture_default_str();
  reproduce->add_option("--trace", rc.trace_path, "fig3: trace CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (gen->parsed()) return cmd_gen_data(rc, out);
    if (train->parsed()) return cmd_train(rc, out);
    if (predict->parsed()) return cmd_predict(rc, out);
    if (evaluate_cmd->parsed()) return cmd_evaluate(rc, out);
    if (reproduce->parsed()) return cmd_reproduce(rc, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace lscsvm::cli
