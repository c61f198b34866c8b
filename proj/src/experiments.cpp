#include "lscsvm/experiments.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>
#include <string>

#include "lscsvm/data.hpp"
#include "lscsvm/random.hpp"

namespace lscsvm {
namespace {

// Sub-stream numbers under the user seed.
constexpr std::uint64_t kStartStream = 1u << 20;

AdmmConfig quiet_config(double lambda, double rho) {
  AdmmConfig cfg;
  cfg.lambda = lambda;
  cfg.rho = rho;
  cfg.eps0 = 1e-12;
  cfg.check_descent = false;
  cfg.enforce_rho_condition = RhoCheck::off;
  return cfg;
}

std::string percent(const Accuracy& a) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", a.percent());
  return buf;
}

std::string kernel_label(const KernelSpec& k) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s(%g)", std::string(to_string(k.family)).c_str(),
                k.sigma);
  return buf;
}

}  // namespace

std::vector<int> default_sweep_sizes() {
  std::vector<int> sizes;
  for (int n = 100; n <= 1000; n += 100) sizes.push_back(n);
  return sizes;
}

std::vector<SizeRow> run_size_sweep(std::uint64_t seed,
                                    const std::vector<int>& sizes, int starts) {
  const AdmmConfig cfg = quiet_config(0.1, 1.0);
  const KernelSpec kernel{KernelFamily::gaussian, 1.0};
  const MarginLoss loss = MarginLoss::make(LossKind::piecewise_linear);

  std::vector<SizeRow> rows;
  for (int n : sizes) {
    const int n_test = (2 * n) / 5 + ((2 * n) / 5) % 2;
    const auto [train, test] =
        generate_synthetic(n, n_test, derive_seed(seed, static_cast<std::uint64_t>(n)));
    const auto t0 = std::chrono::steady_clock::now();
    const auto fit = train_multistart(train, kernel, loss, cfg, starts,
                                      derive_seed(seed, kStartStream + n));
    const auto t1 = std::chrono::steady_clock::now();
    rows.push_back({n, n_test, std::chrono::duration<double>(t1 - t0).count(),
                    evaluate(fit.model, train), evaluate(fit.model, test)});
  }
  return rows;
}

std::vector<LossKernelRow> run_loss_kernel_grid(std::uint64_t seed, int starts) {
  const AdmmConfig cfg = quiet_config(0.5, 5.0);
  const auto [train, test] = generate_synthetic(300, 120, seed);
  const KernelSpec kernels[] = {{KernelFamily::gaussian, 2.0},
                                {KernelFamily::matern1, 1.0}};
  const LossKind losses[] = {LossKind::hinge, LossKind::piecewise_linear,
                             LossKind::trunc_log, LossKind::ramp};

  std::vector<LossKernelRow> rows;
  for (const auto& kernel : kernels) {
    for (LossKind kind : losses) {
      const auto fit = train_multistart(train, kernel, MarginLoss::make(kind),
                                        cfg, starts,
                                        derive_seed(seed, kStartStream));
      rows.push_back({kind, kernel, evaluate(fit.model, train),
                      evaluate(fit.model, test), fit.model.meta.objective});
    }
  }
  return rows;
}

ConvergenceRun run_convergence_trace(std::uint64_t seed) {
  AdmmConfig cfg = quiet_config(0.1, 0.05);
  const auto [train, test] = generate_synthetic(300, 120, seed);
  const GramMatrix a = gram({KernelFamily::gaussian, 1.0}, train.inputs);
  const RiskData risk{MarginLoss::make(LossKind::trunc_log), train.labels};
  const AdmmState init =
      random_initial_state(a, cfg.lambda, start_seed(derive_seed(seed, kStartStream), 0));

  ConvergenceRun out;
  const auto t0 = std::chrono::steady_clock::now();
  out.run = admm_run(risk, a, cfg, init);
  const auto t1 = std::chrono::steady_clock::now();
  out.seconds = std::chrono::duration<double>(t1 - t0).count();
  out.stationarity = stationarity_residual(risk, a, cfg, out.run.state);
  return out;
}

void write_size_table(std::ostream& out, const std::vector<SizeRow>& rows) {
  out << "| Training Data | Testing Data | Time(s) | Training Accuracy | "
         "Testing Accuracy |\n";
  out << "|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    char time[32];
    std::snprintf(time, sizeof time, "%.3f", r.seconds);
    out << "| " << r.n_train << " | " << r.n_test << " | " << time << " | "
        << percent(r.train) << " | " << percent(r.test) << " |\n";
  }
}

void write_grid_table(std::ostream& out, const std::vector<LossKernelRow>& rows) {
  out << "| Loss Function | Kernel | Training Accuracy | Testing Accuracy |\n";
  out << "|---|---|---|---|\n";
  for (const auto& r : rows) {
    out << "| " << to_string(r.loss) << " | " << kernel_label(r.kernel) << " | "
        << percent(r.train) << " | " << percent(r.test) << " |\n";
  }
}

}  // namespace lscsvm
