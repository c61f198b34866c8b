#ifndef LSCSVM_EXPERIMENTS_HPP_
#define LSCSVM_EXPERIMENTS_HPP_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "lscsvm/admm.hpp"
#include "lscsvm/kernel.hpp"
#include "lscsvm/loss.hpp"
#include "lscsvm/model.hpp"

namespace lscsvm {

// Synthetic-data protocols. Every experiment draws its data and its start
// seeds from one user seed, so a seed fixes the whole run.

struct SizeRow {
  int n_train;
  int n_test;
  double seconds;  // wall-clock time of multi-start training
  Accuracy train;
  Accuracy test;
};

// Training-set size sweep: piecewise-linear loss, Gaussian kernel sigma = 1,
// lambda = 0.1, rho = 1, eps0 = 1e-12, 20 starts, test size 0.4 * n.
std::vector<SizeRow> run_size_sweep(std::uint64_t seed,
                                    const std::vector<int>& sizes,
                                    int starts = 20);

std::vector<int> default_sweep_sizes();  // 100, 200, ..., 1000

struct LossKernelRow {
  LossKind loss;
  KernelSpec kernel;
  Accuracy train;
  Accuracy test;
  double objective;
};

// All four losses against Gaussian sigma = 2 and Matern-1 sigma = 1 on one
// 300/120 data set: lambda = 0.5, rho = 5, eps0 = 1e-12, 20 starts. Rows are
// ordered loss-major within each kernel (Gaussian first).
std::vector<LossKernelRow> run_loss_kernel_grid(std::uint64_t seed,
                                                int starts = 20);

struct ConvergenceRun {
  AdmmResult run;
  double stationarity = 0.0;
  double seconds = 0.0;
};

// Single run of the truncated-log loss with Gaussian sigma = 1, N = 300,
// lambda = 0.1, rho = 0.05, eps0 = 1e-12 from a random start.
ConvergenceRun run_convergence_trace(std::uint64_t seed);

// Markdown tables; the size sweep includes timings, the grid does not.
void write_size_table(std::ostream& out, const std::vector<SizeRow>& rows);
void write_grid_table(std::ostream& out, const std::vector<LossKernelRow>& rows);

}  // namespace lscsvm

#endif  // LSCSVM_EXPERIMENTS_HPP_
