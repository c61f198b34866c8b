#ifndef LSCSVM_MODEL_HPP_
#define LSCSVM_MODEL_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lscsvm/admm.hpp"
#include "lscsvm/data.hpp"
#include "lscsvm/kernel.hpp"
#include "lscsvm/loss.hpp"

namespace lscsvm {

struct ModelMeta {
  std::string loss;
  double rho = 0.0;
  bool converged = false;
  double residual = 0.0;
  double objective = 0.0;
};

// Affine map x -> (x - means) / stds applied to raw inputs before kernel
// evaluation. Entries of stds below kMinFeatureStd are treated as 1.
struct FeatureScaling {
  Eigen::VectorXd means;
  Eigen::VectorXd stds;
};

// Decision function s(x) = sum_i c_i K(x_i, x). Inputs are stored in the
// (possibly scaled) space the kernel sees.
struct TrainedModel {
  KernelSpec kernel;
  double lambda = 0.0;
  PointMatrix inputs;
  Eigen::VectorXd coeffs;
  ModelMeta meta;
  std::optional<FeatureScaling> scaling;

  Eigen::Index size() const { return inputs.rows(); }
  Eigen::Index dim() const { return inputs.cols(); }
};

// Throws ValidationError on inconsistent sizes or non-finite values.
void validate(const TrainedModel& m);

// x is in raw feature space; scaling, if any, is applied first. Throws
// InputError on dimension mismatch or non-finite input.
double decision_value(const TrainedModel& m, std::span<const double> x);

// +1 when value >= 0, otherwise -1.
inline int sign_label(double value) { return value >= 0.0 ? 1 : -1; }

int classify(const TrainedModel& m, std::span<const double> x);
std::vector<int> classify_all(const TrainedModel& m, const PointMatrix& x);

struct Accuracy {
  Eigen::Index correct = 0;
  Eigen::Index total = 0;
  double percent() const {
    return total ? 100.0 * static_cast<double>(correct) / total : 0.0;
  }
};

Accuracy evaluate(const TrainedModel& m, const Dataset& data);

// c'Ac; tiny negative values from rounding (>= -1e-12) are clamped to 0.
double rkhs_norm_sq(const GramMatrix& a, const Eigen::VectorXd& c);

struct StartSummary {
  int index = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double objective = 0.0;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

struct MultiStartResult {
  TrainedModel model;
  std::vector<StartSummary> starts;
  int best = 0;
  AdmmResult best_run;
  std::optional<double> lambda_min;
};

struct TrainOptions {
  bool allow_jitter = false;
  // Applied to every input before training and stored with the model.
  std::optional<FeatureScaling> scaling;
};

// Seed of the random initial state for start `index`.
std::uint64_t start_seed(std::uint64_t seed, int index);

// Runs admm_run from `starts` random initial states and keeps the one with
// the smallest final regularized objective (lowest index on ties). Starts
// that throw are recorded in their summary; TrainingError is raised when
// every start fails. The rho-condition is checked once for the data set.
MultiStartResult train_multistart(const Dataset& data, const KernelSpec& kernel,
                                  const MarginLoss& loss, const AdmmConfig& cfg,
                                  int starts, std::uint64_t seed,
                                  const TrainOptions& options = {});

// Text format, one item per line:
//   lscsvm-model 1
//   kernel <gaussian|matern1> <sigma>
//   lambda <value>
//   loss <name>
//   rho <value>
//   converged <0|1>
//   residual <value>
//   objective <value>
//   scaling <0|1>
//   [means <d values>]      only when scaling is 1
//   [stds <d values>]       only when scaling is 1
//   n <N>
//   d <d>
//   N rows of "<x_1> ... <x_d> <c_i>"
// Fields are separated by single spaces; reals use 17 significant digits.
void write_model(std::ostream& out, const TrainedModel& m);
TrainedModel read_model(std::istream& in);

// Writes to a temporary file next to path and renames it into place.
void save_model(const TrainedModel& m, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

inline constexpr int kModelFormatVersion = 1;

}  // namespace lscsvm

#endif  // LSCSVM_MODEL_HPP_
