#ifndef LSCSVM_ADMM_HPP_
#define LSCSVM_ADMM_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lscsvm/kernel.hpp"
#include "lscsvm/loss.hpp"

namespace lscsvm {

enum class RhoCheck { off, warn, error };

std::optional<RhoCheck> parse_rho_check(std::string_view name);
std::string_view to_string(RhoCheck mode);

struct AdmmConfig {
  double lambda = 0.1;
  double rho = 0.05;
  double eps0 = 1e-12;
  int max_iter = 10000;
  // Relative residual target of the inner conjugate-gradient solve.
  double cg_tol = 1e-12;
  // Inner iteration cap; 0 selects 10 * N.
  int cg_max_iter = 0;
  bool check_descent = true;
  RhoCheck enforce_rho_condition = RhoCheck::warn;
};

// Throws InputError unless lambda, rho, eps0, cg_tol > 0 and max_iter >= 1.
void validate(const AdmmConfig& cfg);

// Empirical-risk data: F(alpha) = (1/N) sum_i L(y_i, alpha_i).
struct RiskData {
  MarginLoss loss;
  std::vector<int> labels;

  int size() const { return static_cast<int>(labels.size()); }
  double value(const Eigen::VectorXd& alpha) const;
};

struct AdmmState {
  Eigen::VectorXd alpha;
  Eigen::VectorXd c;
  Eigen::VectorXd gamma;
  int k = 0;
};

// c ~ U[-10, 10]^N, alpha = A c, gamma = 2 lambda c.
AdmmState random_initial_state(const GramMatrix& a, double lambda,
                               std::uint64_t seed);

struct IterationRecord {
  int k;
  double lagrangian;
  double objective;
  double residual;
  double step_norm_h;
};

using IterationTrace = std::vector<IterationRecord>;

// Header "k,lagrangian,objective,residual,step_norm_H", one row per record,
// 17 significant digits. With cumulative set, an extra column holds the
// running sum of step_norm_H.
void write_trace_csv(std::ostream& out, const IterationTrace& trace,
                     bool cumulative = false);

// F(alpha) + lambda c'Ac + gamma'(alpha - Ac) + rho/2 ||alpha - Ac||^2.
double lagrangian(const RiskData& risk, const GramMatrix& a,
                  const AdmmConfig& cfg, const AdmmState& st);

// Regularized risk F(Ac) + lambda c'Ac.
double regularized_objective(const RiskData& risk, const GramMatrix& a,
                             double lambda, const Eigen::VectorXd& c);

// One splitting iteration: coordinate-wise prox for alpha, CG solve of
// (2 lambda I + rho A) c = rho alpha + gamma warm-started at c, then
// gamma = 2 lambda c.
AdmmState admm_step(const RiskData& risk, const GramMatrix& a,
                    const AdmmConfig& cfg, const AdmmState& st);

// sqrt((c_new - c_old)' A (c_new - c_old)), the RKHS distance between the
// corresponding decision functions.
double rkhs_step_norm(const GramMatrix& a, const Eigen::VectorXd& c_new,
                      const Eigen::VectorXd& c_old);

struct RhoCondition {
  bool satisfied;
  double threshold;  // 4 lambda / lambda_min
};

RhoCondition check_rho_condition(const AdmmConfig& cfg, double lambda_min);

// max(||alpha - Ac||_inf, ||alpha - prox(Ac - gamma/rho)||_inf).
double stationarity_residual(const RiskData& risk, const GramMatrix& a,
                             const AdmmConfig& cfg, const AdmmState& st);

enum class AdmmStatus { converged, max_iter };

struct AdmmDiagnostics {
  std::optional<double> lambda_min;
  std::optional<RhoCondition> rho_condition;
  // Iterations k whose Lagrangian exceeded that of k - 1 by more than 1e-9
  // while the rho-condition held.
  std::vector<int> descent_violations;
  // Largest ||gamma - 2 lambda c||_inf / (1 + ||c||_inf) over the run.
  double max_multiplier_gap = 0.0;
};

struct AdmmResult {
  AdmmState state;
  IterationTrace trace;
  AdmmStatus status = AdmmStatus::max_iter;
  AdmmDiagnostics diagnostics;
};

inline constexpr double kDescentSlack = 1e-9;

// Iterates admm_step until ||alpha - Ac||_2 < eps0 or max_iter steps.
// lambda_min of A is computed when needed (descent check or rho check) and
// not supplied. With enforce_rho_condition = error a failed condition
// throws RhoConditionError before iterating.
AdmmResult admm_run(const RiskData& risk, const GramMatrix& a,
                    const AdmmConfig& cfg, const AdmmState& init,
                    std::optional<double> lambda_min = std::nullopt);

}  // namespace lscsvm

#endif  // LSCSVM_ADMM_HPP_
