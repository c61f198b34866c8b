#include "lscsvm/admm.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "lscsvm/errors.hpp"
#include "lscsvm/format.hpp"
#include "lscsvm/linalg.hpp"
#include "lscsvm/log.hpp"
#include "lscsvm/random.hpp"

namespace lscsvm {
namespace {

void check_sizes(const RiskData& risk, const GramMatrix& a,
                 const AdmmState& st) {
  const Eigen::Index n = a.size();
  if (risk.size() != n || st.alpha.size() != n || st.c.size() != n ||
      st.gamma.size() != n) {
    throw InputError("admm: dimension mismatch between data, Gram matrix "
                     "and state");
  }
}

double lagrangian_with(const RiskData& risk, const AdmmConfig& cfg,
                       const AdmmState& st, const Eigen::VectorXd& ac) {
  const Eigen::VectorXd gap = st.alpha - ac;
  return risk.value(st.alpha) + cfg.lambda * st.c.dot(ac) +
         st.gamma.dot(gap) + 0.5 * cfg.rho * gap.squaredNorm();
}

Eigen::VectorXd prox_vector(const RiskData& risk, const AdmmConfig& cfg,
                            const Eigen::VectorXd& anchor) {
  const Eigen::Index n = anchor.size();
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const ProxParams p{cfg.rho, static_cast<int>(n),
                       risk.labels[static_cast<std::size_t>(i)], anchor(i)};
    out(i) = prox(risk.loss, p).argmin;
  }
  return out;
}

// One iteration given ac = A c^k.
AdmmState step_from(const RiskData& risk, const GramMatrix& a,
                    const AdmmConfig& cfg, const AdmmState& st,
                    const Eigen::VectorXd& ac) {
  const Eigen::Index n = a.size();
  AdmmState next;
  next.alpha = prox_vector(risk, cfg, ac - st.gamma / cfg.rho);

  const auto system =
      SpdOperator::shifted(a.matrix(), 2.0 * cfg.lambda, cfg.rho);
  const Eigen::VectorXd rhs = cfg.rho * next.alpha + st.gamma;
  const int cg_cap =
      cfg.cg_max_iter > 0 ? cfg.cg_max_iter : static_cast<int>(10 * n);
  next.c = cg_solve(system, rhs, st.c, cfg.cg_tol, cg_cap).x;

  next.gamma = 2.0 * cfg.lambda * next.c;
  next.k = st.k + 1;
  return next;
}

double multiplier_gap(const AdmmState& st, double lambda) {
  const double c_inf = st.c.size() ? st.c.lpNorm<Eigen::Infinity>() : 0.0;
  const double gap = (st.gamma - 2.0 * lambda * st.c).lpNorm<Eigen::Infinity>();
  return gap / (1.0 + c_inf);
}

}  // namespace

std::optional<RhoCheck> parse_rho_check(std::string_view name) {
  if (name == "off") return RhoCheck::off;
  if (name == "warn") return RhoCheck::warn;
  if (name == "error") return RhoCheck::error;
  return std::nullopt;
}

std::string_view to_string(RhoCheck mode) {
  switch (mode) {
    case RhoCheck::off:
      return "off";
    case RhoCheck::warn:
      return "warn";
    case RhoCheck::error:
      return "error";
  }
  return "unknown";
}

void validate(const AdmmConfig& cfg) {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(cfg.lambda)) throw InputError("lambda must be positive");
  if (!positive(cfg.rho)) throw InputError("rho must be positive");
  if (!positive(cfg.eps0)) throw InputError("eps0 must be positive");
  if (!positive(cfg.cg_tol)) throw InputError("cg_tol must be positive");
  if (cfg.max_iter < 1) throw InputError("max_iter must be >= 1");
  if (cfg.cg_max_iter < 0) throw InputError("cg_max_iter must be >= 0");
}

double RiskData::value(const Eigen::VectorXd& alpha) const {
  const std::size_t n = labels.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += loss.value(labels[i], alpha(static_cast<Eigen::Index>(i)));
  }
  return sum / static_cast<double>(n);
}

AdmmState random_initial_state(const GramMatrix& a, double lambda,
                               std::uint64_t seed) {
  Rng rng(seed);
  AdmmState st;
  st.c.resize(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) st.c(i) = rng.uniform(-10.0, 10.0);
  st.alpha = a.matrix() * st.c;
  st.gamma = 2.0 * lambda * st.c;
  st.k = 0;
  return st;
}

void write_trace_csv(std::ostream& out, const IterationTrace& trace,
                     bool cumulative) {
  out << "k,lagrangian,objective,residual,step_norm_H";
  if (cumulative) out << ",cumulative_step_norm_H";
  out << '\n';
  double running = 0.0;
  for (const auto& r : trace) {
    out << r.k << ',' << format_double(r.lagrangian) << ','
        << format_double(r.objective) << ',' << format_double(r.residual) << ','
        << format_double(r.step_norm_h);
    if (cumulative) {
      running += r.step_norm_h;
      out << ',' << format_double(running);
    }
    out << '\n';
  }
}

double lagrangian(const RiskData& risk, const GramMatrix& a,
                  const AdmmConfig& cfg, const AdmmState& st) {
  check_sizes(risk, a, st);
  return lagrangian_with(risk, cfg, st, a.matrix() * st.c);
}

double regularized_objective(const RiskData& risk, const GramMatrix& a,
                             double lambda, const Eigen::VectorXd& c) {
  const Eigen::VectorXd ac = a.matrix() * c;
  return risk.value(ac) + lambda * c.dot(ac);
}

AdmmState admm_step(const RiskData& risk, const GramMatrix& a,
                    const AdmmConfig& cfg, const AdmmState& st) {
  check_sizes(risk, a, st);
  return step_from(risk, a, cfg, st, a.matrix() * st.c);
}

double rkhs_step_norm(const GramMatrix& a, const Eigen::VectorXd& c_new,
                      const Eigen::VectorXd& c_old) {
  if (c_new.size() != a.size() || c_old.size() != a.size()) {
    throw InputError("rkhs_step_norm: dimension mismatch");
  }
  const Eigen::VectorXd delta = c_new - c_old;
  const double radicand = delta.dot(a.matrix() * delta);
  if (radicand < -1e-12) {
    throw DefinitenessError("rkhs_step_norm: negative quadratic form " +
                            std::to_string(radicand));
  }
  return radicand > 0.0 ? std::sqrt(radicand) : 0.0;
}

RhoCondition check_rho_condition(const AdmmConfig& cfg, double lambda_min) {
  if (!(lambda_min > 0.0)) {
    throw InputError("check_rho_condition: lambda_min must be positive");
  }
  const double threshold = 4.0 * cfg.lambda / lambda_min;
  return {cfg.rho > threshold, threshold};
}

double stationarity_residual(const RiskData& risk, const GramMatrix& a,
                             const AdmmConfig& cfg, const AdmmState& st) {
  check_sizes(risk, a, st);
  const Eigen::VectorXd ac = a.matrix() * st.c;
  const Eigen::VectorXd anchor = ac - st.gamma / cfg.rho;
  const Eigen::VectorXd fixed = prox_vector(risk, cfg, anchor);
  return std::max((st.alpha - ac).lpNorm<Eigen::Infinity>(),
                  (st.alpha - fixed).lpNorm<Eigen::Infinity>());
}

AdmmResult admm_run(const RiskData& risk, const GramMatrix& a,
                    const AdmmConfig& cfg, const AdmmState& init,
                    std::optional<double> lambda_min) {
  validate(cfg);
  check_sizes(risk, a, init);

  AdmmResult result;
  auto& diag = result.diagnostics;
  const bool need_spectrum =
      cfg.check_descent || cfg.enforce_rho_condition != RhoCheck::off;
  if (need_spectrum && !lambda_min) lambda_min = min_eigenvalue(a);
  if (lambda_min) {
    diag.lambda_min = lambda_min;
    diag.rho_condition = check_rho_condition(cfg, *lambda_min);
    if (!diag.rho_condition->satisfied) {
      const std::string msg =
          "rho = " + format_double(cfg.rho) +
          " does not exceed 4*lambda/lambda_min(A) = " +
          format_double(diag.rho_condition->threshold) +
          "; the global convergence guarantee does not apply";
      if (cfg.enforce_rho_condition == RhoCheck::error) {
        throw RhoConditionError(msg);
      }
      if (cfg.enforce_rho_condition == RhoCheck::warn) warn(msg);
    }
  }
  const bool check_descent = cfg.check_descent && diag.rho_condition &&
                             diag.rho_condition->satisfied;

  AdmmState st = init;
  Eigen::VectorXd ac = a.matrix() * st.c;
  result.trace.reserve(static_cast<std::size_t>(std::min(cfg.max_iter, 1024)));
  for (int it = 0; it < cfg.max_iter; ++it) {
    AdmmState next = step_from(risk, a, cfg, st, ac);
    Eigen::VectorXd ac_next = a.matrix() * next.c;

    IterationRecord rec;
    rec.k = next.k;
    rec.lagrangian = lagrangian_with(risk, cfg, next, ac_next);
    rec.objective = risk.value(ac_next) + cfg.lambda * next.c.dot(ac_next);
    rec.residual = (next.alpha - ac_next).norm();
    // (dc)'A(dc) from the stored products; rounding can only make it
    // marginally negative.
    const double radicand = (next.c - st.c).dot(ac_next - ac);
    rec.step_norm_h = radicand > 0.0 ? std::sqrt(radicand) : 0.0;

    diag.max_multiplier_gap =
        std::max(diag.max_multiplier_gap, multiplier_gap(next, cfg.lambda));
    if (check_descent && !result.trace.empty() &&
        rec.lagrangian > result.trace.back().lagrangian + kDescentSlack) {
      diag.descent_violations.push_back(rec.k);
      warn("augmented Lagrangian increased at iteration " +
           std::to_string(rec.k) + " by " +
           format_double(rec.lagrangian - result.trace.back().lagrangian) +
           " although the rho-condition holds");
    }
    result.trace.push_back(rec);
    st = std::move(next);
    ac = std::move(ac_next);
    if (rec.residual < cfg.eps0) {
      result.status = AdmmStatus::converged;
      break;
    }
  }
  result.state = std::move(st);
  return result;
}

}  // namespace lscsvm
