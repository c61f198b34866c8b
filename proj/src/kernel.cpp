#include "lscsvm/kernel.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "lscsvm/errors.hpp"
#include "lscsvm/linalg.hpp"
#include "lscsvm/log.hpp"
#include "lscsvm/random.hpp"

namespace lscsvm {

void validate(const KernelSpec& spec) {
  if (!(spec.sigma > 0.0) || !std::isfinite(spec.sigma)) {
    throw InputError("kernel sigma must be positive and finite, got " +
                     std::to_string(spec.sigma));
  }
}

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::gaussian:
      return "gaussian";
    case KernelFamily::matern1:
      return "matern1";
  }
  return "unknown";
}

std::optional<KernelFamily> parse_kernel_family(std::string_view name) {
  if (name == "gaussian") return KernelFamily::gaussian;
  if (name == "matern1") return KernelFamily::matern1;
  return std::nullopt;
}

namespace {

double distance_term(KernelFamily family, std::span<const double> x,
                     std::span<const double> y) {
  double acc = 0.0;
  if (family == KernelFamily::gaussian) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double diff = x[k] - y[k];
      acc += diff * diff;
    }
  } else {
    for (std::size_t k = 0; k < x.size(); ++k) acc += std::abs(x[k] - y[k]);
  }
  return acc;
}

}  // namespace

double eval_kernel(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) {
    throw InputError("eval_kernel: dimension mismatch (" +
                     std::to_string(x.size()) + " vs " +
                     std::to_string(y.size()) + ")");
  }
  return std::exp(-spec.sigma * distance_term(spec.family, x, y));
}

GramMatrix GramMatrix::from_matrix(Eigen::MatrixXd entries) {
  if (entries.rows() != entries.cols() || entries.rows() < 1) {
    throw InputError("GramMatrix: matrix must be square and non-empty");
  }
  GramMatrix g;
  g.entries_ = std::move(entries);
  return g;
}

GramMatrix gram(const KernelSpec& spec, const PointMatrix& points,
                bool allow_jitter) {
  validate(spec);
  const Eigen::Index n = points.rows();
  if (n < 1) throw InputError("gram: no points");
  if (points.cols() < 1) throw InputError("gram: points have dimension 0");

  GramMatrix g;
  g.entries_.resize(n, n);
  bool duplicates = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    g.entries_(i, i) = 1.0;
    const auto xi = row_span(points, i);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double dist = distance_term(spec.family, xi, row_span(points, j));
      if (dist == 0.0) {
        if (!allow_jitter) {
          throw DuplicatePointError(static_cast<std::size_t>(i),
                                    static_cast<std::size_t>(j));
        }
        duplicates = true;
      }
      const double value = std::exp(-spec.sigma * dist);
      g.entries_(i, j) = value;
      g.entries_(j, i) = value;
    }
  }
  if (allow_jitter) {
    g.entries_.diagonal().array() += kGramJitter;
    g.jittered_ = true;
    warn(duplicates ? "gram: duplicate inputs present; added 1e-8 * I to the "
                      "kernel matrix"
                    : "gram: jitter enabled; added 1e-8 * I to the kernel "
                      "matrix");
  }
  return g;
}

double min_eigenvalue(const Eigen::MatrixXd& a, double tol) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw InputError("min_eigenvalue: matrix must be square and non-empty");
  }
  if (!(tol > 0.0)) throw InputError("min_eigenvalue: tol must be positive");

  constexpr int kMaxOuter = 500;
  const Eigen::Index n = a.rows();
  const auto op = SpdOperator::from_matrix(a);

  // Fixed pseudo-random start so results are reproducible and the start is
  // not orthogonal to the target eigenvector by construction.
  Rng rng(0x5EEDULL);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = rng.uniform(0.5, 1.5);
  x.normalize();

  const int cg_cap = static_cast<int>(std::max<Eigen::Index>(20 * n, 200));
  double previous = x.dot(op(x));
  for (int it = 0; it < kMaxOuter; ++it) {
    Eigen::VectorXd y = cg_solve(op, x, x, 1e-13, cg_cap).x;
    const double y_norm = y.norm();
    if (!(y_norm > 0.0) || !std::isfinite(y_norm)) {
      throw DefinitenessError("min_eigenvalue: inverse iteration diverged");
    }
    x = y / y_norm;
    const double rayleigh = x.dot(op(x));
    if (!(rayleigh > 0.0)) {
      throw DefinitenessError("min_eigenvalue: estimate " +
                              std::to_string(rayleigh) + " is not positive");
    }
    if (std::abs(rayleigh - previous) <= tol * std::abs(rayleigh)) {
      return rayleigh;
    }
    previous = rayleigh;
  }
  return previous;
}

}  // namespace lscsvm
