#ifndef LSCSVM_LINALG_HPP_
#define LSCSVM_LINALG_HPP_

#include <Eigen/Dense>

#include <cstddef>
#include <functional>

namespace lscsvm {

// A symmetric positive definite matrix M represented only through v -> Mv.
class SpdOperator {
 public:
  using ApplyFn =
      std::function<void(const Eigen::VectorXd& in, Eigen::VectorXd& out)>;

  SpdOperator(Eigen::Index size, ApplyFn apply);

  // Wraps an explicit dense matrix (must outlive the operator).
  static SpdOperator from_matrix(const Eigen::MatrixXd& m);

  // shift * I + scale * m, with one product by m per application. This is
  // the c-update system matrix 2*lambda*I + rho*A.
  static SpdOperator shifted(const Eigen::MatrixXd& m, double shift,
                             double scale);

  Eigen::Index size() const { return size_; }

  void apply(const Eigen::VectorXd& in, Eigen::VectorXd& out) const;
  Eigen::VectorXd operator()(const Eigen::VectorXd& in) const;

 private:
  Eigen::Index size_;
  ApplyFn apply_;
};

struct CgResult {
  Eigen::VectorXd x;
  int iterations = 0;
  // Recurrence residual norm ||r|| belonging to the returned x.
  double residual_norm = 0.0;
  bool converged = false;
};

// Conjugate gradients for Mx = b starting at x0. Stops once the recurrence
// residual satisfies ||r|| <= tol * ||b||; after max_iter iterations the
// iterate with the smallest recurrence residual is returned with
// converged = false. Throws DefinitenessError when a search direction has
// d'Md <= 0 and InputError on bad arguments.
CgResult cg_solve(const SpdOperator& m, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& x0, double tol, int max_iter);

}  // namespace lscsvm

#endif  // LSCSVM_LINALG_HPP_
