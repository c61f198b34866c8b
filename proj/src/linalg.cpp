#include "lscsvm/linalg.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "lscsvm/errors.hpp"

namespace lscsvm {

SpdOperator::SpdOperator(Eigen::Index size, ApplyFn apply)
    : size_(size), apply_(std::move(apply)) {
  if (size_ < 1) throw InputError("SpdOperator: size must be positive");
  if (!apply_) throw InputError("SpdOperator: empty apply function");
}

SpdOperator SpdOperator::from_matrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw InputError("SpdOperator: matrix not square");
  const Eigen::MatrixXd* mp = &m;
  return SpdOperator(m.rows(),
                     [mp](const Eigen::VectorXd& in, Eigen::VectorXd& out) {
                       out.noalias() = *mp * in;
                     });
}

SpdOperator SpdOperator::shifted(const Eigen::MatrixXd& m, double shift,
                                 double scale) {
  if (m.rows() != m.cols()) throw InputError("SpdOperator: matrix not square");
  const Eigen::MatrixXd* mp = &m;
  return SpdOperator(
      m.rows(), [mp, shift, scale](const Eigen::VectorXd& in,
                                   Eigen::VectorXd& out) {
        out.noalias() = *mp * in;
        out = scale * out + shift * in;
      });
}

void SpdOperator::apply(const Eigen::VectorXd& in, Eigen::VectorXd& out) const {
  if (in.size() != size_) {
    throw InputError("SpdOperator: vector of size " +
                     std::to_string(in.size()) + " applied to operator of size " +
                     std::to_string(size_));
  }
  out.resize(size_);
  apply_(in, out);
}

Eigen::VectorXd SpdOperator::operator()(const Eigen::VectorXd& in) const {
  Eigen::VectorXd out(size_);
  apply(in, out);
  return out;
}

CgResult cg_solve(const SpdOperator& m, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& x0, double tol, int max_iter) {
  if (!(tol > 0.0)) throw InputError("cg_solve: tol must be positive");
  if (max_iter < 1) throw InputError("cg_solve: max_iter must be >= 1");
  if (b.size() != m.size() || x0.size() != m.size()) {
    throw InputError("cg_solve: dimension mismatch");
  }

  CgResult result;
  const double b_norm = b.norm();
  if (b_norm == 0.0) {
    result.x = Eigen::VectorXd::Zero(m.size());
    result.converged = true;
    return result;
  }
  const double target = tol * b_norm;

  Eigen::VectorXd x = x0;
  Eigen::VectorXd r = b - m(x);
  Eigen::VectorXd d = r;
  Eigen::VectorXd md(m.size());
  double rs = r.squaredNorm();

  Eigen::VectorXd best_x = x;
  double best_rs = rs;
  double rs_last = rs;
  int iters = 0;
  bool converged = std::sqrt(rs) <= target;

  while (!converged && iters < max_iter) {
    m.apply(d, md);
    const double dmd = d.dot(md);
    if (!(dmd > 0.0)) {
      throw DefinitenessError("cg_solve: d'Md = " + std::to_string(dmd) +
                              " <= 0 at iteration " + std::to_string(iters));
    }
    const double step = rs / dmd;
    x += step * d;
    r -= step * md;
    const double rs_next = r.squaredNorm();
    ++iters;
    if (rs_next < best_rs) {
      best_rs = rs_next;
      best_x = x;
    }
    rs_last = rs_next;
    if (std::sqrt(rs_next) <= target) {
      converged = true;
      break;
    }
    d = r + (rs_next / rs) * d;
    rs = rs_next;
  }

  result.x = converged ? std::move(x) : std::move(best_x);
  result.iterations = iters;
  result.converged = converged;
  result.residual_norm = std::sqrt(converged ? rs_last : best_rs);
  return result;
}

}  // namespace lscsvm
