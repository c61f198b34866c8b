#ifndef LSCSVM_KERNEL_HPP_
#define LSCSVM_KERNEL_HPP_

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace lscsvm {

// Row-major so that each input vector is a contiguous row.
using PointMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline std::span<const double> row_span(const PointMatrix& points,
                                        Eigen::Index i) {
  return {points.data() + i * points.cols(),
          static_cast<std::size_t>(points.cols())};
}

enum class KernelFamily {
  gaussian,  // exp(-sigma * ||x - x'||_2^2)
  matern1,   // exp(-sigma * ||x - x'||_1)
};

struct KernelSpec {
  KernelFamily family = KernelFamily::gaussian;
  double sigma = 1.0;
};

// Throws InputError unless sigma is finite and positive.
void validate(const KernelSpec& spec);

std::string_view to_string(KernelFamily family);
// Accepts "gaussian" and "matern1".
std::optional<KernelFamily> parse_kernel_family(std::string_view name);

double eval_kernel(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> y);

// Dense symmetric kernel matrix A(i, j) = K(x_i, x_j).
class GramMatrix {
 public:
  const Eigen::MatrixXd& matrix() const { return entries_; }
  Eigen::Index size() const { return entries_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const {
    return entries_(i, j);
  }
  // True when the diagonal was shifted to work around duplicate inputs.
  bool jittered() const { return jittered_; }

  // Wraps an explicit symmetric matrix. Used for hand-built instances.
  static GramMatrix from_matrix(Eigen::MatrixXd entries);

 private:
  friend GramMatrix gram(const KernelSpec&, const PointMatrix&, bool);
  Eigen::MatrixXd entries_;
  bool jittered_ = false;
};

inline constexpr double kGramJitter = 1e-8;

// Builds the Gram matrix of the rows of points. Each unordered pair is
// evaluated once and mirrored. Duplicate rows raise DuplicatePointError
// unless allow_jitter is set, in which case kGramJitter * I is added and a
// warning is emitted.
GramMatrix gram(const KernelSpec& spec, const PointMatrix& points,
                bool allow_jitter = false);

// Smallest eigenvalue of a symmetric positive definite matrix by inverse
// power iteration; each inverse application is a conjugate-gradient solve.
// Stops when successive Rayleigh quotients agree to relative tolerance tol
// (at most 500 outer iterations). Throws DefinitenessError when the
// estimate is not positive.
double min_eigenvalue(const Eigen::MatrixXd& a, double tol = 1e-8);
inline double min_eigenvalue(const GramMatrix& a, double tol = 1e-8) {
  return min_eigenvalue(a.matrix(), tol);
}

}  // namespace lscsvm

#endif  // LSCSVM_KERNEL_HPP_
