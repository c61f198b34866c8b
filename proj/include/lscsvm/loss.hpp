#ifndef LSCSVM_LOSS_HPP_
#define LSCSVM_LOSS_HPP_

#include <optional>
#include <string_view>
#include <vector>

namespace lscsvm {

// Shape of one piece of a margin loss, as a function of z = y * t.
enum class PieceForm {
  affine,         // intercept + slope * z
  log_two_minus,  // log(2 - z)
};

// One piece on the half-open margin interval [lo, hi). The first piece has
// lo = -inf and the last hi = +inf. Closing each piece on the left makes the
// loss take the right-hand value at every breakpoint.
struct LossPiece {
  double lo;
  double hi;
  PieceForm form;
  double slope = 0.0;
  double intercept = 0.0;

  double value(double z) const;
};

enum class LossKind {
  hinge,             // max(0, 1 - z)
  piecewise_linear,  // 2 - z, 2 - 2z, 0 on z < 0, [0, 1), [1, inf)
  trunc_log,         // log(2 - z) for z < 1, else 0
  ramp,              // 1, 1 - z, 0 on z < 0, [0, 1), [1, inf)
};

// A margin-based loss L(x, y, t) = l(y * t), stored piecewise so that the
// one-dimensional proximal problem can be solved exactly.
class MarginLoss {
 public:
  static MarginLoss make(LossKind kind);

  LossKind kind() const { return kind_; }
  std::string_view name() const;
  const std::vector<LossPiece>& pieces() const { return pieces_; }
  // 0 is not in the limiting subdifferential of t -> L(x, y, t) at t = 0.
  // Holds for all shipped losses (margin slope -1 or -2 at z = 0).
  bool admissible_at_zero() const { return admissible_at_zero_; }

  // Loss as a function of the margin z = y * t.
  double margin_value(double z) const;
  // Loss at label y and prediction t.
  double value(int label, double t) const { return margin_value(label * t); }

 private:
  LossKind kind_ = LossKind::hinge;
  std::vector<LossPiece> pieces_;
  bool admissible_at_zero_ = true;
};

// Names used on the command line: "hinge", "pl2", "tlog", "ramp".
std::optional<LossKind> parse_loss_kind(std::string_view name);
std::string_view to_string(LossKind kind);

inline double loss_value(const MarginLoss& loss, int label, double t) {
  return loss.value(label, t);
}

// Parameters of the coordinate problem
//   min_a  L(y, a) / n + (rho / 2) (a - anchor)^2.
struct ProxParams {
  double rho;
  int n;
  int label;
  double anchor;
};

struct ProxResult {
  double argmin;
  double value;
};

// Objective of the coordinate problem at a.
double prox_objective(const MarginLoss& loss, const ProxParams& p, double a);

// Exact minimizer by enumerating per-piece stationary points and
// breakpoints. Among candidates within 1e-12 of the best objective the
// smallest argmin is returned.
ProxResult prox_enumerate(const MarginLoss& loss, const ProxParams& p);

// Closed-form tables for hinge (any rho * n) and ramp (0 < 1/(rho n) < 2).
// Returns nullopt for other losses or outside the ramp table's range.
std::optional<ProxResult> prox_closed_form(const MarginLoss& loss,
                                           const ProxParams& p);

// Closed form when available, enumeration otherwise. Throws InputError
// when rho <= 0, n < 1 or the label is not +-1.
ProxResult prox(const MarginLoss& loss, const ProxParams& p);

}  // namespace lscsvm

#endif  // LSCSVM_LOSS_HPP_
