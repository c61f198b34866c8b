#include "lscsvm/loss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lscsvm/errors.hpp"

namespace lscsvm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieTolerance = 1e-12;

LossPiece affine(double lo, double hi, double slope, double intercept) {
  return {lo, hi, PieceForm::affine, slope, intercept};
}

void check_params(const ProxParams& p) {
  if (!(p.rho > 0.0) || !std::isfinite(p.rho)) {
    throw InputError("prox: rho must be positive and finite");
  }
  if (p.n < 1) throw InputError("prox: n must be >= 1");
  if (p.label != 1 && p.label != -1) throw InputError("prox: label must be +-1");
  if (!std::isfinite(p.anchor)) throw InputError("prox: anchor is not finite");
}

ProxResult at(const MarginLoss& loss, const ProxParams& p, double a) {
  return {a, prox_objective(loss, p, a)};
}

// Real roots of z^2 + b z + c = 0 in stable form.
int solve_monic_quadratic(double b, double c, double roots[2]) {
  const double disc = b * b - 4.0 * c;
  if (disc < 0.0) return 0;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  if (q == 0.0) {
    roots[0] = 0.0;
    return 1;
  }
  roots[0] = q;
  roots[1] = c / q;
  return 2;
}

}  // namespace

double LossPiece::value(double z) const {
  switch (form) {
    case PieceForm::affine:
      return intercept + slope * z;
    case PieceForm::log_two_minus:
      return std::log(2.0 - z);
  }
  return 0.0;
}

MarginLoss MarginLoss::make(LossKind kind) {
  MarginLoss loss;
  loss.kind_ = kind;
  switch (kind) {
    case LossKind::hinge:
      loss.pieces_ = {affine(-kInf, 1.0, -1.0, 1.0),
                      affine(1.0, kInf, 0.0, 0.0)};
      break;
    case LossKind::piecewise_linear:
      loss.pieces_ = {affine(-kInf, 0.0, -1.0, 2.0),
                      affine(0.0, 1.0, -2.0, 2.0),
                      affine(1.0, kInf, 0.0, 0.0)};
      break;
    case LossKind::trunc_log:
      loss.pieces_ = {LossPiece{-kInf, 1.0, PieceForm::log_two_minus},
                      affine(1.0, kInf, 0.0, 0.0)};
      break;
    case LossKind::ramp:
      loss.pieces_ = {affine(-kInf, 0.0, 0.0, 1.0),
                      affine(0.0, 1.0, -1.0, 1.0),
                      affine(1.0, kInf, 0.0, 0.0)};
      break;
  }
  loss.admissible_at_zero_ = true;
  return loss;
}

std::string_view MarginLoss::name() const { return to_string(kind_); }

double MarginLoss::margin_value(double z) const {
  for (const auto& piece : pieces_) {
    if (z < piece.hi) return piece.value(z);
  }
  return pieces_.back().value(z);
}

std::optional<LossKind> parse_loss_kind(std::string_view name) {
  if (name == "hinge") return LossKind::hinge;
  if (name == "pl2") return LossKind::piecewise_linear;
  if (name == "tlog") return LossKind::trunc_log;
  if (name == "ramp") return LossKind::ramp;
  return std::nullopt;
}

std::string_view to_string(LossKind kind) {
  switch (kind) {
    case LossKind::hinge:
      return "hinge";
    case LossKind::piecewise_linear:
      return "pl2";
    case LossKind::trunc_log:
      return "tlog";
    case LossKind::ramp:
      return "ramp";
  }
  return "unknown";
}

double prox_objective(const MarginLoss& loss, const ProxParams& p, double a) {
  const double diff = a - p.anchor;
  return loss.value(p.label, a) / p.n + 0.5 * p.rho * diff * diff;
}

ProxResult prox_enumerate(const MarginLoss& loss, const ProxParams& p) {
  check_params(p);
  // Work in the margin variable z = y a; then (a - u)^2 = (z - v)^2.
  const double v = p.label * p.anchor;
  const double shift = 1.0 / (p.rho * p.n);

  std::vector<double> margins;
  margins.reserve(4 * loss.pieces().size());
  for (const auto& piece : loss.pieces()) {
    if (std::isfinite(piece.lo)) margins.push_back(piece.lo);
    if (std::isfinite(piece.hi)) margins.push_back(piece.hi);
    if (piece.form == PieceForm::affine) {
      margins.push_back(std::clamp(v - piece.slope * shift, piece.lo, piece.hi));
    } else {
      // d/dz [log(2 - z)/n + rho/2 (z - v)^2] = 0
      //   <=> z^2 - (2 + v) z + 2v + 1/(rho n) = 0
      double roots[2];
      const int count = solve_monic_quadratic(-(2.0 + v), 2.0 * v + shift, roots);
      for (int k = 0; k < count; ++k) {
        if (roots[k] >= piece.lo && roots[k] <= piece.hi) {
          margins.push_back(roots[k]);
        }
      }
    }
  }

  std::vector<ProxResult> candidates;
  candidates.reserve(margins.size());
  double best = kInf;
  for (double z : margins) {
    candidates.push_back(at(loss, p, p.label * z));
    best = std::min(best, candidates.back().value);
  }
  ProxResult chosen{kInf, kInf};
  for (const auto& c : candidates) {
    if (c.value <= best + kTieTolerance && c.argmin < chosen.argmin) chosen = c;
  }
  return chosen;
}

std::optional<ProxResult> prox_closed_form(const MarginLoss& loss,
                                           const ProxParams& p) {
  check_params(p);
  const double u = p.anchor;
  const double s = 1.0 / (p.rho * p.n);

  if (loss.kind() == LossKind::hinge) {
    if (p.label == 1) {
      if (u < 1.0 - s) return at(loss, p, u + s);
      if (u < 1.0) return at(loss, p, 1.0);
      return at(loss, p, u);
    }
    if (u < -1.0) return at(loss, p, u);
    if (u < -1.0 + s) return at(loss, p, -1.0);
    return at(loss, p, u - s);
  }

  if (loss.kind() == LossKind::ramp && s > 0.0 && s < 2.0) {
    if (p.label == 1) {
      // At u = -s/2 both u and u + s are optimal; keep the smaller one.
      if (u <= -0.5 * s) return at(loss, p, u);
      if (u <= 1.0 - s) return at(loss, p, u + s);
      if (u < 1.0) return at(loss, p, 1.0);
      return at(loss, p, u);
    }
    if (u <= -1.0) return at(loss, p, u);
    if (u < -1.0 + s) return at(loss, p, -1.0);
    // At u = s/2 both u and u - s are optimal; keep the smaller one.
    if (u <= 0.5 * s) return at(loss, p, u - s);
    return at(loss, p, u);
  }
  return std::nullopt;
}

ProxResult prox(const MarginLoss& loss, const ProxParams& p) {
  if (auto closed = prox_closed_form(loss, p)) return *closed;
  return prox_enumerate(loss, p);
}

}  // namespace lscsvm
