#include "lscsvm/model.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "lscsvm/errors.hpp"
#include "lscsvm/format.hpp"
#include "lscsvm/io.hpp"
#include "lscsvm/log.hpp"
#include "lscsvm/random.hpp"

namespace lscsvm {
namespace {

Eigen::VectorXd scaled(const TrainedModel& m, std::span<const double> x) {
  Eigen::VectorXd v =
      Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  if (m.scaling) {
    for (Eigen::Index j = 0; j < v.size(); ++j) {
      v(j) -= m.scaling->means(j);
      if (m.scaling->stds(j) >= kMinFeatureStd) v(j) /= m.scaling->stds(j);
    }
  }
  return v;
}

PointMatrix apply_scaling(const FeatureScaling& s, const PointMatrix& x) {
  PointMatrix out = x;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    auto col = out.col(j).array();
    col -= s.means(j);
    if (s.stds(j) >= kMinFeatureStd) col /= s.stds(j);
  }
  return out;
}

// Line-oriented reader that tracks the 1-based line number for errors.
class ModelReader {
 public:
  explicit ModelReader(std::istream& in) : in_(in) {}

  std::vector<std::string> next_fields() {
    std::string line;
    if (!std::getline(in_, line)) {
      throw ParseError("unexpected end of file", line_ + 1);
    }
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ss(line);
    std::vector<std::string> fields;
    for (std::string f; ss >> f;) fields.push_back(std::move(f));
    return fields;
  }

  std::vector<std::string> expect(std::string_view key, std::size_t values) {
    auto fields = next_fields();
    if (fields.empty() || fields[0] != key) {
      fail("expected '" + std::string(key) + "'");
    }
    if (fields.size() != values + 1) {
      fail("'" + std::string(key) + "' expects " + std::to_string(values) +
           " value(s), found " + std::to_string(fields.size() - 1));
    }
    return fields;
  }

  double real(const std::string& text, std::string_view field) {
    double v;
    if (!parse_double(text, v) || !std::isfinite(v)) {
      fail("field '" + std::string(field) + "': '" + text +
           "' is not a finite number");
    }
    return v;
  }

  long long integer(const std::string& text, std::string_view field) {
    long long v = 0;
    std::size_t used = 0;
    try {
      v = std::stoll(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || used == 0) {
      fail("field '" + std::string(field) + "': '" + text +
           "' is not an integer");
    }
    return v;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_);
  }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

}  // namespace

void validate(const TrainedModel& m) {
  validate(m.kernel);
  if (!(m.lambda > 0.0)) throw ValidationError("model lambda must be positive");
  if (m.size() < 1 || m.dim() < 1) throw ValidationError("model has no inputs");
  if (m.coeffs.size() != m.size()) {
    throw ValidationError("model has " + std::to_string(m.size()) +
                          " inputs but " + std::to_string(m.coeffs.size()) +
                          " coefficients");
  }
  if (!m.inputs.allFinite() || !m.coeffs.allFinite()) {
    throw ValidationError("model contains non-finite values");
  }
  if (m.scaling && (m.scaling->means.size() != m.dim() ||
                    m.scaling->stds.size() != m.dim())) {
    throw ValidationError("model scaling has wrong dimension");
  }
}

double decision_value(const TrainedModel& m, std::span<const double> x) {
  if (static_cast<Eigen::Index>(x.size()) != m.dim()) {
    throw InputError("input has dimension " + std::to_string(x.size()) +
                     ", model expects " + std::to_string(m.dim()));
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw InputError("input contains non-finite values");
  }
  const Eigen::VectorXd v = scaled(m, x);
  const std::span<const double> vs(v.data(), static_cast<std::size_t>(v.size()));
  double sum = 0.0;
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    sum += m.coeffs(i) * eval_kernel(m.kernel, row_span(m.inputs, i), vs);
  }
  return sum;
}

int classify(const TrainedModel& m, std::span<const double> x) {
  return sign_label(decision_value(m, x));
}

std::vector<int> classify_all(const TrainedModel& m, const PointMatrix& x) {
  std::vector<int> out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    out[static_cast<std::size_t>(i)] = classify(m, row_span(x, i));
  }
  return out;
}

Accuracy evaluate(const TrainedModel& m, const Dataset& data) {
  Accuracy acc;
  acc.total = data.size();
  const auto predicted = classify_all(m, data.inputs);
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] == data.labels[i]) ++acc.correct;
  }
  return acc;
}

double rkhs_norm_sq(const GramMatrix& a, const Eigen::VectorXd& c) {
  if (c.size() != a.size()) throw InputError("rkhs_norm_sq: dimension mismatch");
  const double value = c.dot(a.matrix() * c);
  if (value < -1e-12) {
    throw DefinitenessError("rkhs_norm_sq: negative quadratic form " +
                            std::to_string(value));
  }
  return value > 0.0 ? value : 0.0;
}

std::uint64_t start_seed(std::uint64_t seed, int index) {
  return derive_seed(seed, static_cast<std::uint64_t>(index));
}

MultiStartResult train_multistart(const Dataset& data, const KernelSpec& kernel,
                                  const MarginLoss& loss, const AdmmConfig& cfg,
                                  int starts, std::uint64_t seed,
                                  const TrainOptions& options) {
  if (starts < 1) throw InputError("starts must be >= 1");
  validate(data);
  validate(kernel);
  validate(cfg);

  PointMatrix inputs = data.inputs;
  if (options.scaling) {
    if (options.scaling->means.size() != data.dim() ||
        options.scaling->stds.size() != data.dim()) {
      throw InputError("feature scaling has wrong dimension");
    }
    inputs = apply_scaling(*options.scaling, data.inputs);
  }
  const GramMatrix a = gram(kernel, inputs, options.allow_jitter);
  const RiskData risk{loss, data.labels};

  MultiStartResult out;
  AdmmConfig run_cfg = cfg;
  if (cfg.check_descent || cfg.enforce_rho_condition != RhoCheck::off) {
    out.lambda_min = min_eigenvalue(a);
    const auto cond = check_rho_condition(cfg, *out.lambda_min);
    if (!cond.satisfied && cfg.enforce_rho_condition != RhoCheck::off) {
      const std::string msg =
          "rho = " + format_double(cfg.rho) +
          " does not exceed 4*lambda/lambda_min(A) = " +
          format_double(cond.threshold) +
          "; the global convergence guarantee does not apply";
      if (cfg.enforce_rho_condition == RhoCheck::error) {
        throw RhoConditionError(msg);
      }
      warn(msg);
    }
    // Reported once above rather than once per start.
    run_cfg.enforce_rho_condition = RhoCheck::off;
  }

  bool have_best = false;
  double best_objective = 0.0;
  std::string failures;
  for (int s = 0; s < starts; ++s) {
    StartSummary summary;
    summary.index = s;
    summary.seed = start_seed(seed, s);
    try {
      const AdmmState init = random_initial_state(a, cfg.lambda, summary.seed);
      AdmmResult run = admm_run(risk, a, run_cfg, init, out.lambda_min);
      summary.ok = true;
      summary.iterations = static_cast<int>(run.trace.size());
      summary.residual = run.trace.empty() ? 0.0 : run.trace.back().residual;
      summary.converged = run.status == AdmmStatus::converged;
      summary.objective =
          regularized_objective(risk, a, cfg.lambda, run.state.c);
      if (!have_best || summary.objective < best_objective) {
        have_best = true;
        best_objective = summary.objective;
        out.best = s;
        out.best_run = std::move(run);
      }
    } catch (const Error& e) {
      summary.error = e.what();
      failures += "\n  start " + std::to_string(s) + ": " + e.what();
    }
    out.starts.push_back(std::move(summary));
  }
  if (!have_best) throw TrainingError("all starts failed:" + failures);

  const StartSummary& best = out.starts[static_cast<std::size_t>(out.best)];
  TrainedModel& m = out.model;
  m.kernel = kernel;
  m.lambda = cfg.lambda;
  m.inputs = std::move(inputs);
  m.coeffs = out.best_run.state.c;
  m.meta = {std::string(loss.name()), cfg.rho, best.converged, best.residual,
            best.objective};
  m.scaling = options.scaling;
  return out;
}

void write_model(std::ostream& out, const TrainedModel& m) {
  validate(m);
  out << "lscsvm-model " << kModelFormatVersion << '\n';
  out << "kernel " << to_string(m.kernel.family) << ' '
      << format_double(m.kernel.sigma) << '\n';
  out << "lambda " << format_double(m.lambda) << '\n';
  out << "loss " << (m.meta.loss.empty() ? "-" : m.meta.loss) << '\n';
  out << "rho " << format_double(m.meta.rho) << '\n';
  out << "converged " << (m.meta.converged ? 1 : 0) << '\n';
  out << "residual " << format_double(m.meta.residual) << '\n';
  out << "objective " << format_double(m.meta.objective) << '\n';
  out << "scaling " << (m.scaling ? 1 : 0) << '\n';
  if (m.scaling) {
    out << "means";
    for (double v : m.scaling->means) out << ' ' << format_double(v);
    out << "\nstds";
    for (double v : m.scaling->stds) out << ' ' << format_double(v);
    out << '\n';
  }
  out << "n " << m.size() << '\n';
  out << "d " << m.dim() << '\n';
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    for (Eigen::Index j = 0; j < m.dim(); ++j) {
      out << format_double(m.inputs(i, j)) << ' ';
    }
    out << format_double(m.coeffs(i)) << '\n';
  }
}

TrainedModel read_model(std::istream& in) {
  ModelReader r(in);
  TrainedModel m;

  auto header = r.next_fields();
  if (header.size() != 2 || header[0] != "lscsvm-model") {
    r.fail("not a model file (missing 'lscsvm-model' header)");
  }
  const auto version = r.integer(header[1], "version");
  if (version != kModelFormatVersion) {
    throw VersionError("unsupported model format version " +
                       std::to_string(version) + " (expected " +
                       std::to_string(kModelFormatVersion) + ")");
  }

  auto kernel = r.expect("kernel", 2);
  const auto family = parse_kernel_family(kernel[1]);
  if (!family) r.fail("unknown kernel family '" + kernel[1] + "'");
  m.kernel = {*family, r.real(kernel[2], "sigma")};
  m.lambda = r.real(r.expect("lambda", 1)[1], "lambda");
  m.meta.loss = r.expect("loss", 1)[1];
  m.meta.rho = r.real(r.expect("rho", 1)[1], "rho");
  m.meta.converged = r.integer(r.expect("converged", 1)[1], "converged") != 0;
  m.meta.residual = r.real(r.expect("residual", 1)[1], "residual");
  m.meta.objective = r.real(r.expect("objective", 1)[1], "objective");
  const bool has_scaling = r.integer(r.expect("scaling", 1)[1], "scaling") != 0;

  // means/stds come before n and d, so their length is checked afterwards.
  std::vector<double> means, stds;
  if (has_scaling) {
    auto mf = r.next_fields();
    if (mf.empty() || mf[0] != "means") r.fail("expected 'means'");
    for (std::size_t k = 1; k < mf.size(); ++k) means.push_back(r.real(mf[k], "means"));
    auto sf = r.next_fields();
    if (sf.empty() || sf[0] != "stds") r.fail("expected 'stds'");
    for (std::size_t k = 1; k < sf.size(); ++k) stds.push_back(r.real(sf[k], "stds"));
  }

  const auto n = r.integer(r.expect("n", 1)[1], "n");
  const auto d = r.integer(r.expect("d", 1)[1], "d");
  if (n < 1 || d < 1) r.fail("n and d must be positive");
  if (has_scaling) {
    if (static_cast<long long>(means.size()) != d ||
        static_cast<long long>(stds.size()) != d) {
      throw ValidationError("scaling vectors have length " +
                            std::to_string(means.size()) + "/" +
                            std::to_string(stds.size()) + ", expected " +
                            std::to_string(d));
    }
    m.scaling = FeatureScaling{
        Eigen::Map<Eigen::VectorXd>(means.data(), d),
        Eigen::Map<Eigen::VectorXd>(stds.data(), d)};
  }

  m.inputs.resize(n, d);
  m.coeffs.resize(n);
  for (long long i = 0; i < n; ++i) {
    auto row = r.next_fields();
    if (static_cast<long long>(row.size()) == d) {
      throw ValidationError("row " + std::to_string(i + 1) +
                            " has no coefficient: fewer coefficients than "
                            "inputs");
    }
    if (static_cast<long long>(row.size()) != d + 1) {
      r.fail("row has " + std::to_string(row.size()) + " fields, expected " +
             std::to_string(d + 1));
    }
    for (long long j = 0; j < d; ++j) {
      m.inputs(i, j) = r.real(row[static_cast<std::size_t>(j)], "feature");
    }
    m.coeffs(i) = r.real(row.back(), "coefficient");
  }
  // Anything after the last row must be blank.
  std::string rest;
  while (std::getline(in, rest)) {
    if (rest.find_first_not_of(" \t\r") != std::string::npos) {
      throw ValidationError("more rows than n = " + std::to_string(n) +
                            ": more coefficients than declared inputs");
    }
  }
  validate(m);
  return m;
}

void save_model(const TrainedModel& m, const std::filesystem::path& path) {
  validate(m);
  write_atomically(path, [&m](std::ostream& out) { write_model(out, m); });
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return read_model(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

}  // namespace lscsvm
