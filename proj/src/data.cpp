#include "lscsvm/data.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "lscsvm/errors.hpp"
#include "lscsvm/format.hpp"
#include "lscsvm/random.hpp"

namespace lscsvm {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool parse_label(std::string_view field, int& label) {
  if (field == "1" || field == "+1") {
    label = 1;
    return true;
  }
  if (field == "-1") {
    label = -1;
    return true;
  }
  return false;
}

bool row_is_numeric(const std::vector<std::string_view>& fields) {
  double ignored;
  for (auto f : fields) {
    if (!parse_double(f, ignored)) return false;
  }
  return true;
}

// Reads non-blank lines, dropping an auto-detected header. Line numbers are
// 1-based positions in the file.
std::vector<std::pair<std::size_t, std::string>> read_rows(std::istream& in) {
  std::vector<std::pair<std::size_t, std::string>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (first) {
      first = false;
      if (!row_is_numeric(split_fields(line))) continue;
    }
    rows.emplace_back(line_no, std::move(line));
  }
  return rows;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

}  // namespace

void validate(const Dataset& data) {
  if (data.size() < 1) throw ValidationError("dataset is empty");
  if (data.dim() < 1) throw ValidationError("dataset has no features");
  if (static_cast<Eigen::Index>(data.labels.size()) != data.size()) {
    throw ValidationError("dataset has " + std::to_string(data.size()) +
                          " inputs but " + std::to_string(data.labels.size()) +
                          " labels");
  }
  for (std::size_t i = 0; i < data.labels.size(); ++i) {
    if (data.labels[i] != 1 && data.labels[i] != -1) {
      throw ValidationError("label " + std::to_string(data.labels[i]) +
                            " at row " + std::to_string(i) + " is not +-1");
    }
  }
  if (!data.inputs.allFinite()) {
    throw ValidationError("dataset contains non-finite features");
  }
}

std::pair<Dataset, Dataset> generate_synthetic(int n_train, int n_test,
                                               std::uint64_t seed) {
  if (n_train < 2 || n_test < 2 || n_train % 2 != 0 || n_test % 2 != 0) {
    throw InputError("generate_synthetic: counts must be even and >= 2, got " +
                     std::to_string(n_train) + " and " +
                     std::to_string(n_test));
  }
  Rng rng(seed);
  auto draw = [&rng](int n) {
    Dataset d;
    d.inputs.resize(n, 2);
    d.labels.resize(n);
    for (int i = 0; i < n; ++i) {
      const bool positive = i < n / 2;
      const double lo = positive ? -3.0 : -10.0;
      const double hi = positive ? 10.0 : 3.0;
      d.inputs(i, 0) = rng.uniform(lo, hi);
      d.inputs(i, 1) = rng.uniform(lo, hi);
      d.labels[i] = positive ? 1 : -1;
    }
    return d;
  };
  Dataset train = draw(n_train);
  Dataset test = draw(n_test);
  return {std::move(train), std::move(test)};
}

Dataset parse_csv(std::istream& in) {
  const auto rows = read_rows(in);
  if (rows.empty()) throw ParseError("no data rows", 0);

  const std::size_t arity = split_fields(rows.front().second).size();
  if (arity < 2) {
    throw ParseError("need at least one feature and a label column",
                     rows.front().first);
  }
  Dataset data;
  data.inputs.resize(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(arity - 1));
  data.labels.resize(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& [line_no, text] = rows[r];
    const auto fields = split_fields(text);
    if (fields.size() != arity) {
      throw ParseError("expected " + std::to_string(arity) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    for (std::size_t c = 0; c + 1 < arity; ++c) {
      double value;
      if (!parse_double(fields[c], value) || !std::isfinite(value)) {
        throw ParseError("field " + std::to_string(c + 1) + " '" +
                             std::string(fields[c]) + "' is not a finite number",
                         line_no);
      }
      data.inputs(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          value;
    }
    if (!parse_label(fields.back(), data.labels[r])) {
      throw ParseError("label '" + std::string(fields.back()) +
                           "' is not one of 1, +1, -1",
                       line_no);
    }
  }
  return data;
}

Dataset load_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return parse_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

PointMatrix parse_features_csv(std::istream& in) {
  const auto rows = read_rows(in);
  if (rows.empty()) throw ParseError("no data rows", 0);
  const std::size_t arity = split_fields(rows.front().second).size();
  PointMatrix points(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(arity));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& [line_no, text] = rows[r];
    const auto fields = split_fields(text);
    if (fields.size() != arity) {
      throw ParseError("expected " + std::to_string(arity) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    for (std::size_t c = 0; c < arity; ++c) {
      double value;
      if (!parse_double(fields[c], value) || !std::isfinite(value)) {
        throw ParseError("field " + std::to_string(c + 1) + " '" +
                             std::string(fields[c]) + "' is not a finite number",
                         line_no);
      }
      points(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = value;
    }
  }
  return points;
}

PointMatrix load_features_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return parse_features_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

void write_csv(std::ostream& out, const Dataset& data) {
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    for (Eigen::Index j = 0; j < data.dim(); ++j) {
      out << format_double(data.inputs(i, j)) << ',';
    }
    out << (data.labels[static_cast<std::size_t>(i)] > 0 ? "1" : "-1") << '\n';
  }
}

Standardized standardize(const Dataset& train,
                         const std::vector<Dataset>& others) {
  if (train.size() < 1) throw InputError("standardize: empty training set");
  const Eigen::Index d = train.dim();
  for (const auto& o : others) {
    if (o.dim() != d) throw InputError("standardize: dimension mismatch");
  }
  Standardized out;
  out.means = train.inputs.colwise().mean().transpose();
  out.stds.resize(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double var =
        (train.inputs.col(j).array() - out.means(j)).square().mean();
    out.stds(j) = std::sqrt(var);
  }
  auto apply = [&out, d](const Dataset& src) {
    Dataset dst = src;
    for (Eigen::Index j = 0; j < d; ++j) {
      auto col = dst.inputs.col(j).array();
      col -= out.means(j);
      if (out.stds(j) >= kMinFeatureStd) col /= out.stds(j);
    }
    return dst;
  };
  out.train = apply(train);
  out.others.reserve(others.size());
  for (const auto& o : others) out.others.push_back(apply(o));
  return out;
}

}  // namespace lscsvm
