#ifndef LSCSVM_DATA_HPP_
#define LSCSVM_DATA_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <utility>
#include <vector>

#include "lscsvm/kernel.hpp"

namespace lscsvm {

// Labelled training or test data: one input per row, labels in {+1, -1}.
struct Dataset {
  PointMatrix inputs;
  std::vector<int> labels;

  Eigen::Index size() const { return inputs.rows(); }
  Eigen::Index dim() const { return inputs.cols(); }
};

// Throws ValidationError unless N >= 1, labels are +-1, sizes agree and all
// features are finite.
void validate(const Dataset& data);

// Two-class synthetic problem: half the points uniform on [-3, 10]^2 with
// label +1, half uniform on [-10, 3]^2 with label -1. The +1 points come
// first. Counts must be even and >= 2.
std::pair<Dataset, Dataset> generate_synthetic(int n_train, int n_test,
                                               std::uint64_t seed);

// Comma-separated rows, label in the last column ("1", "+1" or "-1"). A
// first row containing a non-numeric field is taken as a header. Blank lines
// are skipped; CRLF line endings are accepted.
Dataset parse_csv(std::istream& in);
Dataset load_csv(const std::filesystem::path& path);

// Feature-only variant used for prediction input.
PointMatrix parse_features_csv(std::istream& in);
PointMatrix load_features_csv(const std::filesystem::path& path);

// Writes features and labels with 17 significant digits, no header.
void write_csv(std::ostream& out, const Dataset& data);

struct Standardized {
  Dataset train;
  std::vector<Dataset> others;
  Eigen::VectorXd means;
  Eigen::VectorXd stds;
};

// Per-feature z-scoring with statistics (population std) of train only.
// Features with std < 1e-12 are centred but not scaled.
Standardized standardize(const Dataset& train,
                         const std::vector<Dataset>& others = {});

inline constexpr double kMinFeatureStd = 1e-12;

}  // namespace lscsvm

#endif  // LSCSVM_DATA_HPP_
