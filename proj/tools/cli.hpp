#ifndef LSCSVM_TOOLS_CLI_HPP_
#define LSCSVM_TOOLS_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>

namespace lscsvm::cli {

// Everything a subcommand needs, collected from the command line.
struct RunConfig {
  std::string command;
  std::string loss = "hinge";
  std::string kernel = "gaussian";
  double sigma = 1.0;
  double lambda = 0.1;
  double rho = 0.05;
  double eps0 = 1e-12;
  int max_iter = 10000;
  int starts = 20;
  std::uint64_t seed = 0;
  std::string train_path;
  std::string test_path;
  std::string model_path;
  std::string trace_path;
  std::string output_path;
  bool standardize = false;
  bool jitter = false;
  std::string check_rho = "warn";
  int n_train = 300;
  int n_test = 120;
  std::string table;
};

int cmd_gen_data(const RunConfig& cfg, std::ostream& out);
int cmd_train(const RunConfig& cfg, std::ostream& out);
int cmd_predict(const RunConfig& cfg, std::ostream& out);
int cmd_evaluate(const RunConfig& cfg, std::ostream& out);
int cmd_reproduce(const RunConfig& cfg, std::ostream& out);

// Parses argv and dispatches. Returns the process exit status; library
// errors are reported on err with status 1.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace lscsvm::cli

#endif  // LSCSVM_TOOLS_CLI_HPP_
