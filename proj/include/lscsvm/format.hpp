#ifndef LSCSVM_FORMAT_HPP_
#define LSCSVM_FORMAT_HPP_

#include <string>
#include <string_view>

namespace lscsvm {

// Shortest-safe round-trip text for a double: 17 significant digits.
std::string format_double(double value);

// Parses the whole of text (surrounding blanks ignored) as a double.
// Accepts a leading '+'.
bool parse_double(std::string_view text, double& value);

}  // namespace lscsvm

#endif  // LSCSVM_FORMAT_HPP_
