#ifndef LSCSVM_LOG_HPP_
#define LSCSVM_LOG_HPP_

#include <functional>
#include <string>
#include <string_view>

namespace lscsvm {

using WarningSink = std::function<void(std::string_view)>;

// Replaces the process-wide warning sink and returns the previous one.
// The default sink writes "warning: <msg>" lines to stderr.
WarningSink set_warning_sink(WarningSink sink);

void warn(std::string_view message);

}  // namespace lscsvm

#endif  // LSCSVM_LOG_HPP_
