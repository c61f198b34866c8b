#ifndef LSCSVM_IO_HPP_
#define LSCSVM_IO_HPP_

#include <filesystem>
#include <functional>
#include <iosfwd>

namespace lscsvm {

// Writes through a temporary sibling file and renames it over path, so a
// failed write never leaves a partial file behind.
void write_atomically(const std::filesystem::path& path,
                      const std::function<void(std::ostream&)>& writer);

}  // namespace lscsvm

#endif  // LSCSVM_IO_HPP_
