#include <fstream>

#include "iflux/error.hpp"
#include "iflux/study.hpp"

namespace iflux {

void emit(const ConvergenceTable& table, TableFormat format, const std::string& path) {
  const std::string text = format_table(table, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed while writing '" + path + "'");
}

}  // namespace iflux
