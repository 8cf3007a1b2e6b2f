#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace malle {

/// Directory holding the shipped databases: $MALLE_DB_PATH when it names a
/// directory, otherwise the data directory fixed at build time.
std::filesystem::path data_directory();

/// Databases used when no --db is given. $MALLE_DB_PATH may also name a
/// single file.
std::vector<std::filesystem::path> default_databases();

/// The command-line tool. Usage errors return 2, computation errors 1.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace malle
