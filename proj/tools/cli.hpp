#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "figura/config.hpp"

namespace figura::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Config::EnvLookup& env = Config::process_environment());

// RFC 4180 field quoting.
std::string csv_field(std::string_view value);

}  // namespace figura::cli
