#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dimer::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitCaveat = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitFile = 66;

inline constexpr const char *kSchema = "dimer-report/1";

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// Embedded fixture corpus, name -> contents.
const std::vector<std::pair<std::string, std::string>> &embedded_fixtures();

}  // namespace dimer::cli
