#ifndef ACASIMIR_CLI_HPP
#define ACASIMIR_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace acasimir {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCompute = 3;

/// Runs `acasimir <force|sweep|dos|energy|sphere-plane> --config PATH
/// [--out PATH] [--method adaptive|series|mode-sum] [--override k=v]...`.
///
/// `args` excludes the program name. The CSV goes to the output path via a
/// temporary file and rename; the effective configuration is written next to
/// it as `<out>.config`. Returns 0, 2 (usage or config error) or 3
/// (computation error).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace acasimir

#endif  // ACASIMIR_CLI_HPP
