#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace mcpde {

// Exit codes shared by the CLI: 0 success, 2 invalid configuration or
// arguments, 3 numeric failure (non-finite loss, no FD convergence).
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

int cmd_run(const std::string& config_path, const std::string& out_override,
            const std::string& resume_path, std::ostream& log);

int cmd_eval(const std::string& checkpoint_path, std::optional<int> grid_n,
             std::optional<double> r_value, const std::string& out_dir, std::ostream& log);

int cmd_oracle(const std::string& config_path, std::optional<int> nx_override,
               const std::string& out_path, std::ostream& log);

}  // namespace mcpde
