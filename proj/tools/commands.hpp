#pragma once

#include <string>
#include <vector>

#include "stokeshs/runconfig.hpp"

namespace stokeshs::cli {

// exit codes: 0 = all checks pass, 1 = mathematical check failed,
// 2 = numerical non-convergence, 3 = config error
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitNoConvergence = 2;
inline constexpr int kExitConfigError = 3;

int cmd_check_identities(const RunConfig& rc);
int cmd_field_eval(const RunConfig& rc, double x1, double x2, double xn, double t,
                   bool split, const std::string& csv_path);
int cmd_scan_blowup(const RunConfig& rc, bool self_test);
int cmd_norms(const RunConfig& rc);
int cmd_mollify_study(const RunConfig& rc, const std::vector<long>& k_list);
int cmd_helmholtz_probe(const RunConfig& rc);

}  // namespace stokeshs::cli
