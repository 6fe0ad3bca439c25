#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "stokeshs/quadrature.hpp"

namespace stokeshs::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScanParams {
    double r = 0.25;
    std::vector<double> deltas = {1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
    int component = 1;        ///< 1-based component index (1 = tangential, n = normal)
    bool full_gradient = false;
};

/// Effective run configuration: defaults, overridden by the config file
/// ([run]/[quad]/[field]/[scan] sections), then by STOKESHS_SECTION_KEY
/// environment variables, then by command-line flags.
struct RunConfig {
    int dim = 2;
    double alpha = 1.0;
    double eps = 0.05;
    quad::Config quad;        ///< kernel-identity level tolerances
    quad::Config field_quad;  ///< outer budget of nested field evaluations
    ScanParams scan;
    std::string output_dir = ".";
    long seed = 12345;
    bool deterministic = true;

    RunConfig();

    /// parse an INI-style file; unknown keys or sections are rejected
    static RunConfig load(const std::string& path);
    /// apply STOKESHS_SECTION_KEY environment overrides
    void apply_env();
    void validate() const;
    /// flat key=value lines embedded into every CSV header
    std::vector<std::string> describe() const;
};

/// parse a comma-separated list of reals (for --deltas)
std::vector<double> parse_double_list(const std::string& s);

}  // namespace stokeshs::cli
