#pragma once

#include "avlab/geometry.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace avlab {

/// Validated run configuration assembled from a `key = value` file.
/// Unknown keys, duplicates and malformed lines are ParseErrors; violated
/// value constraints are ValidationErrors naming the constraint.
struct RunConfig {
    std::string subcommand;

    // domain
    std::string domain = "disk";  // disk|ball|square|rectangle|ellipse|polygon
    double radius = 1.0;
    Vec center;
    Vec half_axes;
    std::vector<Eigen::Vector2d> vertices;

    int n = 2;
    double p = 2.0;
    double q = 0.0;  // 0 = critical exponent
    double lambda = 0.0;
    double lambda_min = 0.0, lambda_max = 0.0;
    int lambda_steps = 10;

    double h = 1.0 / 32.0;
    int m = 0;  // 0 = dimension default
    int radial_nodes = 2000;

    int max_iter = 20000;
    double tol_rel = 1e-8;
    int restarts = 5;
    std::uint64_t seed = 12345;
    bool classical = false;
    bool allow_critical = false;

    std::string out = "out";
    std::string field;   // input field path (energy, heatmap)
    std::string kind = "bump";  // dump-field synthesis
    std::string output = "field";
    std::string level = "fast";  // verify level
    bool timestamp = true;

    DomainSpec domain_spec() const;

    /// Deterministic `key = value` echo of every resolved setting.
    std::string resolved() const;
};

RunConfig parse_config(const std::string& text);

/// Subcommand-specific constraint checks (exponent ranges, required inputs).
void validate_config(const RunConfig& cfg);

}  // namespace avlab
