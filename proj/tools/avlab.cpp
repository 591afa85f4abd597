// avlab command line front end: subcommand + plain-text config file.

#include "avlab/runner.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

constexpr const char* kUsage = R"(usage: avlab <subcommand> [config.txt] [--out DIR] [--no-timestamp]

subcommands:
  constants    print the closed-form constants for (n, p)
  energy       affine energy report of a field (input or synthesized)
  eigen        principal eigenvalue solve
  solve        subcritical least-energy solve
  scan-lambda  radial critical-level sweep over lambda
  verify       run the property suite (level = fast|full)
  dump-field   write a synthesized field file
  heatmap      render a field file as a P2 pixmap

The config file holds `key = value` lines with `#` comments. Every run
echoes its resolved configuration into the output directory.
)";

}  // namespace

int main(int argc, char** argv) {
    std::string subcommand, config_path, out_override;
    bool no_timestamp = false;

    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--help" || a == "-h") {
            std::cout << kUsage;
            return 0;
        } else if (a == "--no-timestamp") {
            no_timestamp = true;
        } else if (a == "--out") {
            if (i + 1 >= argc) {
                std::cerr << "error: --out needs a directory\n";
                return avlab::kValidationError;
            }
            out_override = argv[++i];
        } else if (subcommand.empty()) {
            subcommand = a;
        } else if (config_path.empty()) {
            config_path = a;
        } else {
            std::cerr << "error: unexpected argument '" << a << "'\n" << kUsage;
            return avlab::kValidationError;
        }
    }
    if (subcommand.empty()) {
        std::cerr << kUsage;
        return avlab::kValidationError;
    }

    std::string text;
    if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) {
            std::cerr << "error: cannot read config file " << config_path << '\n';
            return avlab::kValidationError;
        }
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }

    avlab::RunConfig cfg;
    try {
        cfg = avlab::parse_config(text);
    } catch (const avlab::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return avlab::kParseError;
    }

    if (!cfg.subcommand.empty() && cfg.subcommand != subcommand) {
        std::cerr << "error: config subcommand '" << cfg.subcommand
                  << "' does not match the requested '" << subcommand << "'\n";
        return avlab::kValidationError;
    }
    cfg.subcommand = subcommand;
    if (!out_override.empty()) cfg.out = out_override;
    if (no_timestamp) cfg.timestamp = false;

    return avlab::run(cfg);
}
