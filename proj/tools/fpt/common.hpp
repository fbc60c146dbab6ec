#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "oufpt/io.hpp"
#include "oufpt/process.hpp"

namespace fpt {

enum Exit : int { kOk = 0, kValidationFailed = 1, kInputError = 2, kNumericalFailure = 3 };

// Process and threshold flags shared by density, mc and validate. Unset values
// fall back to per-command defaults.
struct ProcessArgs {
    std::optional<double> theta, mu, sigma2, x0;
    std::optional<double> S, d1, d2;
    std::string threshold_csv;

    void add_to(CLI::App& app);
    oufpt::OUParams params(const oufpt::OUParams& fallback = {}) const;
    double start(double fallback) const { return x0.value_or(fallback); }
    bool has_threshold() const { return S || d1 || d2 || !threshold_csv.empty(); }
    // Throws DomainError when no threshold was given.
    oufpt::Threshold threshold() const;
    // Record the flags that were given explicitly.
    void record_given(std::map<std::string, std::string>& out) const;
};

using Params = std::map<std::string, std::string>;

std::string num(double x);
void record(Params& out, const oufpt::OUParams& p, const oufpt::Threshold& th, double x0);

struct Artifact {
    std::string suffix;  // appended to the --out prefix
    std::string content;
};

// Write artifacts and a manifest listing them under `prefix`.
void write_outputs(const std::string& prefix, const std::string& command, const std::vector<std::string>& argv,
                   Params params, const std::vector<Artifact>& artifacts);

struct Invocation {
    std::string command;
    std::vector<std::string> argv;  // arguments after the command
};

// Entry point shared by main and replay.
int run(const std::vector<std::string>& args);

void register_density(CLI::App& app, int& status, const Invocation& inv);
void register_validate(CLI::App& app, int& status, const Invocation& inv);
void register_mc(CLI::App& app, int& status, const Invocation& inv);
void register_special(CLI::App& app, int& status, const Invocation& inv);
void register_replay(CLI::App& app, int& status, const Invocation& inv);

}  // namespace fpt
