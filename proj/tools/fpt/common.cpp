#include "common.hpp"

#include <cstdio>
#include <exception>

#include "oufpt/errors.hpp"

#ifndef OUFPT_VERSION
#define OUFPT_VERSION "unknown"
#endif

namespace fpt {

void ProcessArgs::add_to(CLI::App& app) {
    app.add_option("--theta", theta, "Time constant theta > 0");
    app.add_option("--mu", mu, "Drift level; the process reverts to mu*theta");
    app.add_option("--sigma2", sigma2, "Infinitesimal variance > 0");
    app.add_option("--x0", x0, "Start value, below the threshold");
    auto* s = app.add_option("--S", S, "Constant threshold");
    auto* a = app.add_option("--d1", d1, "Exponential-family threshold coefficient d1 = S(0)");
    auto* b = app.add_option("--d2", d2, "Exponential-family threshold coefficient d2");
    auto* c = app.add_option("--threshold-csv", threshold_csv, "Tabulated threshold: two columns t,S")
                  ->check(CLI::ExistingFile);
    s->excludes(a)->excludes(b)->excludes(c);
    c->excludes(a)->excludes(b);
}

oufpt::OUParams ProcessArgs::params(const oufpt::OUParams& fallback) const {
    oufpt::OUParams p{theta.value_or(fallback.theta), mu.value_or(fallback.mu), sigma2.value_or(fallback.sigma2)};
    p.validate();
    return p;
}

oufpt::Threshold ProcessArgs::threshold() const {
    if (S) return oufpt::ConstantThreshold{*S};
    if (d1 || d2) {
        if (!d1) throw oufpt::DomainError("exponential threshold needs --d1 (S(0))");
        return oufpt::ExpThreshold{*d1, d2.value_or(0.0)};
    }
    if (!threshold_csv.empty()) return oufpt::io::read_threshold_csv(threshold_csv);
    throw oufpt::DomainError("a threshold is required: --S, --d1/--d2 or --threshold-csv");
}

void ProcessArgs::record_given(std::map<std::string, std::string>& out) const {
    const std::pair<const char*, const std::optional<double>*> fields[] = {
        {"theta", &theta}, {"mu", &mu}, {"sigma2", &sigma2}, {"x0", &x0}, {"S", &S}, {"d1", &d1}, {"d2", &d2}};
    for (const auto& [name, v] : fields)
        if (*v) out[name] = num(**v);
    if (!threshold_csv.empty()) out["threshold_csv"] = threshold_csv;
}

std::string num(double x) { return oufpt::io::format_double(x); }

void record(Params& out, const oufpt::OUParams& p, const oufpt::Threshold& th, double x0) {
    out["theta"] = num(p.theta);
    out["mu"] = num(p.mu);
    out["sigma2"] = num(p.sigma2);
    out["x0"] = num(x0);
    out["threshold"] = oufpt::io::threshold_json(th);
}

void write_outputs(const std::string& prefix, const std::string& command, const std::vector<std::string>& argv,
                   Params params, const std::vector<Artifact>& artifacts) {
    oufpt::io::RunManifest m;
    m.command = command;
    m.argv = argv;
    m.parameters = std::move(params);
    m.timestamp = oufpt::io::utc_timestamp();
    m.tool_version = OUFPT_VERSION;
    for (const auto& a : artifacts) {
        const std::string path = prefix + a.suffix;
        oufpt::io::write_atomic(path, a.content);
        m.artifacts.push_back(path);
    }
    oufpt::io::write_atomic(prefix + ".manifest.json", m.to_json());
}

int run(const std::vector<std::string>& args) {
    CLI::App app{"Ornstein-Uhlenbeck first-passage-time densities from the parabolic-cylinder integral equation",
                 "fpt"};
    app.set_version_flag("--version", std::string("fpt ") + OUFPT_VERSION);
    app.require_subcommand(1);

    Invocation inv;
    if (args.size() > 1) {
        inv.command = args[1];
        inv.argv.assign(args.begin() + 2, args.end());
    }
    int status = kOk;
    register_density(app, status, inv);
    register_validate(app, status, inv);
    register_mc(app, status, inv);
    register_special(app, status, inv);
    register_replay(app, status, inv);

    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    } catch (const oufpt::NumericalError& e) {
        std::fprintf(stderr, "fpt: numerical failure: %s\n", e.what());
        return kNumericalFailure;
    } catch (const oufpt::DomainError& e) {
        std::fprintf(stderr, "fpt: invalid input: %s\n", e.what());
        return kInputError;
    } catch (const oufpt::RangeError& e) {
        std::fprintf(stderr, "fpt: invalid input: %s\n", e.what());
        return kInputError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "fpt: error: %s\n", e.what());
        return kInputError;
    }
    return status;
}

}  // namespace fpt
