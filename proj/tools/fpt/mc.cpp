#include <cstdio>
#include <memory>

#include "common.hpp"
#include "oufpt/errors.hpp"
#include "oufpt/mc_oracle.hpp"

namespace fpt {

namespace {

struct McArgs {
    ProcessArgs proc;
    oufpt::MCConfig cfg;
    std::optional<std::uint64_t> seed;
    std::string bridge = "on";
    std::string out;
};

int cmd_mc(McArgs& a, const Invocation& inv) {
    const auto p = a.proc.params({1.0, 0.0, 1.0});
    a.cfg.bridge = a.bridge == "on";
    a.cfg.validate(p);
    if (!a.seed) throw oufpt::DomainError("--seed is required; Monte Carlo runs are never seeded from entropy");
    a.cfg.seed = *a.seed;
    const auto th = a.proc.threshold();
    const double x0 = a.proc.start(0.0);

    const auto est = oufpt::simulate_fpt(p, th, x0, a.cfg);
    std::fprintf(stderr, "mc: %llu paths, %llu absorbed (%.4f), mean passage %.6g\n",
                 static_cast<unsigned long long>(est.n_paths), static_cast<unsigned long long>(est.n_absorbed),
                 est.absorbed_fraction(), est.mean_fpt);

    const std::string csv = oufpt::io::mc_csv(est);
    if (a.out.empty()) {
        std::fputs(csv.c_str(), stdout);
        return kOk;
    }
    Params params;
    record(params, p, th, x0);
    params["n_paths"] = std::to_string(a.cfg.n_paths);
    params["dt"] = num(a.cfg.dt);
    params["t_max"] = num(a.cfg.t_max);
    params["seed"] = std::to_string(a.cfg.seed);
    params["n_bins"] = std::to_string(a.cfg.n_bins);
    params["bridge"] = a.bridge;
    params["block_size"] = std::to_string(a.cfg.block_size);
    params["generator"] = est.generator;
    write_outputs(a.out, inv.command, inv.argv, std::move(params),
                  {{".csv", csv}, {".json", oufpt::io::mc_json(est, p, th, x0)}});
    return kOk;
}

}  // namespace

void register_mc(CLI::App& app, int& status, const Invocation& inv) {
    auto args = std::make_shared<McArgs>();
    auto* sub = app.add_subcommand("mc", "Monte Carlo histogram of first-passage times");
    args->proc.add_to(*sub);
    auto& c = args->cfg;
    sub->add_option("--n-paths", c.n_paths, "Number of paths (>= 10000)")->capture_default_str();
    sub->add_option("--dt", c.dt, "Time step (<= theta/100)")->capture_default_str();
    sub->add_option("--t-max", c.t_max, "Horizon; survivors beyond it are not binned")->capture_default_str();
    sub->add_option("--seed", args->seed, "64-bit seed (required)");
    sub->add_option("--n-bins", c.n_bins, "Histogram bins on [0, t-max]")->capture_default_str();
    sub->add_option("--bridge", args->bridge, "Bridge crossing correction")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    sub->add_option("--block-size", c.block_size, "Paths per random substream")->capture_default_str();
    sub->add_option("--threads", c.threads, "Worker threads (0: FPT_THREADS or hardware)")->capture_default_str();
    sub->add_option("--out", args->out, "Output prefix: writes PREFIX.csv, PREFIX.json, PREFIX.manifest.json");
    sub->callback([args, &status, &inv] { status = cmd_mc(*args, inv); });
}

}  // namespace fpt
