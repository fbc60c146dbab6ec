#include <cstdio>
#include <memory>

#include "common.hpp"
#include "oufpt/errors.hpp"
#include "oufpt/kernel.hpp"
#include "oufpt/solver.hpp"

namespace fpt {

namespace {

struct DensityArgs {
    ProcessArgs proc;
    double q = 1.0;
    std::optional<double> x;
    double t_max = 5.0;
    std::size_t n_steps = 512;
    std::string scheme;
    double tol_negative = 1e-8;
    std::string out;
};

int cmd_density(const DensityArgs& a, const Invocation& inv) {
    oufpt::KernelSpec spec;
    spec.params = a.proc.params({1.0, 0.0, 1.0});
    spec.threshold = a.proc.threshold();
    spec.x0 = a.proc.start(0.0);
    spec.q = a.q;
    spec.abscissa = a.x ? oufpt::Abscissa::fixed(*a.x) : oufpt::Abscissa::boundary();
    spec.validate();

    oufpt::SolverConfig cfg;
    cfg.n_steps = a.n_steps;
    cfg.t_max = a.t_max;
    cfg.tol_negative = a.tol_negative;
    if (a.scheme.empty()) {
        cfg.scheme = spec.is_second_kind() ? oufpt::Scheme::ProductTrapezoid : oufpt::Scheme::MidpointFirstKind;
    } else {
        const auto s = oufpt::parse_scheme(a.scheme);
        if (!s) throw oufpt::DomainError("unknown scheme '" + a.scheme + "'");
        cfg.scheme = *s;
    }
    cfg.validate();

    const auto curve = oufpt::solve(spec, cfg);
    std::fprintf(stderr, "density: %zu nodes, scheme %s, mass %.6f on [0, %g]\n", curve.size(),
                 std::string(oufpt::to_string(cfg.scheme)).c_str(), curve.mass(), cfg.t_max);

    const std::string csv = oufpt::io::density_csv(curve);
    if (a.out.empty()) {
        std::fputs(csv.c_str(), stdout);
        return kOk;
    }
    Params params;
    record(params, spec.params, spec.threshold, spec.x0);
    params["q"] = num(spec.q);
    params["on_boundary"] = spec.abscissa.on_boundary ? "true" : "false";
    if (!spec.abscissa.on_boundary) params["x"] = num(spec.abscissa.x);
    params["scheme"] = std::string(oufpt::to_string(cfg.scheme));
    params["n_steps"] = std::to_string(cfg.n_steps);
    params["t_max"] = num(cfg.t_max);
    params["tol_negative"] = num(cfg.tol_negative);
    write_outputs(a.out, inv.command, inv.argv, std::move(params),
                  {{".csv", csv}, {".json", oufpt::io::density_json(curve)}});
    return kOk;
}

}  // namespace

void register_density(CLI::App& app, int& status, const Invocation& inv) {
    auto args = std::make_shared<DensityArgs>();
    auto* sub = app.add_subcommand("density", "Solve for the first-passage-time density");
    args->proc.add_to(*sub);
    sub->add_option("--q", args->q, "Order of the parabolic cylinder kernel")->capture_default_str();
    sub->add_option("--x", args->x, "Fixed evaluation level x >= S(t) (default: on the boundary)");
    sub->add_option("--t-max", args->t_max, "Time horizon")->capture_default_str();
    sub->add_option("--n-steps", args->n_steps, "Number of grid steps")->capture_default_str();
    sub->add_option("--scheme", args->scheme,
                    "product-trapezoid | block-by-block | midpoint-first-kind (default by equation kind)");
    sub->add_option("--tol-negative", args->tol_negative, "Allowed negative excursion relative to max g")
        ->capture_default_str();
    sub->add_option("--out", args->out, "Output prefix: writes PREFIX.csv, PREFIX.json, PREFIX.manifest.json");
    sub->callback([args, &status, &inv] { status = cmd_density(*args, inv); });
}

}  // namespace fpt
