#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <sstream>

#include "common.hpp"
#include "oufpt/errors.hpp"
#include "oufpt/kernel.hpp"
#include "oufpt/laplace_verify.hpp"
#include "oufpt/mc_oracle.hpp"
#include "oufpt/quadrature.hpp"
#include "oufpt/solver.hpp"
#include "oufpt/special_functions.hpp"

namespace fpt {

namespace {

struct ValidateArgs {
    ProcessArgs proc;
    std::string suite = "all";
    std::vector<double> q_list{-2.0, -1.0, -0.5, 0.0, 0.5, 1.0};
    std::vector<double> times{0.25, 0.5, 1.0, 2.0, 4.0};
    bool against_mc = false;
    std::uint64_t n_paths = 200'000;
    std::optional<std::uint64_t> seed;
    std::string out;
};

struct Row {
    std::string suite;
    std::string check;
    std::string inputs;
    double error = 0.0;  // measured deviation (relative unless stated by the check name)
    double tolerance = 0.0;
    bool pass = false;
};

class Report {
public:
    void add(std::string suite, std::string check, std::string inputs, double error, double tol) {
        rows_.push_back({std::move(suite), std::move(check), std::move(inputs), error, tol, error <= tol});
    }
    void add_flag(std::string suite, std::string check, std::string inputs, bool ok, double measure = 0.0) {
        rows_.push_back({std::move(suite), std::move(check), std::move(inputs), measure, 0.0, ok});
    }
    const std::vector<Row>& rows() const { return rows_; }
    std::string csv() const {
        std::string out = "suite,check,inputs,error,tolerance,pass\n";
        for (const auto& r : rows_)
            out += r.suite + ',' + r.check + ',' + r.inputs + ',' + num(r.error) + ',' + num(r.tolerance) + ',' +
                   (r.pass ? "1" : "0") + '\n';
        return out;
    }

private:
    std::vector<Row> rows_;
};

double rel(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

std::string kv(std::initializer_list<std::pair<const char*, double>> items) {
    std::string s;
    for (const auto& [k, v] : items) {
        if (!s.empty()) s += ';';
        s += std::string(k) + '=' + num(v);
    }
    return s;
}

void identities(Report& r) {
    double d0 = 0.0, d1 = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double z = -10.0 + 0.05 * i;
        const double e = std::exp(-0.25 * z * z);
        d0 = std::max(d0, rel(oufpt::pcf(0.0, z).value, e));
        d1 = std::max(d1, rel(oufpt::pcf(1.0, z).value, z * e));
    }
    r.add("identities", "D_0(z)=exp(-z^2/4)", "z=-10..10", d0, 1e-12);
    r.add("identities", "D_1(z)=z exp(-z^2/4)", "z=-10..10", d1, 1e-12);
    double zero = 0.0;
    for (int i = 0; i <= 690; ++i) {
        const double q = -6.0 + 0.01 * i;
        zero = std::max(zero, rel(oufpt::pcf(q, 0.0).value, oufpt::pcf_at_zero(q)));
    }
    r.add("identities", "D_q(0) closed form", "q=-6..0.9", zero, 1e-10);
    double recur = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double nu = -5.0 + 0.1 * i;
        for (int j = 0; j <= 160; ++j) {
            const double z = -8.0 + 0.1 * j;
            const double up = oufpt::pcf(nu + 1.0, z).value;
            const double mid = z * oufpt::pcf(nu, z).value;
            const double down = nu * oufpt::pcf(nu - 1.0, z).value;
            const double scale = std::max({std::abs(up), std::abs(mid), std::abs(down)});
            if (scale > 0.0) recur = std::max(recur, std::abs(up - mid + down) / scale);
        }
    }
    r.add("identities", "three-term recurrence", "nu=-5..5;z=-8..8", recur, 1e-8);
    r.add("identities", "log_gamma(6)=log 120", "x=6", rel(oufpt::log_gamma(6.0), std::log(120.0)), 1e-12);
    r.add("identities", "log_gamma(1/2)=log sqrt(pi)", "x=0.5",
          rel(oufpt::log_gamma(0.5), 0.5 * std::log(std::numbers::pi)), 1e-12);
}

void residual_suite(Report& r, const ValidateArgs& a) {
    const auto p = a.proc.params({1.0, 0.0, 2.0});
    const double x0 = a.proc.start(0.0);
    oufpt::Threshold th;
    std::function<double(double)> g;
    if (a.proc.S) {
        if (*a.proc.S != p.mean_level())
            throw oufpt::DomainError("residual suite needs a closed-form density: S = mu theta or --d1/--d2");
        th = oufpt::ConstantThreshold{*a.proc.S};
        g = [p, x0](double t) { return t > 0.0 ? oufpt::fpt_pdf_mean_threshold(p, x0, t) : 0.0; };
    } else {
        if (!a.proc.threshold_csv.empty()) throw oufpt::DomainError("residual suite has no closed form for a tabulated threshold");
        const double d1 = a.proc.d1.value_or(1.0), d2 = a.proc.d2.value_or(1.0);
        th = oufpt::ExpThreshold{d1, d2};
        g = [p, d1, d2, x0](double t) { return t > 0.0 ? oufpt::fpt_pdf_exp_threshold(p, d1, d2, x0, t) : 0.0; };
    }
    for (double q : a.q_list) {
        oufpt::KernelSpec s;
        s.q = q;
        s.threshold = th;
        s.params = p;
        s.x0 = x0;
        s.validate();
        for (const auto& pt : oufpt::residual(s, g, a.times)) {
            const double e = std::abs(pt.residual) / std::abs(pt.rhs);
            r.add("residual", pt.converged ? "|residual|/|R_q|" : "|residual|/|R_q| (quadrature unconverged)",
                  kv({{"q", q}, {"t", pt.t}}), pt.converged ? e : HUGE_VAL, 1e-6);
        }
    }
}

void laplace_suite(Report& r) {
    for (const auto& c : oufpt::transform_matrix()) {
        if (c.check.rhs_vanishes)
            r.add("laplace", c.family + " (vanishing side, |lhs|)", c.inputs, std::abs(c.check.lhs), 1e-10);
        else
            r.add("laplace", c.family, c.inputs, c.check.rel_err, 1e-6);
    }
    const oufpt::OUParams p{1.0, 0.0, 2.0};
    const double v = oufpt::fpt_laplace(p, 1.0, 0.0, 1e-8);
    r.add_flag("laplace", "fpt_laplace(1e-8) in [1-1e-4, 1]", "theta=1;mu=0;sigma2=2;S=1;x0=0",
               v >= 1.0 - 1e-4 && v <= 1.0, 1.0 - v);
    bool monotone = true;
    double prev = 1.0;
    for (double lambda = 0.01; lambda <= 20.0; lambda *= 1.25) {
        const double f = oufpt::fpt_laplace(p, 1.0, 0.0, lambda);
        monotone = monotone && f > 0.0 && f < prev;
        prev = f;
    }
    r.add_flag("laplace", "fpt_laplace positive and decreasing", "lambda=0.01..20", monotone);
    const oufpt::OUParams pm{1.0, 1.0, 2.0};
    auto g = [pm](double t) { return t > 0.0 ? oufpt::fpt_pdf_mean_threshold(pm, 0.0, t) : 0.0; };
    for (double q : {0.0, -1.0, 0.5}) {
        const auto c = oufpt::verify_convolution(pm, 1.0, 1.0, true, 0.0, q, 1.0, g, HUGE_VAL);
        r.add("laplace", "convolution (closed-form g)", kv({{"q", q}, {"lambda", 1.0}}), c.rel_err, 1e-4);
    }
}

// Bins with expected count >= 50 that lie within 3 binomial standard errors.
std::pair<int, int> mc_agreement(const oufpt::MCEstimate& est, const std::function<double(double)>& g) {
    int eligible = 0, within = 0;
    const double n = static_cast<double>(est.n_paths);
    for (std::size_t i = 0; i < est.counts.size(); ++i) {
        const double prob = oufpt::quad::integrate(g, est.bin_edges[i], est.bin_edges[i + 1]).value;
        if (n * prob < 50.0) continue;
        ++eligible;
        if (std::abs(static_cast<double>(est.counts[i]) - n * prob) <= 3.0 * std::sqrt(n * prob * (1.0 - prob)))
            ++within;
    }
    return {eligible, within};
}

void closed_form_suite(Report& r, const ValidateArgs& a) {
    const auto p = a.proc.params({1.0, 1.0, 2.0});
    const double S = p.mean_level();
    const double x0 = a.proc.start(S - 1.0);
    const double t_max = 5.0 * p.theta;
    auto mean_g = [p, x0](double t) { return t > 0.0 ? oufpt::fpt_pdf_mean_threshold(p, x0, t) : 0.0; };
    const std::string base = kv({{"theta", p.theta}, {"mu", p.mu}, {"sigma2", p.sigma2}, {"x0", x0}});
    for (auto sch : {oufpt::Scheme::ProductTrapezoid, oufpt::Scheme::BlockByBlock}) {
        const auto c = oufpt::solve_second_kind(p, S, x0, {512, t_max, sch});
        double e = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            const double w = mean_g(c.times[i]);
            e = std::max(e, std::abs(c.values[i] - w) / std::max(1.0, w));
        }
        r.add("closed-forms", std::string(oufpt::to_string(sch)) + " at S=mu theta (on grid)", base, e, 1e-12);
    }
    auto sup = [](const oufpt::DensityCurve& c, const std::function<double(double)>& g, double t_min) {
        double e = 0.0, m = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c.times[i] < t_min) continue;
            e = std::max(e, std::abs(c.values[i] - g(c.times[i])));
            m = std::max(m, std::abs(g(c.times[i])));
        }
        return e / m;
    };
    oufpt::KernelSpec s;
    s.q = -1.0;
    s.threshold = oufpt::ConstantThreshold{S};
    s.params = p;
    s.x0 = x0;
    r.add("closed-forms", "midpoint-first-kind q=-1 at S=mu theta (sup-norm, t>=0.1 theta)", base + ";n=1024",
          sup(oufpt::solve_first_kind(s, {1024, t_max, oufpt::Scheme::MidpointFirstKind}), mean_g, 0.1 * p.theta),
          5e-3);
    const double d1 = a.proc.d1.value_or(x0 + 1.0), d2 = a.proc.d2.value_or(1.0);
    auto exp_g = [p, d1, d2, x0](double t) { return t > 0.0 ? oufpt::fpt_pdf_exp_threshold(p, d1, d2, x0, t) : 0.0; };
    s.threshold = oufpt::ExpThreshold{d1, d2};
    r.add("closed-forms", "midpoint-first-kind q=-1 exp threshold (sup-norm, t>=0.1 theta)",
          base + ";" + kv({{"d1", d1}, {"d2", d2}, {"n", 1024}}),
          sup(oufpt::solve_first_kind(s, {1024, 3.0 * p.theta, oufpt::Scheme::MidpointFirstKind}), exp_g,
              0.1 * p.theta),
          1e-2);

    if (!a.against_mc) return;
    if (!a.seed) throw oufpt::DomainError("--against-mc requires --seed");
    oufpt::MCConfig cfg;
    cfg.n_paths = a.n_paths;
    cfg.dt = 1e-3 * p.theta;
    cfg.t_max = t_max;
    cfg.seed = *a.seed;
    cfg.validate(p);
    const auto mc_row = [&](const char* what, const oufpt::Threshold& th, const std::function<double(double)>& g,
                            const std::string& inputs) {
        const auto est = oufpt::simulate_fpt(p, th, x0, cfg);
        const auto [eligible, within] = mc_agreement(est, g);
        const double frac = eligible ? static_cast<double>(within) / eligible : 0.0;
        r.add_flag("closed-forms", std::string(what) + ": fraction of bins within 3 SE >= 0.95",
                   inputs + ";n_paths=" + std::to_string(cfg.n_paths) + ";seed=" + std::to_string(cfg.seed),
                   eligible > 0 && frac >= 0.95, frac);
    };
    mc_row("Monte Carlo vs S=mu theta density", oufpt::ConstantThreshold{S}, mean_g, base);
    mc_row("Monte Carlo vs exp-threshold density", oufpt::ExpThreshold{d1, d2}, exp_g,
           base + ";" + kv({{"d1", d1}, {"d2", d2}}));
}

int cmd_validate(const ValidateArgs& a, const Invocation& inv) {
    Report r;
    const bool all = a.suite == "all";
    if (all || a.suite == "identities") identities(r);
    if (all || a.suite == "residual") residual_suite(r, a);
    if (all || a.suite == "laplace") laplace_suite(r);
    if (all || a.suite == "closed-forms") closed_form_suite(r, a);

    int failed = 0;
    for (const auto& row : r.rows()) {
        std::printf("%s %-13s %s [%s] %s\n", row.pass ? "PASS" : "FAIL", row.suite.c_str(), row.check.c_str(),
                    row.inputs.c_str(), num(row.error).c_str());
        if (!row.pass) {
            ++failed;
            std::fprintf(stderr, "failing: %s,%s,%s,%s\n", row.suite.c_str(), row.check.c_str(), row.inputs.c_str(),
                         num(row.error).c_str());
        }
    }
    std::printf("%zu/%zu checks passed\n", r.rows().size() - failed, r.rows().size());
    if (!a.out.empty()) {
        Params params{{"suite", a.suite}, {"against_mc", a.against_mc ? "true" : "false"}};
        std::string qs, ts;
        for (double q : a.q_list) qs += (qs.empty() ? "" : ",") + num(q);
        for (double t : a.times) ts += (ts.empty() ? "" : ",") + num(t);
        params["q_list"] = qs;
        params["times"] = ts;
        a.proc.record_given(params);
        if (a.seed) params["seed"] = std::to_string(*a.seed);
        if (a.against_mc) params["n_paths"] = std::to_string(a.n_paths);
        write_outputs(a.out, inv.command, inv.argv, std::move(params), {{".csv", r.csv()}});
    }
    return failed == 0 ? kOk : kValidationFailed;
}

}  // namespace

void register_validate(CLI::App& app, int& status, const Invocation& inv) {
    auto args = std::make_shared<ValidateArgs>();
    auto* sub = app.add_subcommand("validate", "Run invariant suites and write a pass/fail report");
    args->proc.add_to(*sub);
    sub->add_option("--suite", args->suite, "identities | residual | laplace | closed-forms | all")
        ->check(CLI::IsMember({"identities", "residual", "laplace", "closed-forms", "all"}))
        ->capture_default_str();
    sub->add_option("--q-list", args->q_list, "Kernel orders for the residual suite")->delimiter(',');
    sub->add_option("--times", args->times, "Residual evaluation times")->delimiter(',');
    sub->add_flag("--against-mc", args->against_mc, "Add Monte Carlo comparisons to the closed-forms suite");
    sub->add_option("--n-paths", args->n_paths, "Paths for --against-mc")->capture_default_str();
    sub->add_option("--seed", args->seed, "Seed for --against-mc (required with it)");
    sub->add_option("--out", args->out, "Output prefix: writes PREFIX.csv and PREFIX.manifest.json");
    sub->callback([args, &status, &inv] { status = cmd_validate(*args, inv); });
}

}  // namespace fpt
