#include <cmath>
#include <cstdio>
#include <memory>

#include "common.hpp"
#include "oufpt/errors.hpp"
#include "oufpt/special_functions.hpp"

namespace fpt {

namespace {

struct SpecialArgs {
    std::optional<double> nu, z;
    bool table = false;
    std::string nu_range = "-2:2:0.5";
    std::string z_range = "-4:4:1";
    int digits = 10;
    std::string out;
};

// start:stop:step, inclusive of stop up to rounding.
std::vector<double> parse_range(const std::string& text, const char* flag) {
    std::vector<double> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = text.find(':', start);
        parts.push_back(oufpt::io::parse_double(std::string_view(text).substr(start, pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0] || !std::isfinite(parts[1]))
        throw oufpt::DomainError(std::string(flag) + " expects start:stop:step with step > 0 and stop >= start");
    const auto n = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    if (n > 1'000'000) throw oufpt::DomainError(std::string(flag) + " spans more than 10^6 points");
    std::vector<double> out;
    for (std::size_t i = 0; i <= n; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[2]);
    return out;
}

std::string show(double x, int digits) {
    if (digits <= 0) return num(x);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

int cmd_special(const SpecialArgs& a, const Invocation& inv) {
    if (!a.table) {
        if (!a.nu || !a.z) throw oufpt::DomainError("special needs --nu and --z, or --table");
        const auto e = oufpt::pcf(*a.nu, *a.z);
        std::printf("%s (est_abs_error %.2g)\n", show(e.value, a.digits).c_str(), e.est_abs_error);
        return kOk;
    }
    std::string csv = "nu,z,value,est_abs_error\n";
    for (double nu : parse_range(a.nu_range, "--nu-range")) {
        for (double z : parse_range(a.z_range, "--z-range")) {
            const auto e = oufpt::pcf(nu, z);
            csv += num(nu) + ',' + num(z) + ',' + num(e.value) + ',' + num(e.est_abs_error) + '\n';
        }
    }
    if (a.out.empty()) {
        std::fputs(csv.c_str(), stdout);
        return kOk;
    }
    write_outputs(a.out, inv.command, inv.argv, {{"nu_range", a.nu_range}, {"z_range", a.z_range}},
                  {{".csv", csv}});
    return kOk;
}

}  // namespace

void register_special(CLI::App& app, int& status, const Invocation& inv) {
    auto args = std::make_shared<SpecialArgs>();
    auto* sub = app.add_subcommand("special", "Evaluate the parabolic cylinder function D_nu(z)");
    sub->add_option("--nu", args->nu, "Order");
    sub->add_option("--z", args->z, "Argument");
    sub->add_flag("--table", args->table, "Emit a CSV table over --nu-range x --z-range");
    sub->add_option("--nu-range", args->nu_range, "Table orders start:stop:step")->capture_default_str();
    sub->add_option("--z-range", args->z_range, "Table arguments start:stop:step")->capture_default_str();
    sub->add_option("--digits", args->digits, "Significant digits for single values (0: shortest round-trip)")
        ->capture_default_str();
    sub->add_option("--out", args->out, "Table output prefix: writes PREFIX.csv and PREFIX.manifest.json");
    sub->callback([args, &status, &inv] { status = cmd_special(*args, inv); });
}

}  // namespace fpt
