#include "oufpt/io.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "json.hpp"
#include "oufpt/errors.hpp"

namespace oufpt::io {

using nlohmann::ordered_json;

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view field) {
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
        field.remove_suffix(1);
    if (field == "nan") return std::nan("");
    if (field == "inf") return HUGE_VAL;
    if (field == "-inf") return -HUGE_VAL;
    double v = 0.0;
    const char* begin = field.data();
    if (!field.empty() && *begin == '+') ++begin;
    const auto res = std::from_chars(begin, field.data() + field.size(), v);
    if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size())
        throw DomainError("not a number: '" + std::string(field) + "'");
    return v;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
    static std::atomic<unsigned> counter{0};
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename onto " + path.string() + ": " + ec.message());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

std::string columns_csv(const char* header, const std::vector<double>& a, const std::vector<double>& b) {
    std::string out = header;
    out += '\n';
    for (std::size_t i = 0; i < a.size(); ++i) {
        out += format_double(a[i]);
        out += ',';
        out += format_double(b[i]);
        out += '\n';
    }
    return out;
}

ordered_json params_json(const OUParams& p) {
    return ordered_json{{"theta", p.theta}, {"mu", p.mu}, {"sigma2", p.sigma2}};
}

ordered_json threshold_obj(const Threshold& th) {
    if (const auto* c = std::get_if<ConstantThreshold>(&th))
        return {{"type", "constant"}, {"S", c->level}};
    if (const auto* e = std::get_if<ExpThreshold>(&th))
        return {{"type", "exp-family"}, {"d1", e->d1}, {"d2", e->d2}, {"validated", e->validated()}};
    const auto& t = std::get<TabulatedThreshold>(th);
    return {{"type", "tabulated"},
            {"times", std::vector<double>(t.times().begin(), t.times().end())},
            {"levels", std::vector<double>(t.levels().begin(), t.levels().end())}};
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

std::string density_csv(const DensityCurve& curve) { return columns_csv("t,g", curve.times, curve.values); }

std::string density_csv(const Table& t) { return columns_csv("t,g", t.first, t.second); }

std::string density_json(const DensityCurve& curve) {
    ordered_json meta{{"params", params_json(curve.params)},
                      {"threshold", threshold_obj(curve.threshold)},
                      {"x0", curve.x0},
                      {"q", curve.info.q},
                      {"on_boundary", curve.info.on_boundary},
                      {"scheme", curve.info.scheme},
                      {"n_steps", curve.info.n_steps},
                      {"t_max", curve.info.t_max}};
    if (!curve.info.on_boundary) meta["x"] = curve.info.x;
    ordered_json j{{"grid", curve.times}, {"values", curve.values}, {"metadata", meta}};
    return j.dump(2) + "\n";
}

Table parse_two_columns(std::string_view text) {
    Table t;
    std::size_t line_no = 0;
    bool first = true;
    for (auto line : split(text, '\n')) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 2)
            throw DomainError("line " + std::to_string(line_no) + ": expected two comma-separated columns");
        try {
            const double a = parse_double(fields[0]);
            const double b = parse_double(fields[1]);
            t.first.push_back(a);
            t.second.push_back(b);
        } catch (const DomainError& e) {
            if (!first) throw DomainError("line " + std::to_string(line_no) + ": " + e.what());
        }
        first = false;
    }
    return t;
}

TabulatedThreshold parse_threshold_csv(std::string_view text) {
    auto t = parse_two_columns(text);
    if (t.first.size() < 2) throw DomainError("threshold table needs at least two rows");
    for (std::size_t i = 0; i < t.first.size(); ++i) {
        if (!std::isfinite(t.first[i]) || !std::isfinite(t.second[i]))
            throw DomainError("threshold table: non-finite value in row " + std::to_string(i + 1));
        if (i > 0 && !(t.first[i] > t.first[i - 1]))
            throw DomainError("threshold table: times must be strictly increasing (row " +
                              std::to_string(i + 1) + ")");
    }
    return TabulatedThreshold(std::move(t.first), std::move(t.second));
}

TabulatedThreshold read_threshold_csv(const std::filesystem::path& path) {
    return parse_threshold_csv(read_file(path));
}

std::string mc_csv(const MCEstimate& est) {
    std::string out = "bin_left,bin_right,count,density\n";
    for (std::size_t i = 0; i < est.counts.size(); ++i) {
        out += format_double(est.bin_edges[i]) + ',' + format_double(est.bin_edges[i + 1]) + ',' +
               std::to_string(est.counts[i]) + ',' + format_double(est.density[i]) + '\n';
    }
    return out;
}

std::string mc_json(const MCEstimate& est, const OUParams& p, const Threshold& th, double x0) {
    const auto& c = est.config;
    ordered_json cfg{{"n_paths", c.n_paths}, {"dt", c.dt},       {"t_max", c.t_max},
                     {"seed", c.seed},       {"n_bins", c.n_bins}, {"bridge", c.bridge},
                     {"block_size", c.block_size}};
    ordered_json j{{"params", params_json(p)},
                   {"threshold", threshold_obj(th)},
                   {"x0", x0},
                   {"config", cfg},
                   {"generator", est.generator},
                   {"n_blocks", est.n_blocks},
                   {"n_paths", est.n_paths},
                   {"n_absorbed", est.n_absorbed},
                   {"mean_fpt", est.mean_fpt},
                   {"bin_edges", est.bin_edges},
                   {"counts", est.counts},
                   {"density", est.density}};
    return j.dump(2) + "\n";
}

std::string transform_csv(const std::vector<TransformCase>& cases, double tol) {
    std::string out = "family,inputs,lambda,lhs,rhs,rel_err,abs_err,pass\n";
    for (const auto& c : cases) {
        out += c.family + ',' + c.inputs + ',' + format_double(c.check.lambda) + ',' +
               format_double(c.check.lhs) + ',' + format_double(c.check.rhs) + ',' +
               format_double(c.check.rel_err) + ',' + format_double(c.check.abs_err) + ',' +
               (c.check.passes(tol) ? "1" : "0") + '\n';
    }
    return out;
}

std::string threshold_json(const Threshold& th) { return threshold_obj(th).dump(); }

std::string RunManifest::to_json() const {
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : parameters) params[k] = v;
    ordered_json j{{"command", command}, {"argv", argv},           {"parameters", params},
                   {"artifacts", artifacts}, {"timestamp", timestamp}, {"tool_version", tool_version}};
    return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(std::string_view text) {
    RunManifest m;
    try {
        const auto j = ordered_json::parse(text);
        m.command = j.at("command").get<std::string>();
        m.argv = j.at("argv").get<std::vector<std::string>>();
        for (const auto& [k, v] : j.at("parameters").items()) m.parameters[k] = v.get<std::string>();
        m.artifacts = j.at("artifacts").get<std::vector<std::string>>();
        m.timestamp = j.value("timestamp", "");
        m.tool_version = j.value("tool_version", "");
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("manifest: ") + e.what());
    }
    return m;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace oufpt::io
