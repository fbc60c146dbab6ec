#include <cstdio>
#include <filesystem>
#include <memory>

#include "common.hpp"
#include "oufpt/errors.hpp"

namespace fpt {

namespace {

struct ReplayArgs {
    std::string manifest;
    std::string out;
};

// Prefix an artifact list was written under: the manifest path minus ".manifest.json".
std::string prefix_of(const std::string& manifest_path) {
    const std::string tail = ".manifest.json";
    if (manifest_path.size() > tail.size() && manifest_path.ends_with(tail))
        return manifest_path.substr(0, manifest_path.size() - tail.size());
    throw oufpt::DomainError("replay: manifest path must end in .manifest.json");
}

int cmd_replay(const ReplayArgs& a) {
    const auto m = oufpt::io::RunManifest::from_json(oufpt::io::read_file(a.manifest));
    if (m.command == "replay") throw oufpt::DomainError("replay: refusing to replay a replay");
    const std::string old_prefix = prefix_of(a.manifest);
    const std::string new_prefix = a.out.empty() ? old_prefix + ".replay" : a.out;

    std::vector<std::string> args{"fpt", m.command};
    bool had_out = false;
    for (std::size_t i = 0; i < m.argv.size(); ++i) {
        if (m.argv[i] == "--out" && i + 1 < m.argv.size()) {
            args.push_back("--out");
            args.push_back(new_prefix);
            ++i;
            had_out = true;
        } else if (m.argv[i].starts_with("--out=")) {
            args.push_back("--out=" + new_prefix);
            had_out = true;
        } else {
            args.push_back(m.argv[i]);
        }
    }
    if (!had_out) throw oufpt::DomainError("replay: recorded run has no --out");

    const int rc = run(args);
    if (rc != kOk) return rc;

    int differing = 0;
    for (const auto& path : m.artifacts) {
        if (!path.starts_with(old_prefix)) throw oufpt::DomainError("replay: artifact outside prefix: " + path);
        const std::string fresh = new_prefix + path.substr(old_prefix.size());
        const bool same = std::filesystem::exists(path) && oufpt::io::read_file(path) == oufpt::io::read_file(fresh);
        std::printf("%s %s -> %s\n", same ? "identical" : "DIFFERENT", path.c_str(), fresh.c_str());
        differing += !same;
    }
    return differing == 0 ? kOk : kValidationFailed;
}

}  // namespace

void register_replay(CLI::App& app, int& status, const Invocation&) {
    auto args = std::make_shared<ReplayArgs>();
    auto* sub = app.add_subcommand("replay", "Re-run a recorded command and compare its artifacts byte for byte");
    sub->add_option("manifest", args->manifest, "PREFIX.manifest.json of the recorded run")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", args->out, "Prefix for the fresh artifacts (default: PREFIX.replay)");
    sub->callback([args, &status] { status = cmd_replay(*args); });
}

}  // namespace fpt
