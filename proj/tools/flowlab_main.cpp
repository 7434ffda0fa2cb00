// flowlab command line: manifest-driven runs over the C API.
//
//   flowlab simulate <manifest.json>   write trajectory/field CSV outputs
//   flowlab verify   <manifest.json>   run the residual suite, write report JSON
//   flowlab presets  [--json]          list the built-in flow catalog
//
// Exit codes: 0 success; 1 verification checks failed; 2 manifest
// parse/validation failure; 3 time outside the family validity predicate;
// 4 I/O failure; 5 numeric failure.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flowlab.h"

namespace {

int exit_code_for(flowlab_status status) {
    switch (status) {
        case FLOWLAB_OK: return 0;
        case FLOWLAB_ERR_CHECKS_FAILED: return 1;
        case FLOWLAB_ERR_INVALID_ARGUMENT:
        case FLOWLAB_ERR_PARSE:
        case FLOWLAB_ERR_UNKNOWN_PRESET: return 2;
        case FLOWLAB_ERR_OUTSIDE_VALIDITY: return 3;
        case FLOWLAB_ERR_IO: return 4;
        case FLOWLAB_ERR_NUMERIC: return 5;
    }
    return 5;
}

int report_failure(flowlab_status status) {
    std::fprintf(stderr, "error (%s): %s\n", flowlab_status_name(status),
                 flowlab_last_error());
    return exit_code_for(status);
}

std::string fetch_presets_json() {
    size_t needed = 0;
    flowlab_presets_json(nullptr, 0, &needed);
    std::string buf(needed, '\0');
    flowlab_presets_json(buf.data(), buf.size(), &needed);
    buf.resize(needed - 1);
    return buf;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"explicit Lagrangian flow families: simulate, verify, presets"};
    app.require_subcommand(1);

    std::string manifest_path;
    auto* simulate = app.add_subcommand("simulate", "write CSV outputs for a run manifest");
    simulate->add_option("manifest", manifest_path, "run manifest JSON file")->required();

    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "run the residual suite for a run manifest");
    verify->add_option("manifest", verify_path, "run manifest JSON file")->required();

    bool presets_as_json = false;
    auto* presets = app.add_subcommand("presets", "list built-in flows");
    presets->add_flag("--json", presets_as_json, "machine-readable JSON output");

    CLI11_PARSE(app, argc, argv);

    if (simulate->parsed()) {
        flowlab_status status = flowlab_simulate_file(manifest_path.c_str());
        if (status != FLOWLAB_OK) return report_failure(status);
        return 0;
    }

    if (verify->parsed()) {
        int pass = 0;
        flowlab_status status = flowlab_verify_file(verify_path.c_str(), &pass);
        if (status == FLOWLAB_OK) {
            std::printf("verification suite: pass\n");
            return 0;
        }
        if (status == FLOWLAB_ERR_CHECKS_FAILED) {
            std::fprintf(stderr, "verification suite: FAIL (see report for details)\n");
            return 1;
        }
        return report_failure(status);
    }

    if (presets->parsed()) {
        std::string text = fetch_presets_json();
        if (presets_as_json) {
            std::printf("%s\n", text.c_str());
            return 0;
        }
        auto catalog = nlohmann::json::parse(text);
        for (const auto& item : catalog) {
            std::printf("%-13s %-18s %s\n", item["name"].get<std::string>().c_str(),
                        item["family"].get<std::string>().c_str(),
                        item["description"].get<std::string>().c_str());
        }
        return 0;
    }
    return 2;
}
