#include "flowlab.h"

#include <cstring>
#include <string>

#include "flowlab/manifest.hpp"
#include "flowlab/runner.hpp"

using namespace flowlab;

struct flowlab_flow {
    LabeledFlow flow;
};

namespace {

thread_local std::string g_last_error;

flowlab_status status_of(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidManifest: return FLOWLAB_ERR_PARSE;
        case ErrorCode::OutsideValidity: return FLOWLAB_ERR_OUTSIDE_VALIDITY;
        case ErrorCode::IoFailure: return FLOWLAB_ERR_IO;
        case ErrorCode::UnknownPreset: return FLOWLAB_ERR_UNKNOWN_PRESET;
        default: return FLOWLAB_ERR_NUMERIC;
    }
}

template <typename Fn>
flowlab_status guard(Fn&& fn) {
    try {
        return fn();
    } catch (const FlowError& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return FLOWLAB_ERR_NUMERIC;
    }
}

} // namespace

extern "C" {

unsigned flowlab_abi_version(void) { return 1; }

const char* flowlab_last_error(void) { return g_last_error.c_str(); }

const char* flowlab_status_name(flowlab_status status) {
    switch (status) {
        case FLOWLAB_OK: return "ok";
        case FLOWLAB_ERR_INVALID_ARGUMENT: return "invalid argument";
        case FLOWLAB_ERR_PARSE: return "manifest parse/validation failure";
        case FLOWLAB_ERR_OUTSIDE_VALIDITY: return "time outside validity predicate";
        case FLOWLAB_ERR_IO: return "i/o failure";
        case FLOWLAB_ERR_CHECKS_FAILED: return "verification checks failed";
        case FLOWLAB_ERR_NUMERIC: return "numeric failure";
        case FLOWLAB_ERR_UNKNOWN_PRESET: return "unknown preset";
    }
    return "unknown status";
}

flowlab_status flowlab_flow_from_manifest(const char* json_text, flowlab_flow** out) {
    if (!json_text || !out) {
        g_last_error = "null argument";
        return FLOWLAB_ERR_INVALID_ARGUMENT;
    }
    return guard([&]() {
        Json j;
        try {
            j = Json::parse(json_text);
        } catch (const std::exception& e) {
            raise(ErrorCode::InvalidManifest, std::string("flow JSON parse error: ") + e.what());
        }
        FlowManifest fm = parse_flow_manifest(j, "flow");
        *out = new flowlab_flow{std::move(fm.flow)};
        return FLOWLAB_OK;
    });
}

flowlab_status flowlab_flow_from_preset(const char* name, flowlab_flow** out) {
    if (!name || !out) {
        g_last_error = "null argument";
        return FLOWLAB_ERR_INVALID_ARGUMENT;
    }
    return guard([&]() {
        *out = new flowlab_flow{LabeledFlow::from_preset(preset(name))};
        return FLOWLAB_OK;
    });
}

void flowlab_flow_free(flowlab_flow* flow) { delete flow; }

flowlab_status flowlab_flow_sample(const flowlab_flow* flow, double t, double a, double b,
                                   double out_sample[FLOWLAB_SAMPLE_LEN]) {
    if (!flow || !out_sample) {
        g_last_error = "null argument";
        return FLOWLAB_ERR_INVALID_ARGUMENT;
    }
    return guard([&]() {
        FlowSample s = flow->flow.kinematics(t, {a, b});
        out_sample[0] = s.x;
        out_sample[1] = s.y;
        out_sample[2] = s.u;
        out_sample[3] = s.v;
        out_sample[4] = s.J;
        out_sample[5] = s.omega;
        out_sample[6] = s.K;
        out_sample[7] = s.K_resid;
        out_sample[8] = s.a;
        out_sample[9] = s.b;
        return FLOWLAB_OK;
    });
}

flowlab_status flowlab_simulate_file(const char* manifest_path) {
    if (!manifest_path) {
        g_last_error = "null argument";
        return FLOWLAB_ERR_INVALID_ARGUMENT;
    }
    return guard([&]() {
        RunConfig run = load_run_manifest_file(manifest_path);
        run_simulate(run);
        return FLOWLAB_OK;
    });
}

flowlab_status flowlab_verify_file(const char* manifest_path, int* out_pass) {
    if (!manifest_path) {
        g_last_error = "null argument";
        return FLOWLAB_ERR_INVALID_ARGUMENT;
    }
    return guard([&]() {
        RunConfig run = load_run_manifest_file(manifest_path);
        bool pass = run_verify(run);
        if (out_pass) *out_pass = pass ? 1 : 0;
        if (!pass) {
            g_last_error = "verification suite reported failing checks";
            return FLOWLAB_ERR_CHECKS_FAILED;
        }
        return FLOWLAB_OK;
    });
}

flowlab_status flowlab_presets_json(char* buf, size_t cap, size_t* needed) {
    return guard([&]() {
        std::string text = presets_json().dump(2);
        if (needed) *needed = text.size() + 1;
        if (buf && cap > 0) {
            size_t n = std::min(cap - 1, text.size());
            std::memcpy(buf, text.data(), n);
            buf[n] = '\0';
        }
        return FLOWLAB_OK;
    });
}

} // extern "C"
