#ifndef FLOWLAB_MANIFEST_HPP
#define FLOWLAB_MANIFEST_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "flowlab/flow.hpp"
#include "flowlab/verify.hpp"

namespace flowlab {

using Json = nlohmann::ordered_json;

/// Expression manifest grammar:
///   {"kind":"exp_linear","A":[re,im],"k":[re,im]} | {"kind":"const","c":[re,im]}
/// | {"kind":"sum","terms":[...]} | {"kind":"scale","c":[re,im],"inner":...}
/// | {"kind":"product","factors":[...]} | {"kind":"power","n":int,"inner":...}
/// | {"kind":"mobius","m":..,"n":..,"s":..,"d":..,"inner":...} | {"kind":"identity"}
Expr parse_expr(const Json& j, const std::string& where);

/// Path manifest grammar:
///   {"kind":"constant","v":..} | {"kind":"linear","a":..,"b":..}
/// | {"kind":"poly","coeffs":[...]} | {"kind":"sinusoid","amp":..,"freq":..,"phase":..}
/// | {"kind":"sqrt_quad","a":..,"b":..,"c":..} | {"kind":"quotient","num":..,"den":..}
ScalarPath parse_path(const Json& j, const std::string& where);

/// Complex path: {"re":path,"im":path} or {"mod":path,"phase":path}.
ComplexPath parse_complex_path(const Json& j, const std::string& where);

/// Flow manifest: {"family":..., "params":{...}, "f0":expr, "g0":expr}
/// or a preset reference {"preset":"gerstner", ...overrides}.
struct FlowManifest {
    LabeledFlow flow;
    LabelGrid grid_hint;
    double t_lo_hint = 0.0, t_hi_hint = 1.0;
    bool has_hints = false;
};

FlowManifest parse_flow_manifest(const Json& j, const std::string& where);

/// A fully validated run: every RunManifest invariant is enforced here,
/// before any computation starts (times strictly increasing, all times valid,
/// at least one output requested).
struct RunConfig {
    FlowManifest flow;
    LabelGrid grid;
    std::vector<double> times;
    std::vector<Complex> trajectory_labels;
    std::string out_trajectories, out_fields, out_report;  // empty = not requested
    ToleranceConfig tol;
    Json echo;  // the flow manifest as given, for report echoing
};

RunConfig parse_run_manifest(const Json& j);
RunConfig load_run_manifest_file(const std::string& path);

} // namespace flowlab

#endif
