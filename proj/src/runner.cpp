#include "flowlab/runner.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

#include "flowlab/parallel.hpp"

namespace flowlab {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

void write_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) raise(ErrorCode::IoFailure, "cannot open output file: " + tmp);
        out << content;
        if (!out) raise(ErrorCode::IoFailure, "write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        raise(ErrorCode::IoFailure, "rename failed: " + path);
}

void append_row(std::string& csv, const FlowSample& s) {
    csv += format_double(s.t);
    for (double v : {s.a, s.b, s.x, s.y, s.u, s.v, s.J, s.omega, s.K}) {
        csv += ',';
        csv += format_double(v);
    }
    csv += '\n';
}

constexpr const char* kCsvHeader = "t,a,b,x,y,u,v,J,omega,K\n";

} // namespace

void run_simulate(const RunConfig& run) {
    const LabeledFlow& flow = run.flow.flow;
    const QuadratureConfig& quad = run.tol.quad;

    // one coefficient solve per time, shared by both outputs
    std::vector<CoefficientPath> coeffs(run.times.size());
    parallel_for(run.times.size(), [&](size_t i) {
        coeffs[i] = flow.coefficients(run.times[i], quad);
    });

    if (!run.out_trajectories.empty()) {
        std::string csv = kCsvHeader;
        for (Complex z : run.trajectory_labels)
            for (size_t i = 0; i < run.times.size(); ++i)
                append_row(csv, flow.kinematics_with(coeffs[i], run.times[i], z, quad));
        write_atomic(run.out_trajectories, csv);
    }

    if (!run.out_fields.empty()) {
        std::string csv = kCsvHeader;
        for (size_t i = 0; i < run.times.size(); ++i) {
            for (int jj = 0; jj < run.grid.nb; ++jj)
                for (int ii = 0; ii < run.grid.na; ++ii) {
                    Complex z{run.grid.a_at(ii), run.grid.b_at(jj)};
                    append_row(csv, flow.kinematics_with(coeffs[i], run.times[i], z, quad));
                }
        }
        write_atomic(run.out_fields, csv);
    }
}

Json report_json(const RunConfig& run, const std::vector<CheckReport>& checks) {
    Json out;
    out["flow"] = run.echo;
    Json arr = Json::array();
    for (const CheckReport& c : checks) {
        Json jc;
        jc["name"] = c.name;
        jc["max_residual"] = c.max_residual;
        jc["tolerance"] = c.tolerance;
        jc["pass"] = c.pass;
        jc["worst_sample"] = {c.worst_sample[0], c.worst_sample[1], c.worst_sample[2]};
        jc["notes"] = c.notes;
        if (!c.gating) jc["gating"] = false;
        arr.push_back(jc);
    }
    out["checks"] = arr;
    out["pass"] = aggregate_pass(checks);
    return out;
}

bool run_verify(const RunConfig& run) {
    std::vector<CheckReport> checks = run_suite(run.flow.flow, run.tol);
    if (!run.out_report.empty())
        write_atomic(run.out_report, report_json(run, checks).dump(2) + "\n");
    return aggregate_pass(checks);
}

Json presets_json() {
    Json arr = Json::array();
    for (const std::string& name : preset_names()) {
        Preset p = preset(name);
        Json item;
        item["name"] = p.name;
        item["family"] = p.family_label;
        item["paper_example"] = p.example_slug;
        item["description"] = p.description;
        arr.push_back(item);
    }
    return arr;
}

} // namespace flowlab
