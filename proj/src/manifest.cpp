#include "flowlab/manifest.hpp"

#include <fstream>
#include <set>

namespace flowlab {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    raise(ErrorCode::InvalidManifest, where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) bad(where + "." + key, "missing required field");
    return j.at(key);
}

double num(const Json& j, const std::string& where) {
    if (!j.is_number()) bad(where, "expected a number");
    return j.get<double>();
}

double num_field(const Json& j, const char* key, const std::string& where) {
    return num(field(j, key, where), where + "." + key);
}

int int_field(const Json& j, const char* key, const std::string& where) {
    const Json& v = field(j, key, where);
    if (!v.is_number_integer()) bad(where + "." + key, "expected an integer");
    return v.get<int>();
}

Complex complex_field(const Json& j, const char* key, const std::string& where) {
    const Json& v = field(j, key, where);
    std::string at = where + "." + key;
    if (!v.is_array() || v.size() != 2) bad(at, "expected [re, im]");
    return {num(v[0], at + "[0]"), num(v[1], at + "[1]")};
}

void check_keys(const Json& j, std::set<std::string> allowed, const std::string& where) {
    if (!j.is_object()) bad(where, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) bad(where + "." + it.key(), "unknown field");
}

} // namespace

Expr parse_expr(const Json& j, const std::string& where) {
    if (!j.is_object()) bad(where, "expected an expression object");
    std::string kind = field(j, "kind", where).get<std::string>();
    if (kind == "identity") return Expr::identity();
    if (kind == "const") return Expr::constant(complex_field(j, "c", where));
    if (kind == "exp_linear")
        return Expr::exp_linear(complex_field(j, "A", where), complex_field(j, "k", where));
    if (kind == "scale")
        return Expr::scale(complex_field(j, "c", where),
                           parse_expr(field(j, "inner", where), where + ".inner"));
    if (kind == "power")
        return Expr::power(parse_expr(field(j, "inner", where), where + ".inner"),
                           int_field(j, "n", where));
    if (kind == "sum" || kind == "product") {
        const char* key = kind == "sum" ? "terms" : "factors";
        const Json& list = field(j, key, where);
        if (!list.is_array() || list.empty())
            bad(where + "." + key, "expected a nonempty array");
        Expr acc = parse_expr(list[0], where + "." + key + "[0]");
        for (size_t i = 1; i < list.size(); ++i) {
            Expr next = parse_expr(list[i], where + "." + key + "[" + std::to_string(i) + "]");
            acc = kind == "sum" ? Expr::sum(acc, next) : Expr::product(acc, next);
        }
        return acc;
    }
    if (kind == "mobius")
        return Expr::mobius(complex_field(j, "m", where), complex_field(j, "n", where),
                            complex_field(j, "s", where), complex_field(j, "d", where),
                            parse_expr(field(j, "inner", where), where + ".inner"));
    bad(where + ".kind", "unknown expression kind '" + kind + "'");
}

ScalarPath parse_path(const Json& j, const std::string& where) {
    if (!j.is_object()) bad(where, "expected a path object");
    std::string kind = field(j, "kind", where).get<std::string>();
    if (kind == "constant") return ScalarPath::constant(num_field(j, "v", where));
    if (kind == "linear")
        return ScalarPath::linear(num_field(j, "a", where), num_field(j, "b", where));
    if (kind == "poly") {
        const Json& coeffs = field(j, "coeffs", where);
        if (!coeffs.is_array()) bad(where + ".coeffs", "expected an array");
        std::vector<double> c;
        for (size_t i = 0; i < coeffs.size(); ++i)
            c.push_back(num(coeffs[i], where + ".coeffs[" + std::to_string(i) + "]"));
        return ScalarPath::poly(std::move(c));
    }
    if (kind == "sinusoid")
        return ScalarPath::sinusoid(num_field(j, "amp", where), num_field(j, "freq", where),
                                    num_field(j, "phase", where));
    if (kind == "sqrt_quad")
        return ScalarPath::sqrt_quad(num_field(j, "a", where), num_field(j, "b", where),
                                     num_field(j, "c", where));
    if (kind == "quotient")
        return ScalarPath::quotient(parse_path(field(j, "num", where), where + ".num"),
                                    parse_path(field(j, "den", where), where + ".den"));
    bad(where + ".kind", "unknown path kind '" + kind + "'");
}

ComplexPath parse_complex_path(const Json& j, const std::string& where) {
    if (!j.is_object()) bad(where, "expected a complex-path object");
    if (j.contains("re"))
        return ComplexPath::re_im(parse_path(field(j, "re", where), where + ".re"),
                                  parse_path(field(j, "im", where), where + ".im"));
    if (j.contains("mod"))
        return ComplexPath::mod_phase(parse_path(field(j, "mod", where), where + ".mod"),
                                      parse_path(field(j, "phase", where), where + ".phase"));
    bad(where, "expected either re/im or mod/phase path pair");
}

namespace {

FamilySpec parse_family(const std::string& label, const Json& params, const std::string& where) {
    auto path = [&](const char* key) {
        return parse_path(field(params, key, where), where + "." + key);
    };
    auto real = [&](const char* key) { return num_field(params, key, where); };
    if (label == "lin_dep_commuting") {
        check_keys(params, {"r", "k0"}, where);
        return FamilySpec::lin_dep_commuting({path("r"), real("k0")});
    }
    if (label == "lin_dep_scaled") {
        check_keys(params, {"lambda", "r", "phi", "c", "d"}, where);
        return FamilySpec::lin_dep_scaled({complex_field(params, "lambda", where), path("r"),
                                           path("phi"), real("c"), real("d")});
    }
    if (label == "lin_dep_general") {
        check_keys(params, {"lambda", "r", "phi", "xi"}, where);
        return FamilySpec::lin_dep_general(
            {complex_field(params, "lambda", where), path("r"), path("phi"),
             parse_complex_path(field(params, "xi", where), where + ".xi")});
    }
    if (label == "lin_indep_case1") {
        check_keys(params, {"r", "psi", "h", "d0"}, where);
        return FamilySpec::lin_indep_case1({path("r"), path("psi"), real("h"), real("d0")});
    }
    if (label == "lin_indep_case2") {
        check_keys(params, {"c2", "w", "p", "psi", "h", "d0"}, where);
        return FamilySpec::lin_indep_case2(
            {real("c2"), real("w"), real("p"), path("psi"), real("h"), real("d0")});
    }
    if (label == "lin_indep_case3") {
        check_keys(params, {"c1", "w", "psi", "h", "d0"}, where);
        return FamilySpec::lin_indep_case3(
            {real("c1"), real("w"), path("psi"), real("h"), real("d0")});
    }
    if (label == "lin_indep_case4") {
        check_keys(params, {"c1", "c2", "w", "p", "psi", "h", "d0"}, where);
        return FamilySpec::lin_indep_case4({real("c1"), real("c2"), real("w"), real("p"),
                                            path("psi"), real("h"), real("d0")});
    }
    if (label == "general_flat") {
        check_keys(params, {"r", "phi", "d1"}, where);
        return FamilySpec::general_flat({path("r"), path("phi"), path("d1")});
    }
    if (label == "general") {
        check_keys(params, {"d1", "d2", "c4_mod", "phi"}, where);
        return FamilySpec::general({path("d1"), path("d2"), path("c4_mod"), path("phi")});
    }
    bad(where, "unknown family '" + label + "'");
}

LabelGrid parse_grid(const Json& j, const std::string& where) {
    check_keys(j, {"a_min", "a_max", "b_min", "b_max", "na", "nb"}, where);
    LabelGrid g;
    g.a_min = num_field(j, "a_min", where);
    g.a_max = num_field(j, "a_max", where);
    g.b_min = num_field(j, "b_min", where);
    g.b_max = num_field(j, "b_max", where);
    g.na = int_field(j, "na", where);
    g.nb = int_field(j, "nb", where);
    g.validate();
    return g;
}

Corruption parse_corruption(const Json& j, const std::string& where) {
    check_keys(j, {"kind", "amount"}, where);
    std::string kind = field(j, "kind", where).get<std::string>();
    Corruption c;
    c.amount = num_field(j, "amount", where);
    if (kind == "beta_scale") c.kind = Corruption::Kind::BetaScale;
    else if (kind == "gamma_offset") c.kind = Corruption::Kind::GammaOffset;
    else if (kind == "prescribed_offset") c.kind = Corruption::Kind::PrescribedOffset;
    else if (kind == "asymmetric_beta") c.kind = Corruption::Kind::AsymmetricBeta;
    else bad(where + ".kind", "unknown corruption kind '" + kind + "'");
    return c;
}

} // namespace

FlowManifest parse_flow_manifest(const Json& j, const std::string& where) {
    if (!j.is_object()) bad(where, "expected a flow object");
    if (j.contains("preset")) {
        std::string name = field(j, "preset", where).get<std::string>();
        Preset p = [&]() {
            if (name == "kirchhoff") {
                check_keys(j, {"preset", "A", "k", "lambda", "c", "corruption"}, where);
                Json custom = Json::object();
                double A = j.contains("A") ? num_field(j, "A", where) : 1.0;
                double k = j.contains("k") ? num_field(j, "k", where) : 1.0;
                double lam = j.contains("lambda") ? num_field(j, "lambda", where) : 0.5;
                double c = j.contains("c") ? num_field(j, "c", where) : 1.0;
                if (A == 1.0 && k == 1.0 && lam == 0.5 && c == 1.0) return preset(name);
                // rebuild with overrides through the family constructor
                Preset base = preset(name);
                FamilySpec spec = FamilySpec::lin_dep_scaled(
                    {Complex{lam, 0.0}, ScalarPath::constant(lam), ScalarPath::constant(0.0),
                     0.0, c});
                Expr f0 = Expr::exp_linear({k * A, 0.0}, {0.0, k});
                base.spec = spec;
                base.f0 = f0;
                base.g0 = Expr::scale({lam, 0.0}, f0);
                base.domain_hint.a_min = -2.8 / k;
                base.domain_hint.a_max = 2.8 / k;
                return base;
            }
            if (name == "gerstner") {
                check_keys(j, {"preset", "k", "g", "corruption"}, where);
                double k = j.contains("k") ? num_field(j, "k", where) : 1.0;
                double grav = j.contains("g") ? num_field(j, "g", where) : 9.81;
                if (!(k > 0.0)) bad(where + ".k", "wavenumber must be positive");
                if (!(grav > 0.0)) bad(where + ".g", "gravity must be positive");
                if (k == 1.0 && grav == 9.81) return preset(name);
                Preset base = preset(name);
                double sigma = std::sqrt(k * grav);
                base.spec = FamilySpec::general(
                    {ScalarPath::constant(sigma), ScalarPath::constant(sigma),
                     ScalarPath::constant(0.0), ScalarPath::constant(0.0)});
                base.g0 = Expr::exp_linear({-1.0, 0.0}, {0.0, -k});
                return base;
            }
            check_keys(j, {"preset", "corruption"}, where);
            return preset(name);
        }();
        FlowManifest out{LabeledFlow::from_preset(p), p.domain_hint, p.t_lo_hint,
                         p.t_hi_hint, true};
        if (j.contains("corruption"))
            out.flow.set_corruption(
                parse_corruption(field(j, "corruption", where), where + ".corruption"));
        return out;
    }

    check_keys(j, {"family", "params", "f0", "g0", "corruption"}, where);
    std::string label = field(j, "family", where).get<std::string>();
    FamilySpec spec =
        parse_family(label, field(j, "params", where), where + ".params");
    Expr f0 = parse_expr(field(j, "f0", where), where + ".f0");
    Expr g0 = parse_expr(field(j, "g0", where), where + ".g0");
    FlowManifest out{LabeledFlow(std::move(spec), std::move(f0), std::move(g0), LabelGrid{}),
                     LabelGrid{}, 0.0, 1.0, false};
    if (j.contains("corruption"))
        out.flow.set_corruption(
            parse_corruption(field(j, "corruption", where), where + ".corruption"));
    return out;
}

RunConfig parse_run_manifest(const Json& j) {
    const std::string where = "manifest";
    check_keys(j, {"flow", "grid", "times", "labels", "outputs", "tolerances", "seeds"},
               where);

    FlowManifest fm = parse_flow_manifest(field(j, "flow", where), where + ".flow");

    LabelGrid grid = fm.grid_hint;
    if (j.contains("grid")) grid = parse_grid(j.at("grid"), where + ".grid");
    else if (!fm.has_hints) bad(where + ".grid", "missing required field");

    std::vector<double> times;
    const Json& jt = field(j, "times", where);
    if (jt.is_array()) {
        for (size_t i = 0; i < jt.size(); ++i)
            times.push_back(num(jt[i], where + ".times[" + std::to_string(i) + "]"));
    } else if (jt.is_object()) {
        check_keys(jt, {"t0", "t1", "n"}, where + ".times");
        double t0 = num_field(jt, "t0", where + ".times");
        double t1 = num_field(jt, "t1", where + ".times");
        int n = int_field(jt, "n", where + ".times");
        if (n < 1) bad(where + ".times.n", "must be >= 1");
        if (n == 1) times.push_back(t0);
        else
            for (int i = 0; i < n; ++i)
                times.push_back(t0 + (t1 - t0) * double(i) / double(n - 1));
    } else {
        bad(where + ".times", "expected an array or {t0, t1, n}");
    }
    if (times.empty()) bad(where + ".times", "must not be empty");
    for (size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            bad(where + ".times[" + std::to_string(i) + "]", "times must be strictly increasing");
    // every run time must satisfy the family validity predicate up front
    for (double t : times) fm.flow.spec().require_valid(t);

    std::vector<Complex> labels;
    if (j.contains("labels")) {
        const Json& jl = j.at("labels");
        if (!jl.is_array() || jl.empty())
            bad(where + ".labels", "expected a nonempty array of [a, b] pairs");
        for (size_t i = 0; i < jl.size(); ++i) {
            std::string at = where + ".labels[" + std::to_string(i) + "]";
            if (!jl[i].is_array() || jl[i].size() != 2) bad(at, "expected [a, b]");
            labels.emplace_back(num(jl[i][0], at), num(jl[i][1], at));
        }
    } else {
        for (int jj = 0; jj < grid.nb; ++jj)
            for (int i = 0; i < grid.na; ++i) labels.emplace_back(grid.a_at(i), grid.b_at(jj));
    }

    RunConfig out{std::move(fm), grid, std::move(times), std::move(labels), "", "", "",
                  ToleranceConfig{}, field(j, "flow", where)};

    const Json& outs = field(j, "outputs", where);
    check_keys(outs, {"trajectories", "fields", "report"}, where + ".outputs");
    if (outs.contains("trajectories"))
        out.out_trajectories = outs.at("trajectories").get<std::string>();
    if (outs.contains("fields")) out.out_fields = outs.at("fields").get<std::string>();
    if (outs.contains("report")) out.out_report = outs.at("report").get<std::string>();
    if (out.out_trajectories.empty() && out.out_fields.empty() && out.out_report.empty())
        bad(where + ".outputs", "at least one output must be requested");

    out.tol.grid = grid;
    out.tol.t_lo = out.times.front();
    out.tol.t_hi = out.times.size() > 1 ? out.times.back() : out.times.front() + 1.0;
    if (j.contains("tolerances")) {
        const Json& tj = j.at("tolerances");
        check_keys(tj, {"analytic_tol", "fd_tol", "fd_step_t", "fd_step_z", "samples_t"},
                   where + ".tolerances");
        if (tj.contains("analytic_tol"))
            out.tol.analytic_tol = num_field(tj, "analytic_tol", where + ".tolerances");
        if (tj.contains("fd_tol")) out.tol.fd_tol = num_field(tj, "fd_tol", where + ".tolerances");
        if (tj.contains("fd_step_t"))
            out.tol.fd_step_t = num_field(tj, "fd_step_t", where + ".tolerances");
        if (tj.contains("fd_step_z"))
            out.tol.fd_step_z = num_field(tj, "fd_step_z", where + ".tolerances");
        if (tj.contains("samples_t"))
            out.tol.samples_t = int_field(tj, "samples_t", where + ".tolerances");
    }
    if (j.contains("seeds")) {
        const Json& js = j.at("seeds");
        if (!js.is_number_integer() || js.get<long long>() < 0)
            bad(where + ".seeds", "expected a nonnegative integer");
        out.tol.seed = unsigned(js.get<long long>());
    }
    out.tol.validate();
    return out;
}

RunConfig load_run_manifest_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorCode::IoFailure, "cannot open manifest file: " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const std::exception& e) {
        raise(ErrorCode::InvalidManifest, "manifest JSON parse error: " + std::string(e.what()));
    }
    return parse_run_manifest(j);
}

} // namespace flowlab
