#include <doctest.h>

#include "flowlab/manifest.hpp"

using namespace flowlab;

namespace {

Json base_manifest() {
    return Json{
        {"flow", Json{{"preset", "gerstner"}}},
        {"times", Json{{"t0", 0.0}, {"t1", 1.0}, {"n", 10}}},
        {"outputs", Json{{"fields", "/tmp/flowlab_fields.csv"}}},
    };
}

std::string error_text(const Json& manifest) {
    try {
        parse_run_manifest(manifest);
    } catch (const FlowError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("expression manifests round through the grammar") {
    Json j = {
        {"kind", "sum"},
        {"terms", Json::array({
            Json{{"kind", "exp_linear"}, {"A", {1.0, 0.0}}, {"k", {0.0, 2.0}}},
            Json{{"kind", "scale"}, {"c", {0.5, 0.0}}, {"inner", Json{{"kind", "identity"}}}},
            Json{{"kind", "power"}, {"n", 3}, {"inner", Json{{"kind", "identity"}}}},
            Json{{"kind", "const"}, {"c", {0.0, 1.0}}},
        })},
    };
    Expr e = parse_expr(j, "f0");
    Complex z{0.3, 0.2};
    Complex want = std::exp(Complex{0.0, 2.0} * z) + 0.5 * z + z * z * z + Complex{0.0, 1.0};
    CHECK(std::abs(e.eval(z) - want) < 1e-14);

    Json mob = {{"kind", "mobius"},
                {"m", {1.0, 0.0}},
                {"n", {0.5, 0.0}},
                {"s", {0.2, 0.0}},
                {"d", {1.0, 0.0}},
                {"inner", Json{{"kind", "identity"}}}};
    Expr t = parse_expr(mob, "f0");
    CHECK(std::abs(t.eval({1.0, 0.0}) - Complex{1.5 / 1.2, 0.0}) < 1e-14);

    CHECK_THROWS_AS(parse_expr(Json{{"kind", "wavelet"}}, "f0"), FlowError);
    CHECK_THROWS_AS(parse_expr(Json{{"kind", "const"}}, "f0"), FlowError);  // missing c
}

TEST_CASE("path manifests cover the catalog") {
    Json q = {{"kind", "quotient"},
              {"num", Json{{"kind", "sinusoid"}, {"amp", 1.0}, {"freq", 2.0}, {"phase", 0.0}}},
              {"den", Json{{"kind", "linear"}, {"a", 0.0}, {"b", 2.0}}}};
    ScalarPath p = parse_path(q, "r");
    CHECK(p.value(0.5) == doctest::Approx(std::sin(1.0) / 2.0));

    ScalarPath sq = parse_path(
        Json{{"kind", "sqrt_quad"}, {"a", 1.0}, {"b", 0.0}, {"c", 1.0}}, "d1");
    CHECK(sq.value(1.0) == doctest::Approx(std::sqrt(2.0)));

    ComplexPath cp = parse_complex_path(
        Json{{"mod", Json{{"kind", "constant"}, {"v", 2.0}}},
             {"phase", Json{{"kind", "linear"}, {"a", 1.0}, {"b", 0.0}}}},
        "xi");
    CHECK(std::abs(cp.value(0.5) - std::polar(2.0, 0.5)) < 1e-14);
}

TEST_CASE("family manifests: every variant parses and validates") {
    auto parse_family_flow = [](Json params, const std::string& family) {
        Json j = {{"family", family},
                  {"params", params},
                  {"f0", Json{{"kind", "exp_linear"}, {"A", {1.0, 0.0}}, {"k", {0.0, 1.0}}}},
                  {"g0", Json{{"kind", "exp_linear"}, {"A", {0.5, 0.0}}, {"k", {0.0, 2.0}}}}};
        return parse_flow_manifest(j, "flow");
    };
    Json lin = {{"kind", "linear"}, {"a", 1.0}, {"b", 0.0}};
    Json zero = {{"kind", "constant"}, {"v", 0.0}};

    CHECK(parse_family_flow({{"r", Json{{"kind", "linear"}, {"a", 0.5}, {"b", 0.0}}}, {"k0", 0.3}},
                            "lin_dep_commuting")
              .flow.spec()
              .kind() == FamilyKind::LinDepCommuting);
    CHECK(parse_family_flow({{"r", lin}, {"psi", lin}, {"h", 1.0}, {"d0", 0.0}},
                            "lin_indep_case1")
              .flow.spec()
              .kind() == FamilyKind::LinIndepCase1);
    CHECK(parse_family_flow({{"c2", 1.0}, {"w", 1.0}, {"p", 2.0}, {"psi", lin}, {"h", 0.0},
                             {"d0", 0.0}},
                            "lin_indep_case2")
              .flow.spec()
              .kind() == FamilyKind::LinIndepCase2);
    CHECK(parse_family_flow({{"c1", 1.0}, {"w", 2.0}, {"psi", lin}, {"h", 1.0}, {"d0", 0.0}},
                            "lin_indep_case3")
              .flow.spec()
              .kind() == FamilyKind::LinIndepCase3);
    CHECK(parse_family_flow({{"c1", 1.0}, {"c2", 1.0}, {"w", 2.0}, {"p", 2.0}, {"psi", lin},
                             {"h", 1.0}, {"d0", 0.0}},
                            "lin_indep_case4")
              .flow.spec()
              .kind() == FamilyKind::LinIndepCase4);
    CHECK(parse_family_flow({{"r", zero}, {"phi", zero}, {"d1", lin}}, "general_flat")
              .flow.spec()
              .kind() == FamilyKind::GeneralFlat);
    CHECK(parse_family_flow({{"d1", Json{{"kind", "constant"}, {"v", 2.0}}},
                             {"d2", Json{{"kind", "constant"}, {"v", 2.0}}},
                             {"c4_mod", zero}, {"phi", zero}},
                            "general")
              .flow.spec()
              .kind() == FamilyKind::General);

    // scalar-multiple variants need a matching g0; supply one inline
    Json scaled = {{"family", "lin_dep_scaled"},
                   {"params", Json{{"lambda", {0.5, 0.0}},
                                   {"r", Json{{"kind", "constant"}, {"v", 0.5}}},
                                   {"phi", zero}, {"c", 0.0}, {"d", 1.0}}},
                   {"f0", Json{{"kind", "exp_linear"}, {"A", {1.0, 0.0}}, {"k", {0.0, 1.0}}}},
                   {"g0", Json{{"kind", "exp_linear"}, {"A", {0.5, 0.0}}, {"k", {0.0, 1.0}}}}};
    CHECK(parse_flow_manifest(scaled, "flow").flow.spec().kind() == FamilyKind::LinDepScaled);

    Json xi_flow = {{"family", "lin_dep_general"},
                    {"params", Json{{"lambda", {0.5, 0.0}},
                                    {"r", Json{{"kind", "constant"}, {"v", 0.5}}},
                                    {"phi", zero},
                                    {"xi", Json{{"re", zero}, {"im", lin}}}}},
                    {"f0", Json{{"kind", "exp_linear"}, {"A", {1.0, 0.0}}, {"k", {0.0, 1.0}}}},
                    {"g0", Json{{"kind", "exp_linear"}, {"A", {0.5, 0.0}}, {"k", {0.0, 1.0}}}}};
    CHECK(parse_flow_manifest(xi_flow, "flow").flow.spec().kind() == FamilyKind::LinDepGeneral);
}

TEST_CASE("run manifest: validation errors name the offending field") {
    Json ok = base_manifest();
    CHECK_NOTHROW(parse_run_manifest(ok));

    Json no_outputs = base_manifest();
    no_outputs["outputs"] = Json::object();
    CHECK(error_text(no_outputs).find("outputs") != std::string::npos);

    Json bad_times = base_manifest();
    bad_times["times"] = Json::array({0.0, 0.5, 0.5});
    CHECK(error_text(bad_times).find("times[2]") != std::string::npos);

    Json unknown_field = base_manifest();
    unknown_field["grdi"] = Json::object();
    CHECK(error_text(unknown_field).find("grdi") != std::string::npos);

    Json bad_grid = base_manifest();
    bad_grid["grid"] = Json{{"a_min", 1.0}, {"a_max", -1.0}, {"b_min", 0.0},
                            {"b_max", 1.0}, {"na", 4}, {"nb", 4}};
    CHECK_FALSE(error_text(bad_grid).empty());

    Json bad_seed = base_manifest();
    bad_seed["seeds"] = -3;
    CHECK(error_text(bad_seed).find("seeds") != std::string::npos);

    Json unknown_preset = base_manifest();
    unknown_preset["flow"] = Json{{"preset", "vortex-soup"}};
    CHECK_THROWS_AS(parse_run_manifest(unknown_preset), FlowError);
}

TEST_CASE("run manifest: validity is enforced before any computation") {
    // case-2 flow valid only beyond t = 1: a time inside [0, 1] must be
    // rejected with OutsideValidity naming the predicate
    Json j = base_manifest();
    j["flow"] = Json{{"preset", "example-4-3"}};
    j["times"] = Json::array({0.5, 1.5});
    try {
        parse_run_manifest(j);
        CHECK(false);
    } catch (const FlowError& e) {
        CHECK(e.code() == ErrorCode::OutsideValidity);
        CHECK(std::string(e.what()).find("(w t + p)/c2 > 1") != std::string::npos);
    }
    j["times"] = Json::array({1.5, 2.0, 2.5});
    CHECK_NOTHROW(parse_run_manifest(j));
}

TEST_CASE("run manifest: labels, grids and tolerance overrides") {
    Json j = base_manifest();
    j["labels"] = Json::array({Json::array({0.0, -0.5}), Json::array({0.5, -1.0}),
                               Json::array({1.0, -1.5})});
    j["tolerances"] = Json{{"fd_tol", 1e-4}, {"samples_t", 8}};
    j["seeds"] = 7;
    RunConfig run = parse_run_manifest(j);
    CHECK(run.trajectory_labels.size() == 3);
    CHECK(run.tol.fd_tol == 1e-4);
    CHECK(run.tol.samples_t == 8);
    CHECK(run.tol.seed == 7);
    // preset grid hint flows in when no grid is given
    CHECK(run.grid.b_max < 0.0);

    // raw family manifests require an explicit grid
    Json raw = base_manifest();
    raw["flow"] = Json{
        {"family", "lin_indep_case1"},
        {"params", Json{{"r", Json{{"kind", "linear"}, {"a", 0.5}, {"b", 0.0}}},
                        {"psi", Json{{"kind", "linear"}, {"a", 1.0}, {"b", 0.0}}},
                        {"h", 1.0}, {"d0", 0.0}}},
        {"f0", Json{{"kind", "exp_linear"}, {"A", {1.0, 0.0}}, {"k", {0.0, 1.0}}}},
        {"g0", Json{{"kind", "exp_linear"}, {"A", {0.5, 0.0}}, {"k", {0.0, 2.0}}}}};
    CHECK(error_text(raw).find("grid") != std::string::npos);
    raw["grid"] = Json{{"a_min", -1.0}, {"a_max", 1.0}, {"b_min", -0.5}, {"b_max", 0.5},
                       {"na", 4}, {"nb", 4}};
    CHECK_NOTHROW(parse_run_manifest(raw));
}

TEST_CASE("corruption fixtures parse") {
    Json j = base_manifest();
    j["flow"] = Json{{"preset", "kirchhoff"},
                     {"corruption", Json{{"kind", "beta_scale"}, {"amount", 1.01}}}};
    RunConfig run = parse_run_manifest(j);
    REQUIRE(run.flow.flow.corruption().has_value());
    CHECK(run.flow.flow.corruption()->kind == Corruption::Kind::BetaScale);

    j["flow"]["corruption"]["kind"] = "entropy_injection";
    CHECK_FALSE(error_text(j).empty());
}

TEST_CASE("preset overrides") {
    Json j = {{"preset", "gerstner"}, {"k", 2.0}, {"g", 4.0}};
    FlowManifest fm = parse_flow_manifest(j, "flow");
    // D1 = D2 = sqrt(k g) = sqrt(8)
    CoefficientFrame fr = fm.flow.spec().frame_at(0.5);
    CHECK(fr.prescribed.real() == doctest::Approx(std::sqrt(8.0)).epsilon(1e-14));

    Json bad = {{"preset", "gerstner"}, {"k", -1.0}};
    CHECK_THROWS_AS(parse_flow_manifest(bad, "flow"), FlowError);

    Json kir = {{"preset", "kirchhoff"}, {"lambda", 0.3}, {"c", 2.0}};
    FlowManifest km = parse_flow_manifest(kir, "flow");
    CHECK(std::abs(km.flow.spec().lambda() - Complex{0.3, 0.0}) == 0.0);
    CHECK(km.flow.spec().frame_at(0.3).prescribed.real() == doctest::Approx(2.0));
}
