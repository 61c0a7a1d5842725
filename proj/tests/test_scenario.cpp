#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "hermet/scenario.hpp"

using namespace hermet;

namespace {

json minimal_config() {
    return json{{"schema_version", 1},
                {"model", "torus2"},
                {"metric", "flat"},
                {"checks", {"conditions"}},
                {"seed", 9}};
}

} // namespace

TEST_CASE("config parsing rejects unknown keys and bad values") {
    auto j = minimal_config();
    CHECK_NOTHROW(ScenarioConfig::from_json(j));

    j["surprise"] = 1;
    CHECK_THROWS_AS(ScenarioConfig::from_json(j), InvalidInput);

    auto j2 = minimal_config();
    j2["checks"] = {"conditions", "no-such-check"};
    CHECK_THROWS_AS(ScenarioConfig::from_json(j2), InvalidInput);

    auto j3 = minimal_config();
    j3.erase("schema_version");
    CHECK_THROWS_AS(ScenarioConfig::from_json(j3), InvalidInput);

    auto j4 = minimal_config();
    j4["sampling"] = {{"grid_per_axis", 4}, {"typo", 1}};
    CHECK_THROWS_AS(ScenarioConfig::from_json(j4), InvalidInput);

    auto j5 = minimal_config();
    j5["model"] = "torus9";
    const auto cfg = ScenarioConfig::from_json(j5);
    CHECK_THROWS_AS(run_scenario(cfg), InvalidInput);
}

TEST_CASE("flat scenario reports all conditions holding") {
    auto cfg = ScenarioConfig::from_json(minimal_config());
    cfg.family_count = 3;
    cfg.comparison_pairs = 1;
    const auto rep = run_scenario(cfg);
    CHECK_FALSE(rep.inconsistent);
    const auto& conds = rep.document.at("checks").at("conditions").at("conditions");
    CHECK(conds.at("i").at("verdict") == "HOLDS");
    CHECK(conds.at("iii").at("verdict") == "HOLDS");
    CHECK(conds.at("vi").at("verdict") == "HOLDS");
    CHECK(rep.document.at("consistent").get<bool>());
    CHECK(rep.document.at("config").at("seed").get<std::uint64_t>() == 9);
}

TEST_CASE("scenario documents are deterministic; timing is isolated") {
    auto cfg = ScenarioConfig::from_json(minimal_config());
    cfg.checks = {"conditions", "witness"};
    cfg.metric = json{{"preset", "conformal"}, {"amplitude", 0.5}};
    cfg.family_count = 3;
    cfg.comparison_pairs = 1;
    const auto rep1 = run_scenario(cfg);
    const auto rep2 = run_scenario(cfg);
    CHECK(rep1.document.dump() == rep2.document.dump());
    CHECK(rep1.full().contains("timing"));
}

TEST_CASE("capability mismatches carry their own error type") {
    auto j = minimal_config();
    j["model"] = "iwasawa";
    j["metric"] = "iwasawa-standard";
    j["checks"] = {"comparison"};
    const auto cfg = ScenarioConfig::from_json(j);
    CHECK_THROWS_AS(run_scenario(cfg), CapabilityError);
}

TEST_CASE("iwasawa scenario runs the applicable checks") {
    auto j = minimal_config();
    j["model"] = "iwasawa";
    j["metric"] = "iwasawa-standard";
    j["checks"] = {"conditions", "torsion_identity", "threefold"};
    const auto rep = run_scenario(ScenarioConfig::from_json(j));
    CHECK_FALSE(rep.inconsistent);
    const auto& checks = rep.document.at("checks");
    CHECK(checks.at("conditions").at("conditions").at("iii").at("verdict") == "FAILS");
    CHECK(checks.at("torsion_identity").at("identity_residual").get<double>() <= 1e-14);
    CHECK(checks.at("threefold").at("t0").get<double>() ==
          doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("metric literals and product models run end to end") {
    auto j = minimal_config();
    j["model"] = "product(torus2,torus1)";
    j["metric"] = json{{"preset", "product"},
                       {"x", json{{"preset", "gauduchon"}}},
                       {"y", "flat"}};
    j["checks"] = {"conditions"};
    const auto rep = run_scenario(ScenarioConfig::from_json(j));
    CHECK(rep.document.at("checks")
              .at("conditions")
              .at("conditions")
              .at("iii")
              .at("verdict") == "HOLDS");
}

TEST_CASE("csv emission writes headers even for unexecuted checks") {
    namespace fs = std::filesystem;
    auto cfg = ScenarioConfig::from_json(minimal_config());
    cfg.checks = {};
    cfg.format = "both";
    cfg.out_dir = (fs::temp_directory_path() / "hermet_csv_test").string();
    const auto rep = run_scenario(cfg);
    const auto files = emit_tables(rep, cfg);
    CHECK(files.size() == 6); // report + five tables
    std::ifstream in(fs::path(cfg.out_dir) / "expansion.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "k,fitted,direct");
    std::string rest;
    std::getline(in, rest);
    CHECK(rest.empty());
    fs::remove_all(cfg.out_dir);
}

TEST_CASE("user-supplied structure-constant tables build models") {
    // the iwasawa table spelled out literally
    const json dphi3 = json{{"n", 3},
                            {"p", 2},
                            {"q", 0},
                            {"terms",
                             {{{"dz", {1, 2}}, {"dzbar", json::array()},
                               {"coeff", {{"value", {-1.0, 0.0}}}}}}}};
    auto j = minimal_config();
    j["model"] = {{"nilmanifold",
                   {{"n", 3}, {"dphi", {json::array(), json::array(), {dphi3}}}}}};
    j["metric"] = "iwasawa-standard";
    j["checks"] = {"torsion_identity"};
    const auto rep = run_scenario(ScenarioConfig::from_json(j));
    CHECK(rep.document.at("checks").at("torsion_identity").at("torsion_integral").get<double>() ==
          doctest::Approx(-1.0).epsilon(1e-14));

    // a corrupted table is rejected at construction
    const json bad_part = json{{"n", 3},
                               {"p", 1},
                               {"q", 1},
                               {"terms",
                                {{{"dz", {3}}, {"dzbar", {1}},
                                  {"coeff", {{"value", {1.0, 0.0}}}}}}}};
    auto jb = minimal_config();
    jb["model"] = {{"nilmanifold",
                    {{"n", 3}, {"dphi", {json::array(), {bad_part}, {dphi3}}}}}};
    jb["metric"] = "iwasawa-standard";
    CHECK_THROWS_AS(run_scenario(ScenarioConfig::from_json(jb)), InvalidInput);
}

TEST_CASE("flat expansion tables carry the volume in the constant row") {
    auto cfg = ScenarioConfig::from_json(minimal_config());
    cfg.checks = {"expansion"};
    const auto rep = run_scenario(cfg);
    const auto& fitted = rep.document.at("checks").at("expansion").at("fitted_coeffs");
    CHECK(fitted[0].get<double>() == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(std::abs(fitted[1].get<double>()) <= 1e-10);
    CHECK(std::abs(fitted[2].get<double>()) <= 1e-10);
}

TEST_CASE("form literals round-trip through the report schema") {
    TorusModel t2(2);
    Rng rng(8);
    const auto g = presets::random_metric(t2, rng);
    const json j = form_to_json(g);
    const auto back = fourier_form_from_json(json::parse(j.dump()));
    CHECK(back == g);
}
