#include "hermet/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>

#include "hermet/version.hpp"

namespace hermet {

namespace {

void reject_unknown_keys(const json& j, const std::vector<std::string>& allowed,
                         const std::string& where) {
    if (!j.is_object()) return;
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw InvalidInput("unknown key \"" + it.key() + "\" in " + where);
}

// -- model ------------------------------------------------------------------

using ModelVariant = std::variant<TorusModel, NilmanifoldModel>;

struct ProductSpec {
    int nx = 0;
    int ny = 0;
};

int torus_dim_from_name(const std::string& name) {
    if (name.rfind("torus", 0) == 0 && name.size() == 6 && std::isdigit(name[5]))
        return name[5] - '0';
    return 0;
}

std::optional<ProductSpec> parse_product_name(const std::string& name) {
    if (name.rfind("product(", 0) != 0 || name.back() != ')') return std::nullopt;
    const std::string inner = name.substr(8, name.size() - 9);
    const auto comma = inner.find(',');
    if (comma == std::string::npos) throw InvalidInput("product model needs two factors");
    const int nx = torus_dim_from_name(inner.substr(0, comma));
    const int ny = torus_dim_from_name(inner.substr(comma + 1));
    if (nx == 0 || ny == 0)
        throw InvalidInput("product model factors must be torus presets, got \"" + inner + "\"");
    return ProductSpec{nx, ny};
}

/// {"nilmanifold": {"n": 3, "dphi": [[<form literal>...], ...]}}: each entry
/// lists the bidegree parts of one d(phi_m); the table is validated on
/// construction.
NilmanifoldModel nilmanifold_from_json(const json& j, const SamplingSpec& sampling) {
    reject_unknown_keys(j, {"n", "dphi"}, "nilmanifold model");
    const int n = j.at("n").get<int>();
    std::vector<GradedForm<CoframeConstant>> tables;
    for (const auto& entry : j.at("dphi")) {
        GradedForm<CoframeConstant> g(n);
        for (const auto& part : entry) g.add(coframe_form_from_json(part));
        tables.push_back(std::move(g));
    }
    return NilmanifoldModel(StructureConstants(n, std::move(tables)), sampling);
}

ModelVariant build_model(const ScenarioConfig& cfg) {
    if (cfg.model.is_object() && cfg.model.contains("nilmanifold"))
        return nilmanifold_from_json(cfg.model.at("nilmanifold"), cfg.sampling);
    if (!cfg.model.is_string())
        throw InvalidInput("model must be a preset name or {\"nilmanifold\": ...}");
    const std::string name = cfg.model.get<std::string>();
    if (const int n = torus_dim_from_name(name); n > 0) return TorusModel(n, cfg.sampling);
    if (name == "iwasawa")
        return NilmanifoldModel(StructureConstants::iwasawa(), cfg.sampling);
    if (const auto ps = parse_product_name(name)) {
        SamplingSpec spec = cfg.sampling;
        if (ps->nx + ps->ny >= 4) spec.grid_per_axis = std::min(spec.grid_per_axis, 3);
        return TorusModel(ps->nx + ps->ny, spec);
    }
    throw InvalidInput("unknown model \"" + name + "\" (expected torus1..torus" +
                       std::to_string(kMaxComplexDim) +
                       ", iwasawa, product(<torus>,<torus>), or a nilmanifold table)");
}

// -- metric -----------------------------------------------------------------

Form<FourierField> torus_metric_form(const TorusModel& model, const json& spec,
                                     const ScenarioConfig& cfg);

Form<FourierField> torus_metric_preset(const TorusModel& model, const std::string& name,
                                       const json& params, const ScenarioConfig& cfg) {
    if (name == "flat") return presets::flat(model);
    if (name == "conformal") {
        reject_unknown_keys(params, {"preset", "amplitude"}, "metric");
        return presets::conformal(model, params.value("amplitude", 0.5));
    }
    if (name == "kahler-perturbed") {
        reject_unknown_keys(params, {"preset", "seed", "band", "fraction"}, "metric");
        return presets::kahler_perturbed(model, params.value("seed", std::uint64_t{7}),
                                         params.value("band", 2), params.value("fraction", 0.5));
    }
    if (name == "gauduchon") {
        reject_unknown_keys(params, {"preset", "amplitude"}, "metric");
        return presets::gauduchon_surface(model, params.value("amplitude", 0.3));
    }
    if (name == "product") {
        const auto ps = cfg.model.is_string()
                            ? parse_product_name(cfg.model.get<std::string>())
                            : std::nullopt;
        if (!ps) throw InvalidInput("the product metric preset needs a product(...) model");
        reject_unknown_keys(params, {"preset", "x", "y"}, "metric");
        TorusModel mx(ps->nx, cfg.sampling), my(ps->ny, cfg.sampling);
        const HermitianMetric<TorusModel> gx(mx, torus_metric_form(mx, params.value("x", json("flat")), cfg));
        const HermitianMetric<TorusModel> hy(my, torus_metric_form(my, params.value("y", json("flat")), cfg));
        return product_metric_form(model, gx, hy);
    }
    throw InvalidInput("unknown torus metric preset \"" + name + "\"");
}

Form<FourierField> torus_metric_form(const TorusModel& model, const json& spec,
                                     const ScenarioConfig& cfg) {
    if (spec.is_string()) return torus_metric_preset(model, spec.get<std::string>(), json::object(), cfg);
    if (spec.is_object() && spec.contains("preset"))
        return torus_metric_preset(model, spec.at("preset").get<std::string>(), spec, cfg);
    if (spec.is_object() && spec.contains("terms")) {
        reject_unknown_keys(spec, {"terms", "n", "p", "q"}, "metric literal");
        return fourier_form_from_json(spec);
    }
    throw InvalidInput("metric must be a preset name, {\"preset\": ...} or a form literal");
}

Form<CoframeConstant> coframe_metric_form(const NilmanifoldModel& model, const json& spec) {
    if (spec.is_string()) {
        const auto name = spec.get<std::string>();
        if (name == "iwasawa-standard") return presets::iwasawa_standard(model);
        throw InvalidInput("unknown coframe metric preset \"" + name + "\"");
    }
    if (spec.is_object() && spec.contains("terms")) {
        reject_unknown_keys(spec, {"terms", "n", "p", "q"}, "metric literal");
        return coframe_form_from_json(spec);
    }
    throw InvalidInput("metric on a coframe model must be \"iwasawa-standard\" or a form literal");
}

// -- checks -----------------------------------------------------------------

struct MetricVariant {
    std::optional<HermitianMetric<TorusModel>> torus;
    std::optional<HermitianMetric<NilmanifoldModel>> nil;
};

struct RunContext {
    const ScenarioConfig& cfg;
    ModelVariant model;
    MetricVariant metric;

    const TorusModel& require_torus(const std::string& check) const {
        if (!std::holds_alternative<TorusModel>(model))
            throw CapabilityError("check \"" + check +
                                  "\" needs pointwise function evaluation: torus models only");
        return std::get<TorusModel>(model);
    }
};

struct CheckOutcome {
    json result;
    bool inconsistent = false;
};

EquivalenceOptions equivalence_options(const ScenarioConfig& cfg) {
    EquivalenceOptions opts;
    opts.positivity_trials = cfg.positivity_trials;
    opts.seed = cfg.seed;
    opts.family_size = cfg.family_count;
    opts.family_band = cfg.family_band;
    opts.comparison_grids = cfg.comparison_grids;
    opts.comparison_pairs = cfg.comparison_pairs;
    opts.tol_scale = cfg.tol_scale;
    return opts;
}

CheckOutcome check_conditions(const RunContext& ctx) {
    const auto opts = equivalence_options(ctx.cfg);
    ConditionReport rep = ctx.metric.torus ? equivalence_report(*ctx.metric.torus, opts)
                                           : equivalence_report(*ctx.metric.nil, opts);
    return {to_json(rep), !rep.consistent};
}

FourierField expansion_profile(const RunContext& ctx, std::uint64_t salt) {
    const TorusModel& model = std::get<TorusModel>(ctx.model);
    if (ctx.cfg.expansion_field) return fourier_from_json(*ctx.cfg.expansion_field, model.dim());
    Rng rng(ctx.cfg.seed ^ salt);
    const auto raw = presets::random_real_field(model.dim(), rng, ctx.cfg.family_band,
                                                3 + model.dim());
    // admissibility-scaled profiles keep the polynomial fit conditioned
    return raw.scaled(0.8 * psh_epsilon0(*ctx.metric.torus, raw).value);
}

CheckOutcome check_expansion(const RunContext& ctx) {
    ctx.require_torus("expansion");
    const auto& g = *ctx.metric.torus;
    const int n = g.model().dim();
    const FourierField u = expansion_profile(ctx, 0xE0ull);
    const auto probe = epsilon_expansion(g, u, ctx.cfg.expansion_num_eps);
    json out = to_json(probe);
    json direct = json::array();
    json mixed = json::array();
    double mismatch = 0.0;
    const double scale = std::max(1.0, std::abs(probe.fitted_coeffs.at(0)));
    for (int k = 0; k <= n; ++k) {
        const double d = binomial(n, k) * mixed_term(g, u, n - k);
        direct.push_back(d);
        mixed.push_back(mixed_term(g, u, k));
        mismatch = std::max(mismatch, std::abs(probe.fitted_coeffs.at(k) - d) /
                                          std::max({std::abs(d), std::abs(probe.fitted_coeffs.at(k)), scale}));
    }
    out["direct_coeffs"] = std::move(direct);
    out["mixed_terms"] = std::move(mixed);
    out["max_rel_mismatch"] = mismatch;
    out["u"] = to_json(u);
    return {std::move(out), false};
}

CheckOutcome check_polarization(const RunContext& ctx) {
    ctx.require_torus("polarization");
    const auto& g = *ctx.metric.torus;
    const int n = g.model().dim();
    if (n < 2) throw InvalidInput("polarization check needs n >= 2");
    const int k = n - 2;
    Rng rng(ctx.cfg.seed ^ 0xF01ull);
    const FourierField u1 = presets::random_real_field(n, rng, ctx.cfg.family_band, 3);
    const FourierField u2 = presets::random_real_field(n, rng, ctx.cfg.family_band, 3);
    const double value = polarized_mixed_term(g, {u1, u2}, k);
    const double swapped = polarized_mixed_term(g, {u2, u1}, k);
    const double m10 = mixed_term(g, u1, k);
    const double m01 = mixed_term(g, u2, k);
    const double m11 = mixed_term(g, u1 + u2, k);
    const double extracted = 0.5 * (m11 - m10 - m01);
    const double doubled = polarized_mixed_term(g, {u1.scaled(2.0), u2}, k);
    json out;
    out["value"] = value;
    out["swapped"] = swapped;
    out["extracted_from_sum"] = extracted;
    out["doubled_first_argument"] = doubled;
    const double scale = std::max({1.0, std::abs(value), std::abs(m11)});
    out["symmetry_residual"] = std::abs(value - swapped) / scale;
    out["extraction_residual"] = std::abs(value - extracted) / scale;
    out["linearity_residual"] = std::abs(doubled - 2.0 * value) / scale;
    return {std::move(out), false};
}

CheckOutcome check_comparison(const RunContext& ctx) {
    ctx.require_torus("comparison");
    const auto& g = *ctx.metric.torus;
    const int n = g.model().dim();
    const auto family = presets::psh_family(g, std::max(2, ctx.cfg.comparison_pairs + 1),
                                            ctx.cfg.family_band, ctx.cfg.seed,
                                            ctx.cfg.family_fraction);
    std::vector<int> grids = ctx.cfg.comparison_grids;
    if (grids.empty()) grids = n <= 2 ? std::vector<int>{16, 24, 32} : std::vector<int>{6, 8, 10};
    json rows = json::array();
    for (int p = 0; p + 1 < static_cast<int>(family.size()) && p < ctx.cfg.comparison_pairs; ++p) {
        for (int grid : grids) {
            const auto ci = comparison_integrals(g, family[p], family[p + 1], grid);
            json row = to_json(ci, n);
            row["pair"] = p;
            rows.push_back(std::move(row));
        }
    }
    return {json{{"runs", std::move(rows)}}, false};
}

CheckOutcome check_threefold(const RunContext& ctx) {
    json out;
    if (ctx.metric.torus) {
        const auto& g = *ctx.metric.torus;
        if (g.model().dim() != 3) throw InvalidInput("threefold check needs an n = 3 model");
        const FourierField u = expansion_profile(ctx, 0x3F0ull);
        out = to_json(threefold_decomposition(g, u, ctx.cfg.positivity_trials, ctx.cfg.seed));
        out["u"] = to_json(u);
    } else {
        const auto& g = *ctx.metric.nil;
        if (g.model().dim() != 3) throw InvalidInput("threefold check needs an n = 3 model");
        out = to_json(threefold_decomposition(g, CoframeConstant::zero(3),
                                              ctx.cfg.positivity_trials, ctx.cfg.seed));
    }
    return {std::move(out), false};
}

CheckOutcome check_torsion_identity(const RunContext& ctx) {
    const json out = ctx.metric.torus ? to_json(torsion_balance(*ctx.metric.torus))
                                      : to_json(torsion_balance(*ctx.metric.nil));
    return {out, false};
}

CheckOutcome check_witness(const RunContext& ctx) {
    ctx.require_torus("witness");
    const auto& g = *ctx.metric.torus;
    Rng rng(ctx.cfg.seed ^ 0x31ull);
    std::vector<FourierField> candidates;
    for (int i = 0; i < ctx.cfg.family_count; ++i)
        candidates.push_back(
            presets::random_real_field(g.model().dim(), rng, ctx.cfg.family_band, 4));
    const auto res = witness_search(g, candidates);
    json out;
    out["found"] = res.witness.has_value();
    out["search_failed"] = res.search_failed;
    if (!res.note.empty()) out["note"] = res.note;
    if (res.witness) out["witness"] = to_json(*res.witness);
    return {std::move(out), false};
}

CheckOutcome check_product(const RunContext& ctx) {
    ctx.require_torus("product");
    const auto& g = *ctx.metric.torus;
    ScenarioConfig factor_cfg = ctx.cfg;
    factor_cfg.model = ctx.cfg.product_factor_model;
    const auto factor_model_v = build_model(factor_cfg);
    if (!std::holds_alternative<TorusModel>(factor_model_v))
        throw CapabilityError("product factors must be torus models");
    const TorusModel factor_model = std::get<TorusModel>(factor_model_v);
    const HermitianMetric<TorusModel> h(
        factor_model, torus_metric_form(factor_model, ctx.cfg.product_factor_metric, factor_cfg));
    const TorusModel prod = product_model(g.model(), factor_model);
    const HermitianMetric<TorusModel> gp(prod, product_metric_form(prod, g, h));
    json out;
    out["base_iii"] = to_json(condition_iii(g, ctx.cfg.tol_scale));
    out["factor_iii"] = to_json(condition_iii(h, ctx.cfg.tol_scale));
    out["product_iii"] = to_json(condition_iii(gp, ctx.cfg.tol_scale));
    out["product_dim"] = prod.dim();
    return {std::move(out), false};
}

CheckOutcome dispatch_check(const RunContext& ctx, const std::string& name) {
    if (name == "conditions") return check_conditions(ctx);
    if (name == "expansion") return check_expansion(ctx);
    if (name == "polarization") return check_polarization(ctx);
    if (name == "comparison") return check_comparison(ctx);
    if (name == "threefold") return check_threefold(ctx);
    if (name == "torsion_identity") return check_torsion_identity(ctx);
    if (name == "witness") return check_witness(ctx);
    if (name == "product") return check_product(ctx);
    throw InvalidInput("unknown check \"" + name + "\"");
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

int thread_count_from_env() {
    const char* env = std::getenv("HERMET_THREADS");
    if (!env) return 1;
    const int v = std::atoi(env);
    return v < 1 ? 1 : v;
}

std::string format_csv_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

// -- config -----------------------------------------------------------------

ScenarioConfig ScenarioConfig::from_json(const json& j) {
    reject_unknown_keys(j,
                        {"schema_version", "model", "metric", "checks", "seed", "sampling",
                         "tolerances", "bandwidth_cap", "expansion", "family", "comparison",
                         "product", "output"},
                        "config");
    ScenarioConfig cfg;
    if (!j.contains("schema_version"))
        throw InvalidInput("config is missing \"schema_version\"");
    if (j.at("schema_version").get<int>() != kConfigSchemaVersion)
        throw InvalidInput("unsupported config schema version");
    cfg.model = j.value("model", cfg.model);
    if (j.contains("metric")) cfg.metric = j.at("metric");
    if (j.contains("checks")) {
        cfg.checks = j.at("checks").get<std::vector<std::string>>();
        for (const auto& c : cfg.checks)
            if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end())
                throw InvalidInput("unknown check \"" + c + "\" in config");
    }
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("sampling")) {
        const auto& s = j.at("sampling");
        reject_unknown_keys(s, {"grid_per_axis", "random_points"}, "sampling");
        cfg.sampling.grid_per_axis = s.value("grid_per_axis", cfg.sampling.grid_per_axis);
        cfg.sampling.random_points = s.value("random_points", cfg.sampling.random_points);
    }
    cfg.sampling.seed = cfg.seed;
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        reject_unknown_keys(t, {"tol_scale"}, "tolerances");
        cfg.tol_scale = t.value("tol_scale", cfg.tol_scale);
    }
    cfg.bandwidth_cap = j.value("bandwidth_cap", cfg.bandwidth_cap);
    if (j.contains("expansion")) {
        const auto& e = j.at("expansion");
        reject_unknown_keys(e, {"num_eps", "field"}, "expansion");
        cfg.expansion_num_eps = e.value("num_eps", cfg.expansion_num_eps);
        if (e.contains("field")) cfg.expansion_field = e.at("field");
    }
    if (j.contains("family")) {
        const auto& f = j.at("family");
        reject_unknown_keys(f, {"count", "band", "fraction"}, "family");
        cfg.family_count = f.value("count", cfg.family_count);
        cfg.family_band = f.value("band", cfg.family_band);
        cfg.family_fraction = f.value("fraction", cfg.family_fraction);
    }
    if (j.contains("comparison")) {
        const auto& c = j.at("comparison");
        reject_unknown_keys(c, {"grids", "pairs"}, "comparison");
        if (c.contains("grids")) cfg.comparison_grids = c.at("grids").get<std::vector<int>>();
        cfg.comparison_pairs = c.value("pairs", cfg.comparison_pairs);
    }
    if (j.contains("product")) {
        const auto& p = j.at("product");
        reject_unknown_keys(p, {"factor_model", "factor_metric"}, "product");
        cfg.product_factor_model = p.value("factor_model", cfg.product_factor_model);
        if (p.contains("factor_metric")) cfg.product_factor_metric = p.at("factor_metric");
    }
    if (j.contains("output")) {
        const auto& o = j.at("output");
        reject_unknown_keys(o, {"dir", "format"}, "output");
        cfg.out_dir = o.value("dir", cfg.out_dir);
        cfg.format = o.value("format", cfg.format);
    }
    if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "both")
        throw InvalidInput("output format must be json, csv or both");
    return cfg;
}

json ScenarioConfig::echo() const {
    json j;
    j["schema_version"] = kConfigSchemaVersion;
    j["model"] = model;
    j["metric"] = metric;
    j["checks"] = checks;
    j["seed"] = seed;
    j["sampling"] = {{"grid_per_axis", sampling.grid_per_axis},
                     {"random_points", sampling.random_points}};
    j["tolerances"] = {{"tol_scale", tol_scale},
                       {"defect_rel", kDefectRel},
                       {"witness_tol", kWitnessTol},
                       {"pd_tol", HermitianMetric<TorusModel>::pd_tol}};
    j["bandwidth_cap"] = bandwidth_cap;
    j["expansion"] = {{"num_eps", expansion_num_eps}};
    if (expansion_field) j["expansion"]["field"] = *expansion_field;
    j["family"] = {{"count", family_count}, {"band", family_band}, {"fraction", family_fraction}};
    j["comparison"] = {{"grids", comparison_grids}, {"pairs", comparison_pairs}};
    j["product"] = {{"factor_model", product_factor_model},
                    {"factor_metric", product_factor_metric}};
    j["output"] = {{"dir", out_dir}, {"format", format}};
    return j;
}

// -- runner -----------------------------------------------------------------

RunReport run_scenario(const ScenarioConfig& cfg) {
    FourierField::default_bandwidth_cap() = cfg.bandwidth_cap;

    RunContext ctx{cfg, build_model(cfg), {}};
    if (auto* torus = std::get_if<TorusModel>(&ctx.model)) {
        ctx.metric.torus.emplace(*torus, torus_metric_form(*torus, cfg.metric, cfg));
    } else {
        auto* nil = std::get_if<NilmanifoldModel>(&ctx.model);
        ctx.metric.nil.emplace(*nil, coframe_metric_form(*nil, cfg.metric));
    }

    RunReport rep;
    rep.document["schema_version"] = kReportSchemaVersion;
    rep.document["engine"] = {{"name", kEngineName},
                              {"version", kEngineVersion},
                              {"convention", kConventionId}};
    rep.document["config"] = cfg.echo();

    json checks = json::object();
    json per_check_ms = json::object();

    const int threads = thread_count_from_env();
    std::vector<std::pair<std::string, CheckOutcome>> outcomes(cfg.checks.size());
    std::vector<double> elapsed(cfg.checks.size(), 0.0);

    auto run_one = [&](std::size_t i) {
        const auto start = std::chrono::steady_clock::now();
        CheckOutcome out = dispatch_check(ctx, cfg.checks[i]);
        elapsed[i] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        outcomes[i] = {cfg.checks[i], std::move(out)};
    };

    if (threads <= 1 || cfg.checks.size() <= 1) {
        for (std::size_t i = 0; i < cfg.checks.size(); ++i) run_one(i);
    } else {
        std::vector<std::future<void>> futures;
        futures.reserve(cfg.checks.size());
        for (std::size_t i = 0; i < cfg.checks.size(); ++i)
            futures.push_back(std::async(std::launch::async, run_one, i));
        for (auto& f : futures) f.get();
    }

    for (std::size_t i = 0; i < cfg.checks.size(); ++i) {
        checks[outcomes[i].first] = std::move(outcomes[i].second.result);
        per_check_ms[outcomes[i].first] = elapsed[i];
        rep.inconsistent = rep.inconsistent || outcomes[i].second.inconsistent;
    }

    rep.document["checks"] = std::move(checks);
    rep.document["consistent"] = !rep.inconsistent;
    rep.timing["timestamp"] = iso_timestamp();
    rep.timing["per_check_ms"] = std::move(per_check_ms);
    return rep;
}

// -- tables -----------------------------------------------------------------

std::vector<std::string> emit_tables(const RunReport& rep, const ScenarioConfig& cfg) {
    namespace fs = std::filesystem;
    std::vector<std::string> written;
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);

    auto write_file = [&](const std::string& name, const std::string& body) {
        const fs::path path = fs::path(cfg.out_dir) / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot write " + path.string());
        out << body;
        if (!out) throw Error("short write on " + path.string());
        written.push_back(path.string());
    };

    write_file("report.json", rep.full().dump(2) + "\n");
    if (cfg.format == "json") return written;

    const json& checks = rep.document.at("checks");

    std::string conditions = "condition,verdict,defect\n";
    if (checks.contains("conditions"))
        for (const auto& [name, res] : checks.at("conditions").at("conditions").items())
            conditions += name + "," + res.at("verdict").get<std::string>() + "," +
                          format_csv_double(res.at("defect").get<double>()) + "\n";
    write_file("conditions.csv", conditions);

    std::string expansion = "k,fitted,direct\n";
    std::string mixed = "k,value\n";
    if (checks.contains("expansion")) {
        const auto& e = checks.at("expansion");
        const auto& fitted = e.at("fitted_coeffs");
        const auto& direct = e.at("direct_coeffs");
        for (std::size_t k = 0; k < fitted.size(); ++k)
            expansion += std::to_string(k) + "," + format_csv_double(fitted[k].get<double>()) +
                         "," + format_csv_double(direct[k].get<double>()) + "\n";
        const auto& mt = e.at("mixed_terms");
        for (std::size_t k = 0; k < mt.size(); ++k)
            mixed += std::to_string(k) + "," + format_csv_double(mt[k].get<double>()) + "\n";
    }
    write_file("expansion.csv", expansion);
    write_file("mixed_terms.csv", mixed);

    std::string threefold = "term,value\n";
    if (checks.contains("threefold")) {
        const auto& t = checks.at("threefold");
        for (const char* key : {"t0", "t1", "t2", "t3", "volume", "t2_by_parts"})
            threefold += std::string(key) + "," + format_csv_double(t.at(key).get<double>()) + "\n";
    }
    write_file("threefold.csv", threefold);

    std::string comparison = "pair,grid,lhs,rhs,margin,boundary_fraction,allowance\n";
    if (checks.contains("comparison"))
        for (const auto& row : checks.at("comparison").at("runs")) {
            comparison += std::to_string(row.at("pair").get<int>()) + "," +
                          std::to_string(row.at("grid").get<int>()) + "," +
                          format_csv_double(row.at("lhs").get<double>()) + "," +
                          format_csv_double(row.at("rhs").get<double>()) + "," +
                          format_csv_double(row.at("margin").get<double>()) + "," +
                          format_csv_double(row.at("boundary_fraction").get<double>()) + "," +
                          format_csv_double(row.at("allowance").get<double>()) + "\n";
        }
    write_file("comparison.csv", comparison);

    return written;
}

} // namespace hermet
