#include "povline/report.hpp"

#include <cmath>
#include <sstream>

#include "povline/errors.hpp"
#include "povline/io.hpp"

namespace povline {

using nlohmann::json;

estimate_report make_estimate_report(const sample& s, const measure& m,
                                     const line_spec& line, cov_mode cmode,
                                     a_mode amode, const distribution* model) {
    const line_context ctx = resolve_line(s, line, model);
    estimate_report r;
    r.measure = m.name();
    r.line = line.name();
    r.n = s.size();
    r.q = ctx.q;
    r.z_hat = ctx.z_hat;
    r.degenerate_q = (ctx.q == 0);
    r.j_hat = j_fixed(s, m, ctx.z_hat);
    const double gamma = gamma_hat(s, m, m, ctx, cmode, amode);
    r.variance = gamma / static_cast<double>(s.size());
    r.std_error = r.variance >= 0.0 ? std::sqrt(r.variance) : 0.0;
    r.delta_hat = delta_hat(s, m, ctx, cmode, amode);
    r.a_hat = a_factor(s, m, ctx.z_hat, ctx.g_at_z, amode);
    r.amode = amode;
    r.cmode = cmode;
    return r;
}

delta_report make_delta_report(const sample& s, const measure& m,
                               const line_spec& line, cov_mode cmode,
                               a_mode amode, const distribution* model) {
    const line_context ctx = resolve_line(s, line, model);
    delta_report r;
    r.measure = m.name();
    r.line = line.name();
    r.n = s.size();
    r.q = ctx.q;
    r.z_hat = ctx.z_hat;
    r.sigma_hat = sigma_hat(s, m, m, ctx.z_hat, cmode);
    r.delta_hat = povline::delta_hat(s, m, ctx, cmode, amode);
    r.gamma_hat = povline::gamma_hat(s, m, m, ctx, cmode, amode);
    r.variance_of_estimate = r.gamma_hat / static_cast<double>(s.size());
    return r;
}

json to_json(const estimate_report& r) {
    json j;
    j["measure"] = r.measure;
    j["line"] = r.line;
    j["n"] = r.n;
    j["q"] = r.q;
    j["z_hat"] = r.z_hat;
    j["j_hat"] = r.j_hat;
    j["variance"] = r.variance;
    if (r.variance >= 0.0)
        j["std_error"] = r.std_error;
    else
        j["std_error"] = nullptr;
    j["delta_hat"] = r.delta_hat;
    j["a_hat"] = r.a_hat;
    j["a_mode"] = to_string(r.amode);
    j["cov_mode"] = to_string(r.cmode);
    j["degenerate_q"] = r.degenerate_q;
    return j;
}

json to_json(const delta_report& r) {
    json j;
    j["measure"] = r.measure;
    j["line"] = r.line;
    j["n"] = r.n;
    j["q"] = r.q;
    j["z_hat"] = r.z_hat;
    j["sigma_hat"] = r.sigma_hat;
    j["delta_hat"] = r.delta_hat;
    j["gamma_hat"] = r.gamma_hat;
    j["variance_of_estimate"] = r.variance_of_estimate;
    return j;
}

json to_json(const test_result& r) {
    json j;
    j["kind"] = r.kind;
    j["statistic"] = r.statistic;
    j["p_value"] = r.p_value;
    if (r.df > 0) j["df"] = r.df;
    j["reject_at"] = {{"0.10", r.reject_at_10},
                      {"0.05", r.reject_at_05},
                      {"0.01", r.reject_at_01}};
    j["estimate_f"] = r.estimate_f;
    j["estimate_g"] = r.estimate_g;
    j["variance_f"] = r.variance_f;
    j["variance_g"] = r.variance_g;
    j["pooled_covariance"] = r.pooled;
    return j;
}

json to_json(const study_report& r) {
    json j;
    j["j_true"] = r.j_true;
    j["replications"] = r.reps.size();
    j["excluded"] = r.excluded;
    j["ks_statistic"] = r.ks_statistic;
    j["ks_p"] = r.ks_p;
    j["mean_p"] = r.mean_p;
    j["coverage_95"] = r.coverage_95;
    j["mean_t"] = r.mean_t;
    j["var_t"] = r.var_t;
    return j;
}

namespace {

json wrap(const std::string& subcommand, const json& config,
          const json& inputs, const json& report) {
    json doc;
    doc["schema"] = schema_name;
    doc["manifest"] = {{"subcommand", subcommand},
                       {"config", config},
                       {"inputs", inputs},
                       {"version", version_string}};
    doc["report"] = report;
    return doc;
}

std::string need_string(const json& config, const char* key) {
    if (!config.contains(key) || !config[key].is_string())
        throw validation_error(std::string("config needs string field '") +
                               key + "'");
    return config[key].get<std::string>();
}

double need_number(const json& config, const char* key) {
    if (!config.contains(key) || !config[key].is_number())
        throw validation_error(std::string("config needs numeric field '") +
                               key + "'");
    return config[key].get<double>();
}

sample load_sample(const json& config, const char* data_key,
                   const char* column_key, json& inputs) {
    const std::string path = need_string(config, data_key);
    const auto column = config.contains(column_key)
                            ? config[column_key].get<std::size_t>()
                            : std::size_t{1};
    inputs[path] = file_digest(path);
    return sample::from_values(read_income_column(path, column));
}

cov_mode config_cov_mode(const json& config) {
    return config.contains("cov_mode")
               ? parse_cov_mode(config["cov_mode"].get<std::string>())
               : cov_mode::full;
}

a_mode config_a_mode(const json& config) {
    return config.contains("a_mode")
               ? parse_a_mode(config["a_mode"].get<std::string>())
               : a_mode::density;
}

}  // namespace

json run_subcommand(const std::string& subcommand, const json& config,
                    study_report* reps_out) {
    json inputs = json::object();
    const cov_mode cmode = config_cov_mode(config);
    const a_mode amode = config_a_mode(config);

    if (subcommand == "estimate" || subcommand == "delta") {
        const sample s = load_sample(config, "data", "column", inputs);
        const measure m = measure::parse(need_string(config, "measure"));
        const line_spec line = line_spec::parse(need_string(config, "line"));
        const json report =
            subcommand == "estimate"
                ? to_json(make_estimate_report(s, m, line, cmode, amode))
                : to_json(make_delta_report(s, m, line, cmode, amode));
        return wrap(subcommand, config, inputs, report);
    }

    if (subcommand == "test-two") {
        const sample sf = load_sample(config, "data_f", "column_f", inputs);
        const sample sg = load_sample(config, "data_g", "column_g", inputs);
        const measure m = measure::parse(need_string(config, "measure"));
        const line_spec lf = line_spec::parse(need_string(config, "line_f"));
        const line_spec lg = line_spec::parse(need_string(config, "line_g"));
        const double coef =
            config.contains("coef") ? need_number(config, "coef") : 1.0;
        const auto result =
            proportionality_test(sf, sg, m, coef, lf, lg, cmode, amode);
        return wrap(subcommand, config, inputs, to_json(result));
    }

    if (subcommand == "wald") {
        const sample sf = load_sample(config, "data_f", "column_f", inputs);
        const sample sg = load_sample(config, "data_g", "column_g", inputs);
        if (!config.contains("measures") || !config["measures"].is_array())
            throw validation_error("config needs array field 'measures'");
        std::vector<measure> measures;
        for (const auto& item : config["measures"])
            measures.push_back(measure::parse(item.get<std::string>()));
        std::vector<double> coeffs(measures.size(), 1.0);
        if (config.contains("coeffs"))
            coeffs = config["coeffs"].get<std::vector<double>>();
        const line_spec lf = line_spec::parse(need_string(config, "line_f"));
        const line_spec lg = line_spec::parse(need_string(config, "line_g"));
        const auto result =
            wald_test(sf, sg, measures, coeffs, lf, lg, cmode, amode);
        return wrap(subcommand, config, inputs, to_json(result));
    }

    if (subcommand == "simulate") {
        if (!config.contains("seed"))
            throw validation_error("simulate requires an explicit seed");
        study_config cfg{distribution::parse(need_string(config, "dist")),
                         static_cast<std::size_t>(need_number(config, "n")),
                         static_cast<std::size_t>(need_number(config, "reps")),
                         measure::parse(need_string(config, "measure")),
                         line_spec::parse(need_string(config, "line")),
                         config["seed"].get<std::uint64_t>(),
                         config.value("true_density", false),
                         cmode,
                         amode,
                         config.value("jobs", 1u)};
        study_report rep = run_normality_study(cfg);
        json report = to_json(rep);
        if (reps_out) *reps_out = std::move(rep);
        return wrap(subcommand, config, inputs, report);
    }

    throw validation_error("unknown subcommand '" + subcommand + "'");
}

namespace {

void render_kv(std::ostringstream& out, const json& obj, int indent) {
    for (const auto& [key, value] : obj.items()) {
        out << std::string(static_cast<std::size_t>(indent), ' ') << key;
        if (value.is_object()) {
            out << ":\n";
            render_kv(out, value, indent + 2);
        } else {
            out << " = " << value.dump() << "\n";
        }
    }
}

}  // namespace

std::string render_pretty(const json& document) {
    std::ostringstream out;
    out << "schema: " << document["schema"].get<std::string>() << "\n";
    const auto& man = document["manifest"];
    out << "run: " << man["subcommand"].get<std::string>() << " (version "
        << man["version"].get<std::string>() << ")\n";
    out << "config:\n";
    render_kv(out, man["config"], 2);
    if (!man["inputs"].empty()) {
        out << "inputs:\n";
        render_kv(out, man["inputs"], 2);
    }
    out << "report:\n";
    render_kv(out, document["report"], 2);
    return out.str();
}

}  // namespace povline
