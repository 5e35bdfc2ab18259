#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "povline/errors.hpp"
#include "povline/report.hpp"

namespace {

using nlohmann::json;

struct output_opts {
    std::string out;
    bool pretty = false;
};

void add_output_opts(CLI::App* sub, output_opts& opts) {
    sub->add_option("--out", opts.out, "write the JSON document here instead of stdout");
    sub->add_flag("--pretty", opts.pretty, "render a human-readable table instead of JSON");
}

void emit(const json& doc, const output_opts& opts) {
    const std::string text =
        opts.pretty ? povline::render_pretty(doc) : doc.dump(2) + "\n";
    if (opts.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opts.out);
    if (!f) throw povline::validation_error("cannot write '" + opts.out + "'");
    f << text;
}

void write_rep_csv(const std::string& path, const povline::study_report& rep) {
    std::ofstream f(path);
    if (!f) throw povline::validation_error("cannot write '" + path + "'");
    f << "rep,t,p,j_hat,variance,excluded,reason\n";
    for (std::size_t r = 0; r < rep.reps.size(); ++r) {
        const auto& row = rep.reps[r];
        std::string reason = row.reason;
        for (std::size_t pos = 0; (pos = reason.find('"', pos)) != std::string::npos;
             pos += 2)
            reason.replace(pos, 1, "\"\"");
        f << r << ',' << row.t << ',' << row.p << ',' << row.j << ','
          << row.variance << ',' << (row.excluded ? 1 : 0) << ",\"" << reason
          << "\"\n";
    }
}

// Shared flags resolving to manifest config entries.
struct mode_opts {
    std::string cov_mode = "full";
    std::string a_mode = "density";
};

void add_mode_opts(CLI::App* sub, mode_opts& opts) {
    sub->add_option("--cov-mode", opts.cov_mode,
                    "covariance estimator: full | uncoupled")
        ->default_str("full");
    sub->add_option("--a-mode", opts.a_mode,
                    "threshold sensitivity factor: density | raw")
        ->default_str("density");
}

struct two_sample_opts {
    std::string data_f, data_g;
    std::size_t column_f = 1, column_g = 1;
    std::string line_both, line_f, line_g;
};

void add_two_sample_opts(CLI::App* sub, two_sample_opts& opts) {
    sub->add_option("--data-f", opts.data_f, "first sample CSV")->required();
    sub->add_option("--data-g", opts.data_g, "second sample CSV")->required();
    sub->add_option("--column-f", opts.column_f, "1-based column in --data-f");
    sub->add_option("--column-g", opts.column_g, "1-based column in --data-g");
    sub->add_option("--line", opts.line_both,
                    "poverty line rule applied to both samples");
    sub->add_option("--line-f", opts.line_f, "line rule for the first sample");
    sub->add_option("--line-g", opts.line_g, "line rule for the second sample");
}

void resolve_lines(two_sample_opts& opts) {
    if (opts.line_f.empty()) opts.line_f = opts.line_both;
    if (opts.line_g.empty()) opts.line_g = opts.line_both;
    if (opts.line_f.empty() || opts.line_g.empty())
        throw povline::validation_error(
            "a line rule is required (--line, or --line-f/--line-g)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"poverty index estimation with estimated poverty lines"};
    app.require_subcommand(1);

    // estimate / delta
    struct single_opts {
        std::string data, measure, line;
        std::size_t column = 1;
        mode_opts modes;
        output_opts out;
    };
    single_opts est, del;
    for (auto [name, opts, help] :
         {std::tuple<const char*, single_opts*, const char*>{
              "estimate", &est, "point estimate with variance for one measure"},
          {"delta", &del,
           "variance split: fixed-line part, line penalty, and their sum"}}) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--data", opts->data, "income CSV")->required();
        sub->add_option("--column", opts->column, "1-based column");
        sub->add_option("--measure", opts->measure, povline::measure::grammar())
            ->required();
        sub->add_option("--line", opts->line, povline::line_spec::grammar())
            ->required();
        add_mode_opts(sub, opts->modes);
        add_output_opts(sub, opts->out);
        sub->callback([name = std::string(name), opts] {
            json config = {{"data", opts->data},
                           {"column", opts->column},
                           {"measure", opts->measure},
                           {"line", opts->line},
                           {"cov_mode", opts->modes.cov_mode},
                           {"a_mode", opts->modes.a_mode}};
            emit(povline::run_subcommand(name, config), opts->out);
        });
    }

    // test-two
    struct {
        two_sample_opts two;
        std::string measure;
        double coef = 1.0;
        mode_opts modes;
        output_opts out;
    } tt;
    {
        auto* sub = app.add_subcommand(
            "test-two", "two-sample proportionality test for one measure");
        add_two_sample_opts(sub, tt.two);
        sub->add_option("--measure", tt.measure, povline::measure::grammar())
            ->required();
        sub->add_option("--coef", tt.coef,
                        "proportionality coefficient under the null");
        add_mode_opts(sub, tt.modes);
        add_output_opts(sub, tt.out);
        sub->callback([&] {
            resolve_lines(tt.two);
            json config = {{"data_f", tt.two.data_f},
                           {"data_g", tt.two.data_g},
                           {"column_f", tt.two.column_f},
                           {"column_g", tt.two.column_g},
                           {"measure", tt.measure},
                           {"coef", tt.coef},
                           {"line_f", tt.two.line_f},
                           {"line_g", tt.two.line_g},
                           {"cov_mode", tt.modes.cov_mode},
                           {"a_mode", tt.modes.a_mode}};
            emit(povline::run_subcommand("test-two", config), tt.out);
        });
    }

    // wald
    struct {
        two_sample_opts two;
        std::vector<std::string> measures;
        std::vector<double> coeffs;
        mode_opts modes;
        output_opts out;
    } wa;
    {
        auto* sub = app.add_subcommand(
            "wald", "joint two-sample test for a vector of measures");
        add_two_sample_opts(sub, wa.two);
        sub->add_option("--measure", wa.measures,
                        "measure (repeatable): " +
                            std::string(povline::measure::grammar()))
            ->required();
        sub->add_option("--coeff", wa.coeffs,
                        "diagonal coefficient per measure (default 1)");
        add_mode_opts(sub, wa.modes);
        add_output_opts(sub, wa.out);
        sub->callback([&] {
            resolve_lines(wa.two);
            if (wa.coeffs.empty()) wa.coeffs.assign(wa.measures.size(), 1.0);
            json config = {{"data_f", wa.two.data_f},
                           {"data_g", wa.two.data_g},
                           {"column_f", wa.two.column_f},
                           {"column_g", wa.two.column_g},
                           {"measures", wa.measures},
                           {"coeffs", wa.coeffs},
                           {"line_f", wa.two.line_f},
                           {"line_g", wa.two.line_g},
                           {"cov_mode", wa.modes.cov_mode},
                           {"a_mode", wa.modes.a_mode}};
            emit(povline::run_subcommand("wald", config), wa.out);
        });
    }

    // simulate
    struct {
        std::string dist, measure, line, csv;
        std::size_t n = 0, reps = 0;
        std::uint64_t seed = 0;
        bool true_density = false;
        unsigned jobs = 1;
        mode_opts modes;
        output_opts out;
    } sim;
    {
        auto* sub = app.add_subcommand(
            "simulate", "replicated sampling study of the standardized index");
        sub->add_option("--dist", sim.dist, povline::distribution::grammar())
            ->required();
        sub->add_option("--n", sim.n, "sample size per replication")->required();
        sub->add_option("--reps", sim.reps, "number of replications")->required();
        sub->add_option("--measure", sim.measure, povline::measure::grammar())
            ->required();
        sub->add_option("--line", sim.line, povline::line_spec::grammar())
            ->required();
        sub->add_option("--seed", sim.seed, "RNG seed (required; no hidden entropy)")
            ->required();
        sub->add_flag("--true-density", sim.true_density,
                      "use the model density instead of the kernel estimate");
        sub->add_option("--jobs", sim.jobs, "worker threads");
        sub->add_option("--csv", sim.csv, "write per-replication rows here");
        add_mode_opts(sub, sim.modes);
        add_output_opts(sub, sim.out);
        sub->callback([&] {
            json config = {{"dist", sim.dist},
                           {"n", sim.n},
                           {"reps", sim.reps},
                           {"measure", sim.measure},
                           {"line", sim.line},
                           {"seed", sim.seed},
                           {"true_density", sim.true_density},
                           {"jobs", sim.jobs},
                           {"cov_mode", sim.modes.cov_mode},
                           {"a_mode", sim.modes.a_mode}};
            povline::study_report detail;
            const json doc = povline::run_subcommand("simulate", config, &detail);
            if (!sim.csv.empty()) write_rep_csv(sim.csv, detail);
            emit(doc, sim.out);
        });
    }

    // replay
    struct {
        std::string manifest;
        output_opts out;
    } rep;
    {
        auto* sub = app.add_subcommand(
            "replay", "re-run a previous report's manifest and reproduce it");
        sub->add_option("--manifest", rep.manifest,
                        "report document (or bare manifest) JSON")
            ->required();
        add_output_opts(sub, rep.out);
        sub->callback([&] {
            std::ifstream f(rep.manifest);
            if (!f)
                throw povline::validation_error("cannot open '" + rep.manifest +
                                                "'");
            json doc = json::parse(f, nullptr, true, true);
            const json& man = doc.contains("manifest") ? doc["manifest"] : doc;
            if (!man.contains("subcommand") || !man.contains("config"))
                throw povline::validation_error(
                    "'" + rep.manifest + "' does not contain a run manifest");
            const json redone = povline::run_subcommand(
                man["subcommand"].get<std::string>(), man["config"]);
            if (man.contains("inputs") &&
                redone["manifest"]["inputs"] != man["inputs"])
                std::cerr << "warning: input files changed since the original "
                             "run; digests differ\n";
            emit(redone, rep.out);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const povline::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const povline::degenerate_error& e) {
        std::cerr << "degenerate: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
