#pragma once

#include <cstddef>
#include <string>

#include "json.hpp"
#include "povline/distribution.hpp"
#include "povline/empirical.hpp"
#include "povline/estimation.hpp"
#include "povline/line.hpp"
#include "povline/measures.hpp"
#include "povline/simulation.hpp"
#include "povline/testing.hpp"
#include "povline/variance.hpp"

namespace povline {

inline constexpr const char* schema_name = "povline-report/1";
inline constexpr const char* version_string = "0.1.0";

struct estimate_report {
    std::string measure;
    std::string line;
    std::size_t n = 0;
    std::size_t q = 0;
    double z_hat = 0.0;
    double j_hat = 0.0;
    double variance = 0.0;  // gamma / n
    double std_error = 0.0;
    double delta_hat = 0.0;
    double a_hat = 0.0;
    a_mode amode = a_mode::density;
    cov_mode cmode = cov_mode::full;
    bool degenerate_q = false;  // nobody below the line
};

estimate_report make_estimate_report(const sample& s, const measure& m,
                                     const line_spec& line,
                                     cov_mode cmode = cov_mode::full,
                                     a_mode amode = a_mode::density,
                                     const distribution* model = nullptr);

struct delta_report {
    std::string measure;
    std::string line;
    std::size_t n = 0;
    std::size_t q = 0;
    double z_hat = 0.0;
    double sigma_hat = 0.0;
    double delta_hat = 0.0;
    double gamma_hat = 0.0;
    double variance_of_estimate = 0.0;  // gamma / n
};

delta_report make_delta_report(const sample& s, const measure& m,
                               const line_spec& line,
                               cov_mode cmode = cov_mode::full,
                               a_mode amode = a_mode::density,
                               const distribution* model = nullptr);

nlohmann::json to_json(const estimate_report& r);
nlohmann::json to_json(const delta_report& r);
nlohmann::json to_json(const test_result& r);
nlohmann::json to_json(const study_report& r);

// Runs one subcommand from its resolved configuration and returns the full
// document: {schema, manifest{subcommand, config, inputs, version}, report}.
// Re-running the manifest of any document reproduces it bit-for-bit as long
// as the input files are unchanged. `reps_out`, when given, receives the
// per-replication detail of `simulate` runs for CSV export.
nlohmann::json run_subcommand(const std::string& subcommand,
                              const nlohmann::json& config,
                              study_report* reps_out = nullptr);

// Human-readable rendering of a report document (the --pretty flag).
std::string render_pretty(const nlohmann::json& document);

}  // namespace povline
