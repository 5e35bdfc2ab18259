#include "povline/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "povline/empirical.hpp"
#include "povline/errors.hpp"
#include "povline/rng.hpp"
#include "povline/special.hpp"

namespace povline {

double ks_against_normal(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const double m = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double c = normal_cdf(values[i]);
        d = std::max(d, c - static_cast<double>(i) / m);
        d = std::max(d, static_cast<double>(i + 1) / m - c);
    }
    return d;
}

namespace {

replication run_one(const study_config& cfg, double j_true, std::uint64_t rep) {
    replication out;
    try {
        rng_stream stream(cfg.seed, rep);
        sample s = sample::from_sorted(cfg.dist.draw_sorted(stream, cfg.n));
        const distribution* model = cfg.use_true_density ? &cfg.dist : nullptr;
        const line_context ctx = resolve_line(s, cfg.line, model);
        if (ctx.q == 0) {
            out.excluded = true;
            out.reason = "no observations below the line";
            return out;
        }
        out.j = j_fixed(s, cfg.m, ctx.z_hat);
        const double gamma = gamma_hat(s, cfg.m, cfg.m, ctx, cfg.cmode, cfg.amode);
        out.variance = gamma / static_cast<double>(cfg.n);
        if (!(out.variance > 0.0)) {
            out.excluded = true;
            out.reason = "nonpositive variance estimate";
            return out;
        }
        out.t = (out.j - j_true) / std::sqrt(out.variance);
        out.p = 2.0 * (1.0 - normal_cdf(std::abs(out.t)));
    } catch (const std::exception& e) {
        out.excluded = true;
        out.reason = e.what();
    }
    return out;
}

}  // namespace

study_report run_normality_study(const study_config& cfg) {
    if (cfg.n < 10)
        throw validation_error("study: n must be at least 10");
    if (cfg.reps < 1)
        throw validation_error("study: need at least one replication");

    study_report report;
    report.j_true = j_theoretical(cfg.dist, cfg.m, cfg.line);
    report.reps.resize(cfg.reps);

    const unsigned jobs = std::max(1u, std::min<unsigned>(
        cfg.jobs, static_cast<unsigned>(cfg.reps)));
    if (jobs == 1) {
        for (std::size_t r = 0; r < cfg.reps; ++r)
            report.reps[r] = run_one(cfg, report.j_true, r);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned w = 0; w < jobs; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t r = w; r < cfg.reps; r += jobs)
                    report.reps[r] = run_one(cfg, report.j_true, r);
            });
        }
        for (auto& t : pool) t.join();
    }

    // Aggregate strictly in replication order so the report does not depend
    // on thread scheduling.
    std::vector<double> t_values;
    t_values.reserve(cfg.reps);
    double sum_p = 0.0, sum_t = 0.0, sum_t2 = 0.0;
    std::size_t covered = 0;
    for (const auto& rep : report.reps) {
        if (rep.excluded) {
            ++report.excluded;
            continue;
        }
        t_values.push_back(rep.t);
        sum_p += rep.p;
        sum_t += rep.t;
        sum_t2 += rep.t * rep.t;
        if (std::abs(rep.t) <= 1.959964) ++covered;
    }
    if (static_cast<double>(report.excluded) >
        0.01 * static_cast<double>(cfg.reps))
        throw degenerate_error(
            std::to_string(report.excluded) + " of " +
            std::to_string(cfg.reps) +
            " replications were degenerate; study is unreliable");
    const double kept = static_cast<double>(t_values.size());
    if (kept > 0.0) {
        report.mean_p = sum_p / kept;
        report.mean_t = sum_t / kept;
        report.var_t = sum_t2 / kept - report.mean_t * report.mean_t;
        report.coverage_95 = static_cast<double>(covered) / kept;
        report.ks_statistic = ks_against_normal(t_values);
        report.ks_p = ks_p_value(report.ks_statistic, t_values.size());
    }
    return report;
}

}  // namespace povline
