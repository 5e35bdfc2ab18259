#include "povline/variance.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "povline/errors.hpp"

namespace povline {

cov_mode parse_cov_mode(const std::string& text) {
    if (text == "full") return cov_mode::full;
    if (text == "uncoupled") return cov_mode::uncoupled;
    throw validation_error("unknown cov-mode '" + text +
                           "'; expected full | uncoupled");
}

const char* to_string(cov_mode mode) {
    return mode == cov_mode::full ? "full" : "uncoupled";
}

namespace {

// Per-measure ingredients below the threshold, all of length q:
//   level[i] = w(i/n, q/n) f(y_i, z)        the summand of the index
//   rank[i]  = dw/du(i/n, q/n) f(y_i, z)    rank-derivative factor
//   count[i] = dw/dv(i/n, q/n) f(y_i, z)    threshold-count factor
struct parts {
    std::vector<double> level, rank, count;
    std::size_t q = 0;
    double n = 0.0;

    double level_mean() const {  // (1/n) sum level
        return std::accumulate(level.begin(), level.end(), 0.0) / n;
    }
    double rank_mean() const {
        return std::accumulate(rank.begin(), rank.end(), 0.0) / n;
    }
    double count_mean() const {
        return std::accumulate(count.begin(), count.end(), 0.0) / n;
    }
    // (1/n) sum rank[i] * (i/n)
    double rank_scaled_mean() const {
        double acc = 0.0;
        for (std::size_t i = 1; i <= q; ++i)
            acc += rank[i - 1] * static_cast<double>(i) / n;
        return acc / n;
    }
    double count_scaled_mean() const {
        double acc = 0.0;
        for (std::size_t i = 1; i <= q; ++i)
            acc += count[i - 1] * static_cast<double>(i) / n;
        return acc / n;
    }
};

parts build_parts(const sample& s, const measure& m, double z) {
    const auto& y = s.values();
    parts p;
    p.n = static_cast<double>(y.size());
    p.q = s.count_at_or_below(z);
    const double v = static_cast<double>(p.q) / p.n;
    p.level.resize(p.q);
    p.rank.resize(p.q);
    p.count.resize(p.q);
    for (std::size_t i = 1; i <= p.q; ++i) {
        const double u = static_cast<double>(i) / p.n;
        const double f = m.deprivation(y[i - 1], z);
        p.level[i - 1] = m.weight(u, v) * f;
        p.rank[i - 1] = m.weight_du(u, v) * f;
        p.count[i - 1] = m.weight_dv(u, v) * f;
    }
    return p;
}

// One directed coupling term: the level part of `from` against the
// derivative bridge of `to`,
//   (1/n) sum_j (P_from[j] - Hbar_from j/n) rank_to[j]
//   + Hbar_from (1 - q/n) mean(count_to)
// with P_from[j] = (1/n) sum_{i<=j} level_from[i].
double coupling_directed(const parts& from, const parts& to) {
    const double n = from.n;
    const double v = static_cast<double>(from.q) / n;
    const double hbar = from.level_mean();
    double prefix = 0.0;
    double acc = 0.0;
    for (std::size_t j = 1; j <= from.q; ++j) {
        prefix += from.level[j - 1] / n;
        acc += (prefix - hbar * static_cast<double>(j) / n) * to.rank[j - 1];
    }
    return acc / n + hbar * (1.0 - v) * to.count_mean();
}

sigma_breakdown sigma_from_parts(const parts& k, const parts& l,
                                 cov_mode mode) {
    sigma_breakdown out;
    if (k.q == 0) {
        out.degenerate = true;
        return out;
    }
    const double n = k.n;
    const std::size_t q = k.q;
    const double v = static_cast<double>(q) / n;

    double cross = 0.0;
    for (std::size_t i = 0; i < q; ++i) cross += k.level[i] * l.level[i];
    out.cross = cross / n;
    out.centering = -k.level_mean() * l.level_mean();

    // sum_ij rank_k[i] rank_l[j] min(i,j) = sum_t S_k(t) S_l(t) with suffix
    // sums S(t) = sum_{i>=t}; the ij/n^2 part factorizes.
    double suffix_k = 0.0, suffix_l = 0.0, min_sum = 0.0;
    for (std::size_t t = q; t >= 1; --t) {
        suffix_k += k.rank[t - 1];
        suffix_l += l.rank[t - 1];
        min_sum += suffix_k * suffix_l;
    }
    out.rank_rank =
        (min_sum / n - k.rank_scaled_mean() * l.rank_scaled_mean() * n * n) /
        (n * n);

    if (mode == cov_mode::full) {
        out.rank_count = (1.0 - v) * k.rank_scaled_mean() * l.count_mean();
        out.count_rank = (1.0 - v) * k.count_mean() * l.rank_scaled_mean();
        out.coupling = coupling_directed(k, l) + coupling_directed(l, k);
    } else {
        out.rank_count = (1.0 - v) * k.rank_mean() * l.count_scaled_mean();
        out.count_rank = (1.0 - v) * k.count_scaled_mean() * l.rank_mean();
    }
    out.count_count = v * (1.0 - v) * k.count_mean() * l.count_mean();
    return out;
}

// Blocks tying one measure to the line influence:
//   cov_level = (1/n) sum_{i<=q} level[i] zeta[i] - zbar (1/n) sum level
//   cov_bridge = (1/n) sum_j (Pz[j] - zbar j/n) rank[j]
//                + ((1/n) sum_{i<=q} zeta[i] - zbar q/n) mean(count)
//   where Pz[j] = (1/n) sum_{i<=j} zeta[i].
struct zeta_blocks {
    double cov_level = 0.0;
    double cov_bridge = 0.0;
};

zeta_blocks zeta_against(const parts& p, const std::vector<double>& zeta,
                         double zbar) {
    const double n = p.n;
    zeta_blocks out;
    double hz = 0.0;
    for (std::size_t i = 0; i < p.q; ++i) hz += p.level[i] * zeta[i];
    out.cov_level = hz / n - zbar * p.level_mean();

    double prefix = 0.0;
    double acc = 0.0;
    double zeta_below = 0.0;
    for (std::size_t j = 1; j <= p.q; ++j) {
        prefix += zeta[j - 1] / n;
        zeta_below += zeta[j - 1];
        acc += (prefix - zbar * static_cast<double>(j) / n) * p.rank[j - 1];
    }
    const double v = static_cast<double>(p.q) / n;
    out.cov_bridge =
        acc / n + (zeta_below / n - zbar * v) * p.count_mean();
    return out;
}

double zeta_mean(const std::vector<double>& zeta) {
    return std::accumulate(zeta.begin(), zeta.end(), 0.0) /
           static_cast<double>(zeta.size());
}

double zeta_variance(const std::vector<double>& zeta, double zbar) {
    double acc = 0.0;
    for (double z : zeta) acc += (z - zbar) * (z - zbar);
    return acc / static_cast<double>(zeta.size());
}

double a_for(const sample& s, const measure& m, const line_context& ctx,
             a_mode amode) {
    return a_factor(s, m, ctx.z_hat, ctx.g_at_z, amode);
}

}  // namespace

sigma_breakdown sigma_terms(const sample& s, const measure& mk,
                            const measure& ml, double z, cov_mode mode) {
    if (!(z > 0.0) || !std::isfinite(z))
        throw validation_error("covariance: threshold must be positive");
    return sigma_from_parts(build_parts(s, mk, z), build_parts(s, ml, z), mode);
}

double sigma_hat(const sample& s, const measure& mk, const measure& ml,
                 double z, cov_mode mode) {
    return sigma_terms(s, mk, ml, z, mode).total();
}

line_context resolve_line(const sample& s, const line_spec& line,
                          const distribution* model) {
    line_context ctx;
    ctx.z_hat = line.estimate(s);
    ctx.q = s.count_at_or_below(ctx.z_hat);
    ctx.fixed = line.is_fixed();
    ctx.zeta = line.influence(s, model);
    ctx.g_at_z = density_at(s, ctx.z_hat, model);
    return ctx;
}

double gamma_hat(const sample& s, const measure& mk, const measure& ml,
                 const line_context& ctx, cov_mode cmode, a_mode amode) {
    const parts pk = build_parts(s, mk, ctx.z_hat);
    const parts pl = build_parts(s, ml, ctx.z_hat);
    double out = sigma_from_parts(pk, pl, cmode).total();
    if (ctx.fixed) return out;

    const double ak = a_for(s, mk, ctx, amode);
    const double al = a_for(s, ml, ctx, amode);
    const double zbar = zeta_mean(ctx.zeta);
    const zeta_blocks zk = zeta_against(pk, ctx.zeta, zbar);
    const zeta_blocks zl = zeta_against(pl, ctx.zeta, zbar);
    // cov(X_k + a_k Z, X_l + a_l Z): each block pairs with the opposite
    // loading, otherwise the matrix is no bilinear form and loses positivity
    out += al * zk.cov_level + ak * zl.cov_level +
           ak * al * zeta_variance(ctx.zeta, zbar);
    if (cmode == cov_mode::full) out += al * zk.cov_bridge + ak * zl.cov_bridge;
    return out;
}

double gamma_hat(const sample& s, const measure& mk, const measure& ml,
                 const line_spec& line, cov_mode cmode, a_mode amode) {
    return gamma_hat(s, mk, ml, resolve_line(s, line), cmode, amode);
}

double delta_hat(const sample& s, const measure& m, const line_context& ctx,
                 cov_mode cmode, a_mode amode) {
    if (ctx.fixed) return 0.0;
    const parts p = build_parts(s, m, ctx.z_hat);
    const double a = a_for(s, m, ctx, amode);
    const double zbar = zeta_mean(ctx.zeta);
    const zeta_blocks zb = zeta_against(p, ctx.zeta, zbar);
    double out = 2.0 * a * zb.cov_level +
                 a * a * zeta_variance(ctx.zeta, zbar);
    if (cmode == cov_mode::full) out += 2.0 * a * zb.cov_bridge;
    return out;
}

double delta_hat(const sample& s, const measure& m, const line_spec& line,
                 cov_mode cmode, a_mode amode) {
    return delta_hat(s, m, resolve_line(s, line), cmode, amode);
}

bool cov_matrix::all_diag_nonneg() const {
    for (auto f : diag_nonneg)
        if (!f) return false;
    return true;
}

cov_matrix gamma_matrix(const sample& s, const std::vector<measure>& measures,
                        const line_context& ctx, cov_mode cmode, a_mode amode) {
    if (measures.empty())
        throw validation_error("covariance matrix needs at least one measure");
    const std::size_t d = measures.size();
    cov_matrix out;
    out.dim = d;
    out.entries.assign(d * d, 0.0);
    out.diag_nonneg.assign(d, 1);
    // The implemented form is symmetric in (k,l) up to summation order, so
    // each pair is computed once and mirrored.
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            double val;
            try {
                val = gamma_hat(s, measures[i], measures[j], ctx, cmode, amode);
            } catch (const error& e) {
                throw degenerate_error("covariance entry (" +
                                       measures[i].name() + ", " +
                                       measures[j].name() + "): " + e.what());
            }
            out.entries[i * d + j] = val;
            out.entries[j * d + i] = val;
        }
        if (out.entries[i * d + i] < 0.0) out.diag_nonneg[i] = 0;
    }
    return out;
}

cov_matrix gamma_matrix(const sample& s, const std::vector<measure>& measures,
                        const line_spec& line, cov_mode cmode, a_mode amode) {
    return gamma_matrix(s, measures, resolve_line(s, line), cmode, amode);
}

}  // namespace povline
