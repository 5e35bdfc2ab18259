#include "povline/line.hpp"

#include <charconv>
#include <cmath>

#include "povline/errors.hpp"

namespace povline {

double density_at(const sample& s, double y, const distribution* model) {
    return model ? model->pdf(y) : s.kde_density(y);
}

line_spec::line_spec(kind t, double k, double p) : kind_(t), k_(k), p_(p) {}

line_spec line_spec::fixed(double z) {
    if (!(z > 0.0) || !std::isfinite(z))
        throw validation_error("line: fixed threshold must be positive");
    line_spec l(kind::fixed, z, 0.0);
    l.name_ = "fixed:" + std::to_string(z);
    return l;
}

line_spec line_spec::fraction_of_mean(double k) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw validation_error("line: mean fraction must be positive");
    line_spec l(kind::fraction_of_mean, k, 0.0);
    l.name_ = "mean:" + std::to_string(k);
    return l;
}

line_spec line_spec::fraction_of_quantile(double k, double p) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw validation_error("line: quantile fraction must be positive");
    if (!(p > 0.0 && p < 1.0))
        throw validation_error("line: quantile level must lie in (0,1)");
    line_spec l(kind::fraction_of_quantile, k, p);
    l.name_ = "quantile:" + std::to_string(p) + ":" + std::to_string(k);
    return l;
}

const char* line_spec::grammar() {
    return "fixed:<z> | mean:<k> | quantile:<p>:<k> | median:<k>";
}

line_spec line_spec::parse(const std::string& text) {
    auto num = [&](const std::string& s, const char* what) {
        double v{};
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw validation_error(std::string("line: bad ") + what + " in '" +
                                   text + "'; grammar: " + grammar());
        return v;
    };
    line_spec out(kind::fixed, 1.0, 0.0);
    if (text.rfind("fixed:", 0) == 0) {
        out = fixed(num(text.substr(6), "threshold"));
    } else if (text.rfind("mean:", 0) == 0) {
        out = fraction_of_mean(num(text.substr(5), "fraction"));
    } else if (text.rfind("median:", 0) == 0) {
        out = fraction_of_quantile(num(text.substr(7), "fraction"), 0.5);
    } else if (text.rfind("quantile:", 0) == 0) {
        auto rest = text.substr(9);
        auto sep = rest.find(':');
        if (sep == std::string::npos)
            throw validation_error("line: expected quantile:<p>:<k>, got '" +
                                   text + "'");
        out = fraction_of_quantile(num(rest.substr(sep + 1), "fraction"),
                                   num(rest.substr(0, sep), "level"));
    } else {
        throw validation_error("unknown line '" + text +
                               "'; grammar: " + std::string(grammar()));
    }
    out.name_ = text;
    return out;
}

double line_spec::estimate(const sample& s) const {
    switch (kind_) {
        case kind::fixed: return k_;
        case kind::fraction_of_mean: return k_ * s.mean();
        case kind::fraction_of_quantile: return k_ * s.quantile(p_);
    }
    return 0.0;
}

double line_spec::theoretical(const distribution& d) const {
    switch (kind_) {
        case kind::fixed: return k_;
        case kind::fraction_of_mean: return k_ * d.mean();
        case kind::fraction_of_quantile: return k_ * d.quantile(p_);
    }
    return 0.0;
}

std::vector<double> line_spec::influence(const sample& s,
                                         const distribution* model) const {
    const auto& y = s.values();
    std::vector<double> zeta(y.size(), 0.0);
    switch (kind_) {
        case kind::fixed: break;
        case kind::fraction_of_mean:
            for (std::size_t i = 0; i < y.size(); ++i) zeta[i] = k_ * y[i];
            break;
        case kind::fraction_of_quantile: {
            const double qp = s.quantile(p_);
            const double g = density_at(s, qp, model);
            if (!(g > 1e-12))
                throw degenerate_error(
                    "density at the sample quantile is numerically zero; "
                    "the line influence would blow up");
            const double scale = k_ / g;
            for (std::size_t i = 0; i < y.size(); ++i)
                zeta[i] = (y[i] <= qp) ? scale : 0.0;
            break;
        }
    }
    return zeta;
}

}  // namespace povline
