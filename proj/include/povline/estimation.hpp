#pragma once

#include <string>

#include "povline/distribution.hpp"
#include "povline/empirical.hpp"
#include "povline/line.hpp"
#include "povline/measures.hpp"

namespace povline {

// Plug-in index at a fixed threshold:
//   (1/n) sum_{j<=q} w(j/n, q/n) f(Y_{j,n}, z),  q = n Gn(z).
double j_fixed(const sample& s, const measure& m, double z);

// Same plug-in with the threshold estimated by the line rule.
double j_relative(const sample& s, const measure& m, const line_spec& line);

// Whether the scale sensitivity factor carries the density at the threshold.
// `density` keeps the estimate consistent with its population counterpart,
// which integrates dG and so picks up a g(z) on the weight-derivative term;
// `raw` drops that factor and uses the two bracketed sums alone.
enum class a_mode { density, raw };
a_mode parse_a_mode(const std::string& text);
const char* to_string(a_mode mode);

// a-hat: sensitivity of the index to the threshold,
//   (1/n) sum_{i<=q} [ dw/dv(i/n, q/n) f(y_i, z) * g_at_z   (density mode)
//                      + df/dz(y_i, z) w(i/n, q/n) ].
double a_factor(const sample& s, const measure& m, double z_hat, double g_at_z,
                a_mode mode = a_mode::density);

// Population index under a parametric model: adaptive quadrature of
// w[G(y), G(z)] f(y, z) g(y) over (0, z], absolute tolerance 1e-10.
double j_theoretical(const distribution& d, const measure& m,
                     const line_spec& line);
double j_theoretical(const distribution& d, const measure& m, double z);

}  // namespace povline
