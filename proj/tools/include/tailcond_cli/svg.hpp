#ifndef TAILCOND_CLI_SVG_HPP
#define TAILCOND_CLI_SVG_HPP

#include <span>
#include <string>

#include "tailcond/maxima.hpp"
#include "tailcond/pickands.hpp"

namespace tailcond::svg {

/// Scatter plot of the maxima; one small plot per coordinate pair when there are more than two.
std::string scatter(const MaximaSample& sample, const std::string& title);

/// Pickands estimate: a curve against t1 with both bounds for d = 2, a shaded
/// simplex for d = 3, the values by grid index otherwise.
std::string pickands(const SimplexGrid& grid, std::span<const double> a_hat, const std::string& title);

}  // namespace tailcond::svg

#endif  // TAILCOND_CLI_SVG_HPP
