/**
 * SVG rendering of traced components in log coordinates, with every branch
 * end coloured by the Newton-polygon edge it is attributed to.
 */

#ifndef FEWNOMIAL_TOOLS_SVG_PLOT_HPP
#define FEWNOMIAL_TOOLS_SVG_PLOT_HPP

#include <string>

#include "fewnomial/curves.hpp"

namespace fewnomial {

std::string render_components_svg(const ComponentReport& report, const std::string& title);

}  // namespace fewnomial

#endif
