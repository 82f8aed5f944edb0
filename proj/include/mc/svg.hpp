#ifndef MC_SVG_HPP
#define MC_SVG_HPP

#include <string>
#include <vector>

#include "mc/analysis.hpp"

namespace mc {

// Log-y BER chart, one polyline per scheme; zero-BER points are skipped.
std::string render_ber_svg(const std::vector<BerPoint>& points);

void write_ber_svg(const std::string& path, const std::vector<BerPoint>& points);

}  // namespace mc

#endif
