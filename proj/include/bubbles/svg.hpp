#ifndef BUBBLES_SVG_HPP
#define BUBBLES_SVG_HPP

#include <string>

#include "bubbles/cluster.hpp"

namespace bubbles {

// SVG 1.1 rendering of a cluster: one filled path per bounded face using
// native arc segments, optional region / pressure labels.
std::string render_svg(const Cluster& c, bool labels = false);

}  // namespace bubbles

#endif
