#include "bubbles/interval.hpp"

#include <cstdlib>

namespace bubbles {

// 3.14159265358979311599796346854... is the double below π, the next double
// is above it.
template <>
Iv<double> pi_interval<double>() {
  double lo = 0x1.921fb54442d18p+1;
  return {lo, detail::next_up(lo)};
}

template <>
Iv<long double> pi_interval<long double>() {
  long double v = strtold("3.14159265358979323846264338327950288419716939937510582", nullptr);
  return {detail::next_down(v), detail::next_up(v)};
}

}  // namespace bubbles
