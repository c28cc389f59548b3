#include "rdpf/rng.hpp"

#include <cmath>

namespace rdpf {

double CounterRng::next_gaussian() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    // Marsaglia polar method; ~1.27 uniform pairs per gaussian pair.
    for (;;) {
        double u = 2.0 * next_uniform() - 1.0;
        double v = 2.0 * next_uniform() - 1.0;
        double s = u * u + v * v;
        if (s >= 1.0 || s == 0.0) continue;
        double f = std::sqrt(-2.0 * std::log(s) / s);
        cached_ = v * f;
        has_cached_ = true;
        return u * f;
    }
}

}  // namespace rdpf
