#ifndef FLOWLAB_GRID_HPP
#define FLOWLAB_GRID_HPP

#include "flowlab/errors.hpp"

namespace flowlab {

/// Rectangular sampling of the label domain, row-major (b outer, a inner).
struct LabelGrid {
    double a_min = -1.0, a_max = 1.0;
    double b_min = -1.0, b_max = 1.0;
    int na = 16, nb = 16;

    void validate() const {
        if (!(a_min < a_max) || !(b_min < b_max))
            raise(ErrorCode::InvalidManifest, "grid: min bounds must be below max bounds");
        if (na < 2 || nb < 2)
            raise(ErrorCode::InvalidManifest, "grid: na and nb must be >= 2");
    }

    double a_at(int i) const { return a_min + (a_max - a_min) * double(i) / double(na - 1); }
    double b_at(int j) const { return b_min + (b_max - b_min) * double(j) / double(nb - 1); }
    int size() const { return na * nb; }
};

} // namespace flowlab

#endif
