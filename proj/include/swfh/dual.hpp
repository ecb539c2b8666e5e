#pragma once

// Experimental: the Z[u]-linear dual of a complex and the homological
// h-invariants read off from it.

#include <vector>

#include "swfh/hinv.hpp"
#include "swfh/tcomplex.hpp"

namespace swfh {

/// Generators g* in degree -deg(g); entry s -> t with coefficient c becomes
/// t* -> s* with coefficient (-1)^(deg t + 1) c. Variance flips.
Complex dualize(const Complex& c);

/// Grading offset pinned by the sphere self-test; throws
/// Error(ExperimentalModule) if the spheres disagree.
int dual_calibration_offset();

/// Uncalibrated values: weak = largest k such that degree -(ell + 2k) of the
/// dual maps non-trivially to its localization, strong = largest such k with
/// a surjective map.
HPair homological_h_raw(const Complex& c, const Ring& ring);
HPair homological_h(const Complex& c, const Ring& ring);

/// (start of the infinite tower of the dual + ell) / 2 over a field.
int dual_cohomological_h(const Complex& c, const Ring& field);

struct DualityFieldRow {
    Ring ring = Ring::rationals();
    int cohomological = 0;
    HPair homological;
    int dual_cohomological = 0;
    bool identity = false;
    bool sum_zero = false;
};

struct DualityReport {
    std::vector<DualityFieldRow> fields;
    HPair z_homological;
    int h0 = 0;
    int z_strong = 0;
    int min_p = 0;
    bool chain = false;
    /// Observed only; never asserted.
    bool strong_equals_min_p = false;

    bool passed() const;
};

DualityReport duality_check(const Complex& c);

}  // namespace swfh
