#pragma once

#include <cmath>

#include "isoschatten/errors.hpp"

namespace isoschatten {

// Two-resolution Richardson extrapolation for first-order quantities:
// value = Q(n2) + (Q(n2) - Q(n1)) / (r - 1), r = n2/n1, and the conservative
// discretization budget |Q(n2) - Q(n1)| * r / (r - 1).
struct Budgeted {
    double value = 0.0;
    double budget = 0.0;
    double coarse = 0.0;
    double fine = 0.0;
    int n_coarse = 0;
    int n_fine = 0;
};

inline Budgeted richardson(double coarse, int n_coarse, double fine, int n_fine) {
    if (n_fine <= n_coarse || n_coarse <= 0)
        fail(ErrorCode::InvalidArgument, "resolutions must be ascending and positive");
    const double r = double(n_fine) / double(n_coarse);
    Budgeted out;
    out.coarse = coarse;
    out.fine = fine;
    out.n_coarse = n_coarse;
    out.n_fine = n_fine;
    out.value = fine + (fine - coarse) / (r - 1.0);
    out.budget = std::abs(fine - coarse) * r / (r - 1.0);
    return out;
}

}  // namespace isoschatten
