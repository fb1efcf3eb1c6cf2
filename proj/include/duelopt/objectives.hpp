#ifndef DUELOPT_OBJECTIVES_HPP
#define DUELOPT_OBJECTIVES_HPP

#include <functional>
#include <optional>
#include <string>

#include "duelopt/vectorspace.hpp"

namespace duelopt {

// Evaluatable objective plus the curvature metadata the parameter schedules
// consume. alpha (strong convexity) and the known optimum are optional;
// custom objectives supply eval, beta and dim at minimum.
struct Objective {
    std::function<double(const Vector&)> eval;
    double beta = 0.0;                    // smoothness constant
    std::optional<double> alpha;          // strong convexity constant
    std::optional<double> known_min_value;
    std::optional<Vector> known_minimizer;
    std::string name;
    int dim = 0;

    double operator()(const Vector& x) const { return eval(x); }
};

// f(x) = ||x||_2^2
Objective make_quadratic(int d);

// f(x) = 3 + sum_i sin(x_i); only locally convex -- minimized on [-pi, pi]^d
Objective make_sinsum(int d);

// f(x) = ||x||_2^2 + (1/2)||x||_1^2
Objective make_l2l1(int d);

// central finite differences; validation helper, not part of any algorithm
Vector fd_gradient(const Objective& obj, const Vector& x, double h);

}  // namespace duelopt

#endif
