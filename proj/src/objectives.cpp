#include "duelopt/objectives.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace duelopt {

static void check_dim_arg(int d, const char* who) {
    if (d < 1)
        throw std::invalid_argument(std::string(who) + ": dimension must be >= 1");
}

Objective make_quadratic(int d) {
    check_dim_arg(d, "make_quadratic");
    Objective obj;
    obj.eval = [](const Vector& x) {
        double s = 0.0;
        for (double xi : x)
            s += xi * xi;
        return s;
    };
    obj.beta = 2.0;
    obj.alpha = 2.0;
    obj.known_min_value = 0.0;
    obj.known_minimizer = Vector(d, 0.0);
    obj.name = "quadratic";
    obj.dim = d;
    return obj;
}

Objective make_sinsum(int d) {
    check_dim_arg(d, "make_sinsum");
    Objective obj;
    obj.eval = [](const Vector& x) {
        double s = 3.0;
        for (double xi : x)
            s += std::sin(xi);
        return s;
    };
    obj.beta = 1.0;  // |sin''| <= 1
    // no alpha: the function is not globally convex, let alone strongly so
    obj.known_min_value = 3.0 - d;  // on the box [-pi, pi]^d
    obj.known_minimizer = Vector(d, -std::numbers::pi / 2.0);
    obj.name = "sinsum";
    obj.dim = d;
    return obj;
}

Objective make_l2l1(int d) {
    check_dim_arg(d, "make_l2l1");
    Objective obj;
    obj.eval = [](const Vector& x) {
        double sq = 0.0, l1 = 0.0;
        for (double xi : x) {
            sq += xi * xi;
            l1 += std::fabs(xi);
        }
        return sq + 0.5 * l1 * l1;
    };
    // ||x||_1^2 has (a.e.) Hessian 2*sign(x)sign(x)^T with spectral norm 2d,
    // so beta = 2 + d bounds the whole sum; an estimate, not a tight constant
    obj.beta = 2.0 + d;
    obj.alpha = 2.0;
    obj.known_min_value = 0.0;
    obj.known_minimizer = Vector(d, 0.0);
    obj.name = "l2l1";
    obj.dim = d;
    return obj;
}

Vector fd_gradient(const Objective& obj, const Vector& x, double h) {
    if (!(h > 0.0))
        throw std::invalid_argument("fd_gradient: step h must be > 0");
    Vector g(x.size());
    Vector p = x;
    for (size_t i = 0; i < x.size(); ++i) {
        double xi = x[i];
        p[i] = xi + h;
        double fp = obj.eval(p);
        p[i] = xi - h;
        double fm = obj.eval(p);
        p[i] = xi;
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

}  // namespace duelopt
