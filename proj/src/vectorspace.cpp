#include "duelopt/vectorspace.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace duelopt {

double Rng::normal() {
    // 1 - uniform() lies in (0, 1], so the log argument is never zero
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Domain Domain::all_space(int d) {
    if (d < 1)
        throw std::invalid_argument("Domain::all_space: dimension must be >= 1");
    Domain dom;
    dom.kind = Kind::AllSpace;
    dom.dim = d;
    return dom;
}

Domain Domain::ball(Vector center, double radius) {
    if (center.empty())
        throw std::invalid_argument("Domain::ball: center must have dimension >= 1");
    if (!(radius > 0.0))
        throw std::invalid_argument("Domain::ball: radius must be > 0");
    Domain dom;
    dom.kind = Kind::Ball;
    dom.dim = static_cast<int>(center.size());
    dom.center = std::move(center);
    dom.radius = radius;
    return dom;
}

Domain Domain::box(Vector lo, Vector hi) {
    if (lo.empty() || lo.size() != hi.size())
        throw std::invalid_argument("Domain::box: lo and hi must have equal dimension >= 1");
    for (size_t i = 0; i < lo.size(); ++i)
        if (lo[i] > hi[i])
            throw std::invalid_argument("Domain::box: lo must be <= hi coordinatewise");
    Domain dom;
    dom.kind = Kind::Box;
    dom.dim = static_cast<int>(lo.size());
    dom.lo = std::move(lo);
    dom.hi = std::move(hi);
    return dom;
}

Vector sample_sphere(int d, double r, Rng& rng) {
    if (d < 1)
        throw std::invalid_argument("sample_sphere: dimension must be >= 1");
    if (!(r > 0.0))
        throw std::invalid_argument("sample_sphere: radius must be > 0");
    Vector v(d);
    double n = 0.0;
    do {
        for (int i = 0; i < d; ++i)
            v[i] = rng.normal();
        n = norm(v);
    } while (n == 0.0);  // measure-zero redraw
    double s = r / n;
    for (int i = 0; i < d; ++i)
        v[i] *= s;
    return v;
}

Vector project(const Domain& dom, const Vector& x) {
    if (static_cast<int>(x.size()) != dom.dim)
        throw std::invalid_argument("project: point dimension does not match domain");
    switch (dom.kind) {
    case Domain::Kind::AllSpace:
        return x;
    case Domain::Kind::Ball: {
        Vector delta = sub(x, dom.center);
        double dist = norm(delta);
        // the 1e-12 slack makes the radial clamp exactly idempotent: a point
        // produced by the clamp lands within a few ulp of the radius and is
        // treated as inside on re-projection
        if (dist <= dom.radius * (1.0 + 1e-12))
            return x;
        double s = dom.radius / dist;
        Vector y(dom.dim);
        for (int i = 0; i < dom.dim; ++i)
            y[i] = dom.center[i] + s * delta[i];
        return y;
    }
    case Domain::Kind::Box: {
        Vector y(dom.dim);
        for (int i = 0; i < dom.dim; ++i)
            y[i] = std::min(std::max(x[i], dom.lo[i]), dom.hi[i]);
        return y;
    }
    }
    throw std::invalid_argument("project: unknown domain kind");
}

static void check_dims(const Vector& x, const Vector& y, const char* op) {
    if (x.size() != y.size())
        throw std::invalid_argument(std::string(op) + ": dimension mismatch");
}

void axpy(double a, const Vector& x, Vector& y) {
    check_dims(x, y, "axpy");
    for (size_t i = 0; i < x.size(); ++i)
        y[i] += a * x[i];
}

double dot(const Vector& x, const Vector& y) {
    check_dims(x, y, "dot");
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i)
        s += x[i] * y[i];
    return s;
}

double norm(const Vector& x) {
    return std::sqrt(dot(x, x));
}

Vector scale(const Vector& x, double a) {
    Vector y(x.size());
    for (size_t i = 0; i < x.size(); ++i)
        y[i] = a * x[i];
    return y;
}

Vector add(const Vector& x, const Vector& y) {
    check_dims(x, y, "add");
    Vector z(x.size());
    for (size_t i = 0; i < x.size(); ++i)
        z[i] = x[i] + y[i];
    return z;
}

Vector sub(const Vector& x, const Vector& y) {
    check_dims(x, y, "sub");
    Vector z(x.size());
    for (size_t i = 0; i < x.size(); ++i)
        z[i] = x[i] - y[i];
    return z;
}

}  // namespace duelopt
