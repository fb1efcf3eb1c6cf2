#ifndef DUELOPT_VECTORSPACE_HPP
#define DUELOPT_VECTORSPACE_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace duelopt {

using Vector = std::vector<double>;

// Deterministic random source. mt19937_64 is fully specified by the standard;
// uniform/normal are generated with explicit arithmetic (53-bit uniform,
// Box-Muller) rather than std distributions, whose output is
// implementation-defined. Traces must be bit-identical for a fixed seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // uniform double in [0, 1)
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // standard normal via Box-Muller; consumes exactly two uniforms
    double normal();

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

struct Domain {
    enum class Kind { AllSpace, Ball, Box };

    Kind kind;
    int dim;
    Vector center;  // Ball
    double radius = 0.0;
    Vector lo, hi;  // Box

    static Domain all_space(int d);
    static Domain ball(Vector center, double radius);
    static Domain box(Vector lo, Vector hi);
};

Vector sample_sphere(int d, double r, Rng& rng);
Vector project(const Domain& dom, const Vector& x);

// y += a*x
void axpy(double a, const Vector& x, Vector& y);
double dot(const Vector& x, const Vector& y);
double norm(const Vector& x);
Vector scale(const Vector& x, double a);
Vector add(const Vector& x, const Vector& y);
Vector sub(const Vector& x, const Vector& y);

}  // namespace duelopt

#endif
