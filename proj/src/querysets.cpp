#include "duelopt/querysets.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace duelopt {

static void check_vertex(const SignVertex& v, const char* who) {
    if (v.signs.empty())
        throw std::invalid_argument(std::string(who) + ": vertex must have >= 1 coordinate");
    for (int s : v.signs)
        if (s != 1 && s != -1)
            throw std::invalid_argument(std::string(who) + ": vertex entries must be +1 or -1");
}

std::vector<SignVertex> hypercube_vertices(int n) {
    if (n < 1 || n > 30)
        throw std::invalid_argument("hypercube_vertices: n must lie in [1, 30]");
    int count = 1 << n;
    std::vector<SignVertex> out(count);
    for (int idx = 0; idx < count; ++idx) {
        out[idx].signs.resize(n);
        for (int i = 0; i < n; ++i) {
            // coordinate 0 is the most significant bit; bit 0 -> +1, bit 1 -> -1
            int bit = (idx >> (n - 1 - i)) & 1;
            out[idx].signs[i] = bit ? -1 : 1;
        }
    }
    return out;
}

std::vector<SignVertex> neighbors(const SignVertex& v) {
    check_vertex(v, "neighbors");
    std::vector<SignVertex> out(v.signs.size(), v);
    for (size_t i = 0; i < v.signs.size(); ++i)
        out[i].signs[i] = -out[i].signs[i];
    return out;
}

int vertex_to_index(const SignVertex& v) {
    check_vertex(v, "vertex_to_index");
    int n = static_cast<int>(v.signs.size());
    if (n > 30)
        throw std::invalid_argument("vertex_to_index: vertex length must be <= 30");
    int idx = 0;
    for (int i = 0; i < n; ++i)
        idx = (idx << 1) | (v.signs[i] == -1 ? 1 : 0);
    return idx;
}

SignVertex index_to_vertex(int index, int n) {
    if (n < 1 || n > 30)
        throw std::invalid_argument("index_to_vertex: n must lie in [1, 30]");
    if (index < 0 || index >= (1 << n))
        throw std::invalid_argument("index_to_vertex: index out of range");
    SignVertex v;
    v.signs.resize(n);
    for (int i = 0; i < n; ++i)
        v.signs[i] = ((index >> (n - 1 - i)) & 1) ? -1 : 1;
    return v;
}

StructuredQuerySet build_query_set(const Vector& center, double gamma,
                                   const std::vector<Vector>& directions) {
    int d = static_cast<int>(center.size());
    int l = static_cast<int>(directions.size());
    if (d < 1)
        throw std::invalid_argument("build_query_set: center must have dimension >= 1");
    if (!(gamma > 0.0))
        throw std::invalid_argument("build_query_set: gamma must be > 0");
    if (l < 1 || l > d)
        throw std::invalid_argument(
            "build_query_set: need 1 <= l <= d directions (l = " + std::to_string(l) +
            ", d = " + std::to_string(d) + ")");
    double want = 1.0 / std::sqrt(static_cast<double>(l));
    for (const Vector& u : directions) {
        if (static_cast<int>(u.size()) != d)
            throw std::invalid_argument("build_query_set: direction dimension mismatch");
        if (std::fabs(norm(u) - want) > 1e-9)
            throw std::invalid_argument("build_query_set: each direction must have norm 1/sqrt(l)");
    }
    StructuredQuerySet qs;
    qs.center = center;
    qs.gamma = gamma;
    qs.directions = directions;
    std::vector<SignVertex> verts = hypercube_vertices(l);
    qs.points.reserve(verts.size());
    for (const SignVertex& v : verts) {
        Vector p = center;
        for (int i = 0; i < l; ++i)
            axpy(gamma * v.signs[i], directions[i], p);
        qs.points.push_back(std::move(p));
    }
    return qs;
}

std::vector<Vector> extract_gradient_estimates(const StructuredQuerySet& qs, int winner) {
    int count = static_cast<int>(qs.points.size());
    if (winner < 0 || winner >= count)
        throw std::invalid_argument("extract_gradient_estimates: winner index out of range");
    int l = static_cast<int>(qs.directions.size());
    SignVertex v = index_to_vertex(winner, l);
    std::vector<Vector> out;
    out.reserve(l);
    for (int i = 0; i < l; ++i)
        out.push_back(scale(qs.directions[i], -static_cast<double>(v.signs[i])));
    return out;
}

}  // namespace duelopt
