#ifndef DUELOPT_QUERYSETS_HPP
#define DUELOPT_QUERYSETS_HPP

#include <vector>

#include "duelopt/vectorspace.hpp"

namespace duelopt {

// vertex of the {+1,-1}^n hypercube graph
struct SignVertex {
    std::vector<int> signs;  // entries exactly +1 or -1
};

// All 2^n vertices in lexicographic order with +1 before -1 per coordinate;
// index 0 is the all-+1 vertex. n capped at 30 so 2^n fits an int.
std::vector<SignVertex> hypercube_vertices(int n);

// The n one-flip neighbors of v, ordered by flipped-coordinate index.
std::vector<SignVertex> neighbors(const SignVertex& v);

// Bijection between vertices and their position in hypercube_vertices order.
int vertex_to_index(const SignVertex& v);
SignVertex index_to_vertex(int index, int n);

// The 2^l-point battling query set {center + gamma * sum_i v_i * dirs[i]}
// over all sign vertices v, in hypercube_vertices order. One-flip neighbor
// pairs differ by exactly 2*gamma*v_i*dirs[i], so a winner index yields one
// recovered pairwise sign per direction.
struct StructuredQuerySet {
    Vector center;
    double gamma = 0.0;
    std::vector<Vector> directions;  // l vectors, each of norm 1/sqrt(l)
    std::vector<Vector> points;      // 2^l points
};

// directions must each have norm 1/sqrt(l) within 1e-9; 1 <= l <= dim(center)
StructuredQuerySet build_query_set(const Vector& center, double gamma,
                                   const std::vector<Vector>& directions);

// g_i = -v_i * directions[i] where v is the winner's vertex: the winner beats
// every one-flip neighbor, so each recovered pairwise sign is -1 and the
// estimate points from the winner's perturbation back along direction i.
std::vector<Vector> extract_gradient_estimates(const StructuredQuerySet& qs, int winner);

}  // namespace duelopt

#endif
