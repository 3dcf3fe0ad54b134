#pragma once

#include "bmap/rng.hpp"
#include "bmap/space.hpp"
#include "bmap/vec.hpp"

#include <span>
#include <string>
#include <vector>

namespace bmap {

struct AgentState {
    int id = 0;
    Vec position;       // length dims, inside the closed hypercube
    Vec heading;        // unit norm (within 1e-9)
    double speed = 0;   // [0, max_speed]
    double sih = 0;     // social influence horizon radius; may be infinity
    std::string group;
};

struct DynamicsParams {
    double max_speed = 1.0;
    double max_turn = 0.3;        // radians per step, heading slew limit
    double align_weight = 1.0;
    double cohere_weight = 0.5;
    double separate_weight = 0.0;
    double speed_relax = 0.1;     // in [0,1], per-step pull toward neighborhood mean speed
    double epsilon = 1e-6;        // regularizer of the 1/d influence weight
    double dt = 0.1;
    double max_wander = 0.1;      // radians, heading perturbation when an agent has no neighbors
};

struct Neighbor {
    const AgentState* agent;
    double distance;
};

struct Influence {
    Vec heading;   // unit desired direction
    double speed;  // desired speed, already clamped to [0, max_speed]
};

// Agents j != i with ||p_j - p_i|| <= sih_i (closed ball). sih = 0 selects
// nobody; sih = infinity selects the whole population minus self. Population
// order is preserved in the result, which fixes reduction order downstream.
void neighbors_within(const AgentState& agent, std::span<const AgentState> population,
                      std::vector<Neighbor>& out);
std::vector<Neighbor> neighbors_within(const AgentState& agent,
                                       std::span<const AgentState> population);

// Distance-weighted alignment/cohesion/separation blend:
//   w_j = 1/(d_j + epsilon)
//   A = sum w_j * heading_j
//   C = sum w_j * (p_j - p_i)
//   S = sum w_j * (p_j - p_i) / d_j^2   (coincident neighbors contribute 0)
//   direction = normalize(align*A + cohere*C - separate*S), falling back to
//   the current heading when the blend is the zero vector or there are no
//   neighbors.
// Desired speed relaxes toward the weighted neighbor mean:
//   (1 - speed_relax)*speed_i + speed_relax * (sum w_j s_j / sum w_j),
// clamped to [0, max_speed]; with no neighbors it is the current speed.
Influence influence(const AgentState& agent, std::span<const Neighbor> neighbors,
                    const DynamicsParams& params);

// Rotates the desired heading by a uniform angle in [0, max_wander] within a
// random 2-plane drawn from `rng`. Draw count per call is fixed (dims normals
// plus one uniform) so streams stay aligned across runs. No-op when no
// usable tangent direction exists (dims = 1).
void apply_wander(Vec& heading, StreamRng& rng, int dims, double max_wander);

// Rotates unit vector `current` toward unit vector `desired` by at most
// max_turn radians, exactly within their common 2-plane. Antiparallel
// vectors rotate within the plane spanned by `current` and the first
// coordinate axis not parallel to it.
Vec rotate_toward(std::span<const double> current, std::span<const double> desired,
                  double max_turn);

// One synchronous update: slew-limited turn, speed adoption, advance by
// new_heading * speed * dt, then specular reflection at the hypercube faces
// (mirror the position, negate that heading component) until in-bounds.
// Requires speed*dt < 2*half_extent, which the engine validates up front.
AgentState step_agent(const AgentState& agent, std::span<const double> desired_heading,
                      double desired_speed, const DynamicsParams& params,
                      const BeliefSpace& space);

} // namespace bmap
