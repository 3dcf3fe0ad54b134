#include "bmap/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace bmap {

void neighbors_within(const AgentState& agent, std::span<const AgentState> population,
                      std::vector<Neighbor>& out) {
    out.clear();
    if (agent.sih <= 0) return;
    bool unbounded = std::isinf(agent.sih);
    for (const AgentState& other : population) {
        if (other.id == agent.id) continue;
        double d = distance(other.position, agent.position);
        if (unbounded || d <= agent.sih) out.push_back({&other, d});
    }
}

std::vector<Neighbor> neighbors_within(const AgentState& agent,
                                       std::span<const AgentState> population) {
    std::vector<Neighbor> out;
    neighbors_within(agent, population, out);
    return out;
}

Influence influence(const AgentState& agent, std::span<const Neighbor> neighbors,
                    const DynamicsParams& params) {
    Influence result;
    result.heading = agent.heading;
    result.speed = agent.speed;
    if (neighbors.empty()) return result;

    std::size_t dims = agent.position.size();
    Vec align(dims, 0.0);
    Vec cohere(dims, 0.0);
    Vec separate(dims, 0.0);
    double weight_sum = 0;
    double speed_sum = 0;

    for (const Neighbor& nb : neighbors) {
        double w = 1.0 / (nb.distance + params.epsilon);
        weight_sum += w;
        speed_sum += w * nb.agent->speed;
        add_scaled(align, nb.agent->heading, w);
        Vec offset = sub(nb.agent->position, agent.position);
        add_scaled(cohere, offset, w);
        if (nb.distance > 0)
            add_scaled(separate, offset, w / (nb.distance * nb.distance));
    }

    Vec blend(dims, 0.0);
    add_scaled(blend, align, params.align_weight);
    add_scaled(blend, cohere, params.cohere_weight);
    add_scaled(blend, separate, -params.separate_weight);
    if (normalize(blend)) result.heading = std::move(blend);

    double mean_speed = speed_sum / weight_sum;
    double s = (1.0 - params.speed_relax) * agent.speed + params.speed_relax * mean_speed;
    result.speed = std::clamp(s, 0.0, params.max_speed);
    return result;
}

void apply_wander(Vec& heading, StreamRng& rng, int dims, double max_wander) {
    Vec tangent(static_cast<std::size_t>(dims));
    for (double& x : tangent) x = rng.normal();
    double theta = rng.uniform(0.0, max_wander);
    double proj = dot(tangent, heading);
    add_scaled(tangent, heading, -proj);
    if (!normalize(tangent, 1e-12)) return;
    double c = std::cos(theta);
    double s = std::sin(theta);
    for (std::size_t i = 0; i < heading.size(); ++i)
        heading[i] = c * heading[i] + s * tangent[i];
    normalize(heading);
}

Vec rotate_toward(std::span<const double> current, std::span<const double> desired,
                  double max_turn) {
    double cos_angle = std::clamp(dot(current, desired), -1.0, 1.0);
    double angle = std::acos(cos_angle);
    if (angle <= max_turn) return Vec(desired.begin(), desired.end());

    // Tangent of the rotation: the part of `desired` orthogonal to `current`.
    Vec tangent(desired.begin(), desired.end());
    add_scaled(tangent, current, -cos_angle);
    if (!normalize(tangent, 1e-12)) {
        // Antiparallel: take the first coordinate axis not parallel to
        // `current` as the rotation plane's second direction.
        bool found = false;
        for (std::size_t a = 0; a < tangent.size() && !found; ++a) {
            std::fill(tangent.begin(), tangent.end(), 0.0);
            tangent[a] = 1.0;
            double p = dot(tangent, current);
            if (std::abs(p) > 0.9) continue;
            add_scaled(tangent, current, -p);
            found = normalize(tangent, 1e-12);
        }
        if (!found) // no perpendicular exists (dims = 1)
            return Vec(current.begin(), current.end());
    }

    double c = std::cos(max_turn);
    double s = std::sin(max_turn);
    Vec out(current.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = c * current[i] + s * tangent[i];
    normalize(out);
    return out;
}

AgentState step_agent(const AgentState& agent, std::span<const double> desired_heading,
                      double desired_speed, const DynamicsParams& params,
                      const BeliefSpace& space) {
    AgentState next = agent;
    next.heading = rotate_toward(agent.heading, desired_heading, params.max_turn);
    next.speed = desired_speed;

    double he = space.half_extent();
    double step = next.speed * params.dt;
    for (std::size_t a = 0; a < next.position.size(); ++a) {
        double x = next.position[a] + next.heading[a] * step;
        while (x < -he || x > he) {
            if (x > he)
                x = 2.0 * he - x;
            else
                x = -2.0 * he - x;
            next.heading[a] = -next.heading[a];
        }
        next.position[a] = x;
    }
    normalize(next.heading);
    return next;
}

} // namespace bmap
