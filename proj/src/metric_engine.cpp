#include "fpp/metric_engine.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_set>

#include "fpp/errors.hpp"

namespace fpp {

namespace {

struct NodeState {
    double dist;
    Point pred;
    bool settled = false;
};

struct QueueEntry {
    double dist;
    Point point;
    bool operator>(const QueueEntry& o) const {
        if (dist != o.dist) return dist > o.dist;
        return point > o.point; // deterministic pop order among ties
    }
};

using NodeMap = std::unordered_map<Point, NodeState, PointHash>;
using Queue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<QueueEntry>>;

// Canonical edge without the adjacency re-check: v == u + g by construction.
inline double weight_of(const OmegaField& field, const Point& u, const Point& g, const Point& v) {
    if (lex_less(u, v)) return field.edge_weight(EdgeKey{u, g});
    return field.edge_weight(EdgeKey{v, point_neg(g)});
}

// Core Dijkstra loop. `stop` is called on every settled vertex; returning
// true terminates the search.
template <typename StopFn>
void dijkstra(const OmegaField& field, const Point& source, const SearchOptions& opts,
              NodeMap& nodes, StopFn stop) {
    const auto& gens = field.lattice().generators();
    Queue queue;
    nodes.clear();
    nodes.emplace(source, NodeState{0.0, source, false});
    queue.push(QueueEntry{0.0, source});
    std::size_t settled_count = 0;
    while (!queue.empty()) {
        QueueEntry top = queue.top();
        queue.pop();
        auto it = nodes.find(top.point);
        if (it->second.settled || it->second.dist != top.dist) continue;
        it->second.settled = true;
        ++settled_count;
        if (settled_count > opts.vertex_budget) {
            throw ResourceLimitError("shortest-path search exceeded vertex budget");
        }
        if (stop(top.point, top.dist)) return;
        for (const auto& g : gens) {
            Point nxt = point_add(top.point, g);
            if (opts.window && !opts.window->contains(nxt)) continue;
            double w = weight_of(field, top.point, g, nxt);
            double nd = top.dist + w;
            auto [nit, inserted] = nodes.try_emplace(nxt, NodeState{nd, top.point, false});
            if (!inserted) {
                if (nit->second.settled) continue;
                if (nd < nit->second.dist) {
                    nit->second.dist = nd;
                    nit->second.pred = top.point;
                } else if (nd == nit->second.dist && lex_less(top.point, nit->second.pred)) {
                    nit->second.pred = top.point; // reproducible tie-break
                    continue;
                } else {
                    continue;
                }
            }
            queue.push(QueueEntry{nd, nxt});
        }
    }
}

PathRecord reconstruct_path(const OmegaField& field, const NodeMap& nodes, const Point& source,
                            const Point& target) {
    std::vector<Point> rev;
    Point cur = target;
    while (!(cur == source)) {
        rev.push_back(cur);
        cur = nodes.at(cur).pred;
    }
    rev.push_back(source);
    PathRecord path;
    path.vertices.assign(rev.rbegin(), rev.rend());
    path.prefix.resize(path.vertices.size());
    path.prefix[0] = 0.0;
    // fixed left-to-right summation for cross-platform reproducibility
    for (std::size_t i = 1; i < path.vertices.size(); ++i) {
        path.prefix[i] =
            path.prefix[i - 1] + field.edge_weight(path.vertices[i - 1], path.vertices[i]);
    }
    return path;
}

} // namespace

std::pair<double, PathRecord> omega_distance(const OmegaField& field, const Point& x,
                                             const Point& y, const SearchOptions& opts) {
    NodeMap nodes;
    bool found = false;
    dijkstra(field, x, opts, nodes, [&](const Point& p, double) {
        if (p == y) {
            found = true;
            return true;
        }
        return false;
    });
    if (!found) {
        throw ResourceLimitError("target not reachable inside the configured search region");
    }
    PathRecord path = reconstruct_path(field, nodes, x, y);
    double dist = nodes.at(y).dist;
    // Confinement: every path vertex stays within word radius L/a_min of x,
    // because hop count <= L/a_min when all weights are >= a_min.
    double a_min = field.law().min_weight();
    if (a_min > 0 && static_cast<double>(path.hops()) > dist / a_min * (1 + 1e-9) + 1e-9) {
        throw DomainError("geodesic confinement violated: hop count exceeds length/min-weight");
    }
    return {dist, std::move(path)};
}

std::unordered_map<Point, double, PointHash>
omega_distances_to_set(const OmegaField& field, const Point& source,
                       const std::vector<Point>& targets, const SearchOptions& opts) {
    std::unordered_set<Point, PointHash> pending(targets.begin(), targets.end());
    std::unordered_map<Point, double, PointHash> out;
    if (pending.empty()) return out;
    NodeMap nodes;
    dijkstra(field, source, opts, nodes, [&](const Point& p, double d) {
        auto it = pending.find(p);
        if (it != pending.end()) {
            out.emplace(p, d);
            pending.erase(it);
        }
        return pending.empty();
    });
    if (!pending.empty()) {
        throw ResourceLimitError("targets not reachable inside the configured search region");
    }
    return out;
}

OmegaBall omega_ball(const OmegaField& field, const Point& o, double r,
                     const SearchOptions& opts) {
    OmegaBall ball;
    ball.center = o;
    ball.radius = r;
    NodeMap nodes;
    dijkstra(field, o, opts, nodes, [&](const Point& p, double d) {
        if (d > r) return true; // everything farther is outside, heap is monotone
        ball.dist.emplace(p, d);
        return false;
    });
    ball.points.reserve(ball.dist.size());
    for (const auto& [p, _] : ball.dist) ball.points.push_back(p);
    std::sort(ball.points.begin(), ball.points.end());
    return ball;
}

Point geodesic_waypoint(const PathRecord& path, double lambda) {
    if (path.vertices.empty()) throw DomainError("empty path has no waypoint");
    if (!(0.0 <= lambda && lambda <= 1.0)) throw DomainError("lambda outside [0,1]");
    double target = lambda * path.omega_length();
    std::size_t best = 0;
    double best_err = std::abs(path.prefix[0] - target);
    for (std::size_t i = 1; i < path.vertices.size(); ++i) {
        double err = std::abs(path.prefix[i] - target);
        if (err < best_err) {
            best = i;
            best_err = err;
        }
    }
    return path.vertices[best];
}

} // namespace fpp
