#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "fpp/point.hpp"

namespace fpp {

/// Canonical undirected edge of a Cayley graph: `base` is the
/// lexicographically smaller endpoint, `step` points to the other one.
struct EdgeKey {
    Point base;
    Point step;

    bool operator==(const EdgeKey& o) const { return base == o.base && step == o.step; }
};

/// Cayley graph of Z^d for a finite symmetric generating set S.
/// Immutable after construction; construction validates that S is symmetric,
/// has no zero vector or duplicates, and generates all of Z^d.
class CayleyLattice {
public:
    /// `symmetrize` adds missing negations instead of rejecting them.
    CayleyLattice(std::size_t dim, std::vector<Point> generators, bool symmetrize = false);

    static CayleyLattice standard(std::size_t dim);
    static CayleyLattice king2d();

    std::size_t dim() const { return dim_; }
    const std::vector<Point>& generators() const { return generators_; }
    std::size_t degree() const { return generators_.size(); }

    bool is_generator(const Point& v) const;

    EdgeKey canonical_edge(const Point& u, const Point& v) const;

    /// Word metric d(x,y): length of a shortest generator word, via BFS.
    std::int64_t graph_distance(const Point& x, const Point& y) const;

    /// {x : d(o,x) <= r}, sorted lexicographically.
    std::vector<Point> word_ball(const Point& o, std::int64_t r,
                                 std::size_t point_budget = kDefaultPointBudget) const;

    /// Word-distance map d(o, .) on the ball of radius r.
    std::unordered_map<Point, std::int64_t, PointHash>
    word_ball_map(const Point& o, std::int64_t r,
                  std::size_t point_budget = kDefaultPointBudget) const;

    static constexpr std::size_t kDefaultPointBudget = 20'000'000;

private:
    std::size_t dim_;
    std::vector<Point> generators_;
};

} // namespace fpp
