#include "fpp/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_set>

#include "fpp/errors.hpp"

namespace fpp {

namespace {

// Integer row reduction (Hermite-style): returns true iff the rows span Z^d,
// i.e. the lattice they generate is all of Z^d.
bool spans_full_lattice(std::vector<Point> rows, std::size_t dim) {
    std::size_t col = 0;
    for (; col < dim; ++col) {
        // gcd-eliminate column `col` across all remaining rows
        while (true) {
            std::size_t pivot = rows.size();
            for (std::size_t i = col; i < rows.size(); ++i) {
                if (rows[i][col] != 0 &&
                    (pivot == rows.size() ||
                     std::llabs(rows[i][col]) < std::llabs(rows[pivot][col]))) {
                    pivot = i;
                }
            }
            if (pivot == rows.size()) return false; // column is zero: rank deficient
            std::swap(rows[col], rows[pivot]);
            bool done = true;
            for (std::size_t i = col + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                std::int64_t q = rows[i][col] / rows[col][col];
                for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= q * rows[col][j];
                if (rows[i][col] != 0) done = false;
            }
            if (done) break;
        }
    }
    // diagonal product is the index of the sublattice; need |det| == 1
    long double det = 1.0L;
    for (std::size_t i = 0; i < dim; ++i) det *= static_cast<long double>(std::llabs(rows[i][i]));
    return det == 1.0L;
}

} // namespace

CayleyLattice::CayleyLattice(std::size_t dim, std::vector<Point> generators, bool symmetrize)
    : dim_(dim) {
    if (dim == 0) throw ConfigError("lattice dimension must be positive");
    std::set<Point> gens;
    for (auto& g : generators) {
        if (g.size() != dim) throw ConfigError("generator dimension mismatch");
        if (std::all_of(g.begin(), g.end(), [](std::int64_t c) { return c == 0; })) {
            throw ConfigError("zero vector is not a valid generator");
        }
        if (!gens.insert(g).second) throw ConfigError("duplicate generator " + point_to_string(g));
    }
    for (const auto& g : gens) {
        if (!gens.count(point_neg(g))) {
            if (symmetrize) {
                gens.insert(point_neg(g));
            } else {
                throw ConfigError("generating set is not symmetric: missing -" +
                                  point_to_string(g));
            }
        }
    }
    generators_.assign(gens.begin(), gens.end());
    if (!spans_full_lattice(generators_, dim_)) {
        throw ConfigError("generating set does not span Z^d");
    }
}

CayleyLattice CayleyLattice::standard(std::size_t dim) {
    std::vector<Point> gens;
    for (std::size_t i = 0; i < dim; ++i) {
        Point e(dim, 0);
        e[i] = 1;
        gens.push_back(e);
        e[i] = -1;
        gens.push_back(e);
    }
    return CayleyLattice(dim, std::move(gens));
}

CayleyLattice CayleyLattice::king2d() {
    std::vector<Point> gens;
    for (std::int64_t a = -1; a <= 1; ++a)
        for (std::int64_t b = -1; b <= 1; ++b)
            if (a != 0 || b != 0) gens.push_back(Point{a, b});
    return CayleyLattice(2, std::move(gens));
}

bool CayleyLattice::is_generator(const Point& v) const {
    return std::binary_search(generators_.begin(), generators_.end(), v);
}

EdgeKey CayleyLattice::canonical_edge(const Point& u, const Point& v) const {
    Point diff = point_sub(v, u);
    if (!is_generator(diff)) {
        throw NotAdjacentError("points " + point_to_string(u) + " and " + point_to_string(v) +
                               " are not adjacent");
    }
    if (lex_less(u, v)) return EdgeKey{u, diff};
    return EdgeKey{v, point_neg(diff)};
}

std::int64_t CayleyLattice::graph_distance(const Point& x, const Point& y) const {
    Point target = point_sub(y, x);
    if (std::all_of(target.begin(), target.end(), [](std::int64_t c) { return c == 0; })) return 0;
    // BFS from 0 towards `target`; S generates Z^d so this terminates.
    std::unordered_map<Point, std::int64_t, PointHash> dist;
    std::deque<Point> queue;
    Point origin(dim_, 0);
    dist[origin] = 0;
    queue.push_back(origin);
    while (!queue.empty()) {
        Point cur = queue.front();
        queue.pop_front();
        std::int64_t d = dist.at(cur);
        for (const auto& g : generators_) {
            Point nxt = point_add(cur, g);
            if (dist.count(nxt)) continue;
            if (nxt == target) return d + 1;
            dist.emplace(nxt, d + 1);
            queue.push_back(nxt);
        }
    }
    throw ConfigError("unreachable: generating set does not reach target");
}

std::unordered_map<Point, std::int64_t, PointHash>
CayleyLattice::word_ball_map(const Point& o, std::int64_t r, std::size_t point_budget) const {
    std::unordered_map<Point, std::int64_t, PointHash> dist;
    if (r < 0) return dist;
    std::deque<Point> queue;
    dist[o] = 0;
    queue.push_back(o);
    while (!queue.empty()) {
        Point cur = queue.front();
        queue.pop_front();
        std::int64_t d = dist.at(cur);
        if (d == r) continue;
        for (const auto& g : generators_) {
            Point nxt = point_add(cur, g);
            if (dist.count(nxt)) continue;
            dist.emplace(nxt, d + 1);
            if (dist.size() > point_budget) {
                throw ResourceLimitError("word ball exceeds point budget");
            }
            queue.push_back(nxt);
        }
    }
    return dist;
}

std::vector<Point> CayleyLattice::word_ball(const Point& o, std::int64_t r,
                                            std::size_t point_budget) const {
    auto map = word_ball_map(o, r, point_budget);
    std::vector<Point> out;
    out.reserve(map.size());
    for (const auto& [p, _] : map) out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace fpp
