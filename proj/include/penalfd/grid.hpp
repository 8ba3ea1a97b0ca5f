#pragma once

#include <cstddef>
#include <utility>

#include "penalfd/geometry.hpp"

namespace penalfd {

// Uniform mesh of the box with nodes (ih, jh), 0 <= i,j <= N, h = 1/N.
// Flat index n = (N+1) i + j.
class Grid {
public:
    explicit Grid(int n);

    int n() const { return n_; }
    double h() const { return h_; }
    std::size_t size() const { return static_cast<std::size_t>(n_ + 1) * static_cast<std::size_t>(n_ + 1); }
    int stride() const { return n_ + 1; }

    std::size_t node_of(int i, int j) const;
    std::pair<int, int> ij_of(std::size_t node) const;
    bool is_box_boundary(std::size_t node) const;

    double coord(int k) const { return static_cast<double>(k) / n_; }
    Point point(int i, int j) const { return {coord(i), coord(j)}; }
    Point point(std::size_t node) const;

    // Nearest grid index to a coordinate; throws if not within 1e-9 h of a node.
    int index_of(double coord) const;

private:
    int n_;
    double h_;
};

}  // namespace penalfd
