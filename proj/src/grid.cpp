#include "penalfd/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "penalfd/errors.hpp"

namespace penalfd {

Grid::Grid(int n) : n_(n), h_(0.0) {
    if (n < 4) throw InvalidArgument("grid requires N >= 4, got " + std::to_string(n));
    h_ = 1.0 / n;
}

std::size_t Grid::node_of(int i, int j) const {
    if (i < 0 || i > n_ || j < 0 || j > n_)
        throw std::out_of_range("grid index (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") outside [0, " + std::to_string(n_) + "]");
    return static_cast<std::size_t>(stride()) * static_cast<std::size_t>(i) + static_cast<std::size_t>(j);
}

std::pair<int, int> Grid::ij_of(std::size_t node) const {
    if (node >= size()) throw std::out_of_range("flat node index " + std::to_string(node) + " out of range");
    const int i = static_cast<int>(node / static_cast<std::size_t>(stride()));
    const int j = static_cast<int>(node - static_cast<std::size_t>(stride()) * static_cast<std::size_t>(i));
    return {i, j};
}

bool Grid::is_box_boundary(std::size_t node) const {
    const auto [i, j] = ij_of(node);
    return i == 0 || i == n_ || j == 0 || j == n_;
}

Point Grid::point(std::size_t node) const {
    const auto [i, j] = ij_of(node);
    return point(i, j);
}

int Grid::index_of(double coord) const {
    const double k = std::round(coord * n_);
    if (std::abs(coord * n_ - k) > 1e-9 || k < 0 || k > n_)
        throw InvalidArgument("coordinate " + std::to_string(coord) + " is not a grid line of N=" + std::to_string(n_));
    return static_cast<int>(k);
}

}  // namespace penalfd
