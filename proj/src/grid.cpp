#include "saga/grid.hpp"

#include <cassert>
#include <stdexcept>

namespace saga {

Grid::Grid(int dim) : dim_(dim) {
    if (dim < 1) {
        throw std::invalid_argument("grid dimension must be at least 1");
    }
    occupant_.assign(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), kNoAgent);
    rations_.assign(occupant_.size(), 0);
}

void Grid::place(AgentId id, Cell c) {
    assert(in_bounds(c));
    assert(occupant_[index(c)] == kNoAgent);
    occupant_[index(c)] = id;
    ++occupied_count_;
}

void Grid::vacate(Cell c) {
    assert(occupant_[index(c)] != kNoAgent);
    occupant_[index(c)] = kNoAgent;
    --occupied_count_;
}

void Grid::relocate(Cell from, Cell to) {
    assert(occupant_[index(from)] != kNoAgent);
    assert(occupant_[index(to)] == kNoAgent);
    occupant_[index(to)] = occupant_[index(from)];
    occupant_[index(from)] = kNoAgent;
}

void Grid::add_ration(Cell c) {
    assert(in_bounds(c));
    ++rations_[index(c)];
    ++total_rations_;
}

bool Grid::take_ration(Cell c) {
    if (rations_[index(c)] == 0) {
        return false;
    }
    --rations_[index(c)];
    --total_rations_;
    return true;
}

std::vector<Cell> Grid::neighbours(Cell c, int radius) const {
    std::vector<Cell> out;
    out.reserve(static_cast<std::size_t>(2 * radius + 1) * static_cast<std::size_t>(2 * radius + 1) - 1);
    for (int y = c.y - radius; y <= c.y + radius; ++y) {
        for (int x = c.x - radius; x <= c.x + radius; ++x) {
            const Cell n{x, y};
            if ((x != c.x || y != c.y) && in_bounds(n)) {
                out.push_back(n);
            }
        }
    }
    return out;
}

std::vector<Cell> Grid::free_neighbours(Cell c, int radius) const {
    std::vector<Cell> out;
    for (int y = c.y - radius; y <= c.y + radius; ++y) {
        for (int x = c.x - radius; x <= c.x + radius; ++x) {
            const Cell n{x, y};
            if ((x != c.x || y != c.y) && in_bounds(n) && is_free(n)) {
                out.push_back(n);
            }
        }
    }
    return out;
}

} // namespace saga
