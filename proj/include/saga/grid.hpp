#pragma once

#include <vector>

#include "saga/chronicle.hpp"

namespace saga {

struct Cell {
    int x = 0;
    int y = 0;

    bool operator==(const Cell&) const = default;
};

// Square board with hard edges (no wrap-around). Each cell holds at most
// one agent plus any number of stacked rations. Occupancy and the ration
// total are maintained incrementally so lookups stay O(1).
class Grid {
public:
    explicit Grid(int dim);

    int dim() const { return dim_; }
    bool in_bounds(Cell c) const {
        return c.x >= 0 && c.x < dim_ && c.y >= 0 && c.y < dim_;
    }

    AgentId occupant(Cell c) const { return occupant_[index(c)]; }
    bool is_free(Cell c) const { return occupant_[index(c)] == kNoAgent; }

    void place(AgentId id, Cell c);
    void vacate(Cell c);
    void relocate(Cell from, Cell to);

    int rations_at(Cell c) const { return rations_[index(c)]; }
    void add_ration(Cell c);
    bool take_ration(Cell c);
    int total_rations() const { return total_rations_; }

    int occupied_count() const { return occupied_count_; }

    // Chebyshev-ball neighbourhoods (8 cells at radius 1), centre
    // excluded, row-major order so iteration is deterministic.
    std::vector<Cell> neighbours(Cell c, int radius) const;
    std::vector<Cell> free_neighbours(Cell c, int radius = 1) const;

private:
    std::size_t index(Cell c) const {
        return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(dim_) +
               static_cast<std::size_t>(c.x);
    }

    int dim_;
    int total_rations_ = 0;
    int occupied_count_ = 0;
    std::vector<AgentId> occupant_;
    std::vector<int> rations_;
};

} // namespace saga
