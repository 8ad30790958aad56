#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mincomm/joint_game.hpp"

namespace mincomm {

struct Cell {
    int x = 0;
    int y = 0;
    bool operator==(const Cell&) const = default;
};

/// Grid navigation environment shared by all agents. Cells are addressed
/// (x, y) with y = 0 at the bottom. Walls are impassable; moves into walls
/// or off the grid leave the agent in place. Hazard cells are ordinary
/// local states whose failure semantics live in the joint avoid set.
struct GridSpec {
    int width = 0;
    int height = 0;
    std::vector<Cell> walls;
    std::vector<Cell> hazards;
    double slip = 0.05;
    std::vector<Cell> starts;  // one per agent
    std::vector<Cell> targets; // one per agent
    /// Joint states where two agents are within Chebyshev distance
    /// strictly below this radius belong to the avoid set. Radius 1 means
    /// collisions are shared cells only.
    int collision_radius = 1;
    /// Keep wall cells as (unreachable) local states so every agent has
    /// width*height states. With false the state space holds only
    /// traversable cells.
    bool keep_walls_as_states = true;

    int num_agents() const { return static_cast<int>(starts.size()); }
    bool is_wall(Cell c) const;
    bool is_hazard(Cell c) const;
    bool in_bounds(Cell c) const { return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height; }
    void validate() const;
};

/// Local grid MDP with five actions: left, right, up, down, stay.
/// The intended move succeeds with probability 1 - slip; with probability
/// slip the agent moves uniformly to one of the other valid neighboring
/// cells. If no other valid neighbor exists the slip mass stays on the
/// intended destination.
AgentMdp build_agent_mdp(const GridSpec& spec, int agent_index);

/// Maps between local state indices of build_agent_mdp and grid cells.
class GridIndexer {
  public:
    explicit GridIndexer(const GridSpec& spec);
    int num_states() const { return static_cast<int>(cells_.size()); }
    int state_of(Cell c) const;
    Cell cell_of(int state) const { return cells_[state]; }

  private:
    std::vector<Cell> cells_;
    std::vector<int> index_; // -1 for excluded cells
    int width_;
};

enum class GridAction { Left = 0, Right = 1, Up = 2, Down = 3, Stay = 4 };

/// Joint game for a grid spec: target set is the tuple of per-agent
/// targets; avoid set collects collisions (pairwise Chebyshev distance
/// below the radius) and any agent standing on a hazard cell.
JointGame build_navigation_game(const GridSpec& spec);

/// Two agents on a 5x5 map with three wall cells splitting the grid into
/// two valleys and water along the top. Agents start in opposite bottom
/// corners and swap sides.
GridSpec two_agent_navigation_spec(double slip = 0.05);
JointGame build_two_agent_navigation(double slip = 0.05);

/// Three agents on an open 3x3 map, each heading to the opposite corner.
GridSpec three_agent_navigation_spec(double slip = 0.05);
JointGame build_three_agent_navigation(double slip = 0.05);

} // namespace mincomm
