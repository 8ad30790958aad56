#include "mincomm/gridworld.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mincomm {

bool GridSpec::is_wall(Cell c) const {
    return std::find(walls.begin(), walls.end(), c) != walls.end();
}

bool GridSpec::is_hazard(Cell c) const {
    return std::find(hazards.begin(), hazards.end(), c) != hazards.end();
}

void GridSpec::validate() const {
    if (width <= 0 || height <= 0) throw std::invalid_argument("GridSpec: empty grid");
    if (slip < 0.0 || slip > 1.0) throw std::invalid_argument("GridSpec: slip must lie in [0, 1]");
    if (collision_radius < 0) throw std::invalid_argument("GridSpec: negative collision radius");
    if (starts.empty() || starts.size() != targets.size())
        throw std::invalid_argument("GridSpec: starts and targets must pair up");
    for (const Cell& c : walls)
        if (!in_bounds(c)) throw std::invalid_argument("GridSpec: wall outside the grid");
    for (const Cell& c : hazards) {
        if (!in_bounds(c)) throw std::invalid_argument("GridSpec: hazard outside the grid");
        if (is_wall(c)) throw std::invalid_argument("GridSpec: hazard on a wall");
    }
    for (std::size_t i = 0; i < starts.size(); ++i) {
        for (const Cell& c : {starts[i], targets[i]}) {
            if (!in_bounds(c)) throw std::invalid_argument("GridSpec: start or target outside the grid");
            if (is_wall(c)) throw std::invalid_argument("GridSpec: start or target on a wall");
            if (is_hazard(c)) throw std::invalid_argument("GridSpec: start or target on a hazard");
        }
    }
}

GridIndexer::GridIndexer(const GridSpec& spec) : width_(spec.width) {
    index_.assign(static_cast<std::size_t>(spec.width) * spec.height, -1);
    for (int y = 0; y < spec.height; ++y)
        for (int x = 0; x < spec.width; ++x) {
            const Cell c{x, y};
            if (!spec.keep_walls_as_states && spec.is_wall(c)) continue;
            index_[static_cast<std::size_t>(y) * spec.width + x] = static_cast<int>(cells_.size());
            cells_.push_back(c);
        }
}

int GridIndexer::state_of(Cell c) const {
    const int idx = index_[static_cast<std::size_t>(c.y) * width_ + c.x];
    if (idx < 0) throw std::invalid_argument("GridIndexer: cell is not a state");
    return idx;
}

namespace {

constexpr int kDx[5] = {-1, 1, 0, 0, 0};
constexpr int kDy[5] = {0, 0, 1, -1, 0};

} // namespace

AgentMdp build_agent_mdp(const GridSpec& spec, int agent_index) {
    spec.validate();
    if (agent_index < 0 || agent_index >= spec.num_agents())
        throw std::out_of_range("build_agent_mdp: agent index out of range");

    const GridIndexer indexer(spec);
    AgentMdp mdp(indexer.num_states(), indexer.state_of(spec.starts[agent_index]), 5);

    auto traversable = [&](Cell c) { return spec.in_bounds(c) && !spec.is_wall(c); };

    for (int s = 0; s < indexer.num_states(); ++s) {
        const Cell here = indexer.cell_of(s);
        if (spec.is_wall(here)) {
            // Padding state kept for index stability; unreachable since no
            // move enters a wall. The agent may still walk out of it.
            for (int a = 0; a < 5; ++a) {
                Cell dest{here.x + kDx[a], here.y + kDy[a]};
                if (!traversable(dest)) dest = here;
                mdp.set_row(s, a, {{indexer.state_of(dest), 1.0}});
            }
            continue;
        }
        std::vector<Cell> neighbors;
        for (int d = 0; d < 4; ++d) {
            const Cell c{here.x + kDx[d], here.y + kDy[d]};
            if (traversable(c)) neighbors.push_back(c);
        }
        for (int a = 0; a < 5; ++a) {
            Cell intended{here.x + kDx[a], here.y + kDy[a]};
            if (!traversable(intended)) intended = here;
            std::vector<Cell> others;
            for (const Cell& c : neighbors)
                if (!(c == intended)) others.push_back(c);

            std::vector<Transition> row;
            if (others.empty() || spec.slip == 0.0) {
                row.push_back({indexer.state_of(intended), 1.0});
            } else {
                row.push_back({indexer.state_of(intended), 1.0 - spec.slip});
                for (const Cell& c : others)
                    row.push_back({indexer.state_of(c), spec.slip / static_cast<double>(others.size())});
            }
            mdp.set_row(s, a, std::move(row));
        }
    }
    return mdp;
}

JointGame build_navigation_game(const GridSpec& spec) {
    spec.validate();
    const int n = spec.num_agents();
    const GridIndexer indexer(spec);

    std::vector<AgentMdp> agents;
    for (int i = 0; i < n; ++i) agents.push_back(build_agent_mdp(spec, i));

    std::vector<int> state_radices(n, indexer.num_states());
    const MixedRadixCodec codec(state_radices);

    std::vector<int> target_parts(n);
    for (int i = 0; i < n; ++i) target_parts[i] = indexer.state_of(spec.targets[i]);
    std::vector<JointStateIndex> target{codec.encode(target_parts)};

    std::vector<JointStateIndex> avoid;
    for (JointStateIndex s = 0; s < codec.size(); ++s) {
        bool bad = false;
        for (int i = 0; i < n && !bad; ++i) {
            const Cell ci = indexer.cell_of(codec.component(s, i));
            if (spec.is_hazard(ci)) bad = true;
            for (int j = i + 1; j < n && !bad; ++j) {
                const Cell cj = indexer.cell_of(codec.component(s, j));
                const int cheb = std::max(std::abs(ci.x - cj.x), std::abs(ci.y - cj.y));
                if (cheb < spec.collision_radius) bad = true;
            }
        }
        if (bad) avoid.push_back(s);
    }
    return JointGame::from_agents(std::move(agents), std::move(target), std::move(avoid));
}

GridSpec two_agent_navigation_spec(double slip) {
    GridSpec spec;
    spec.width = 5;
    spec.height = 5;
    spec.walls = {{2, 0}, {2, 2}, {2, 4}};
    spec.hazards = {{0, 4}, {1, 4}, {3, 4}};
    spec.slip = slip;
    spec.starts = {{4, 0}, {0, 0}};
    spec.targets = {{1, 0}, {3, 0}};
    return spec;
}

JointGame build_two_agent_navigation(double slip) {
    return build_navigation_game(two_agent_navigation_spec(slip));
}

GridSpec three_agent_navigation_spec(double slip) {
    GridSpec spec;
    spec.width = 3;
    spec.height = 3;
    spec.slip = slip;
    spec.starts = {{2, 0}, {0, 2}, {2, 2}};
    spec.targets = {{0, 2}, {2, 0}, {0, 0}};
    return spec;
}

JointGame build_three_agent_navigation(double slip) {
    return build_navigation_game(three_agent_navigation_spec(slip));
}

} // namespace mincomm
