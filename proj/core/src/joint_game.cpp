#include "mincomm/joint_game.hpp"

#include <algorithm>
#include <stdexcept>

namespace mincomm {

JointGame JointGame::from_agents(std::vector<AgentMdp> agents,
                                 std::vector<JointStateIndex> target_set,
                                 std::vector<JointStateIndex> avoid_set) {
    if (agents.empty()) throw std::invalid_argument("JointGame: needs at least one agent");
    for (const AgentMdp& m : agents) m.validate();

    JointGame game;
    std::vector<int> state_radices, action_radices, initials;
    for (const AgentMdp& m : agents) {
        state_radices.push_back(m.num_states());
        action_radices.push_back(m.num_actions());
        initials.push_back(m.initial_state());
    }
    game.agents_ = std::move(agents);
    game.state_codec_ = MixedRadixCodec(state_radices);
    game.action_codec_ = MixedRadixCodec(action_radices);
    game.joint_initial_ = game.state_codec_.encode(initials);

    const JointStateIndex n = game.state_codec_.size();
    game.target_flag_.assign(n, 0);
    game.avoid_flag_.assign(n, 0);
    for (JointStateIndex s : target_set) {
        if (s < 0 || s >= n) throw std::out_of_range("JointGame: target state out of range");
        game.target_flag_[s] = 1;
    }
    for (JointStateIndex s : avoid_set) {
        if (s < 0 || s >= n) throw std::out_of_range("JointGame: avoid state out of range");
        if (game.target_flag_[s]) throw std::invalid_argument("JointGame: target and avoid sets intersect");
        game.avoid_flag_[s] = 1;
    }
    game.target_set_ = std::move(target_set);
    game.avoid_set_ = std::move(avoid_set);
    std::sort(game.target_set_.begin(), game.target_set_.end());
    std::sort(game.avoid_set_.begin(), game.avoid_set_.end());
    return game;
}

JointStateIndex JointGame::end_state() const {
    if (!augmented_) throw std::logic_error("JointGame: end state only exists after augmentation");
    return state_codec_.size();
}

bool JointGame::in_dead(JointStateIndex s) const {
    if (!dead_assigned_) throw std::logic_error("JointGame: dead set not assigned");
    return s < num_original_states() && dead_flag_[s];
}

bool JointGame::is_terminal(JointStateIndex s) const {
    if (!dead_assigned_) throw std::logic_error("JointGame: dead set not assigned");
    return s < num_original_states() && (target_flag_[s] || dead_flag_[s]);
}

const std::vector<JointStateIndex>& JointGame::dead_set() const {
    if (!dead_assigned_) throw std::logic_error("JointGame: dead set not assigned");
    return dead_set_;
}

void JointGame::assign_dead_set(std::vector<JointStateIndex> dead) {
    if (dead_assigned_) throw std::logic_error("JointGame: dead set already assigned");
    dead_flag_.assign(num_original_states(), 0);
    for (JointStateIndex s : dead) {
        if (s < 0 || s >= num_original_states()) throw std::out_of_range("JointGame: dead state out of range");
        dead_flag_[s] = 1;
    }
    // The avoid set is failed-with-certainty, so it must be contained.
    for (JointStateIndex s : avoid_set_)
        if (!dead_flag_[s]) throw std::invalid_argument("JointGame: dead set must contain the avoid set");
    dead_set_ = std::move(dead);
    std::sort(dead_set_.begin(), dead_set_.end());
    dead_assigned_ = true;
}

void JointGame::check_state(JointStateIndex s) const {
    if (s < 0 || s >= num_states()) throw std::out_of_range("JointGame: joint state out of range");
}

void JointGame::check_action_at(JointStateIndex s, JointActionIndex a) const {
    const bool eps = a == epsilon_action();
    if (a < 0 || (a >= num_joint_actions() && !eps))
        throw std::out_of_range("JointGame: joint action out of range");
    if (augmented_) {
        const bool terminal = s == end_state() || is_terminal(s);
        if (terminal && !eps)
            throw std::invalid_argument("JointGame: terminal states admit only the epsilon action");
        if (!terminal && eps)
            throw std::invalid_argument("JointGame: epsilon action only available at terminal states");
    } else if (eps) {
        throw std::invalid_argument("JointGame: epsilon action only exists after augmentation");
    }
}

std::int64_t JointGame::num_actions_at(JointStateIndex s) const {
    check_state(s);
    if (augmented_ && (s == end_state() || is_terminal(s))) return 1;
    return num_joint_actions();
}

double JointGame::joint_transition_prob(JointStateIndex s, JointActionIndex a, JointStateIndex y) const {
    check_state(s);
    check_state(y);
    check_action_at(s, a);
    if (augmented_ && (s == end_state() || is_terminal(s))) return y == end_state() ? 1.0 : 0.0;
    if (augmented_ && y == end_state()) return 0.0;
    double prob = 1.0;
    for (int i = 0; i < num_agents(); ++i) {
        prob *= agents_[i].transition_prob(state_codec_.component(s, i), action_codec_.component(a, i),
                                           state_codec_.component(y, i));
        if (prob == 0.0) return 0.0;
    }
    return prob;
}

std::vector<std::pair<JointStateIndex, double>> JointGame::enumerate_successors(JointStateIndex s,
                                                                                JointActionIndex a) const {
    check_state(s);
    check_action_at(s, a);
    if (augmented_ && (s == end_state() || is_terminal(s))) return {{end_state(), 1.0}};

    const int n = num_agents();
    std::vector<std::span<const Transition>> rows(n);
    for (int i = 0; i < n; ++i)
        rows[i] = agents_[i].row(state_codec_.component(s, i), action_codec_.component(a, i));

    std::vector<std::pair<JointStateIndex, double>> out;
    std::vector<std::size_t> pick(n, 0);
    while (true) {
        JointStateIndex y = 0;
        double prob = 1.0;
        for (int i = n - 1; i >= 0; --i) {
            const Transition& t = rows[i][pick[i]];
            y = y * agents_[i].num_states() + t.next;
            prob *= t.prob;
        }
        if (prob > 0.0) out.emplace_back(y, prob);
        int digit = 0;
        while (digit < n && ++pick[digit] == rows[digit].size()) pick[digit++] = 0;
        if (digit == n) break;
    }
    return out;
}

std::vector<char> JointGame::forward_reachable() const {
    std::vector<char> seen(num_states(), 0);
    std::vector<JointStateIndex> stack{joint_initial_};
    seen[joint_initial_] = 1;
    while (!stack.empty()) {
        const JointStateIndex s = stack.back();
        stack.pop_back();
        if (augmented_ && s == end_state()) continue;
        if (augmented_ && is_terminal(s)) {
            if (!seen[end_state()]) {
                seen[end_state()] = 1;
                stack.push_back(end_state());
            }
            continue;
        }
        for (JointActionIndex a = 0; a < num_joint_actions(); ++a)
            for (const auto& [y, p] : enumerate_successors(s, a))
                if (!seen[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
    }
    return seen;
}

std::vector<JointStateIndex> compute_dead_set(const JointGame& game) {
    if (game.augmented()) throw std::logic_error("compute_dead_set: expects an un-augmented game");
    const JointStateIndex n = game.num_original_states();

    // Least fixed point of "reaches the target through non-avoid states".
    // Avoid states are absorbing failures regardless of the raw dynamics.
    std::vector<char> live(n, 0);
    for (JointStateIndex s : game.target_set()) live[s] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (JointStateIndex s = 0; s < n; ++s) {
            if (live[s] || game.in_avoid(s)) continue;
            bool found = false;
            for (JointActionIndex a = 0; a < game.num_joint_actions() && !found; ++a)
                for (const auto& [y, p] : game.enumerate_successors(s, a))
                    if (live[y]) {
                        found = true;
                        break;
                    }
            if (found) {
                live[s] = 1;
                changed = true;
            }
        }
    }

    std::vector<JointStateIndex> dead;
    for (JointStateIndex s = 0; s < n; ++s)
        if (!live[s]) dead.push_back(s);
    return dead;
}

JointGame augment_with_end_state(const JointGame& game) {
    if (game.augmented()) throw std::logic_error("augment_with_end_state: game already augmented");
    if (!game.has_dead_set()) throw std::logic_error("augment_with_end_state: dead set not assigned");
    JointGame out = game;
    out.augmented_ = true;
    return out;
}

JointGame prepare_for_synthesis(const JointGame& game) {
    JointGame staged = game;
    staged.assign_dead_set(compute_dead_set(staged));
    return augment_with_end_state(staged);
}

} // namespace mincomm
