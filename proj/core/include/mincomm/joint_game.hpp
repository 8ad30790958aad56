#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mincomm/agent_mdp.hpp"
#include "mincomm/mixed_radix.hpp"

namespace mincomm {

using JointStateIndex = std::int64_t;
using JointActionIndex = std::int64_t;

/// Factored cooperative Markov game over transition-independent agents.
///
/// Joint states and joint actions are mixed-radix packed integers (agent 0
/// least significant). The joint kernel is never materialized: transition
/// probabilities are products of per-agent kernel lookups, evaluated on
/// demand.
///
/// Lifecycle: construct from agents and reach-avoid sets, assign the dead
/// set (see compute_dead_set), then augment with the absorbing end state
/// for synthesis. Instances are immutable after that and safe to share
/// across threads.
class JointGame {
  public:
    static JointGame from_agents(std::vector<AgentMdp> agents,
                                 std::vector<JointStateIndex> target_set,
                                 std::vector<JointStateIndex> avoid_set);

    int num_agents() const { return static_cast<int>(agents_.size()); }
    const AgentMdp& agent(int i) const { return agents_[i]; }

    /// Number of joint states excluding the end state.
    JointStateIndex num_original_states() const { return state_codec_.size(); }
    /// Number of joint states including the end state when augmented.
    JointStateIndex num_states() const { return state_codec_.size() + (augmented_ ? 1 : 0); }
    /// Number of real joint actions (product over agents).
    JointActionIndex num_joint_actions() const { return action_codec_.size(); }

    JointStateIndex joint_initial() const { return joint_initial_; }
    JointStateIndex end_state() const;
    JointActionIndex epsilon_action() const { return action_codec_.size(); }

    const MixedRadixCodec& state_codec() const { return state_codec_; }
    const MixedRadixCodec& action_codec() const { return action_codec_; }

    bool in_target(JointStateIndex s) const { return s < num_original_states() && target_flag_[s]; }
    bool in_avoid(JointStateIndex s) const { return s < num_original_states() && avoid_flag_[s]; }
    bool in_dead(JointStateIndex s) const;
    /// Target or dead. Requires the dead set to be assigned.
    bool is_terminal(JointStateIndex s) const;

    const std::vector<JointStateIndex>& target_set() const { return target_set_; }
    const std::vector<JointStateIndex>& avoid_set() const { return avoid_set_; }
    const std::vector<JointStateIndex>& dead_set() const;
    bool has_dead_set() const { return dead_assigned_; }
    bool augmented() const { return augmented_; }

    /// Construction-phase mutation; throws if already assigned.
    void assign_dead_set(std::vector<JointStateIndex> dead);

    /// Actions available at a state: real joint actions at non-terminal
    /// states, epsilon only at terminal states of the augmented game.
    std::int64_t num_actions_at(JointStateIndex s) const;

    double joint_transition_prob(JointStateIndex s, JointActionIndex a, JointStateIndex y) const;

    /// All successors with positive probability; probabilities sum to one
    /// within 1e-12. Length equals the product of per-agent support sizes.
    std::vector<std::pair<JointStateIndex, double>> enumerate_successors(JointStateIndex s,
                                                                         JointActionIndex a) const;

    /// States reachable from the joint initial state under some action
    /// sequence with positive probability. Indexed by joint state.
    std::vector<char> forward_reachable() const;

  private:
    JointGame() = default;
    void check_state(JointStateIndex s) const;
    void check_action_at(JointStateIndex s, JointActionIndex a) const;

    std::vector<AgentMdp> agents_;
    MixedRadixCodec state_codec_;
    MixedRadixCodec action_codec_;
    JointStateIndex joint_initial_ = 0;
    std::vector<JointStateIndex> target_set_;
    std::vector<JointStateIndex> avoid_set_;
    std::vector<JointStateIndex> dead_set_;
    std::vector<char> target_flag_;
    std::vector<char> avoid_flag_;
    std::vector<char> dead_flag_;
    bool dead_assigned_ = false;
    bool augmented_ = false;

    friend JointGame augment_with_end_state(const JointGame& game);
};

/// Joint states from which no policy reaches the target with positive
/// probability when avoid states are treated as absorbing failures.
/// Computed as the complement of the backward-reachability fixed point on
/// the positive-probability transition graph.
std::vector<JointStateIndex> compute_dead_set(const JointGame& game);

/// Adds the absorbing end state and the epsilon action: every target or
/// dead state keeps only epsilon, which moves to the end state with
/// probability one. Throws on double augmentation or a missing dead set.
JointGame augment_with_end_state(const JointGame& game);

/// Convenience: compute the dead set and augment in one step.
JointGame prepare_for_synthesis(const JointGame& game);

} // namespace mincomm
