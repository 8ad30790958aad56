#pragma once

#include <cstdint>
#include <vector>

#include "mincomm/joint_game.hpp"

namespace mincomm {

/// Dense layout of per-(state, action) values over an augmented game:
/// one block per original joint state, holding all real joint actions at
/// non-terminal states and only epsilon at terminal states. The end state
/// carries no block (its occupancy is pinned to zero).
class VarLayout {
  public:
    explicit VarLayout(const JointGame& game);

    std::int64_t total() const { return total_; }
    std::int64_t offset(JointStateIndex s) const { return offsets_[s]; }
    std::int64_t count(JointStateIndex s) const { return counts_[s]; }
    std::int64_t num_blocks() const { return static_cast<std::int64_t>(offsets_.size()); }

    /// Variable index of (s, a); a may be the epsilon action at terminal
    /// states.
    std::int64_t index(JointStateIndex s, JointActionIndex a) const;
    JointStateIndex state_of(std::int64_t var) const { return var_state_[var]; }
    JointActionIndex action_of(std::int64_t var) const { return var_action_[var]; }

  private:
    std::vector<std::int64_t> offsets_;
    std::vector<std::int64_t> counts_;
    std::vector<JointStateIndex> var_state_;
    std::vector<JointActionIndex> var_action_;
    std::int64_t total_ = 0;
};

/// Expected visit counts of joint state-action pairs. Values are stored
/// for every original state; the end state reads as zero.
class OccupancyVector {
  public:
    explicit OccupancyVector(const JointGame& game) : layout_(game), values_(layout_.total(), 0.0) {}
    OccupancyVector(VarLayout layout, std::vector<double> values)
        : layout_(std::move(layout)), values_(std::move(values)) {}

    const VarLayout& layout() const { return layout_; }
    double at(JointStateIndex s, JointActionIndex a) const { return values_[layout_.index(s, a)]; }
    double& at(JointStateIndex s, JointActionIndex a) { return values_[layout_.index(s, a)]; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    /// Total mass in a state block.
    double state_mass(JointStateIndex s) const;

  private:
    VarLayout layout_;
    std::vector<double> values_;
};

/// Stationary joint policy: a distribution over available joint actions
/// per state. Terminal states of the augmented game map to epsilon with
/// probability one.
class JointPolicy {
  public:
    explicit JointPolicy(const JointGame& game) : layout_(game), probs_(layout_.total(), 0.0) {}

    const VarLayout& layout() const { return layout_; }
    double prob(JointStateIndex s, JointActionIndex a) const { return probs_[layout_.index(s, a)]; }
    double& prob(JointStateIndex s, JointActionIndex a) { return probs_[layout_.index(s, a)]; }
    const std::vector<double>& values() const { return probs_; }
    std::vector<double>& values() { return probs_; }

    /// Inverse-CDF sample given a uniform draw in [0, 1). Returns the
    /// epsilon action at terminal states.
    JointActionIndex sample(JointStateIndex s, double uniform) const;

    /// Rows must be nonnegative and sum to one within 1e-12.
    void validate() const;

  private:
    VarLayout layout_;
    std::vector<double> probs_;
};

/// Uniform distribution over real joint actions at every non-terminal
/// state; epsilon at terminal states.
JointPolicy uniform_joint_policy(const JointGame& game);

/// Per-state flow defect of x: outflow minus inflow minus the initial
/// source. Zero everywhere for a feasible occupancy. Indexed by original
/// joint state.
std::vector<double> flow_residual(const JointGame& game, const OccupancyVector& x);

struct ValueAndLength {
    double value = 0.0;  // reach-avoid probability mass routed into the target set
    double length = 0.0; // total occupancy mass = expected steps to absorption
};

ValueAndLength value_and_length_from_occupancy(const JointGame& game, const OccupancyVector& x);

/// Normalizes each state block of x into a distribution; blocks with mass
/// at or below the threshold become uniform over the available actions.
JointPolicy policy_from_occupancy(const JointGame& game, const OccupancyVector& x,
                                  double threshold = 1e-12);

/// Expected visit counts of the absorbing chain induced by the policy,
/// found by solving the flow linear system. Throws if some reachable state
/// cannot reach the end state under the policy (infinite occupancy); the
/// message lists the offending recurrent states.
OccupancyVector occupancy_from_policy(const JointGame& game, const JointPolicy& policy);

} // namespace mincomm
