#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace mincomm {

/// One outgoing transition of a sparse kernel row.
struct Transition {
    int next;
    double prob;
};

/// A single agent's finite MDP with sparse transition kernel rows.
/// Rows are validated on construction: probabilities nonnegative and
/// summing to one within 1e-12.
class AgentMdp {
  public:
    AgentMdp(int num_states, int initial_state, int num_actions)
        : num_states_(num_states), num_actions_(num_actions), initial_state_(initial_state),
          rows_(static_cast<std::size_t>(num_states) * num_actions) {
        if (num_states <= 0 || num_actions <= 0)
            throw std::invalid_argument("AgentMdp: state and action counts must be positive");
        if (initial_state < 0 || initial_state >= num_states)
            throw std::invalid_argument("AgentMdp: initial state out of range");
    }

    int num_states() const { return num_states_; }
    int num_actions() const { return num_actions_; }
    int initial_state() const { return initial_state_; }

    void set_row(int state, int action, std::vector<Transition> row) {
        validate_row(row);
        rows_[row_index(state, action)] = std::move(row);
    }

    std::span<const Transition> row(int state, int action) const {
        return rows_[row_index(state, action)];
    }

    double transition_prob(int state, int action, int next) const {
        for (const Transition& t : rows_[row_index(state, action)])
            if (t.next == next) return t.prob;
        return 0.0;
    }

    /// Throws if any row is empty or fails the stochasticity check.
    void validate() const {
        for (int s = 0; s < num_states_; ++s)
            for (int a = 0; a < num_actions_; ++a) {
                if (rows_[row_index(s, a)].empty())
                    throw std::invalid_argument("AgentMdp: missing transition row");
                validate_row(rows_[row_index(s, a)]);
            }
    }

  private:
    std::size_t row_index(int state, int action) const {
        if (state < 0 || state >= num_states_ || action < 0 || action >= num_actions_)
            throw std::out_of_range("AgentMdp: state or action out of range");
        return static_cast<std::size_t>(state) * num_actions_ + action;
    }

    static void validate_row(const std::vector<Transition>& row) {
        double total = 0.0;
        for (const Transition& t : row) {
            if (t.prob < 0.0) throw std::invalid_argument("AgentMdp: negative transition probability");
            total += t.prob;
        }
        if (!row.empty() && std::abs(total - 1.0) > 1e-12)
            throw std::invalid_argument("AgentMdp: transition row does not sum to one");
    }

    int num_states_;
    int num_actions_;
    int initial_state_;
    std::vector<std::vector<Transition>> rows_;
};

} // namespace mincomm
