#include "mincomm/occupancy.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mincomm {

VarLayout::VarLayout(const JointGame& game) {
    if (!game.augmented()) throw std::logic_error("VarLayout: expects an augmented game");
    const JointStateIndex n = game.num_original_states();
    offsets_.resize(n);
    counts_.resize(n);
    for (JointStateIndex s = 0; s < n; ++s) {
        offsets_[s] = total_;
        counts_[s] = game.is_terminal(s) ? 1 : game.num_joint_actions();
        total_ += counts_[s];
    }
    var_state_.resize(total_);
    var_action_.resize(total_);
    for (JointStateIndex s = 0; s < n; ++s)
        for (std::int64_t k = 0; k < counts_[s]; ++k) {
            var_state_[offsets_[s] + k] = s;
            var_action_[offsets_[s] + k] = counts_[s] == 1 ? game.num_joint_actions() : k;
        }
}

std::int64_t VarLayout::index(JointStateIndex s, JointActionIndex a) const {
    if (s < 0 || s >= num_blocks()) throw std::out_of_range("VarLayout: state out of range");
    if (counts_[s] == 1) {
        if (a != var_action_[offsets_[s]])
            throw std::invalid_argument("VarLayout: terminal state admits only epsilon");
        return offsets_[s];
    }
    if (a < 0 || a >= counts_[s]) throw std::out_of_range("VarLayout: action out of range");
    return offsets_[s] + a;
}

double OccupancyVector::state_mass(JointStateIndex s) const {
    double total = 0.0;
    const std::int64_t off = layout_.offset(s);
    for (std::int64_t k = 0; k < layout_.count(s); ++k) total += values_[off + k];
    return total;
}

JointActionIndex JointPolicy::sample(JointStateIndex s, double uniform) const {
    const std::int64_t off = layout_.offset(s);
    const std::int64_t cnt = layout_.count(s);
    double cum = 0.0;
    for (std::int64_t k = 0; k < cnt; ++k) {
        cum += probs_[off + k];
        if (uniform < cum) return layout_.action_of(off + k);
    }
    return layout_.action_of(off + cnt - 1);
}

void JointPolicy::validate() const {
    for (JointStateIndex s = 0; s < layout_.num_blocks(); ++s) {
        double total = 0.0;
        for (std::int64_t k = 0; k < layout_.count(s); ++k) {
            const double p = probs_[layout_.offset(s) + k];
            if (p < 0.0) throw std::invalid_argument("JointPolicy: negative probability");
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw std::invalid_argument("JointPolicy: row does not sum to one");
    }
}

JointPolicy uniform_joint_policy(const JointGame& game) {
    JointPolicy policy(game);
    const VarLayout& layout = policy.layout();
    for (JointStateIndex s = 0; s < layout.num_blocks(); ++s) {
        const double p = 1.0 / static_cast<double>(layout.count(s));
        for (std::int64_t k = 0; k < layout.count(s); ++k)
            policy.values()[layout.offset(s) + k] = p;
    }
    return policy;
}

std::vector<double> flow_residual(const JointGame& game, const OccupancyVector& x) {
    const VarLayout& layout = x.layout();
    const JointStateIndex n = game.num_original_states();
    std::vector<double> residual(n, 0.0);
    for (JointStateIndex s = 0; s < n; ++s) residual[s] = x.state_mass(s);
    for (std::int64_t v = 0; v < layout.total(); ++v) {
        const double mass = x.values()[v];
        if (mass == 0.0) continue;
        const JointStateIndex s = layout.state_of(v);
        for (const auto& [y, p] : game.enumerate_successors(s, layout.action_of(v)))
            if (y < n) residual[y] -= mass * p;
    }
    residual[game.joint_initial()] -= 1.0;
    return residual;
}

ValueAndLength value_and_length_from_occupancy(const JointGame& game, const OccupancyVector& x) {
    const VarLayout& layout = x.layout();
    ValueAndLength out;
    for (std::int64_t v = 0; v < layout.total(); ++v) {
        const double mass = x.values()[v];
        out.length += mass;
        if (mass == 0.0) continue;
        const JointStateIndex s = layout.state_of(v);
        if (game.is_terminal(s)) continue;
        for (const auto& [y, p] : game.enumerate_successors(s, layout.action_of(v)))
            if (game.in_target(y)) out.value += mass * p;
    }
    return out;
}

JointPolicy policy_from_occupancy(const JointGame& game, const OccupancyVector& x, double threshold) {
    for (double v : x.values())
        if (v < 0.0) throw std::invalid_argument("policy_from_occupancy: negative occupancy");
    JointPolicy policy(game);
    const VarLayout& layout = policy.layout();
    for (JointStateIndex s = 0; s < layout.num_blocks(); ++s) {
        const std::int64_t off = layout.offset(s);
        const std::int64_t cnt = layout.count(s);
        const double mass = x.state_mass(s);
        if (mass > threshold) {
            for (std::int64_t k = 0; k < cnt; ++k)
                policy.values()[off + k] = x.values()[off + k] / mass;
        } else {
            for (std::int64_t k = 0; k < cnt; ++k)
                policy.values()[off + k] = 1.0 / static_cast<double>(cnt);
        }
    }
    return policy;
}

OccupancyVector occupancy_from_policy(const JointGame& game, const JointPolicy& policy) {
    const VarLayout& layout = policy.layout();
    const JointStateIndex n = game.num_original_states();

    // Policy-induced successor structure over original states. Terminal
    // states leave the system through epsilon.
    std::vector<std::vector<std::pair<JointStateIndex, double>>> moves(n);
    for (JointStateIndex s = 0; s < n; ++s) {
        if (game.is_terminal(s)) continue;
        for (std::int64_t k = 0; k < layout.count(s); ++k) {
            const double p = policy.values()[layout.offset(s) + k];
            if (p <= 0.0) continue;
            for (const auto& [y, q] : game.enumerate_successors(s, layout.action_of(layout.offset(s) + k)))
                if (y < n) moves[s].emplace_back(y, p * q);
        }
    }

    // Absorption check: every state reachable from the initial state must
    // reach a terminal state through the policy's positive-probability
    // moves, otherwise the occupancy is infinite. Equivalent to a spectral
    // radius below one on the reachable transient part.
    std::vector<char> reach(n, 0);
    std::vector<JointStateIndex> stack{game.joint_initial()};
    reach[game.joint_initial()] = 1;
    while (!stack.empty()) {
        const JointStateIndex s = stack.back();
        stack.pop_back();
        for (const auto& [y, p] : moves[s])
            if (!reach[y]) {
                reach[y] = 1;
                stack.push_back(y);
            }
    }
    std::vector<char> absorbs(n, 0);
    for (JointStateIndex s = 0; s < n; ++s) absorbs[s] = game.is_terminal(s);
    bool changed = true;
    while (changed) {
        changed = false;
        for (JointStateIndex s = 0; s < n; ++s) {
            if (absorbs[s]) continue;
            for (const auto& [y, p] : moves[s])
                if (absorbs[y]) {
                    absorbs[s] = 1;
                    changed = true;
                    break;
                }
        }
    }
    std::vector<JointStateIndex> recurrent;
    for (JointStateIndex s = 0; s < n; ++s)
        if (reach[s] && !absorbs[s]) recurrent.push_back(s);
    if (!recurrent.empty()) {
        std::ostringstream msg;
        msg << "occupancy_from_policy: policy never absorbs from " << recurrent.size()
            << " reachable state(s):";
        for (std::size_t i = 0; i < recurrent.size() && i < 8; ++i) msg << ' ' << recurrent[i];
        throw std::runtime_error(msg.str());
    }

    // Solve (I - P^T) rho = e_init restricted to reachable states.
    std::vector<std::int64_t> dense_of(n, -1);
    std::vector<JointStateIndex> states;
    for (JointStateIndex s = 0; s < n; ++s)
        if (reach[s]) {
            dense_of[s] = static_cast<std::int64_t>(states.size());
            states.push_back(s);
        }
    const std::int64_t m = static_cast<std::int64_t>(states.size());
    std::vector<Eigen::Triplet<double>> triplets;
    for (std::int64_t row = 0; row < m; ++row) triplets.emplace_back(row, row, 1.0);
    for (std::int64_t col = 0; col < m; ++col)
        for (const auto& [y, p] : moves[states[col]])
            triplets.emplace_back(dense_of[y], col, -p);
    Eigen::SparseMatrix<double> system(m, m);
    system.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    rhs[dense_of[game.joint_initial()]] = 1.0;

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(system);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("occupancy_from_policy: flow system factorization failed");
    const Eigen::VectorXd rho = lu.solve(rhs);

    OccupancyVector x(game);
    for (std::int64_t row = 0; row < m; ++row) {
        const JointStateIndex s = states[row];
        const double visits = std::max(0.0, rho[row]);
        for (std::int64_t k = 0; k < layout.count(s); ++k)
            x.values()[layout.offset(s) + k] = visits * policy.values()[layout.offset(s) + k];
    }
    return x;
}

} // namespace mincomm
