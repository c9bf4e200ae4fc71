#pragma once

#include "tinpc/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tinpc {

/// One network state seen by a receiver: the strength levels alpha_{k1..kK}
/// of the links from every transmitter into receiver k.
using StrengthVector = std::vector<Rational>;
using StateSet = std::vector<StrengthVector>;
using Matrix = std::vector<std::vector<Rational>>;

/// Raised when channel data violates the model invariants. Indices are
/// zero-based; what() renders them one-based for humans.
class ChannelError : public std::invalid_argument {
public:
    enum class Kind { no_users, receiver_count, empty_state_set, dimension, negative_strength };

    ChannelError(Kind kind, std::size_t receiver, std::size_t state, std::size_t entry, const std::string& msg)
        : std::invalid_argument(msg), kind_(kind), receiver_(receiver), state_(state), entry_(entry) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t receiver() const noexcept { return receiver_; }
    std::size_t state() const noexcept { return state_; }
    std::size_t entry() const noexcept { return entry_; }

private:
    Kind kind_;
    std::size_t receiver_;
    std::size_t state_;
    std::size_t entry_;
};

/// Whether cross-link strengths below zero are tolerated. Only the regular
/// counterpart construction produces such values; user input never may.
enum class NegativeLinks { reject, allow_cross };

/// Checks raw receiver data against the channel invariants. Returns the first
/// violation found, scanning receivers then states then entries.
inline std::optional<ChannelError> validate(std::size_t users, const std::vector<StateSet>& receivers,
                                            NegativeLinks policy = NegativeLinks::reject) {
    using Kind = ChannelError::Kind;
    if (users == 0) return ChannelError(Kind::no_users, 0, 0, 0, "channel must have at least one user");
    if (receivers.size() != users) {
        return ChannelError(Kind::receiver_count, receivers.size(), 0, 0,
                            "expected " + std::to_string(users) + " receivers, got " +
                                std::to_string(receivers.size()));
    }
    for (std::size_t k = 0; k < users; ++k) {
        if (receivers[k].empty()) {
            return ChannelError(Kind::empty_state_set, k, 0, 0,
                                "receiver " + std::to_string(k + 1) + " has no states");
        }
        for (std::size_t l = 0; l < receivers[k].size(); ++l) {
            const auto& state = receivers[k][l];
            if (state.size() != users) {
                return ChannelError(Kind::dimension, k, l, 0,
                                    "receiver " + std::to_string(k + 1) + " state " + std::to_string(l + 1) +
                                        " has " + std::to_string(state.size()) + " entries, expected " +
                                        std::to_string(users));
            }
            for (std::size_t j = 0; j < users; ++j) {
                bool allowed = policy == NegativeLinks::allow_cross && j != k;
                if (state[j] < 0 && !allowed) {
                    return ChannelError(Kind::negative_strength, k, l, j,
                                        "receiver " + std::to_string(k + 1) + " state " + std::to_string(l + 1) +
                                            " has negative strength " + to_string(state[j]) + " from transmitter " +
                                            std::to_string(j + 1));
                }
            }
        }
    }
    return std::nullopt;
}

/// K-user compound interference channel: receiver k observes one of L_k
/// possible strength vectors, and transmitters must serve all of them.
/// Immutable once constructed; duplicate states are dropped on construction.
class CompoundChannel {
public:
    CompoundChannel(std::size_t users, std::vector<StateSet> receivers, NegativeLinks policy = NegativeLinks::reject)
        : users_(users), receivers_(std::move(receivers)) {
        if (auto error = tinpc::validate(users_, receivers_, policy)) throw *error;
        for (auto& states : receivers_) {
            StateSet unique;
            for (auto& s : states) {
                if (std::find(unique.begin(), unique.end(), s) == unique.end()) unique.push_back(std::move(s));
            }
            states = std::move(unique);
        }
    }

    std::size_t users() const noexcept { return users_; }
    const std::vector<StateSet>& receivers() const noexcept { return receivers_; }
    const StateSet& states(std::size_t k) const { return receivers_.at(k); }
    std::size_t state_count(std::size_t k) const { return receivers_.at(k).size(); }

    /// alpha_{kj}^{[l]}: strength of the link from transmitter j at receiver k in state l.
    const Rational& strength(std::size_t k, std::size_t l, std::size_t j) const { return receivers_[k][l][j]; }

    std::size_t total_states() const {
        std::size_t n = 0;
        for (const auto& s : receivers_) n += s.size();
        return n;
    }

    bool is_regular() const {
        return std::all_of(receivers_.begin(), receivers_.end(), [](const StateSet& s) { return s.size() == 1; });
    }

    friend bool operator==(const CompoundChannel&, const CompoundChannel&) = default;

private:
    std::size_t users_;
    std::vector<StateSet> receivers_;
};

/// Single-state interference channel with strength matrix alpha.
class RegularChannel {
public:
    explicit RegularChannel(const Matrix& alpha, NegativeLinks policy = NegativeLinks::reject)
        : channel_(alpha.size(), to_states(alpha), policy) {}

    /// Accepts a compound channel that happens to have exactly one state per receiver.
    explicit RegularChannel(CompoundChannel channel) : channel_(std::move(channel)) {
        if (!channel_.is_regular()) throw std::invalid_argument("channel has more than one state at some receiver");
    }

    std::size_t users() const noexcept { return channel_.users(); }
    const Rational& alpha(std::size_t k, std::size_t j) const { return channel_.strength(k, 0, j); }

    Matrix matrix() const {
        Matrix m;
        for (const auto& s : channel_.receivers()) m.push_back(s.front());
        return m;
    }

    const CompoundChannel& channel() const noexcept { return channel_; }
    operator const CompoundChannel&() const noexcept { return channel_; }

    /// (k, j) pairs with alpha_kj < 0, which only a counterpart can carry.
    std::vector<std::pair<std::size_t, std::size_t>> negative_cross_links() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t k = 0; k < users(); ++k)
            for (std::size_t j = 0; j < users(); ++j)
                if (j != k && alpha(k, j) < 0) out.emplace_back(k, j);
        return out;
    }

    friend bool operator==(const RegularChannel&, const RegularChannel&) = default;

private:
    static std::vector<StateSet> to_states(const Matrix& alpha) {
        std::vector<StateSet> out;
        for (const auto& row : alpha) out.push_back(StateSet{row});
        return out;
    }

    CompoundChannel channel_;
};

/// Which inequality of the TIN-optimality condition failed, and where.
struct TinViolation {
    std::size_t user;          // i
    std::size_t state;         // l_i
    std::size_t interferer;    // j: strongest interference caused by user i lands at receiver j ...
    std::size_t interferer_state;  // ... in state l_j
    std::size_t victim_of;     // k: strongest interference suffered by receiver i comes from k
    Rational direct;
    Rational caused;
    Rational suffered;
};

struct TinOptimality {
    bool optimal = true;
    std::optional<TinViolation> witness;
};

/// Per-state TIN-optimality: alpha_ii^[l_i] >= max_{j,l_j} alpha_ji^[l_j] + max_k alpha_ik^[l_i]
/// for every user i and state l_i. Empty maxima count as 0.
inline TinOptimality tin_optimal(const CompoundChannel& ch) {
    const std::size_t K = ch.users();
    for (std::size_t i = 0; i < K; ++i) {
        Rational caused = 0;
        std::size_t arg_j = i;
        std::size_t arg_lj = 0;
        for (std::size_t j = 0; j < K; ++j) {
            if (j == i) continue;
            for (std::size_t lj = 0; lj < ch.state_count(j); ++lj) {
                if (arg_j == i || ch.strength(j, lj, i) > caused) {
                    caused = ch.strength(j, lj, i);
                    arg_j = j;
                    arg_lj = lj;
                }
            }
        }
        for (std::size_t li = 0; li < ch.state_count(i); ++li) {
            Rational suffered = 0;
            std::size_t arg_k = i;
            for (std::size_t k = 0; k < K; ++k) {
                if (k == i) continue;
                if (arg_k == i || ch.strength(i, li, k) > suffered) {
                    suffered = ch.strength(i, li, k);
                    arg_k = k;
                }
            }
            if (ch.strength(i, li, i) < caused + suffered) {
                return {false, TinViolation{i, li, arg_j, arg_lj, arg_k, ch.strength(i, li, i), caused, suffered}};
            }
        }
    }
    return {};
}

/// Regular counterpart: the direct link is the weakest direct link over the
/// receiver's states, and each cross link is set so that the power-level gain
/// alpha_kk - alpha_kj equals the smallest gain over those states. Cross
/// links may come out negative; see RegularChannel::negative_cross_links().
inline RegularChannel regular_counterpart(const CompoundChannel& ch) {
    const std::size_t K = ch.users();
    Matrix bar(K, std::vector<Rational>(K));
    for (std::size_t k = 0; k < K; ++k) {
        const auto& states = ch.states(k);
        Rational direct = states.front()[k];
        for (const auto& s : states) direct = std::min(direct, s[k]);
        bar[k][k] = direct;
        for (std::size_t j = 0; j < K; ++j) {
            if (j == k) continue;
            Rational gain = states.front()[k] - states.front()[j];
            for (const auto& s : states) gain = std::min<Rational>(gain, s[k] - s[j]);
            bar[k][j] = direct - gain;
        }
    }
    return RegularChannel(bar, NegativeLinks::allow_cross);
}

/// Compound model where the whole K x K strength matrix is drawn jointly from a finite set.
struct JointStateSet {
    std::size_t users = 0;
    std::vector<Matrix> states;
};

/// Compound model where each entry h_ij independently ranges over its own finite set.
struct EntrywiseSets {
    std::size_t users = 0;
    std::vector<std::vector<std::vector<Rational>>> sets;  // sets[i][j]
};

/// Receivers cannot cooperate, so receiver k only has to cope with the
/// distinct k-th rows of the joint states.
inline CompoundChannel from_joint_set(const JointStateSet& joint) {
    if (joint.states.empty()) throw std::invalid_argument("joint state set is empty");
    std::vector<StateSet> receivers(joint.users);
    for (const auto& m : joint.states) {
        if (m.size() != joint.users) throw std::invalid_argument("joint state matrix has wrong row count");
        for (std::size_t k = 0; k < joint.users; ++k) receivers[k].push_back(m[k]);
    }
    return CompoundChannel(joint.users, std::move(receivers));
}

/// Worst case per entry: weakest direct links, strongest cross links.
inline RegularChannel from_entrywise_sets(const EntrywiseSets& es) {
    const std::size_t K = es.users;
    if (es.sets.size() != K) throw std::invalid_argument("entrywise sets have wrong row count");
    Matrix alpha(K, std::vector<Rational>(K));
    for (std::size_t i = 0; i < K; ++i) {
        if (es.sets[i].size() != K) throw std::invalid_argument("entrywise sets have wrong column count");
        for (std::size_t j = 0; j < K; ++j) {
            const auto& s = es.sets[i][j];
            if (s.empty()) {
                throw std::invalid_argument("entrywise set (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                            ") is empty");
            }
            alpha[i][j] = i == j ? *std::min_element(s.begin(), s.end()) : *std::max_element(s.begin(), s.end());
        }
    }
    return RegularChannel(alpha);
}

/// The channel seen by the users in `keep` (ascending) once every other user
/// is switched off. Duplicate states collapse again.
inline CompoundChannel subnetwork(const CompoundChannel& ch, const std::vector<std::size_t>& keep) {
    std::vector<StateSet> receivers;
    for (std::size_t k : keep) {
        StateSet states;
        for (const auto& s : ch.states(k)) {
            StrengthVector row;
            for (std::size_t j : keep) row.push_back(s[j]);
            states.push_back(std::move(row));
        }
        receivers.push_back(std::move(states));
    }
    return CompoundChannel(keep.size(), std::move(receivers), NegativeLinks::allow_cross);
}

}  // namespace tinpc
