#pragma once

#include <optional>
#include <set>
#include <string>

#include "feedgame/closure_dynamics.hpp"
#include "feedgame/gridworld.hpp"
#include "feedgame/rng.hpp"

namespace feedgame {

// The focus behavior modulator: probability of undoing the last effective
// movement instead of moving at random. Either one fixed value for the
// whole run, or a value conditioned on the current closure code.
struct FocusPolicy {
    enum class Mode { Fixed, Variable };

    Mode mode = Mode::Fixed;
    double fixed_value = 0.0;
    std::set<int> high_set;  // closure codes (as ints) that get high_value
    double high_value = 0.66;
    double low_value = 0.0;

    static FocusPolicy fixed(double value);
    static FocusPolicy variable(std::set<int> high_set = default_high_set(),
                                double high_value = 0.66, double low_value = 0.0);
    static std::set<int> default_high_set() { return {222, 221, 211, 121, 212, 223, 213}; }

    // Focus before any closure code exists (first iteration).
    double initial_value() const { return mode == Mode::Fixed ? fixed_value : low_value; }

    void validate() const;  // throws std::invalid_argument

    // Canonical text form, e.g. "fixed:0.25" or
    // "var:0.66:0:121+211+212+213+221+222+223". Round-trips via parse.
    std::string serialize() const;
    static FocusPolicy parse(const std::string& text);  // throws std::invalid_argument

    friend bool operator==(const FocusPolicy&, const FocusPolicy&) = default;
};

double focus_value(const FocusPolicy& policy, ClosureCode code);

struct AgentState {
    // Absent only before the first step.
    std::optional<EffectiveDisplacement> last_effective;
};

struct ActuationChoice {
    Actuation act;
    bool chose_undo = false;
};

// With probability `focus` (one draw for the whole actuation) returns the
// negation of the last effective displacement; otherwise each actuator is
// drawn independently and uniformly from {-1,0,1}. Always random while no
// movement has been performed yet.
ActuationChoice select_actuation(const AgentState& agent, double focus, Pcg32& rng);

}  // namespace feedgame
