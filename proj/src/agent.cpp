#include "feedgame/agent.hpp"

#include <stdexcept>

#include "feedgame/text.hpp"

namespace feedgame {

FocusPolicy FocusPolicy::fixed(double value) {
    FocusPolicy p;
    p.mode = Mode::Fixed;
    p.fixed_value = value;
    p.validate();
    return p;
}

FocusPolicy FocusPolicy::variable(std::set<int> high_set, double high_value, double low_value) {
    FocusPolicy p;
    p.mode = Mode::Variable;
    p.high_set = std::move(high_set);
    p.high_value = high_value;
    p.low_value = low_value;
    p.validate();
    return p;
}

void FocusPolicy::validate() const {
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (mode == Mode::Fixed) {
        if (!in_unit(fixed_value)) throw std::invalid_argument("fixed focus must be in [0,1]");
        return;
    }
    if (!in_unit(high_value) || !in_unit(low_value))
        throw std::invalid_argument("focus values must be in [0,1]");
    for (int code : high_set)
        if (!ClosureCode::from_int(code))
            throw std::invalid_argument("invalid closure code in focus high set: " +
                                        std::to_string(code));
}

std::string FocusPolicy::serialize() const {
    if (mode == Mode::Fixed) return "fixed:" + format_number(fixed_value);
    std::string out = "var:" + format_number(high_value) + ":" + format_number(low_value) + ":";
    bool first = true;
    for (int code : high_set) {  // std::set iterates sorted: canonical order
        if (!first) out += '+';
        out += std::to_string(code);
        first = false;
    }
    return out;
}

FocusPolicy FocusPolicy::parse(const std::string& text) {
    const std::vector<std::string> parts = split(text, ':');
    if (parts[0] == "fixed") {
        if (parts.size() != 2) throw std::invalid_argument("bad focus policy: " + text);
        return fixed(parse_number(parts[1], "fixed focus"));
    }
    if (parts[0] == "var" || parts[0] == "variable") {
        if (parts.size() == 1) return variable();
        if (parts.size() != 4) throw std::invalid_argument("bad focus policy: " + text);
        std::set<int> high_set;
        for (const std::string& tok : split(parts[3], '+')) {
            if (tok.empty()) continue;
            high_set.insert(static_cast<int>(parse_int64(tok, "focus high set code")));
        }
        return variable(std::move(high_set), parse_number(parts[1], "focus high value"),
                        parse_number(parts[2], "focus low value"));
    }
    throw std::invalid_argument("unknown focus policy mode: " + text);
}

double focus_value(const FocusPolicy& policy, ClosureCode code) {
    if (policy.mode == FocusPolicy::Mode::Fixed) return policy.fixed_value;
    return policy.high_set.count(code.as_int()) ? policy.high_value : policy.low_value;
}

ActuationChoice select_actuation(const AgentState& agent, double focus, Pcg32& rng) {
    if (agent.last_effective) {
        const double u = rng.unit();
        if (u < focus) return ActuationChoice{agent.last_effective->negated(), true};
    }
    ActuationChoice choice;
    choice.act.ex = static_cast<int>(rng.below(3)) - 1;
    choice.act.ey = static_cast<int>(rng.below(3)) - 1;
    choice.act.hx = static_cast<int>(rng.below(3)) - 1;
    choice.act.hy = static_cast<int>(rng.below(3)) - 1;
    return choice;
}

}  // namespace feedgame
