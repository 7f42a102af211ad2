#pragma once
// Elementary cellular-automaton rules (Wolfram numbering) as used by an
// inactive cell deciding whether to accept an incoming robot.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "acnav/lattice.hpp"

namespace acnav {

class RuleNumber {
public:
    constexpr RuleNumber() = default;
    constexpr explicit RuleNumber(int value) : value_(static_cast<std::uint8_t>(value)) {
        if (value < 0 || value > 255) throw Error("rule number must be in 0..255, got " + std::to_string(value));
    }
    constexpr int value() const { return value_; }

    friend constexpr bool operator==(RuleNumber, RuleNumber) = default;

private:
    std::uint8_t value_ = 136;
};

inline constexpr RuleNumber kRule136{136};
inline constexpr RuleNumber kRule172{172};

/// Neighbor bits seen by a receiving cell, named after their positions in its
/// own frame: x1 is straight ahead, x2 the second analysed cell, x4 the other side.
struct RuleInputs {
    bool x4 = false;
    bool x1 = false;
    bool x2 = false;

    friend constexpr bool operator==(RuleInputs, RuleInputs) = default;
};

/// Bit (4*x4 + 2*x1 + x2) of the rule number.
constexpr bool rule_output(RuleNumber rule, bool x4, bool x1, bool x2) {
    const int idx = (x4 ? 4 : 0) | (x1 ? 2 : 0) | (x2 ? 1 : 0);
    return ((rule.value() >> idx) & 1) != 0;
}

constexpr bool rule_output(RuleNumber rule, RuleInputs in) { return rule_output(rule, in.x4, in.x1, in.x2); }

/// Re-frames a receiving cell's four neighbors (indexed by absolute square
/// direction) for a robot arriving along `incoming_motion`: x1 is the cell
/// straight on, x2 the side analysed second, x4 the opposite side.
constexpr RuleInputs receiving_inputs(Direction incoming_motion, const std::array<bool, 4>& neighbors,
                                      bool second_is_clockwise) {
    constexpr auto t = Tessellation::Square;
    const Direction second = rotate_cw(incoming_motion, t, second_is_clockwise ? 1 : -1);
    const Direction other = opposite(second, t);
    return {neighbors[other.index], neighbors[incoming_motion.index], neighbors[second.index]};
}

/// Next state of an inactive cell that receives an active signal. false ("0")
/// means the cell accepts and becomes the robot's next active cell.
constexpr bool inactive_next_state(Direction incoming_motion, const std::array<bool, 4>& neighbors,
                                   bool second_is_clockwise, RuleNumber rule) {
    return rule_output(rule, receiving_inputs(incoming_motion, neighbors, second_is_clockwise));
}

}  // namespace acnav
