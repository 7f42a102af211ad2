#pragma once
// Control unit of a single robot: a six-state machine over the g0..g7 input
// vector producing the q0..q3 output vector.
//
// Transitions are a prioritised guard list. The first matching guard for the
// current state wins. A left steer request is g1 = 1. A right steer request is
// a steer pulse g0 = 1 with g1 = 0 while moving. g0 alone starts the robot from
// Calm or Stopped.

#include <array>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace acnav::fsm {

enum class ControlState : std::uint8_t {
    Calm = 0,             // S0
    Forward = 1,          // S1
    TurnLeftForward = 2,  // S2
    TurnRightForward = 3, // S3
    Reverse = 4,          // S4
    Stopped = 5,          // S5
};

inline constexpr int kStateCount = 6;

inline constexpr std::array<ControlState, kStateCount> kAllStates{
    ControlState::Calm,    ControlState::Forward, ControlState::TurnLeftForward, ControlState::TurnRightForward,
    ControlState::Reverse, ControlState::Stopped};

inline std::string state_name(ControlState s) { return "S" + std::to_string(static_cast<int>(s)); }

inline constexpr std::array<std::string_view, kStateCount> kStateLabels{
    "Calm", "Forward", "TurnLeftForward", "TurnRightForward", "Reverse", "Stopped"};

struct SensorFrame {
    bool g0 = false;  // start / forward command
    bool g1 = false;  // steer left (1) / right (0)
    bool g2 = false;  // obstacle right
    bool g3 = false;  // obstacle left
    bool g4 = false;  // obstacle front
    bool g5 = false;  // obstacle behind
    bool g6 = false;  // stop
    bool g7 = false;  // reverse

    /// Packs g7..g0 into one byte, g0 in the low bit.
    constexpr std::uint8_t to_byte() const {
        return static_cast<std::uint8_t>(g0 | g1 << 1 | g2 << 2 | g3 << 3 | g4 << 4 | g5 << 5 | g6 << 6 | g7 << 7);
    }
    static constexpr SensorFrame from_byte(std::uint8_t b) {
        return {(b & 1) != 0, (b & 2) != 0, (b & 4) != 0, (b & 8) != 0, (b & 16) != 0, (b & 32) != 0, (b & 64) != 0,
                (b & 128) != 0};
    }

    friend constexpr bool operator==(SensorFrame, SensorFrame) = default;
};

struct ControlOutputs {
    bool q0 = false;  // hold calm
    bool q1 = false;  // forward drive
    bool q2 = false;  // left steer
    bool q3 = false;  // right steer

    /// q3..q0 with q0 in the low bit.
    constexpr std::uint8_t to_nibble() const { return static_cast<std::uint8_t>(q0 | q1 << 1 | q2 << 2 | q3 << 3); }

    friend constexpr bool operator==(ControlOutputs, ControlOutputs) = default;
};

/// Output code of each state, written q0 q1 q2 q3:
/// S0 1000, S1 0100, S2 0110, S3 0101, S4 0011, S5 0000.
constexpr ControlOutputs outputs_of(ControlState s) {
    switch (s) {
        case ControlState::Calm: return {true, false, false, false};
        case ControlState::Forward: return {false, true, false, false};
        case ControlState::TurnLeftForward: return {false, true, true, false};
        case ControlState::TurnRightForward: return {false, true, false, true};
        case ControlState::Reverse: return {false, false, true, true};
        case ControlState::Stopped: return {false, false, false, false};
    }
    return {};
}

struct Step {
    ControlState state = ControlState::Calm;
    ControlOutputs outputs = outputs_of(ControlState::Calm);

    friend constexpr bool operator==(Step, Step) = default;
};

constexpr Step init() { return {ControlState::Calm, outputs_of(ControlState::Calm)}; }

/// One guarded edge of the automaton.
struct Guard {
    std::uint8_t from_mask;  // bit i set: applies in state Si
    bool (*test)(SensorFrame);
    ControlState to;
    std::string_view label;
};

namespace detail {
constexpr std::uint8_t bit(ControlState s) { return static_cast<std::uint8_t>(1u << static_cast<int>(s)); }
inline constexpr std::uint8_t kAny = 0x3f;
inline constexpr std::uint8_t kMoving = bit(ControlState::Forward) | bit(ControlState::TurnLeftForward) |
                                        bit(ControlState::TurnRightForward) | bit(ControlState::Reverse);
}  // namespace detail

// Obstacle avoidance when the front is blocked tries left, right, reverse, stop.
inline constexpr Guard kGuards[] = {
    {detail::kAny, [](SensorFrame f) { return f.g6; }, ControlState::Stopped, "g6"},
    {detail::kAny, [](SensorFrame f) { return f.g7; }, ControlState::Reverse, "g7"},
    {detail::bit(ControlState::Calm), [](SensorFrame f) { return f.g0; }, ControlState::Forward, "g0"},
    {detail::bit(ControlState::Calm), [](SensorFrame) { return true; }, ControlState::Calm, "else"},
    {detail::bit(ControlState::Stopped), [](SensorFrame f) { return f.g0; }, ControlState::Forward, "g0"},
    {detail::bit(ControlState::Stopped), [](SensorFrame) { return true; }, ControlState::Stopped, "else"},
    {detail::kMoving, [](SensorFrame f) { return f.g1 && !f.g3; }, ControlState::TurnLeftForward, "g1 & !g3"},
    {detail::kMoving, [](SensorFrame f) { return f.g0 && !f.g1 && !f.g2; }, ControlState::TurnRightForward,
     "g0 & !g1 & !g2"},
    {detail::kMoving, [](SensorFrame f) { return f.g4 && !f.g3; }, ControlState::TurnLeftForward, "g4 & !g3"},
    {detail::kMoving, [](SensorFrame f) { return f.g4 && !f.g2; }, ControlState::TurnRightForward, "g4 & !g2"},
    {detail::kMoving, [](SensorFrame f) { return f.g4 && !f.g5; }, ControlState::Reverse, "g4 & !g5"},
    {detail::kMoving, [](SensorFrame f) { return f.g4; }, ControlState::Stopped, "g4"},
    {detail::kMoving, [](SensorFrame) { return true; }, ControlState::Forward, "else"},
};

inline Step transition(ControlState state, SensorFrame frame) {
    const auto mask = detail::bit(state);
    for (const auto& g : kGuards) {
        if ((g.from_mask & mask) && g.test(frame)) return {g.to, outputs_of(g.to)};
    }
    return {state, outputs_of(state)};
}

/// Recovers the state from its output code.
inline ControlState state_from_outputs(ControlOutputs out) {
    for (auto s : kAllStates)
        if (outputs_of(s) == out) return s;
    throw std::invalid_argument("output code does not belong to any state");
}

struct TruthRow {
    ControlState state;
    SensorFrame frame;
    ControlState next;
    ControlOutputs outputs;
};

/// All 6 x 256 (state, frame) pairs, states outermost, frames in byte order.
inline std::vector<TruthRow> truth_table() {
    std::vector<TruthRow> rows;
    rows.reserve(kStateCount * 256);
    for (auto s : kAllStates) {
        for (int b = 0; b < 256; ++b) {
            const auto frame = SensorFrame::from_byte(static_cast<std::uint8_t>(b));
            const auto next = transition(s, frame);
            rows.push_back({s, frame, next.state, next.outputs});
        }
    }
    return rows;
}

inline std::string bits_string(unsigned value, int width) {
    std::string out(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; ++i)
        if (value & (1u << i)) out[static_cast<std::size_t>(width - 1 - i)] = '1';
    return out;
}

/// CSV with header `state,g7..g0,next_state,q3..q0`; byte and nibble columns are
/// binary strings, most significant bit first.
inline std::string truth_table_csv() {
    std::ostringstream os;
    os << "# acnav control unit truth table v1\n";
    os << "state,g7g6g5g4g3g2g1g0,next_state,q3q2q1q0\n";
    for (const auto& r : truth_table()) {
        os << state_name(r.state) << ',' << bits_string(r.frame.to_byte(), 8) << ',' << state_name(r.next) << ','
           << bits_string(r.outputs.to_nibble(), 4) << '\n';
    }
    return os.str();
}

/// Graphviz description of the automaton. Guards on edges leaving a state are
/// listed in evaluation order.
inline std::string export_state_graph() {
    std::ostringstream os;
    os << "// acnav control unit state graph v1\n";
    os << "// outgoing guards are evaluated top-down; output code written q0q1q2q3\n";
    os << "digraph control_unit {\n";
    os << "  rankdir=LR;\n";
    for (auto s : kAllStates) {
        const auto o = outputs_of(s);
        os << "  " << state_name(s) << " [label=\"" << state_name(s) << " " << kStateLabels[static_cast<int>(s)]
           << "\\n" << o.q0 << o.q1 << o.q2 << o.q3 << "\"];\n";
    }
    for (auto s : kAllStates) {
        for (const auto& g : kGuards) {
            if (!(g.from_mask & detail::bit(s))) continue;
            os << "  " << state_name(s) << " -> " << state_name(g.to) << " [label=\"" << g.label << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace acnav::fsm
