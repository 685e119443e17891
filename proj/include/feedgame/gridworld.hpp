#pragma once

#include <compare>
#include <cstdint>

#include "feedgame/bitvec.hpp"
#include "feedgame/rng.hpp"

namespace feedgame {

struct Position {
    int x = 0;
    int y = 0;
    friend auto operator<=>(const Position&, const Position&) = default;
};

// One commanded move: per-actuator value in {-1, 0, 1}.
struct Actuation {
    int ex = 0;
    int ey = 0;
    int hx = 0;
    int hy = 0;
    friend bool operator==(const Actuation&, const Actuation&) = default;
};

// Post-clamp motion actually applied by a step. Kept distinct from
// Actuation so the undo behaviour can negate what happened rather than
// what was asked for.
struct EffectiveDisplacement {
    int ex = 0;
    int ey = 0;
    int hx = 0;
    int hy = 0;
    friend bool operator==(const EffectiveDisplacement&, const EffectiveDisplacement&) = default;

    Actuation negated() const { return Actuation{-ex, -ey, -hx, -hy}; }
};

struct WorldConfig {
    int world_size = 7;      // square grid, coordinates in [0, world_size)
    int eye_size = 5;        // odd, <= world_size
    Position mouth{3, 6};    // fixed for the whole run

    int sensing_bits() const { return 3 * eye_size * eye_size + 2; }
    void validate() const;   // throws std::invalid_argument
};

// The feed game. One object, one hand, one eye window with a central
// fovea, one immobile mouth. The agent-facing surface is sense() and
// motivation() only; position accessors exist for tests and tooling.
class World {
public:
    World(const WorldConfig& cfg, std::uint64_t seed);

    struct StepOutcome {
        EffectiveDisplacement effective;
        bool game_completed = false;
    };

    // Moves eye and hand (clamped per axis), then evaluates attachment,
    // then eating. An eaten object respawns immediately on a random cell
    // other than the mouth and cannot re-attach until the next step.
    StepOutcome step(const Actuation& act);

    // 3*E*E eye bits (cell-major R,G,B; R=object, G=mouth, B=hand; cells
    // overhanging the grid sense zero) + hand-on-object + mouth-on-object.
    BitVec sense() const;

    // 5 bits: fovea R, G, B, hand-on-object, mouth-on-object.
    BitVec motivation() const;

    const WorldConfig& config() const { return cfg_; }
    Position fovea() const { return fovea_; }
    Position hand() const { return hand_; }
    Position mouth() const { return cfg_.mouth; }
    Position object() const { return object_; }
    bool holding() const { return holding_; }

    // Test hook: places entities directly (invariants still enforced).
    void place_for_test(Position fovea, Position hand, Position object, bool holding);

private:
    int clamp_coord(int v) const;
    Position random_cell();
    Position random_cell_excluding_mouth();

    WorldConfig cfg_;
    Pcg32 rng_;
    Position object_;
    Position hand_;
    Position fovea_;
    bool holding_ = false;
};

}  // namespace feedgame
