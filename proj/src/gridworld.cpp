#include "feedgame/gridworld.hpp"

#include <stdexcept>
#include <string>

namespace feedgame {

void WorldConfig::validate() const {
    if (world_size < 2)
        throw std::invalid_argument("world_size must be at least 2 (object needs a non-mouth cell)");
    if (eye_size < 1 || eye_size % 2 == 0)
        throw std::invalid_argument("eye_size must be odd and positive");
    if (eye_size > world_size)
        throw std::invalid_argument("eye_size must not exceed world_size");
    if (mouth.x < 0 || mouth.x >= world_size || mouth.y < 0 || mouth.y >= world_size)
        throw std::invalid_argument("mouth position out of bounds");
}

World::World(const WorldConfig& cfg, std::uint64_t seed) : cfg_(cfg), rng_(seed, kWorldRngStream) {
    cfg_.validate();
    // Placement draw order is part of the determinism contract:
    // object, then hand, then fovea.
    object_ = random_cell_excluding_mouth();
    hand_ = random_cell();
    fovea_ = random_cell();
}

int World::clamp_coord(int v) const {
    if (v < 0) return 0;
    if (v >= cfg_.world_size) return cfg_.world_size - 1;
    return v;
}

Position World::random_cell() {
    const auto n = static_cast<std::uint32_t>(cfg_.world_size * cfg_.world_size);
    const std::uint32_t r = rng_.below(n);
    return Position{static_cast<int>(r % static_cast<std::uint32_t>(cfg_.world_size)),
                    static_cast<int>(r / static_cast<std::uint32_t>(cfg_.world_size))};
}

Position World::random_cell_excluding_mouth() {
    const auto n = static_cast<std::uint32_t>(cfg_.world_size * cfg_.world_size - 1);
    std::uint32_t r = rng_.below(n);
    const auto mouth_index =
        static_cast<std::uint32_t>(cfg_.mouth.y * cfg_.world_size + cfg_.mouth.x);
    if (r >= mouth_index) ++r;  // skip the mouth cell in row-major order
    return Position{static_cast<int>(r % static_cast<std::uint32_t>(cfg_.world_size)),
                    static_cast<int>(r / static_cast<std::uint32_t>(cfg_.world_size))};
}

World::StepOutcome World::step(const Actuation& act) {
    StepOutcome out;

    const Position old_fovea = fovea_;
    const Position old_hand = hand_;
    fovea_.x = clamp_coord(fovea_.x + act.ex);
    fovea_.y = clamp_coord(fovea_.y + act.ey);
    hand_.x = clamp_coord(hand_.x + act.hx);
    hand_.y = clamp_coord(hand_.y + act.hy);
    out.effective = EffectiveDisplacement{fovea_.x - old_fovea.x, fovea_.y - old_fovea.y,
                                          hand_.x - old_hand.x, hand_.y - old_hand.y};

    if (holding_) object_ = hand_;

    if (!holding_ && hand_ == object_) holding_ = true;

    if (holding_ && hand_ == cfg_.mouth) {
        out.game_completed = true;
        holding_ = false;
        object_ = random_cell_excluding_mouth();
    }
    return out;
}

BitVec World::sense() const {
    BitVec bits(static_cast<std::size_t>(cfg_.sensing_bits()));
    const int half = cfg_.eye_size / 2;
    for (int row = 0; row < cfg_.eye_size; ++row) {
        for (int col = 0; col < cfg_.eye_size; ++col) {
            const Position cell{fovea_.x + col - half, fovea_.y + row - half};
            if (cell.x < 0 || cell.x >= cfg_.world_size || cell.y < 0 || cell.y >= cfg_.world_size)
                continue;
            const int c = row * cfg_.eye_size + col;
            if (cell == object_) bits.set(static_cast<std::size_t>(3 * c));
            if (cell == cfg_.mouth) bits.set(static_cast<std::size_t>(3 * c + 1));
            if (cell == hand_) bits.set(static_cast<std::size_t>(3 * c + 2));
        }
    }
    const auto eye_bits = static_cast<std::size_t>(3 * cfg_.eye_size * cfg_.eye_size);
    if (hand_ == object_) bits.set(eye_bits);
    if (cfg_.mouth == object_) bits.set(eye_bits + 1);
    return bits;
}

BitVec World::motivation() const {
    BitVec bits(5);
    if (fovea_ == object_) bits.set(0);
    if (fovea_ == cfg_.mouth) bits.set(1);
    if (fovea_ == hand_) bits.set(2);
    if (hand_ == object_) bits.set(3);
    if (cfg_.mouth == object_) bits.set(4);
    return bits;
}

void World::place_for_test(Position fovea, Position hand, Position object, bool holding) {
    auto check = [this](Position p, const char* what) {
        if (p.x < 0 || p.x >= cfg_.world_size || p.y < 0 || p.y >= cfg_.world_size)
            throw std::invalid_argument(std::string(what) + " out of bounds");
    };
    check(fovea, "fovea");
    check(hand, "hand");
    check(object, "object");
    if (holding && !(hand == object))
        throw std::invalid_argument("holding requires object at hand");
    fovea_ = fovea;
    hand_ = hand;
    object_ = object;
    holding_ = holding;
}

}  // namespace feedgame
