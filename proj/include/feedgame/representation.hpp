#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "feedgame/bitvec.hpp"
#include "feedgame/gridworld.hpp"

namespace feedgame {

enum class NodeStatus { Potential, Affective };
enum class PatternKind { Exact, Mask };
enum class ArcStatus { NotFrequent, Frequent, Codifiable };

// Table-1 digits.
inline int status_digit(NodeStatus s) { return s == NodeStatus::Potential ? 1 : 2; }
inline int status_digit(ArcStatus s) {
    switch (s) {
        case ArcStatus::NotFrequent: return 1;
        case ArcStatus::Frequent: return 2;
        case ArcStatus::Codifiable: return 3;
    }
    return 0;
}

struct Node {
    int id = -1;
    PatternKind kind = PatternKind::Exact;
    // Exact: the full sensing vector, matched by equality. Mask: the bits
    // that were always present with a motivation, matched by inclusion.
    BitVec bits;
    NodeStatus status = NodeStatus::Potential;
    std::int64_t hit_count = 0;
    std::int64_t created_at = 0;
    // Mask nodes remember the motivation they were extracted from
    // (packed 5-bit value); 0xff for exact nodes.
    std::uint8_t motivation = 0xff;
};

struct Arc {
    int source = -1;
    int target = -1;
    std::int64_t frequency = 0;
    // Occurrence counts per actuator (ex, ey, hx, hy) and per value
    // (-1, 0, 1); each actuator's counts sum to frequency.
    std::array<std::array<std::int64_t, 3>, 4> counts{};
    ArcStatus status = ArcStatus::NotFrequent;
    std::int64_t created_at = 0;
    // Whether the arc currently counts as a fact; tracked so the event
    // stream carries fact formation and dissolution exactly when the
    // state flips.
    bool fact_active = false;
};

struct Thresholds {
    std::int64_t node_hits = 8;      // potential -> affective when hit_count exceeds this
    std::int64_t arc_frequency = 8;  // not frequent -> frequent when frequency exceeds this
    double probability = 0.5;        // codifiable while any of the 12 p's exceeds this
};

// Audit events; every structural change cites the rule that fired.
enum class RepEventKind {
    NodeFromMotivation,       // mechanism 1: affective mask node extracted
    PotentialNodeCreated,     // mechanism 2: exact node for the t-1 sensing
    ArcCreatedWithNode,       // arc rule 1: arc born with a potential node
    ArcCreatedBetweenExisting,// arc rule 2: both endpoints already existed
    NodeBecameAffective,      // node promotion
    ArcBecameFrequent,        // arc promotion
    ArcBecameCodifiable,      // probability test passed on the current distribution
    ArcBackToFrequent,        // probability test no longer passes
    FactFormed,               // codifiable arc between affective nodes
    FactDissolved             // the arc stopped being codifiable
};

struct RepEvent {
    RepEventKind kind;
    int node = -1;    // NodeFromMotivation / PotentialNodeCreated / NodeBecameAffective
    int source = -1;  // arc events
    int target = -1;
    friend bool operator==(const RepEvent&, const RepEvent&) = default;
};

std::string event_token(const RepEvent& e);
RepEvent event_from_token(const std::string& token);  // throws std::invalid_argument

// Running record per experienced motivation value: occurrence count and
// the AND of every co-occurring sensing vector. The all-zero motivation
// is skipped unless include_zero is set; it fires on most iterations and
// its mask would converge to an empty, match-everything pattern.
class MotivationLedger {
public:
    explicit MotivationLedger(bool include_zero = false) : include_zero_(include_zero) {}

    struct Entry {
        std::int64_t count = 0;
        BitVec mask;
        bool extracted = false;
    };

    void record(const BitVec& sensing, const BitVec& motivation);

    const std::map<std::uint8_t, Entry>& entries() const { return entries_; }
    void mark_extracted(std::uint8_t key) { entries_.at(key).extracted = true; }

    static std::uint8_t pack(const BitVec& motivation);
    static std::string bits_string(std::uint8_t packed);  // e.g. "10110"

private:
    bool include_zero_;
    std::map<std::uint8_t, Entry> entries_;  // ordered: extraction order is deterministic
};

// The closure mechanism's directed graph: affective/potential nodes,
// status-bearing arcs, at most one arc per ordered node pair, self-loops
// allowed. Nodes, arcs and statuses only ever grow.
class RepresentationNetwork {
public:
    explicit RepresentationNetwork(Thresholds thresholds = {}) : thresholds_(thresholds) {}

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const Thresholds& thresholds() const { return thresholds_; }

    // Node whose pattern covers the sensing vector. Exact match wins over
    // any mask; among matching masks the one with the most bits wins,
    // ties to the lowest id. nullopt when nothing matches.
    std::optional<int> match_node(const BitVec& sensing) const;

    const Arc* find_arc(int source, int target) const;

    // Mechanism 1: for every unextracted motivation with a non-empty
    // mask, add an affective mask node (deduplicated on identical mask
    // bits) and mark the motivation extracted. Returns created node ids.
    std::vector<int> extract_affective(MotivationLedger& ledger, std::int64_t iteration,
                                       std::vector<RepEvent>& events);

    // Mechanism 2 plus both arc rules: relates the t-1 sensing to the
    // current one through the actuation that was performed, then applies
    // status updates to everything touched. Node and frequent promotions
    // latch; codifiability tracks the arc's current distribution, so the
    // digit can drop back from 3 to 2 as more crossings accumulate.
    void incorporate(const BitVec& prev_sensing, const BitVec& curr_sensing,
                     const Actuation& act, std::int64_t iteration,
                     std::vector<RepEvent>& events);

    bool is_fact(const Arc& arc) const;

    // The 12 probabilities {p(ex=-1),p(ex=0),p(ex=1)},{p(ey=...)},...
    // Throws std::domain_error on a never-crossed arc.
    static std::array<double, 12> arc_distribution(const Arc& arc);

    const std::vector<int>& arcs_out_of(int node) const { return out_arcs_[static_cast<std::size_t>(node)]; }
    const std::vector<int>& arcs_into(int node) const { return in_arcs_[static_cast<std::size_t>(node)]; }

    // Rebuilds a network from snapshot data (ids must be 0..n-1 in order).
    static RepresentationNetwork from_parts(Thresholds thresholds, std::vector<Node> nodes,
                                            std::vector<Arc> arcs);

private:
    int create_node(PatternKind kind, BitVec bits, NodeStatus status, std::int64_t hit_count,
                    std::int64_t iteration, std::uint8_t motivation);
    int create_arc(int source, int target, std::int64_t iteration);
    void bump_hit(int node_id);
    bool promote_node_if_due(int node_id, std::vector<RepEvent>& events);
    void update_arc_status(int arc_index, std::vector<RepEvent>& events);
    void update_fact_status(const std::vector<int>& candidate_arcs, std::vector<RepEvent>& events);

    Thresholds thresholds_;
    std::vector<Node> nodes_;
    std::vector<Arc> arcs_;
    std::unordered_map<BitVec, int, BitVecHash> exact_index_;
    std::vector<int> mask_node_ids_;
    std::unordered_map<std::uint64_t, int> arc_index_;  // (source<<32)|target -> arc index
    std::vector<std::vector<int>> out_arcs_;
    std::vector<std::vector<int>> in_arcs_;
};

}  // namespace feedgame
