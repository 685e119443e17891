#include "feedgame/representation.hpp"

#include <algorithm>
#include <stdexcept>

namespace feedgame {

namespace {

std::uint64_t arc_key(int source, int target) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(source)) << 32) |
           static_cast<std::uint32_t>(target);
}

int parse_int(const std::string& s, std::size_t begin, std::size_t end) {
    if (begin >= end) throw std::invalid_argument("empty number in event token");
    int v = 0;
    for (std::size_t i = begin; i < end; ++i) {
        const char c = s[i];
        if (c < '0' || c > '9') throw std::invalid_argument("bad number in event token: " + s);
        v = v * 10 + (c - '0');
    }
    return v;
}

}  // namespace

std::string event_token(const RepEvent& e) {
    switch (e.kind) {
        case RepEventKind::NodeFromMotivation: return "m1:n" + std::to_string(e.node);
        case RepEventKind::PotentialNodeCreated: return "m2:n" + std::to_string(e.node);
        case RepEventKind::ArcCreatedWithNode:
            return "r1:a" + std::to_string(e.source) + "-" + std::to_string(e.target);
        case RepEventKind::ArcCreatedBetweenExisting:
            return "r2:a" + std::to_string(e.source) + "-" + std::to_string(e.target);
        case RepEventKind::NodeBecameAffective: return "np:n" + std::to_string(e.node);
        case RepEventKind::ArcBecameFrequent:
            return "af:a" + std::to_string(e.source) + "-" + std::to_string(e.target);
        case RepEventKind::ArcBecameCodifiable:
            return "ac:a" + std::to_string(e.source) + "-" + std::to_string(e.target);
        case RepEventKind::ArcBackToFrequent:
            return "ar:a" + std::to_string(e.source) + "-" + std::to_string(e.target);
        case RepEventKind::FactFormed:
            return "fact+:a" + std::to_string(e.source) + "-" + std::to_string(e.target);
        case RepEventKind::FactDissolved:
            return "fact-:a" + std::to_string(e.source) + "-" + std::to_string(e.target);
    }
    throw std::logic_error("unknown event kind");
}

RepEvent event_from_token(const std::string& token) {
    const std::size_t colon = token.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("bad event token: " + token);
    const std::string tag = token.substr(0, colon);
    const std::string body = token.substr(colon + 1);
    RepEvent e{RepEventKind::FactFormed};
    if (tag == "m1" || tag == "m2" || tag == "np") {
        if (body.empty() || body[0] != 'n') throw std::invalid_argument("bad event token: " + token);
        e.kind = tag == "m1"   ? RepEventKind::NodeFromMotivation
                 : tag == "m2" ? RepEventKind::PotentialNodeCreated
                               : RepEventKind::NodeBecameAffective;
        e.node = parse_int(body, 1, body.size());
        return e;
    }
    if (tag == "r1" || tag == "r2" || tag == "af" || tag == "ac" || tag == "ar" ||
        tag == "fact+" || tag == "fact-") {
        if (body.empty() || body[0] != 'a') throw std::invalid_argument("bad event token: " + token);
        const std::size_t dash = body.find('-', 1);
        if (dash == std::string::npos) throw std::invalid_argument("bad event token: " + token);
        e.kind = tag == "r1"      ? RepEventKind::ArcCreatedWithNode
                 : tag == "r2"    ? RepEventKind::ArcCreatedBetweenExisting
                 : tag == "af"    ? RepEventKind::ArcBecameFrequent
                 : tag == "ac"    ? RepEventKind::ArcBecameCodifiable
                 : tag == "ar"    ? RepEventKind::ArcBackToFrequent
                 : tag == "fact+" ? RepEventKind::FactFormed
                                  : RepEventKind::FactDissolved;
        e.source = parse_int(body, 1, dash);
        e.target = parse_int(body, dash + 1, body.size());
        return e;
    }
    throw std::invalid_argument("unknown event tag: " + token);
}

std::uint8_t MotivationLedger::pack(const BitVec& motivation) {
    std::uint8_t v = 0;
    for (std::size_t i = 0; i < 5; ++i)
        if (motivation.test(i)) v |= static_cast<std::uint8_t>(1u << i);
    return v;
}

std::string MotivationLedger::bits_string(std::uint8_t packed) {
    std::string s(5, '0');
    for (std::size_t i = 0; i < 5; ++i)
        if (packed & (1u << i)) s[i] = '1';
    return s;
}

void MotivationLedger::record(const BitVec& sensing, const BitVec& motivation) {
    if (motivation.size() != 5) throw std::invalid_argument("motivation vector must have 5 bits");
    const std::uint8_t key = pack(motivation);
    if (key == 0 && !include_zero_) return;
    auto [it, inserted] = entries_.try_emplace(key);
    Entry& entry = it->second;
    if (inserted)
        entry.mask = sensing;
    else
        entry.mask.and_with(sensing);
    ++entry.count;
}

std::optional<int> RepresentationNetwork::match_node(const BitVec& sensing) const {
    if (auto it = exact_index_.find(sensing); it != exact_index_.end()) return it->second;
    std::optional<int> best;
    std::size_t best_bits = 0;
    for (int id : mask_node_ids_) {
        const Node& node = nodes_[static_cast<std::size_t>(id)];
        if (!node.bits.is_subset_of(sensing)) continue;
        const std::size_t nbits = node.bits.count();
        if (!best || nbits > best_bits) {
            best = id;
            best_bits = nbits;
        }
        // equal bit counts keep the earlier (lower) id
    }
    return best;
}

const Arc* RepresentationNetwork::find_arc(int source, int target) const {
    auto it = arc_index_.find(arc_key(source, target));
    if (it == arc_index_.end()) return nullptr;
    return &arcs_[static_cast<std::size_t>(it->second)];
}

int RepresentationNetwork::create_node(PatternKind kind, BitVec bits, NodeStatus status,
                                       std::int64_t hit_count, std::int64_t iteration,
                                       std::uint8_t motivation) {
    const int id = static_cast<int>(nodes_.size());
    Node node;
    node.id = id;
    node.kind = kind;
    node.bits = std::move(bits);
    node.status = status;
    node.hit_count = hit_count;
    node.created_at = iteration;
    node.motivation = motivation;
    if (kind == PatternKind::Exact)
        exact_index_.emplace(node.bits, id);
    else
        mask_node_ids_.push_back(id);
    nodes_.push_back(std::move(node));
    out_arcs_.emplace_back();
    in_arcs_.emplace_back();
    return id;
}

int RepresentationNetwork::create_arc(int source, int target, std::int64_t iteration) {
    const int index = static_cast<int>(arcs_.size());
    Arc arc;
    arc.source = source;
    arc.target = target;
    arc.created_at = iteration;
    arcs_.push_back(arc);
    arc_index_.emplace(arc_key(source, target), index);
    out_arcs_[static_cast<std::size_t>(source)].push_back(index);
    in_arcs_[static_cast<std::size_t>(target)].push_back(index);
    return index;
}

std::vector<int> RepresentationNetwork::extract_affective(MotivationLedger& ledger,
                                                          std::int64_t iteration,
                                                          std::vector<RepEvent>& events) {
    std::vector<int> created;
    for (const auto& [key, entry] : ledger.entries()) {
        if (entry.extracted || entry.count < 1 || entry.mask.none()) continue;
        bool duplicate = false;
        for (int id : mask_node_ids_) {
            if (nodes_[static_cast<std::size_t>(id)].bits == entry.mask) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) {
            const int id =
                create_node(PatternKind::Mask, entry.mask, NodeStatus::Affective, 0, iteration, key);
            created.push_back(id);
            events.push_back(RepEvent{RepEventKind::NodeFromMotivation, id, -1, -1});
        }
        ledger.mark_extracted(key);
    }
    return created;
}

void RepresentationNetwork::bump_hit(int node_id) {
    ++nodes_[static_cast<std::size_t>(node_id)].hit_count;
}

bool RepresentationNetwork::promote_node_if_due(int node_id, std::vector<RepEvent>& events) {
    Node& node = nodes_[static_cast<std::size_t>(node_id)];
    if (node.status != NodeStatus::Potential) return false;
    if (node.hit_count <= thresholds_.node_hits) return false;
    node.status = NodeStatus::Affective;
    events.push_back(RepEvent{RepEventKind::NodeBecameAffective, node_id, -1, -1});
    return true;
}

void RepresentationNetwork::update_arc_status(int arc_index, std::vector<RepEvent>& events) {
    Arc& arc = arcs_[static_cast<std::size_t>(arc_index)];
    if (arc.status == ArcStatus::NotFrequent && arc.frequency > thresholds_.arc_frequency) {
        arc.status = ArcStatus::Frequent;
        events.push_back(RepEvent{RepEventKind::ArcBecameFrequent, -1, arc.source, arc.target});
    }
    if (arc.status == ArcStatus::NotFrequent) return;
    const auto probs = arc_distribution(arc);
    bool codifiable = false;
    for (double p : probs) codifiable = codifiable || p > thresholds_.probability;
    if (codifiable && arc.status == ArcStatus::Frequent) {
        arc.status = ArcStatus::Codifiable;
        events.push_back(RepEvent{RepEventKind::ArcBecameCodifiable, -1, arc.source, arc.target});
    } else if (!codifiable && arc.status == ArcStatus::Codifiable) {
        arc.status = ArcStatus::Frequent;
        events.push_back(RepEvent{RepEventKind::ArcBackToFrequent, -1, arc.source, arc.target});
    }
}

void RepresentationNetwork::update_fact_status(const std::vector<int>& candidate_arcs,
                                               std::vector<RepEvent>& events) {
    for (int index : candidate_arcs) {
        Arc& arc = arcs_[static_cast<std::size_t>(index)];
        const bool now = is_fact(arc);
        if (now == arc.fact_active) continue;
        arc.fact_active = now;
        events.push_back(RepEvent{now ? RepEventKind::FactFormed : RepEventKind::FactDissolved, -1,
                                  arc.source, arc.target});
    }
}

void RepresentationNetwork::incorporate(const BitVec& prev_sensing, const BitVec& curr_sensing,
                                        const Actuation& act, std::int64_t iteration,
                                        std::vector<RepEvent>& events) {
    const std::optional<int> curr = match_node(curr_sensing);
    if (!curr) return;  // nothing recognizable now: no structural change

    std::optional<int> prev = match_node(prev_sensing);
    int arc_index;
    if (!prev) {
        // Mechanism 2: the state one step before a recognized state enters
        // the representation as a potential affective state (arc rule 1).
        const int node_id = create_node(PatternKind::Exact, prev_sensing, NodeStatus::Potential, 1,
                                        iteration, 0xff);
        events.push_back(RepEvent{RepEventKind::PotentialNodeCreated, node_id, -1, -1});
        arc_index = create_arc(node_id, *curr, iteration);
        events.push_back(RepEvent{RepEventKind::ArcCreatedWithNode, -1, node_id, *curr});
        prev = node_id;
        bump_hit(*curr);
    } else {
        // Arc rule 2: both sensing states already have nodes.
        auto it = arc_index_.find(arc_key(*prev, *curr));
        if (it == arc_index_.end()) {
            arc_index = create_arc(*prev, *curr, iteration);
            events.push_back(RepEvent{RepEventKind::ArcCreatedBetweenExisting, -1, *prev, *curr});
        } else {
            arc_index = it->second;
        }
        bump_hit(*prev);
        if (*curr != *prev) bump_hit(*curr);
    }

    Arc& arc = arcs_[static_cast<std::size_t>(arc_index)];
    ++arc.frequency;
    const int values[4] = {act.ex, act.ey, act.hx, act.hy};
    for (int a = 0; a < 4; ++a)
        ++arc.counts[static_cast<std::size_t>(a)][static_cast<std::size_t>(values[a] + 1)];

    std::vector<int> promoted_nodes;
    if (promote_node_if_due(*prev, events)) promoted_nodes.push_back(*prev);
    if (*curr != *prev && promote_node_if_due(*curr, events)) promoted_nodes.push_back(*curr);
    update_arc_status(arc_index, events);

    std::vector<int> candidates{arc_index};
    for (int node_id : promoted_nodes) {
        for (int i : out_arcs_[static_cast<std::size_t>(node_id)]) candidates.push_back(i);
        for (int i : in_arcs_[static_cast<std::size_t>(node_id)]) candidates.push_back(i);
    }
    std::sort(candidates.begin() + 1, candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    update_fact_status(candidates, events);
}

bool RepresentationNetwork::is_fact(const Arc& arc) const {
    if (arc.status != ArcStatus::Codifiable) return false;
    return nodes_[static_cast<std::size_t>(arc.source)].status == NodeStatus::Affective &&
           nodes_[static_cast<std::size_t>(arc.target)].status == NodeStatus::Affective;
}

std::array<double, 12> RepresentationNetwork::arc_distribution(const Arc& arc) {
    if (arc.frequency == 0) throw std::domain_error("distribution of a never-crossed arc");
    std::array<double, 12> probs{};
    for (int a = 0; a < 4; ++a)
        for (int v = 0; v < 3; ++v)
            probs[static_cast<std::size_t>(a * 3 + v)] =
                static_cast<double>(arc.counts[static_cast<std::size_t>(a)][static_cast<std::size_t>(v)]) /
                static_cast<double>(arc.frequency);
    return probs;
}

RepresentationNetwork RepresentationNetwork::from_parts(Thresholds thresholds,
                                                        std::vector<Node> nodes,
                                                        std::vector<Arc> arcs) {
    RepresentationNetwork net(thresholds);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].id != static_cast<int>(i))
            throw std::invalid_argument("node ids must be contiguous from 0");
    }
    net.nodes_ = std::move(nodes);
    net.out_arcs_.assign(net.nodes_.size(), {});
    net.in_arcs_.assign(net.nodes_.size(), {});
    for (const Node& node : net.nodes_) {
        if (node.kind == PatternKind::Exact)
            net.exact_index_.emplace(node.bits, node.id);
        else
            net.mask_node_ids_.push_back(node.id);
    }
    net.arcs_ = std::move(arcs);
    for (std::size_t i = 0; i < net.arcs_.size(); ++i) {
        const Arc& arc = net.arcs_[i];
        if (arc.source < 0 || arc.source >= static_cast<int>(net.nodes_.size()) ||
            arc.target < 0 || arc.target >= static_cast<int>(net.nodes_.size()))
            throw std::invalid_argument("arc endpoint out of range");
        if (!net.arc_index_.emplace(arc_key(arc.source, arc.target), static_cast<int>(i)).second)
            throw std::invalid_argument("duplicate arc for ordered node pair");
        net.out_arcs_[static_cast<std::size_t>(arc.source)].push_back(static_cast<int>(i));
        net.in_arcs_[static_cast<std::size_t>(arc.target)].push_back(static_cast<int>(i));
        net.arcs_[i].fact_active = net.is_fact(arc);
    }
    return net;
}

}  // namespace feedgame
