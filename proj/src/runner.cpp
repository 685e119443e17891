#include "feedgame/runner.hpp"

#include "feedgame/agent.hpp"

namespace feedgame {

RunResult run(const RunConfig& config) {
    config.validate();

    World world(config.world_config(), config.seed);
    Pcg32 agent_rng(config.seed, kAgentRngStream);
    AgentState agent;
    RunResult result{config, {}, ClosurePipeline(config), {}};
    result.records.reserve(static_cast<std::size_t>(config.iterations));

    for (std::int64_t t = 1; t <= config.iterations; ++t) {
        // Focus reacts to the closure code measured at the end of the
        // previous iteration; before any code exists it takes the
        // policy's resting value.
        const double focus = result.pipeline.has_code()
                                 ? focus_value(config.policy, result.pipeline.last_code())
                                 : config.policy.initial_value();
        const ActuationChoice choice = select_actuation(agent, focus, agent_rng);
        const World::StepOutcome outcome = world.step(choice.act);
        const BitVec sensing = world.sense();
        const BitVec motivation = world.motivation();

        LogRecord record;
        record.iteration = t;
        record.commanded = choice.act;
        record.effective = outcome.effective;
        record.chose_undo = choice.chose_undo;
        record.sensing = sensing;
        record.motivation = motivation;
        record.focus = focus;
        record.game_completed = outcome.game_completed;
        record.events = result.pipeline.advance(t, sensing, motivation, outcome.effective);
        record.code = result.pipeline.last_code();
        result.records.push_back(std::move(record));

        agent.last_effective = outcome.effective;
    }

    result.metrics = result.pipeline.finalize(config.iterations);
    return result;
}

}  // namespace feedgame
