#ifndef STQA_STQA_HPP_
#define STQA_STQA_HPP_

#include "stqa/coldstart_filter.hpp"
#include "stqa/config.hpp"
#include "stqa/error.hpp"
#include "stqa/grpo_math.hpp"
#include "stqa/prompts.hpp"
#include "stqa/qa_generator.hpp"
#include "stqa/relation_solver.hpp"
#include "stqa/response_parser.hpp"
#include "stqa/reward_engine.hpp"
#include "stqa/rng.hpp"
#include "stqa/rollout_sim.hpp"
#include "stqa/scene_io.hpp"
#include "stqa/scene_model.hpp"
#include "stqa/synth_oracle.hpp"

#endif  // STQA_STQA_HPP_
