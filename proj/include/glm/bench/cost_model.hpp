#pragma once

namespace glm {

// Mean tokens per invocation: t_graphcot for the single-agent baseline,
// t_classify / t_action / t_thought for the three agents. k1 is baseline
// steps per query, k2 the reasoning rounds. Assumes t_classify << t_graphcot
// and t_action + t_thought ~= t_graphcot; all inputs positive.
struct CostModelInput {
  double k1 = 8;
  double k2 = 4;
  double t_graphcot = 3000;
  double t_classify = 120;
  double t_action = 1200;
  double t_thought = 1800;
};

struct CostModelOutput {
  double baseline_tokens;           // 2 * k1 * T_G
  double glm_det_tokens;            // T_c + T_a
  double glm_nondet_tokens;         // T_c + k2 * T_a + (k2 + 1) * T_t
  double glm_nondet_tokens_approx;  // (k2 + 1) * T_G
  double det_reduction;             // (2 * k1 - 1) * T_G
  double nondet_reduction;          // (2 * k1 - k2 - 1) * T_G
};

inline CostModelOutput cost_model(const CostModelInput& in) {
  CostModelOutput out;
  out.baseline_tokens = 2.0 * in.k1 * in.t_graphcot;
  out.glm_det_tokens = in.t_classify + in.t_action;
  out.glm_nondet_tokens = in.t_classify + in.k2 * in.t_action + (in.k2 + 1.0) * in.t_thought;
  out.glm_nondet_tokens_approx = (in.k2 + 1.0) * in.t_graphcot;
  out.det_reduction = (2.0 * in.k1 - 1.0) * in.t_graphcot;
  out.nondet_reduction = (2.0 * in.k1 - in.k2 - 1.0) * in.t_graphcot;
  return out;
}

}  // namespace glm
