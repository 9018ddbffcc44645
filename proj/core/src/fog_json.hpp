// Internal JSON helpers shared by the sequence sidecar and run-config
// serializers. Not installed with the public headers.
#pragma once

#include <json.hpp>

#include "defog/types.hpp"

namespace defog::detail {

using Json = nlohmann::ordered_json;

inline Json fog_params_to_json(const FogParams& p) {
  Json j;
  j["beta0"] = p.beta0;
  j["beta_sigma"] = p.beta_sigma;
  j["d"] = p.d;
  j["ambient_mean"] = p.ambient_mean;
  j["ambient_sigma"] = p.ambient_sigma;
  j["k_factor"] = p.k_factor;
  j["shot_noise"] = p.shot_noise;
  j["seed"] = p.seed;
  j["n_frames"] = p.n_frames;
  j["spatial_beta"] = p.spatial_beta;
  j["integration_time_s"] = p.integration_time_s;
  j["interval_s"] = p.interval_s;
  return j;
}

inline FogParams fog_params_from_json(const Json& j) {
  FogParams p;
  p.beta0 = j.value("beta0", p.beta0);
  p.beta_sigma = j.value("beta_sigma", p.beta_sigma);
  p.d = j.value("d", p.d);
  p.ambient_mean = j.value("ambient_mean", p.ambient_mean);
  p.ambient_sigma = j.value("ambient_sigma", p.ambient_sigma);
  p.k_factor = j.value("k_factor", p.k_factor);
  p.shot_noise = j.value("shot_noise", p.shot_noise);
  p.seed = j.value("seed", p.seed);
  p.n_frames = j.value("n_frames", p.n_frames);
  p.spatial_beta = j.value("spatial_beta", p.spatial_beta);
  p.integration_time_s = j.value("integration_time_s", p.integration_time_s);
  p.interval_s = j.value("interval_s", p.interval_s);
  return p;
}

}  // namespace defog::detail
