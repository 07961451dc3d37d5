#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace covplan {

struct TpeOptions {
  double gamma = 0.25;   // good-fraction of observations
  int n_startup = 10;    // uniform draws before the model kicks in
  int n_candidates = 24; // draws from l(x) per suggestion
};

// Size of the "good" split: max(1, ceil(gamma * n)).
size_t tpe_good_count(size_t n_observations, double gamma);

// Tree-structured Parzen estimator over finite integer domains, minimizing.
// Each dimension is an independent categorical; scores are shared.
class TpeSampler {
 public:
  TpeSampler(std::vector<int> domain_sizes, TpeOptions opts, uint64_t rng_seed);

  // One value per dimension, via the TPE rule (uniform during startup).
  std::vector<int> suggest();

  // suggest() retried until all dimensions hold distinct values (needs a
  // shared domain); falls back to a uniform distinct draw after 32 attempts.
  std::vector<int> suggest_distinct();

  void observe(const std::vector<int>& params, double score);

  size_t observation_count() const { return observations_.size(); }

 private:
  int suggest_dim(size_t dim);

  std::vector<int> domain_sizes_;
  TpeOptions opts_;
  std::mt19937_64 rng_;
  struct Observation {
    std::vector<int> params;
    double score;
  };
  std::vector<Observation> observations_;
};

}  // namespace covplan
