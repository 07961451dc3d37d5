#include "covplan/tpe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace covplan {

size_t tpe_good_count(size_t n_observations, double gamma) {
  return std::max<size_t>(
      1, static_cast<size_t>(
             std::ceil(gamma * static_cast<double>(n_observations))));
}

TpeSampler::TpeSampler(std::vector<int> domain_sizes, TpeOptions opts,
                       uint64_t rng_seed)
    : domain_sizes_(std::move(domain_sizes)), opts_(opts), rng_(rng_seed) {
  if (domain_sizes_.empty())
    throw std::invalid_argument("TpeSampler: no dimensions");
  for (int d : domain_sizes_)
    if (d < 1) throw std::invalid_argument("TpeSampler: empty domain");
  if (!(opts_.gamma > 0.0 && opts_.gamma < 1.0))
    throw std::invalid_argument("TpeSampler: gamma must be in (0,1)");
  if (opts_.n_candidates < 1)
    throw std::invalid_argument("TpeSampler: n_candidates must be >= 1");
}

int TpeSampler::suggest_dim(size_t dim) {
  const int domain = domain_sizes_[dim];
  if (domain == 1) return 0;
  if (static_cast<int>(observations_.size()) < opts_.n_startup) {
    std::uniform_int_distribution<int> u(0, domain - 1);
    return u(rng_);
  }

  // Split at the gamma-quantile of scores, best first.
  std::vector<size_t> order(observations_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return observations_[a].score < observations_[b].score;
  });
  const size_t n = order.size();
  const size_t n_good = tpe_good_count(n, opts_.gamma);

  std::vector<double> good_count(static_cast<size_t>(domain), 0.0);
  std::vector<double> bad_count(static_cast<size_t>(domain), 0.0);
  for (size_t i = 0; i < n; ++i) {
    int value = observations_[order[i]].params[dim];
    (i < n_good ? good_count : bad_count)[static_cast<size_t>(value)] += 1.0;
  }
  const double n_bad = static_cast<double>(n - n_good);
  // Add-one smoothed categorical densities.
  auto l = [&](int x) {
    return (good_count[static_cast<size_t>(x)] + 1.0) /
           (static_cast<double>(n_good) + domain);
  };
  auto g = [&](int x) {
    return (bad_count[static_cast<size_t>(x)] + 1.0) / (n_bad + domain);
  };

  // Draw candidates from l, keep the best l/g ratio (first wins on ties).
  std::vector<double> cdf(static_cast<size_t>(domain));
  double acc = 0.0;
  for (int x = 0; x < domain; ++x) {
    acc += l(x);
    cdf[static_cast<size_t>(x)] = acc;
  }
  std::uniform_real_distribution<double> u01(0.0, acc);
  int best = 0;
  double best_ratio = -1.0;
  for (int c = 0; c < opts_.n_candidates; ++c) {
    double r = u01(rng_);
    int x = static_cast<int>(
        std::lower_bound(cdf.begin(), cdf.end(), r) - cdf.begin());
    if (x >= domain) x = domain - 1;
    double ratio = l(x) / g(x);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = x;
    }
  }
  return best;
}

std::vector<int> TpeSampler::suggest() {
  std::vector<int> out(domain_sizes_.size());
  for (size_t d = 0; d < domain_sizes_.size(); ++d) out[d] = suggest_dim(d);
  return out;
}

std::vector<int> TpeSampler::suggest_distinct() {
  const size_t n_dims = domain_sizes_.size();
  for (size_t d = 1; d < n_dims; ++d)
    if (domain_sizes_[d] != domain_sizes_[0])
      throw std::logic_error("suggest_distinct: dimensions share one domain");
  if (static_cast<size_t>(domain_sizes_[0]) < n_dims)
    throw std::invalid_argument("suggest_distinct: domain smaller than dims");
  for (int attempt = 0; attempt < 32; ++attempt) {
    std::vector<int> cand = suggest();
    std::unordered_set<int> uniq(cand.begin(), cand.end());
    if (uniq.size() == cand.size()) return cand;
  }
  // Uniform draw without replacement.
  std::vector<int> pool(static_cast<size_t>(domain_sizes_[0]));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> out;
  out.reserve(n_dims);
  for (size_t i = 0; i < n_dims; ++i) {
    std::uniform_int_distribution<size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng_)]);
    out.push_back(pool[i]);
  }
  return out;
}

void TpeSampler::observe(const std::vector<int>& params, double score) {
  if (params.size() != domain_sizes_.size())
    throw std::invalid_argument("TpeSampler: params dimension mismatch");
  for (size_t d = 0; d < params.size(); ++d)
    if (params[d] < 0 || params[d] >= domain_sizes_[d])
      throw std::invalid_argument("TpeSampler: param out of domain");
  observations_.push_back({params, score});
}

}  // namespace covplan
