#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

#include "ldes/data_pipeline.hpp"

namespace ldes::data {

// Optimal 1-D clustering is a contiguous partition of the sorted values, so
// a dynamic program over split points finds the global optimum exactly.
std::vector<int> kmeans_1d(const std::vector<double>& values, const std::vector<double>& weights,
                           int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (values.size() != weights.size()) throw std::invalid_argument("values and weights differ in size");
  if (values.empty()) return {};
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || !(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      throw std::invalid_argument("k-means needs finite values and finite non-negative weights");
    }
  }

  // Collapse equal values; a zero-weight point still counts once so that
  // all-zero weights behave like an unweighted problem.
  std::vector<double> distinct(values);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const auto m = distinct.size();
  const bool unweighted = std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; });
  std::vector<double> w(m, 0.0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto pos = static_cast<std::size_t>(
        std::lower_bound(distinct.begin(), distinct.end(), values[i]) - distinct.begin());
    w[pos] += unweighted ? 1.0 : weights[i];
  }

  // table[a][b - a - 1]: weighted SSE of distinct[a, b), built with a
  // running (West) update per start point to avoid cancellation.
  std::vector<std::vector<double>> table(m);
  for (std::size_t a = 0; a < m; ++a) {
    double W = 0.0, mean = 0.0, m2 = 0.0;
    table[a].reserve(m - a);
    for (std::size_t b = a; b < m; ++b) {
      if (w[b] > 0.0) {
        const double nw = W + w[b];
        const double delta = distinct[b] - mean;
        mean += delta * w[b] / nw;
        m2 += w[b] * delta * (distinct[b] - mean);
        W = nw;
      }
      table[a].push_back(m2);
    }
  }
  auto sse = [&](std::size_t a, std::size_t b) { return table[a][b - a - 1]; };

  const auto kk = std::min<std::size_t>(static_cast<std::size_t>(k), m);
  constexpr double inf = std::numeric_limits<double>::infinity();
  // cost[c][j]: best SSE of the first j distinct values in c+1 clusters.
  std::vector<std::vector<double>> cost(kk, std::vector<double>(m + 1, inf));
  std::vector<std::vector<std::size_t>> split(kk, std::vector<std::size_t>(m + 1, 0));
  for (std::size_t j = 1; j <= m; ++j) cost[0][j] = sse(0, j);
  for (std::size_t c = 1; c < kk; ++c) {
    for (std::size_t j = c + 1; j <= m; ++j) {
      for (std::size_t i = c; i < j; ++i) {
        const double v = cost[c - 1][i] + sse(i, j);
        if (v < cost[c][j] - 1e-12 * std::max(1.0, std::abs(v))) {
          cost[c][j] = v;
          split[c][j] = i;
        }
      }
    }
  }

  std::vector<int> label_of_distinct(m, 0);
  std::size_t end = m;
  for (std::size_t c = kk; c-- > 0;) {
    const std::size_t begin = c == 0 ? 0 : split[c][end];
    for (std::size_t i = begin; i < end; ++i) label_of_distinct[i] = static_cast<int>(c);
    end = begin;
  }
  std::vector<int> labels(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto pos = static_cast<std::size_t>(
        std::lower_bound(distinct.begin(), distinct.end(), values[i]) - distinct.begin());
    labels[i] = label_of_distinct[pos];
  }
  return labels;
}

namespace {

using GroupKey = std::tuple<std::string, std::string, GeneratorKind, bool, bool>;

GroupKey group_of(const GeneratorSpec& g) {
  return {g.technology, g.region, g.kind, g.is_gas, g.provides_reserve};
}

double mean_cost(const GeneratorSpec& g) {
  return g.gen_cost_per_mwh.size() > 0 ? g.gen_cost_per_mwh.mean() : 0.0;
}

GeneratorSpec merge(const std::vector<const GeneratorSpec*>& members, std::string id) {
  const GeneratorSpec& first = *members.front();
  GeneratorSpec rep = first;
  rep.id = std::move(id);

  double total = 0.0;
  for (const auto* m : members) total += m->capacity_mw;
  auto weight = [&](const GeneratorSpec& m) {
    return total > 0.0 ? m.capacity_mw / total : 1.0 / static_cast<double>(members.size());
  };

  rep.capacity_mw = total;
  rep.invest_limit_mw = 0.0;
  rep.gen_cost_per_mwh.setZero();
  rep.reserve_cost_per_mw.setZero();
  rep.availability.setZero();
  rep.invest_cost_per_mw_yr = rep.fom_cost_per_mw_yr = 0.0;
  rep.reserve_factor = rep.ramp_up_factor = rep.ramp_down_factor = 0.0;
  rep.retire_min_frac = rep.retire_max_frac = 0.0;
  for (const auto* m : members) {
    const double a = weight(*m);
    rep.invest_limit_mw += m->invest_limit_mw;
    rep.gen_cost_per_mwh += a * m->gen_cost_per_mwh;
    rep.reserve_cost_per_mw += a * m->reserve_cost_per_mw;
    rep.availability += a * m->availability;
    rep.invest_cost_per_mw_yr += a * m->invest_cost_per_mw_yr;
    rep.fom_cost_per_mw_yr += a * m->fom_cost_per_mw_yr;
    rep.reserve_factor += a * m->reserve_factor;
    rep.ramp_up_factor += a * m->ramp_up_factor;
    rep.ramp_down_factor += a * m->ramp_down_factor;
    rep.retire_min_frac += a * m->retire_min_frac;
    rep.retire_max_frac += a * m->retire_max_frac;
  }
  // Rounding can push a weighted mean of values in [0,1] just past 1.
  auto clamp01 = [](double& v) { v = std::clamp(v, 0.0, 1.0); };
  clamp01(rep.reserve_factor);
  clamp01(rep.ramp_up_factor);
  clamp01(rep.ramp_down_factor);
  clamp01(rep.retire_max_frac);
  rep.retire_min_frac = std::clamp(rep.retire_min_frac, 0.0, rep.retire_max_frac);
  rep.availability = rep.availability.cwiseMax(0.0).cwiseMin(1.0);
  return rep;
}

}  // namespace

std::vector<GeneratorSpec> cluster_generators(const std::vector<GeneratorSpec>& generators,
                                              int k_per_group) {
  if (k_per_group < 1) throw std::invalid_argument("k_per_group must be >= 1");

  std::map<GroupKey, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (!generators[i].is_candidate()) groups[group_of(generators[i])].push_back(i);
  }
  std::set<std::string> taken;
  for (const auto& g : generators) taken.insert(g.id);

  std::vector<GeneratorSpec> out;
  std::set<GroupKey> emitted;
  for (const auto& gen : generators) {
    if (gen.is_candidate()) {
      out.push_back(gen);
      continue;
    }
    const auto key = group_of(gen);
    if (!emitted.insert(key).second) continue;

    const auto& idx = groups.at(key);
    std::vector<double> costs, caps;
    for (const auto i : idx) {
      costs.push_back(mean_cost(generators[i]));
      caps.push_back(generators[i].capacity_mw);
    }
    const auto labels = kmeans_1d(costs, caps, k_per_group);
    const int clusters = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    for (int c = 0; c < clusters; ++c) {
      std::vector<const GeneratorSpec*> members;
      for (std::size_t j = 0; j < idx.size(); ++j) {
        if (labels[j] == c) members.push_back(&generators[idx[j]]);
      }
      if (members.size() == 1) {
        out.push_back(*members.front());
        continue;
      }
      std::string base = gen.technology + (gen.region.empty() ? "" : "_" + gen.region) + "_c" +
                         std::to_string(c + 1);
      std::string id = base;
      for (int n = 2; taken.contains(id); ++n) id = base + "_" + std::to_string(n);
      taken.insert(id);
      out.push_back(merge(members, id));
    }
  }
  return out;
}

Series derive_reserve_requirement(const Series& demand_mw, double fraction) {
  if (!(fraction >= 0.0) || !std::isfinite(fraction)) {
    throw std::invalid_argument("reserve fraction must be finite and >= 0");
  }
  return fraction * demand_mw;
}

std::vector<GeneratorSpec> mirror_candidates(const std::vector<GeneratorSpec>& generators,
                                             const std::map<std::string, double>& technology_limit_mw) {
  std::map<std::string, double> fleet;
  std::map<std::string, int> count;
  for (const auto& g : generators) {
    if (!g.is_firm() && !g.is_candidate()) {
      fleet[g.technology] += g.capacity_mw;
      ++count[g.technology];
    }
  }
  for (const auto& [tech, limit] : technology_limit_mw) {
    if (!(limit >= 0.0)) throw std::invalid_argument("investment limit for '" + tech + "' must be >= 0");
  }

  std::vector<GeneratorSpec> out;
  for (const auto& g : generators) {
    if (g.is_firm() || g.is_candidate()) continue;
    GeneratorSpec c = g;
    c.id = g.id + "_cand";
    c.status = AssetStatus::candidate;
    c.capacity_mw = 0.0;
    c.retire_min_frac = c.retire_max_frac = 0.0;
    c.invest_limit_mw = g.capacity_mw;
    if (const auto it = technology_limit_mw.find(g.technology); it != technology_limit_mw.end()) {
      const double total = fleet[g.technology];
      c.invest_limit_mw = total > 0.0 ? it->second * g.capacity_mw / total
                                      : it->second / static_cast<double>(count[g.technology]);
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace ldes::data
