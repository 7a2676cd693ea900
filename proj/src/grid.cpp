#include "bergwave/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bergwave/bergman.hpp"
#include "bergwave/errors.hpp"

namespace bergwave {

namespace {

constexpr double kAlphaSlack = 1e-12;

int pow2(int e) {
  if (e < 0 || e >= 31) {
    throw InvalidSchedule("ring population 2^" + std::to_string(e) +
                          " does not fit the schedule");
  }
  return 1 << e;
}

}  // namespace

GridConfig GridConfig::quad_base(int levels, int beta) {
  GridConfig cfg;
  cfg.a_base = 2.0;
  cfg.levels = levels;
  cfg.schedule.assign(1, 1);
  for (int k = 1; k <= levels; ++k) cfg.schedule.push_back(pow2(2 * k + beta));
  return cfg;
}

GridConfig GridConfig::sqrt2_base(int levels) {
  GridConfig cfg;
  cfg.a_base = std::sqrt(2.0);
  cfg.levels = levels;
  cfg.schedule.assign(1, 1);
  for (int k = 1; k <= levels; ++k) cfg.schedule.push_back(pow2(k + 2));
  return cfg;
}

void GridConfig::validate() const {
  if (!(a_base > 1.0)) throw InvalidBase("grid base must be > 1");
  if (levels < 0) throw InvalidSchedule("level count must be >= 0");
  if (levels > kMaxRadialIndex) {
    throw InvalidSchedule("level count exceeds the radial index cap of 60");
  }
  if (static_cast<int>(schedule.size()) != levels + 1) {
    throw InvalidSchedule("schedule must list N(k) for k = 0.." +
                          std::to_string(levels));
  }
  if (schedule[0] != 1) throw InvalidSchedule("schedule requires N(0) = 1");
  for (int k = 1; k <= levels; ++k) {
    if (schedule[k] < 1) {
      throw InvalidSchedule("schedule requires N(k) >= 1");
    }
    if (k >= 2) {
      if (schedule[k] <= schedule[k - 1]) {
        throw InvalidSchedule(
            "schedule must be strictly increasing from the first ring on");
      }
      if (schedule[k] % schedule[k - 1] != 0) {
        throw InvalidSchedule(
            "N(k+1) must be an integer multiple of N(k) for ring refinement");
      }
    }
  }
  if (!(p > 0.0)) throw InvalidSchedule("exponent p must be positive");
}

std::vector<double> GridConfig::alpha_sequence() const {
  std::vector<double> alphas;
  for (int k = 1; k <= levels; ++k) {
    alphas.push_back(schedule[k] * std::pow(a_base, -2.0 * k));
  }
  return alphas;
}

Grid::Grid(GridConfig config) : config_(std::move(config)) {
  config_.validate();
  radii_.resize(config_.levels + 1);
  for (int k = 0; k <= config_.levels; ++k) {
    radii_[k] = radial_node(config_.a_base, k);
  }
  level_offsets_.assign(1, 0);
  for (int k = 0; k <= config_.levels; ++k) {
    level_offsets_.push_back(level_offsets_.back() + config_.schedule[k]);
  }
  nodes_.reserve(level_offsets_.back());
  for (int k = 0; k <= config_.levels; ++k) {
    const int n = config_.schedule[k];
    for (int l = 0; l < n; ++l) {
      const double theta = 2.0 * std::numbers::pi * l / n;
      nodes_.push_back(std::polar(radii_[k], theta));
    }
  }
}

int Grid::count_through_level(int n) const {
  if (n < 0 || n > config_.levels) {
    throw LevelOutOfRange("level " + std::to_string(n) + " not in grid");
  }
  return level_offsets_[n + 1];
}

int Grid::linear_index(int k, int l) const {
  if (k < 0 || k > config_.levels || l < 0 || l >= config_.schedule[k]) {
    throw IndexOutOfRange("node (" + std::to_string(k) + ", " +
                          std::to_string(l) + ") not in grid");
  }
  return level_offsets_[k] + l + 1;
}

std::tuple<int, int, cplx> Grid::node_of(int m) const {
  if (m < 1 || m > size()) {
    throw IndexOutOfRange("linear index " + std::to_string(m) +
                          " not in [1, " + std::to_string(size()) + "]");
  }
  int k = 0;
  while (level_offsets_[k + 1] < m) ++k;
  const int l = m - 1 - level_offsets_[k];
  return {k, l, nodes_[m - 1]};
}

double Grid::ring_radius(int k) const {
  if (k < 0 || k > config_.levels) {
    throw LevelOutOfRange("ring " + std::to_string(k) + " not in grid");
  }
  return radii_[k];
}

// -- diagnostics ------------------------------------------------------------

namespace {

void require_monotone(const std::vector<double>& alphas, bool increasing) {
  for (std::size_t i = 1; i < alphas.size(); ++i) {
    const bool ok = increasing ? alphas[i] >= alphas[i - 1] - kAlphaSlack
                               : alphas[i] <= alphas[i - 1] + kAlphaSlack;
    if (!ok) {
      throw PreconditionViolated(
          std::string("alpha(k) = N(k) a^(-2k) is not monotone ") +
          (increasing ? "increasing" : "decreasing"));
    }
  }
}

double net_bound_from_alpha(double a, double alpha) {
  const double d = a - 1.0 / a;
  const double K =
      1.0 + d * d / 4.0 +
      a * a * std::numbers::pi * std::numbers::pi / (4.0 * alpha * alpha);
  return std::sqrt(1.0 - 1.0 / K);
}

}  // namespace

double separation_lower_bound(const GridConfig& config) {
  config.validate();
  const std::vector<double> alphas = config.alpha_sequence();
  require_monotone(alphas, /*increasing=*/true);
  const double alpha = alphas.empty() ? 0.0 : alphas.back();
  const double r1 = radial_node(config.a_base, 1);
  return std::min(r1, 1.0 / std::sqrt(1.0 + alpha * alpha));
}

double epsilon_net_bound(const GridConfig& config) {
  config.validate();
  const std::vector<double> alphas = config.alpha_sequence();
  if (alphas.empty()) {
    throw PreconditionViolated("covering bound needs at least one ring");
  }
  require_monotone(alphas, /*increasing=*/false);
  return net_bound_from_alpha(config.a_base, alphas.back());
}

SamplingCheck sampling_condition(const GridConfig& config, double p) {
  config.validate();
  if (!(p > 0.0)) throw PreconditionViolated("exponent p must be positive");
  const std::vector<double> alphas = config.alpha_sequence();
  if (alphas.empty()) {
    throw PreconditionViolated("sampling condition needs at least one ring");
  }
  const double alpha = alphas.front();
  for (double ak : alphas) {
    if (std::abs(ak - alpha) > kAlphaSlack) {
      throw PreconditionViolated(
          "sampling condition requires constant alpha(k) across rings");
    }
  }
  SamplingCheck out;
  out.alpha = alpha;
  const double d = config.a_base - 1.0 / config.a_base;
  out.lhs = d * d + std::numbers::pi * std::numbers::pi * config.a_base *
                        config.a_base / (alpha * alpha);
  out.margin = 2.0 * p - out.lhs;
  out.holds = out.lhs < 2.0 * p;
  out.eps0 = net_bound_from_alpha(config.a_base, alpha);
  out.eps_threshold = std::sqrt(p / (p + 2.0));
  return out;
}

double empirical_separation(const Grid& grid) {
  const auto& nodes = grid.nodes();
  const int m = grid.size();
  if (m < 2) {
    throw PreconditionViolated("separation needs at least two nodes");
  }
  double best = 1.0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      best = std::min(best, pseudo_distance(nodes[i], nodes[j]));
    }
  }
  return best;
}

double empirical_epsilon_net(const Grid& grid, int probe_count) {
  if (probe_count < 1) {
    throw PreconditionViolated("probe count must be positive");
  }
  const double r_max = grid.ring_radius(grid.levels());
  const int n_r = std::max(1, static_cast<int>(std::sqrt(probe_count / 2.0)));
  const int n_t = std::max(4, 2 * n_r);
  const double t_max = std::atanh(r_max);
  const auto& nodes = grid.nodes();
  double worst = 0.0;
  for (int i = 0; i < n_r; ++i) {
    const double r = std::tanh(t_max * (i + 0.5) / n_r);
    for (int j = 0; j < n_t; ++j) {
      const cplx z = std::polar(r, 2.0 * std::numbers::pi * j / n_t);
      double nearest = 1.0;
      for (const cplx& node : nodes) {
        nearest = std::min(nearest, pseudo_distance(z, node));
      }
      worst = std::max(worst, nearest);
    }
  }
  return worst;
}

double frame_ratio(const Grid& grid, const TaylorFunction& f) {
  const double nsq = f.norm_squared();
  if (nsq <= 0.0) throw ZeroFunction("frame ratio of the zero function");
  double sum = 0.0;
  for (const cplx& z : grid.nodes()) {
    const double w = 1.0 - std::norm(z);
    sum += std::norm(f.evaluate(z)) * w * w;
  }
  return sum / nsq;
}

}  // namespace bergwave
