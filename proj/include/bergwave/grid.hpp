#ifndef BERGWAVE_GRID_HPP
#define BERGWAVE_GRID_HPP

#include <tuple>
#include <vector>

#include "bergwave/blaschke.hpp"

namespace bergwave {

class TaylorFunction;

// Parameters of the concentric node family: ring radii come from the
// radial subgroup of base a_base, ring k carries schedule[k] equally
// spaced points. schedule[0] == 1 always (the origin).
struct GridConfig {
  double a_base = 2.0;
  int levels = 2;                 // deepest ring index
  std::vector<int> schedule;      // N(k), k = 0..levels
  double p = 2.0;                 // Bergman exponent for sampling checks

  // a_base = 2, N(k) = 2^(2k + beta); beta = 3 is the smallest choice
  // that passes the sampling condition for p = 2.
  static GridConfig quad_base(int levels, int beta = 3);
  // a_base = sqrt(2), N(k) = 2^(k + 2).
  static GridConfig sqrt2_base(int levels);

  // Throws InvalidBase / InvalidSchedule.
  void validate() const;

  // alpha(k) = N(k) a_base^(-2k) for k >= 1.
  std::vector<double> alpha_sequence() const;
};

// Materialized node set with its canonical linear order: the origin
// first, then ring k = 1, 2, ... each in increasing angular index.
class Grid {
 public:
  explicit Grid(GridConfig config);

  const GridConfig& config() const { return config_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  int levels() const { return config_.levels; }
  const std::vector<cplx>& nodes() const { return nodes_; }

  // Start of each ring in the linear order; level_offsets()[k] is the
  // 0-based position of z_{k,0}, with a final sentinel equal to size().
  const std::vector<int>& level_offsets() const { return level_offsets_; }

  // Number of nodes in rings 0..n.
  int count_through_level(int n) const;

  // 1-based linear position m of node (k, l); inverse of node_of.
  int linear_index(int k, int l) const;
  // (k, l, z) of the node at 1-based position m.
  std::tuple<int, int, cplx> node_of(int m) const;

  double ring_radius(int k) const;

 private:
  GridConfig config_;
  std::vector<cplx> nodes_;
  std::vector<int> level_offsets_;
  std::vector<double> radii_;
};

// Grid-quality diagnostics for the node family. --------------------------

// Lower bound min(r_1, 1/sqrt(1 + alpha^2)) for the pairwise
// pseudohyperbolic separation; requires alpha(k) nondecreasing.
double separation_lower_bound(const GridConfig& config);

// Covering bound: every disc point lies within eps0 of a node, where
// eps0 = sqrt(1 - 1/K), K = 1 + (a - 1/a)^2/4 + a^2 pi^2 / (4 alpha^2);
// requires alpha(k) nonincreasing with positive limit.
double epsilon_net_bound(const GridConfig& config);

struct SamplingCheck {
  bool holds = false;
  double lhs = 0.0;        // (a - 1/a)^2 + pi^2 a^2 / alpha^2
  double margin = 0.0;     // 2p - lhs
  double alpha = 0.0;
  double eps0 = 0.0;       // covering bound
  double eps_threshold = 0.0;  // sqrt(p / (p + 2))
};

// Sufficient condition for the node family to be a sampling set for
// A^p: lhs < 2p. Requires alpha(k) constant for k >= 1.
SamplingCheck sampling_condition(const GridConfig& config, double p);

// Brute-force minimum pairwise pseudohyperbolic distance.
double empirical_separation(const Grid& grid);

// Max over a deterministic polar probe mesh (uniform in atanh r and in
// angle, covering |z| <= outermost ring radius) of the distance to the
// nearest node.
double empirical_epsilon_net(const Grid& grid, int probe_count);

// Sum |f(z_k)|^2 (1 - |z_k|^2)^2 over nodes, divided by ||f||^2; the
// truncated-grid estimate of the frame ratio.
double frame_ratio(const Grid& grid, const TaylorFunction& f);

}  // namespace bergwave

#endif  // BERGWAVE_GRID_HPP
