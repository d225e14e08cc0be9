#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lrsb/bicluster.hpp"
#include "lrsb/matrix.hpp"

namespace lrsb {

enum class BiclusterKind { kConstant, kShift, kScale, kShiftScale };

std::string ToString(BiclusterKind kind);
BiclusterKind ParseBiclusterKind(const std::string& name);

/// Synthetic bicluster benchmark settings. Key names in the config file
/// mirror the field names below (see ParseDataSpec).
struct BiclusterDataSpec {
  BiclusterKind kind = BiclusterKind::kConstant;
  std::size_t n_rows = 300;
  std::size_t n_cols = 50;
  std::size_t n_clusts = 5;
  std::size_t rows_per_cluster = 5;
  std::size_t cols_per_cluster = 8;
  double bicluster_signal = 5.0;
  /// Per-entry noise sd inside each block; one value per cluster, or a
  /// single value applied to every cluster.
  std::vector<double> bicluster_noise = {0.0};
  double background_noise_sd = 1.0;
  double base_loc = 0.0;
  double base_scale = 1.0;
  double shift_loc = 0.0;
  double shift_scale = 1.0;
  double scale_loc = 0.0;
  double scale_scale = 1.0;
  /// Bernoulli rate and height of additive spikes; 0 disables them.
  double spike_prob = 0.0;
  double spike_value = 6.0;
  bool shuffle = true;
  std::uint64_t seed = 0;

  void Validate() const;
  double NoiseForCluster(std::size_t k) const;

  /// The four benchmark settings: 300x50, five 5x8 blocks, spikes at 1%.
  static BiclusterDataSpec Benchmark(BiclusterKind kind, std::uint64_t seed);
};

/// Flat `key = value` config; '#' starts a comment.
BiclusterDataSpec ParseDataSpec(std::istream& in);
BiclusterDataSpec ReadDataSpec(const std::string& path);

struct GroundTruth {
  std::vector<Bicluster> biclusters;
  SpikeMask spike_mask;

  std::vector<std::pair<std::size_t, std::size_t>> SpikePositions() const;
};

struct Dataset {
  DenseMatrix data;
  GroundTruth truth;
};

/// Background and planted blocks only (no spikes, no shuffling).
Dataset Generate(const BiclusterDataSpec& spec);

struct SpikeResult {
  DenseMatrix data;
  SpikeMask mask;
};
SpikeResult InjectSpikes(const DenseMatrix& m, double p_s, double magnitude,
                         std::uint64_t seed);

/// Row/column permutations applied to a dataset. `row_perm[i]` is the
/// original row placed at position i.
struct Permutations {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};
Dataset Shuffle(const Dataset& in, std::uint64_t seed);
Dataset ApplyPermutations(const Dataset& in, const Permutations& perms);

/// Full benchmark recipe: Generate, then spikes (if spike_prob > 0), then
/// shuffle (if enabled). Each stage draws from StageSeed(spec.seed, name).
Dataset MakeBenchmark(const BiclusterDataSpec& spec);

}  // namespace lrsb
