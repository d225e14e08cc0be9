#include "lrsb/synthgen.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lrsb/random.hpp"

namespace lrsb {
namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double ToDouble(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || !std::isfinite(out)) {
    throw InvalidArgument("config key '" + key + "': not a number: '" + v + "'");
  }
  return out;
}

std::uint64_t ToSeed(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw InvalidArgument("config key '" + key + "': expected an unsigned integer, got '" +
                          v + "'");
  }
  return out;
}

std::size_t ToCount(const std::string& key, const std::string& v) {
  const double d = ToDouble(key, v);
  if (d < 0.0 || d != static_cast<double>(static_cast<std::size_t>(d))) {
    throw InvalidArgument("config key '" + key +
                          "': expected a non-negative integer, got '" + v + "'");
  }
  return static_cast<std::size_t>(d);
}

bool ToBool(const std::string& key, std::string v) {
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw InvalidArgument("config key '" + key + "': expected a boolean, got '" +
                        v + "'");
}

std::vector<double> ToList(const std::string& key, std::string v) {
  v.erase(std::remove(v.begin(), v.end(), '['), v.end());
  v.erase(std::remove(v.begin(), v.end(), ']'), v.end());
  std::vector<double> out;
  std::istringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(ToDouble(key, Trim(item)));
  if (out.empty()) throw InvalidArgument("config key '" + key + "': empty list");
  return out;
}

}  // namespace

std::string ToString(BiclusterKind kind) {
  switch (kind) {
    case BiclusterKind::kConstant:
      return "constant";
    case BiclusterKind::kShift:
      return "shift";
    case BiclusterKind::kScale:
      return "scale";
    case BiclusterKind::kShiftScale:
      return "shift_scale";
  }
  return "constant";
}

BiclusterKind ParseBiclusterKind(const std::string& name) {
  if (name == "constant") return BiclusterKind::kConstant;
  if (name == "shift") return BiclusterKind::kShift;
  if (name == "scale") return BiclusterKind::kScale;
  if (name == "shift_scale" || name == "shift-scale") {
    return BiclusterKind::kShiftScale;
  }
  throw InvalidArgument("unknown bicluster kind: '" + name + "'");
}

void BiclusterDataSpec::Validate() const {
  if (n_rows < 1 || n_cols < 1) {
    throw InvalidArgument("nrows and ncols must be at least 1");
  }
  if (n_clusts > 0) {
    if (rows_per_cluster < 1 || cols_per_cluster < 1) {
      throw InvalidArgument("nclustrows and nclustcols must be at least 1");
    }
    if (n_clusts * rows_per_cluster > n_rows ||
        n_clusts * cols_per_cluster > n_cols) {
      std::ostringstream msg;
      msg << "infeasible layout: " << n_clusts << " disjoint "
          << rows_per_cluster << "x" << cols_per_cluster
          << " blocks do not fit in " << n_rows << "x" << n_cols;
      throw InvalidArgument(msg.str());
    }
  }
  if (bicluster_noise.size() != 1 && bicluster_noise.size() != n_clusts) {
    throw InvalidArgument("bicluster_noise needs 1 or nclusts values");
  }
  for (double sd : bicluster_noise) {
    if (sd < 0.0) throw InvalidArgument("bicluster_noise must be >= 0");
  }
  if (background_noise_sd < 0.0 || base_scale < 0.0 || shift_scale < 0.0 ||
      scale_scale < 0.0) {
    throw InvalidArgument("standard deviations must be >= 0");
  }
  if (!(spike_prob >= 0.0 && spike_prob <= 1.0)) {
    throw InvalidArgument("spike_prob must lie in [0, 1]");
  }
}

double BiclusterDataSpec::NoiseForCluster(std::size_t k) const {
  return bicluster_noise.size() == 1 ? bicluster_noise[0] : bicluster_noise[k];
}

BiclusterDataSpec BiclusterDataSpec::Benchmark(BiclusterKind kind,
                                               std::uint64_t seed) {
  BiclusterDataSpec s;
  s.kind = kind;
  s.seed = seed;
  s.spike_prob = 0.01;
  s.spike_value = 6.0;
  s.shuffle = true;
  switch (kind) {
    case BiclusterKind::kConstant:
      s.bicluster_signal = 5.0;
      s.bicluster_noise = {1.0};
      s.background_noise_sd = 1.0;
      break;
    case BiclusterKind::kShift:
      s.bicluster_noise = {0.01};
      s.background_noise_sd = 1.0;
      s.base_loc = 1.0;
      s.shift_loc = 1.0;
      s.shift_scale = 3.0;
      break;
    case BiclusterKind::kScale:
      s.bicluster_noise = {0.01};
      s.base_loc = 1.0;
      s.scale_scale = 3.0;
      s.scale_loc = 0.0;
      break;
    case BiclusterKind::kShiftScale:
      s.bicluster_noise = {0.01};
      s.base_scale = 1.0;
      s.scale_scale = 2.0;
      s.shift_scale = 3.0;
      break;
  }
  return s;
}

BiclusterDataSpec ParseDataSpec(std::istream& in) {
  BiclusterDataSpec s;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("config line " + std::to_string(line_no) +
                            ": expected key = value");
    }
    const std::string key = Trim(line.substr(0, eq));
    const std::string val = Trim(line.substr(eq + 1));
    if (key == "kind" || key == "type") {
      s.kind = ParseBiclusterKind(val);
    } else if (key == "nrows") {
      s.n_rows = ToCount(key, val);
    } else if (key == "ncols") {
      s.n_cols = ToCount(key, val);
    } else if (key == "nclusts") {
      s.n_clusts = ToCount(key, val);
    } else if (key == "nclustrows") {
      s.rows_per_cluster = ToCount(key, val);
    } else if (key == "nclustcols") {
      s.cols_per_cluster = ToCount(key, val);
    } else if (key == "bicluster_signals" || key == "bicluster_signal") {
      s.bicluster_signal = ToDouble(key, val);
    } else if (key == "bicluster_noise") {
      s.bicluster_noise = ToList(key, val);
    } else if (key == "noise") {
      s.background_noise_sd = ToDouble(key, val);
    } else if (key == "base_loc") {
      s.base_loc = ToDouble(key, val);
    } else if (key == "base_scale") {
      s.base_scale = ToDouble(key, val);
    } else if (key == "shift_loc") {
      s.shift_loc = ToDouble(key, val);
    } else if (key == "shift_scale") {
      s.shift_scale = ToDouble(key, val);
    } else if (key == "scale_loc") {
      s.scale_loc = ToDouble(key, val);
    } else if (key == "scale_scale") {
      s.scale_scale = ToDouble(key, val);
    } else if (key == "spike_prob") {
      s.spike_prob = ToDouble(key, val);
    } else if (key == "spike_value") {
      s.spike_value = ToDouble(key, val);
    } else if (key == "shuffle") {
      s.shuffle = ToBool(key, val);
    } else if (key == "seed") {
      s.seed = ToSeed(key, val);
    } else {
      throw InvalidArgument("config line " + std::to_string(line_no) +
                            ": unknown key '" + key + "'");
    }
  }
  s.Validate();
  return s;
}

BiclusterDataSpec ReadDataSpec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open spec file: " + path);
  return ParseDataSpec(in);
}

std::vector<std::pair<std::size_t, std::size_t>> GroundTruth::SpikePositions()
    const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (Eigen::Index i = 0; i < spike_mask.rows(); ++i) {
    for (Eigen::Index j = 0; j < spike_mask.cols(); ++j) {
      if (spike_mask(i, j)) {
        out.emplace_back(static_cast<std::size_t>(i),
                         static_cast<std::size_t>(j));
      }
    }
  }
  return out;
}

Dataset Generate(const BiclusterDataSpec& spec) {
  spec.Validate();
  Rng rng(StageSeed(spec.seed, "generate"));
  const auto n = static_cast<Eigen::Index>(spec.n_rows);
  const auto m = static_cast<Eigen::Index>(spec.n_cols);

  Eigen::MatrixXd values(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      values(i, j) = rng.Normal(0.0, spec.background_noise_sd);
    }
  }

  GroundTruth truth;
  truth.spike_mask = SpikeMask::Constant(n, m, false);
  for (std::size_t k = 0; k < spec.n_clusts; ++k) {
    const std::size_t r0 = k * spec.rows_per_cluster;
    const std::size_t c0 = k * spec.cols_per_cluster;
    const double noise = spec.NoiseForCluster(k);
    // One base value per block; shifts and scale factors vary by block row.
    const double base = rng.Normal(spec.base_loc, spec.base_scale);

    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < spec.cols_per_cluster; ++c) cols.push_back(c0 + c);
    for (std::size_t r = 0; r < spec.rows_per_cluster; ++r) {
      const std::size_t i = r0 + r;
      rows.push_back(i);
      const double shift = rng.Normal(spec.shift_loc, spec.shift_scale);
      const double scale = rng.Normal(spec.scale_loc, spec.scale_scale);
      double row_value = 0.0;
      switch (spec.kind) {
        case BiclusterKind::kConstant:
          row_value = spec.bicluster_signal;
          break;
        case BiclusterKind::kShift:
          row_value = base + shift;
          break;
        case BiclusterKind::kScale:
          row_value = base * scale;
          break;
        case BiclusterKind::kShiftScale:
          row_value = base * scale + shift;
          break;
      }
      for (std::size_t j : cols) {
        values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            row_value + rng.Normal(0.0, noise);
      }
    }
    truth.biclusters.emplace_back(std::move(rows), std::move(cols));
  }
  return {DenseMatrix(std::move(values)), std::move(truth)};
}

SpikeResult InjectSpikes(const DenseMatrix& m, double p_s, double magnitude,
                         std::uint64_t seed) {
  if (!(p_s >= 0.0 && p_s <= 1.0)) {
    throw InvalidArgument("spike probability must lie in [0, 1]");
  }
  Rng rng(seed);
  Eigen::MatrixXd values = m.values();
  SpikeMask mask = SpikeMask::Constant(values.rows(), values.cols(), false);
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (rng.Bernoulli(p_s)) {
        values(i, j) += magnitude;
        mask(i, j) = true;
      }
    }
  }
  return {m.WithValues(std::move(values)), std::move(mask)};
}

Dataset ApplyPermutations(const Dataset& in, const Permutations& perms) {
  const std::size_t n = in.data.rows();
  const std::size_t m = in.data.cols();
  if (perms.rows.size() != n || perms.cols.size() != m) {
    throw InvalidArgument("permutation sizes do not match the matrix");
  }
  std::vector<std::size_t> row_pos(n);
  std::vector<std::size_t> col_pos(m);
  for (std::size_t i = 0; i < n; ++i) row_pos[perms.rows[i]] = i;
  for (std::size_t j = 0; j < m; ++j) col_pos[perms.cols[j]] = j;

  const bool has_mask = in.truth.spike_mask.size() > 0;
  if (has_mask && (static_cast<std::size_t>(in.truth.spike_mask.rows()) != n ||
                   static_cast<std::size_t>(in.truth.spike_mask.cols()) != m)) {
    throw InvalidArgument("spike mask shape does not match the matrix");
  }
  Eigen::MatrixXd values(n, m);
  SpikeMask mask = SpikeMask::Constant(n, m, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto si = static_cast<Eigen::Index>(perms.rows[i]);
      const auto sj = static_cast<Eigen::Index>(perms.cols[j]);
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          in.data.values()(si, sj);
      if (has_mask) {
        mask(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            in.truth.spike_mask(si, sj);
      }
    }
  }

  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  if (in.data.has_row_labels()) {
    for (std::size_t i = 0; i < n; ++i) {
      row_labels.push_back(in.data.row_labels()[perms.rows[i]]);
    }
  }
  if (in.data.has_col_labels()) {
    for (std::size_t j = 0; j < m; ++j) {
      col_labels.push_back(in.data.col_labels()[perms.cols[j]]);
    }
  }

  Dataset out{DenseMatrix(std::move(values), std::move(row_labels),
                          std::move(col_labels)),
              GroundTruth{}};
  out.truth.spike_mask = std::move(mask);
  for (const Bicluster& b : in.truth.biclusters) {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    for (std::size_t r : b.rows) rows.push_back(row_pos[r]);
    for (std::size_t c : b.cols) cols.push_back(col_pos[c]);
    out.truth.biclusters.emplace_back(std::move(rows), std::move(cols),
                                      b.p_value);
  }
  return out;
}

Dataset Shuffle(const Dataset& in, std::uint64_t seed) {
  Rng rng(seed);
  Permutations perms;
  perms.rows = rng.Permutation(in.data.rows());
  perms.cols = rng.Permutation(in.data.cols());
  return ApplyPermutations(in, perms);
}

Dataset MakeBenchmark(const BiclusterDataSpec& spec) {
  Dataset ds = Generate(spec);
  if (spec.spike_prob > 0.0) {
    SpikeResult spiked = InjectSpikes(ds.data, spec.spike_prob,
                                      spec.spike_value,
                                      StageSeed(spec.seed, "spikes"));
    ds.data = std::move(spiked.data);
    ds.truth.spike_mask = std::move(spiked.mask);
  }
  if (spec.shuffle) ds = Shuffle(ds, StageSeed(spec.seed, "shuffle"));
  return ds;
}

}  // namespace lrsb
