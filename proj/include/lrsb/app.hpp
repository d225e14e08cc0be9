#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lrsb/csv.hpp"
#include "lrsb/json_io.hpp"
#include "lrsb/recovery.hpp"
#include "lrsb/synthgen.hpp"

// Command implementations behind the `lrsb` CLI. Each command reads and
// writes files only; all randomness comes from the seed it is given.
namespace lrsb::app {

/// A pipeline stage failed; `stage()` names it.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& cause)
      : std::runtime_error(stage + ": " + cause), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct RecoverFlags {
  std::optional<double> alpha;   // default: (sqrt(n) + sqrt(m)) * sigma_hat
  std::optional<double> lambda;  // default: 1 / sqrt(m)
  double tol = 1e-6;
  std::size_t max_iters = 500;
};

struct ExtractFlags {
  std::size_t k_rows = 6;  // 0 selects k by silhouette sweep over 2..12
  std::size_t k_cols = 6;
  std::optional<double> flat_threshold;  // default: 0.5 * sigma_hat(D)
};

struct FilterFlags {
  double sig_alpha = 0.05;
  std::size_t levels = 10;
};

struct RecoverRun {
  RecoveryParams params;
  double sigma_hat = 0.0;
  double lambda = 0.0;
  RecoveryResult result;
};

RecoverRun RunRecovery(const DenseMatrix& d, const RecoverFlags& flags);
/// sigma_hat, alpha, beta, lambda, iterations, converged, final objective,
/// numerical rank of X, sparsity of E (fraction of |E_ij| > 1e-6).
Json RecoverySummary(const RecoverRun& run);

struct ExtractRun {
  BiclusterSet set;
  std::size_t k_rows = 0;
  std::size_t k_cols = 0;
  double flat_threshold = 0.0;
  std::uint64_t seed = 0;
};
ExtractRun RunExtraction(const DenseMatrix& x, const ExtractFlags& flags,
                         double default_flat_threshold, std::uint64_t seed);
/// BiclusterSet JSON plus the k choices, flat threshold and seed.
Json ExtractionJson(const ExtractRun& run);

void CmdSynth(const BiclusterDataSpec& spec, const std::string& out_prefix);

void CmdRecover(const std::string& matrix_path, const CsvLayout& layout,
                const RecoverFlags& flags, const std::string& out_prefix);

void CmdExtract(const std::string& x_path, const CsvLayout& layout,
                const ExtractFlags& flags,
                const std::optional<std::string>& data_path, std::uint64_t seed,
                const std::string& out_path);

void CmdFilter(const std::string& biclusters_path, const std::string& data_path,
               const CsvLayout& layout, const FilterFlags& flags,
               const std::string& out_path);

void CmdEvaluate(const std::string& predicted_path, const std::string& truth_path,
                 const std::optional<std::string>& sparse_path,
                 double spike_threshold, const std::string& out_path);

enum class PreprocessStep { kInvert, kInvertUnit, kBin };
PreprocessStep ParsePreprocessStep(const std::string& name);
DenseMatrix Preprocess(const DenseMatrix& m, const std::vector<PreprocessStep>& steps,
                       std::size_t levels, double bin_lo, double bin_hi);
void CmdPreprocess(const std::string& in_path, const CsvLayout& layout,
                   const std::vector<PreprocessStep>& steps, std::size_t levels,
                   double bin_lo, double bin_hi, const std::string& out_path);

void CmdEmbed(const std::string& x_path, const CsvLayout& layout, std::size_t dims,
              const std::string& out_csv, const std::optional<std::string>& out_ppm);

void CmdRender(const std::string& matrix_path, const CsvLayout& layout,
               const std::string& out_ppm, std::size_t cell);

struct PipelineConfig {
  std::optional<std::string> spec_path;    // synthesize from this spec...
  std::optional<std::string> matrix_path;  // ...or start from this matrix
  std::optional<std::string> truth_path;   // ground truth for matrix input
  CsvLayout layout;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  RecoverFlags recover;
  ExtractFlags extract;
  FilterFlags filter;
  std::size_t reps = 1;
  bool resume = false;  // reuse X.csv / E.csv already present in the output
  bool render = true;
  double spike_threshold = 1e-6;
};

/// synth (optional) -> recover -> extract -> filter -> evaluate -> render.
/// With reps > 1, repetition r uses seed + r and writes to rep-<r>/; the
/// consolidated report (pipeline.json, schema 1) adds mean and sample SD of
/// every metric. Throws StageError.
Json CmdPipeline(const PipelineConfig& config);

}  // namespace lrsb::app
