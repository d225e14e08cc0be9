#include "lrsb/app.hpp"

#include <cmath>
#include <filesystem>
#include <future>
#include <map>

#include "lrsb/extraction.hpp"
#include "lrsb/image.hpp"
#include "lrsb/kmeans.hpp"
#include "lrsb/metrics.hpp"
#include "lrsb/preprocess.hpp"
#include "lrsb/random.hpp"
#include "lrsb/significance.hpp"

namespace lrsb::app {
namespace fs = std::filesystem;

namespace {

constexpr double kSparsityFloor = 1e-6;

template <typename Fn>
auto Stage(const std::string& name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

std::string Join(const std::string& dir, const std::string& file) {
  return (fs::path(dir) / file).string();
}

std::size_t ResolveK(std::size_t k, const Eigen::MatrixXd& points,
                     std::uint64_t seed) {
  if (k != 0) return k;
  return ChooseKBySilhouette(points, 2, 12, seed);
}

}  // namespace

RecoverRun RunRecovery(const DenseMatrix& d, const RecoverFlags& flags) {
  RecoverRun run;
  run.sigma_hat = EstimateSigma(d);
  run.lambda = flags.lambda.value_or(DefaultLambda(d.cols()));
  if (!flags.alpha && !(run.sigma_hat > 0.0)) {
    throw InvalidArgument(
        "noise estimate is 0 (at least half the entries equal the median); "
        "give alpha explicitly");
  }
  run.params.alpha =
      flags.alpha.value_or(DefaultAlpha(d.rows(), d.cols(), run.sigma_hat));
  run.params.beta = run.lambda * run.params.alpha;
  run.params.tol = flags.tol;
  run.params.max_iters = flags.max_iters;
  run.result = Recover(d, run.params);
  return run;
}

Json RecoverySummary(const RecoverRun& run) {
  const RecoveryResult& r = run.result;
  const Eigen::MatrixXd& e = r.sparse.values();
  const double nonzero = static_cast<double>((e.array().abs() > kSparsityFloor).count());
  Json j;
  j["sigma_hat"] = Round12(run.sigma_hat);
  j["alpha"] = Round12(run.params.alpha);
  j["beta"] = Round12(run.params.beta);
  j["lambda"] = Round12(run.lambda);
  j["tol"] = Round12(run.params.tol);
  j["max_iters"] = run.params.max_iters;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["final_objective"] =
      r.objective_trace.empty() ? Json(nullptr) : Json(Round12(r.objective_trace.back()));
  j["rank"] = NumericalRank(r.low_rank_singular_values);
  j["sparsity"] = e.size() == 0 ? 0.0 : Round12(nonzero / static_cast<double>(e.size()));
  return j;
}

ExtractRun RunExtraction(const DenseMatrix& x, const ExtractFlags& flags,
                         double default_flat_threshold, std::uint64_t seed) {
  ExtractRun run;
  run.seed = seed;
  run.k_rows = ResolveK(flags.k_rows, x.values(), StageSeed(seed, "k-rows"));
  run.k_cols = ResolveK(flags.k_cols, x.values().transpose(), StageSeed(seed, "k-cols"));
  run.flat_threshold = flags.flat_threshold.value_or(default_flat_threshold);
  ExtractionOptions opts;
  opts.flat_threshold = run.flat_threshold;
  run.set = ExtractBiclusters(x, run.k_rows, run.k_cols, seed, opts);
  return run;
}

Json ExtractionJson(const ExtractRun& run) {
  Json j = ToJson(run.set);
  j["k_rows"] = run.k_rows;
  j["k_cols"] = run.k_cols;
  j["flat_threshold"] = Round12(run.flat_threshold);
  j["seed"] = run.seed;
  return j;
}

void CmdSynth(const BiclusterDataSpec& spec, const std::string& out_prefix) {
  const Dataset ds = MakeBenchmark(spec);
  WriteMatrixCsv(out_prefix + ".csv", ds.data);
  WriteJsonFile(out_prefix + ".truth.json",
                ToJson(ds.truth, Shape{ds.data.rows(), ds.data.cols()}));
}

void CmdRecover(const std::string& matrix_path, const CsvLayout& layout,
                const RecoverFlags& flags, const std::string& out_prefix) {
  const DenseMatrix d = ReadMatrixCsv(matrix_path, layout);
  const RecoverRun run = RunRecovery(d, flags);
  WriteMatrixCsv(out_prefix + "X.csv", run.result.low_rank);
  WriteMatrixCsv(out_prefix + "E.csv", run.result.sparse);
  WriteJsonFile(out_prefix + "recover.json", RecoverySummary(run));
}

void CmdExtract(const std::string& x_path, const CsvLayout& layout,
                const ExtractFlags& flags,
                const std::optional<std::string>& data_path, std::uint64_t seed,
                const std::string& out_path) {
  const DenseMatrix x = ReadMatrixCsv(x_path, layout);
  double default_threshold = 0.0;
  if (data_path) {
    default_threshold = DefaultFlatThreshold(ReadMatrixCsv(*data_path, layout));
  } else {
    default_threshold = DefaultFlatThreshold(x);
  }
  WriteJsonFile(out_path,
                ExtractionJson(RunExtraction(x, flags, default_threshold, seed)));
}

void CmdFilter(const std::string& biclusters_path, const std::string& data_path,
               const CsvLayout& layout, const FilterFlags& flags,
               const std::string& out_path) {
  const BiclusterSet set = BiclusterSetFromJson(ReadJsonFile(biclusters_path));
  const DenseMatrix d = ReadMatrixCsv(data_path, layout);
  WriteJsonFile(out_path,
                ToJson(FilterBiclusters(set, d, flags.sig_alpha, flags.levels)));
}

void CmdEvaluate(const std::string& predicted_path, const std::string& truth_path,
                 const std::optional<std::string>& sparse_path,
                 double spike_threshold, const std::string& out_path) {
  const Json pj = ReadJsonFile(predicted_path);
  // Accept either a bicluster set or a significance report.
  BiclusterSet predicted;
  if (pj.contains("results")) {
    const Json tj = ReadJsonFile(truth_path);
    predicted.source_shape = GroundTruthShape(tj);
    for (const Json& r : pj["results"]) {
      if (!r.at("pass").get<bool>()) continue;
      predicted.biclusters.emplace_back(r.at("rows").get<std::vector<std::size_t>>(),
                                        r.at("cols").get<std::vector<std::size_t>>(),
                                        r.at("p_value").get<double>());
    }
  } else {
    predicted = BiclusterSetFromJson(pj);
  }
  const GroundTruth truth =
      GroundTruthFromJson(ReadJsonFile(truth_path), predicted.source_shape);
  const BiclusterSet reference(truth.biclusters, predicted.source_shape);

  Json out;
  out["biclusters"] = ToJson(EvaluateBiclusters(predicted, reference));
  if (sparse_path) {
    const DenseMatrix e = ReadMatrixCsv(*sparse_path);
    out["sparse"] = ToJson(SparsePrf(PredictedSpikeMask(e, spike_threshold),
                                     truth.spike_mask));
  }
  WriteJsonFile(out_path, out);
}

PreprocessStep ParsePreprocessStep(const std::string& name) {
  if (name == "invert") return PreprocessStep::kInvert;
  if (name == "invert-unit") return PreprocessStep::kInvertUnit;
  if (name == "bin") return PreprocessStep::kBin;
  throw InvalidArgument("unknown preprocessing mode '" + name +
                        "' (expected invert, invert-unit or bin)");
}

DenseMatrix Preprocess(const DenseMatrix& m, const std::vector<PreprocessStep>& steps,
                       std::size_t levels, double bin_lo, double bin_hi) {
  DenseMatrix cur = m;
  for (PreprocessStep s : steps) {
    switch (s) {
      case PreprocessStep::kInvert:
        cur = InvertPercent(cur);
        break;
      case PreprocessStep::kInvertUnit:
        cur = InvertUnit(cur);
        break;
      case PreprocessStep::kBin:
        cur = BinLevels(cur, levels, bin_lo, bin_hi);
        break;
    }
  }
  return cur;
}

void CmdPreprocess(const std::string& in_path, const CsvLayout& layout,
                   const std::vector<PreprocessStep>& steps, std::size_t levels,
                   double bin_lo, double bin_hi, const std::string& out_path) {
  const DenseMatrix m = ReadMatrixCsv(in_path, layout);
  WriteMatrixCsv(out_path, Preprocess(m, steps, levels, bin_lo, bin_hi));
}

void CmdEmbed(const std::string& x_path, const CsvLayout& layout, std::size_t dims,
              const std::string& out_csv, const std::optional<std::string>& out_ppm) {
  const DenseMatrix x = ReadMatrixCsv(x_path, layout);
  const DenseMatrix emb = TopicEmbedding(x, dims);
  WriteMatrixCsv(out_csv, emb);
  if (out_ppm) RenderScatter(emb).WritePpm(*out_ppm);
}

void CmdRender(const std::string& matrix_path, const CsvLayout& layout,
               const std::string& out_ppm, std::size_t cell) {
  RenderHeatmap(ReadMatrixCsv(matrix_path, layout), cell).WritePpm(out_ppm);
}

namespace {

struct RepOutcome {
  Json summary;
  std::optional<MetricReport> metrics;
  std::optional<SparsePRF> sparse;
};

RepOutcome RunRepetition(const PipelineConfig& cfg, std::size_t rep,
                         std::uint64_t seed, const std::string& dir) {
  Stage("setup", [&] {
    fs::create_directories(dir);
    return 0;
  });

  DenseMatrix d;
  std::optional<GroundTruth> truth;
  Json input;
  if (cfg.spec_path) {
    Stage("synth", [&] {
      BiclusterDataSpec spec = ReadDataSpec(*cfg.spec_path);
      spec.seed = seed;
      Dataset ds = MakeBenchmark(spec);
      WriteMatrixCsv(Join(dir, "D.csv"), ds.data);
      WriteJsonFile(Join(dir, "truth.json"),
                    ToJson(ds.truth, Shape{ds.data.rows(), ds.data.cols()}));
      d = std::move(ds.data);
      truth = std::move(ds.truth);
      input["kind"] = ToString(spec.kind);
      return 0;
    });
  } else {
    Stage("load", [&] {
      d = ReadMatrixCsv(*cfg.matrix_path, cfg.layout);
      if (cfg.truth_path) {
        truth = GroundTruthFromJson(ReadJsonFile(*cfg.truth_path),
                                    Shape{d.rows(), d.cols()});
      }
      return 0;
    });
  }
  const Shape shape{d.rows(), d.cols()};

  DenseMatrix x;
  DenseMatrix e;
  Json recover_summary;
  const std::string x_path = Join(dir, "X.csv");
  const std::string e_path = Join(dir, "E.csv");
  const std::string summary_path = Join(dir, "recover.json");
  if (cfg.resume && fs::exists(x_path) && fs::exists(e_path)) {
    Stage("resume", [&] {
      x = ReadMatrixCsv(x_path);
      e = ReadMatrixCsv(e_path);
      if (x.rows() != d.rows() || x.cols() != d.cols() || e.rows() != d.rows() ||
          e.cols() != d.cols()) {
        throw InvalidArgument("stored X/E do not match the data shape");
      }
      if (fs::exists(summary_path)) recover_summary = ReadJsonFile(summary_path);
      return 0;
    });
  } else {
    Stage("recover", [&] {
      RecoverRun run = RunRecovery(d, cfg.recover);
      recover_summary = RecoverySummary(run);
      x = run.result.low_rank;
      e = run.result.sparse;
      WriteMatrixCsv(x_path, x);
      WriteMatrixCsv(e_path, e);
      WriteJsonFile(summary_path, recover_summary);
      return 0;
    });
  }

  const ExtractRun extracted = Stage("extract", [&] {
    ExtractRun run = RunExtraction(x, cfg.extract, DefaultFlatThreshold(d),
                                   StageSeed(seed, "extract"));
    WriteJsonFile(Join(dir, "biclusters.json"), ExtractionJson(run));
    return run;
  });

  const SignificanceReport report = Stage("filter", [&] {
    SignificanceReport r =
        FilterBiclusters(extracted.set, d, cfg.filter.sig_alpha, cfg.filter.levels);
    WriteJsonFile(Join(dir, "report.json"), ToJson(r));
    return r;
  });
  const BiclusterSet survivors = report.Survivors();
  WriteJsonFile(Join(dir, "significant.json"), ToJson(survivors));

  RepOutcome out;
  if (truth) {
    Stage("evaluate", [&] {
      const BiclusterSet reference(truth->biclusters, shape);
      out.metrics = EvaluateBiclusters(survivors, reference);
      Json mj;
      mj["biclusters"] = ToJson(*out.metrics);
      if (truth->spike_mask.size() > 0) {
        out.sparse = SparsePrf(PredictedSpikeMask(e, cfg.spike_threshold),
                               truth->spike_mask);
        mj["sparse"] = ToJson(*out.sparse);
      }
      WriteJsonFile(Join(dir, "metrics.json"), mj);
      return 0;
    });
  }

  if (cfg.render) {
    Stage("render", [&] {
      RenderHeatmap(d).WritePpm(Join(dir, "D.ppm"));
      RenderHeatmap(x).WritePpm(Join(dir, "X.ppm"));
      RenderHeatmap(e).WritePpm(Join(dir, "E.ppm"));
      return 0;
    });
  }

  Json& s = out.summary;
  s["rep"] = rep;
  s["seed"] = seed;
  if (!input.empty()) s["input"] = input;
  s["shape"] = {shape.rows, shape.cols};
  s["recover"] = recover_summary;
  s["k_rows"] = extracted.k_rows;
  s["k_cols"] = extracted.k_cols;
  s["n_candidates"] = extracted.set.size();
  s["n_significant"] = survivors.size();
  s["metrics"] = out.metrics ? ToJson(*out.metrics) : Json(nullptr);
  s["sparse"] = out.sparse ? ToJson(*out.sparse) : Json(nullptr);
  return out;
}

Json MeanSd(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
  Json j;
  j["mean"] = Round12(mean);
  j["sd"] = Round12(sd);
  return j;
}

}  // namespace

Json CmdPipeline(const PipelineConfig& cfg) {
  if (cfg.spec_path.has_value() == cfg.matrix_path.has_value()) {
    throw StageError("config", "exactly one of a spec file or a matrix is required");
  }
  if (cfg.reps < 1) throw StageError("config", "reps must be at least 1");
  for (const auto* path : {&cfg.spec_path, &cfg.matrix_path, &cfg.truth_path}) {
    if (*path && !fs::is_regular_file(**path)) {
      throw StageError("config", "cannot find input file '" + **path + "'");
    }
  }

  std::uint64_t base_seed = 0;
  if (cfg.seed) {
    base_seed = *cfg.seed;
  } else if (cfg.spec_path) {
    base_seed = Stage("config", [&] { return ReadDataSpec(*cfg.spec_path).seed; });
  }
  Stage("setup", [&] {
    fs::create_directories(cfg.out_dir);
    return 0;
  });

  std::vector<std::future<RepOutcome>> jobs;
  for (std::size_t r = 0; r < cfg.reps; ++r) {
    const std::string dir =
        cfg.reps == 1 ? cfg.out_dir : Join(cfg.out_dir, "rep-" + std::to_string(r));
    jobs.push_back(std::async(std::launch::async, RunRepetition, std::cref(cfg), r,
                              base_seed + r, dir));
  }
  std::vector<RepOutcome> outcomes;
  for (auto& job : jobs) outcomes.push_back(job.get());

  Json report;
  report["schema"] = 1;
  report["seed"] = base_seed;
  report["reps"] = cfg.reps;
  report["runs"] = Json::array();
  std::map<std::string, std::vector<double>> series;
  std::vector<std::string> order;
  auto add = [&](const std::string& key, double v) {
    if (!series.count(key)) order.push_back(key);
    series[key].push_back(v);
  };
  for (const RepOutcome& o : outcomes) {
    report["runs"].push_back(o.summary);
    add("n_significant", o.summary["n_significant"].get<double>());
    if (o.metrics) {
      add("liu_wang", o.metrics->liu_wang);
      add("prelic_recovery", o.metrics->prelic_recovery);
      add("prelic_relevance", o.metrics->prelic_relevance);
      add("csi", o.metrics->csi);
      add("clustering_error_similarity", o.metrics->clustering_error_similarity);
      add("fabia_consensus", o.metrics->fabia_consensus);
    }
    if (o.sparse) {
      add("sparse_precision", o.sparse->precision);
      add("sparse_recall", o.sparse->recall);
      add("sparse_f1", o.sparse->f1);
    }
  }
  Json summary = Json::object();
  for (const std::string& key : order) {
    if (series[key].size() == cfg.reps) summary[key] = MeanSd(series[key]);
  }
  report["summary"] = summary;
  Stage("report", [&] {
    WriteJsonFile(Join(cfg.out_dir, "pipeline.json"), report);
    return 0;
  });
  return report;
}

}  // namespace lrsb::app
