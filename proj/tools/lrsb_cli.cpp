// lrsb: low-rank plus sparse recovery and bicluster analysis of
// student x topic matrices.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lrsb/app.hpp"

namespace {

using lrsb::app::StageError;

struct LayoutOpts {
  bool header = false;
  bool row_labels = false;
  lrsb::CsvLayout Get() const { return {header, row_labels}; }
};

void AddLayout(CLI::App* cmd, LayoutOpts* o) {
  cmd->add_flag("--header", o->header, "First CSV line holds column labels");
  cmd->add_flag("--row-labels", o->row_labels, "First CSV field of each row is a label");
}

void AddRecover(CLI::App* cmd, lrsb::app::RecoverFlags* f) {
  cmd->add_option("--alpha", f->alpha, "Nuclear-norm weight (default from data)");
  cmd->add_option("--lambda", f->lambda, "Sparse weight ratio beta/alpha (default 1/sqrt(m))")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", f->tol, "Relative change tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iters", f->max_iters, "Iteration cap")->check(CLI::PositiveNumber);
}

void AddExtract(CLI::App* cmd, lrsb::app::ExtractFlags* f) {
  cmd->add_option("--k-rows", f->k_rows, "Row clusters (0 = choose by silhouette)");
  cmd->add_option("--k-cols", f->k_cols, "Column clusters (0 = choose by silhouette)");
  cmd->add_option("--flat-threshold", f->flat_threshold,
                  "Drop blocks whose mean |X| is below this")
      ->check(CLI::NonNegativeNumber);
}

void AddFilter(CLI::App* cmd, lrsb::app::FilterFlags* f) {
  cmd->add_option("--sig-alpha", f->sig_alpha, "Family-wise significance level")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--levels", f->levels, "Discretization levels of the null model")
      ->check(CLI::PositiveNumber);
}

int Fail(const std::string& message) {
  std::cerr << "lrsb: " << message << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-rank plus sparse recovery and bicluster analysis"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::uint64_t> seed_opt;
  app.add_option("--seed", seed_opt, "Master seed; every stage derives its own from it");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic bicluster dataset");
  std::string synth_spec, synth_kind, synth_out;
  synth->add_option("spec", synth_spec, "Spec file (key = value lines)");
  synth->add_option("--preset", synth_kind, "Benchmark preset: constant|shift|scale|shift_scale");
  synth->add_option("-o,--out", synth_out, "Output prefix (writes PREFIX.csv, PREFIX.truth.json)")
      ->required();

  // preprocess
  auto* prep = app.add_subcommand("preprocess", "Invert and/or bin a score matrix");
  std::string prep_in, prep_out;
  std::vector<std::string> prep_modes;
  std::size_t prep_levels = 10;
  double bin_lo = 0.0, bin_hi = 100.0;
  LayoutOpts prep_layout;
  prep->add_option("matrix", prep_in, "Input CSV")->required();
  prep->add_option("--mode", prep_modes, "invert | invert-unit | bin, applied in order")
      ->required();
  prep->add_option("--levels", prep_levels, "Levels for bin mode")->check(CLI::PositiveNumber);
  prep->add_option("--bin-lo", bin_lo, "Lower end of the bin range");
  prep->add_option("--bin-hi", bin_hi, "Upper end of the bin range");
  prep->add_option("-o,--out", prep_out, "Output CSV")->required();
  AddLayout(prep, &prep_layout);

  // recover
  auto* rec = app.add_subcommand("recover", "Split D into low-rank X and sparse E");
  std::string rec_in, rec_out;
  lrsb::app::RecoverFlags rec_flags;
  LayoutOpts rec_layout;
  rec->add_option("matrix", rec_in, "Input CSV")->required();
  rec->add_option("-o,--out", rec_out,
                  "Output prefix (writes PREFIXX.csv, PREFIXE.csv, PREFIXrecover.json)");
  AddRecover(rec, &rec_flags);
  AddLayout(rec, &rec_layout);

  // extract
  auto* ext = app.add_subcommand("extract", "Checkerboard biclusters from X");
  std::string ext_in, ext_out;
  std::optional<std::string> ext_data;
  lrsb::app::ExtractFlags ext_flags;
  LayoutOpts ext_layout;
  ext->add_option("matrix", ext_in, "Low-rank CSV")->required();
  ext->add_option("--data", ext_data, "Original D (sets the default flat threshold)");
  ext->add_option("-o,--out", ext_out, "Output JSON")->required();
  AddExtract(ext, &ext_flags);
  AddLayout(ext, &ext_layout);

  // filter
  auto* flt = app.add_subcommand("filter", "Bonferroni-filtered bicluster p-values");
  std::string flt_bic, flt_data, flt_out;
  lrsb::app::FilterFlags flt_flags;
  LayoutOpts flt_layout;
  flt->add_option("biclusters", flt_bic, "Bicluster JSON")->required();
  flt->add_option("data", flt_data, "Original D CSV")->required();
  flt->add_option("-o,--out", flt_out, "Report JSON")->required();
  AddFilter(flt, &flt_flags);
  AddLayout(flt, &flt_layout);

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Score predictions against ground truth");
  std::string ev_pred, ev_truth, ev_out;
  std::optional<std::string> ev_sparse;
  double ev_threshold = 1e-6;
  ev->add_option("predicted", ev_pred, "Bicluster JSON or filter report")->required();
  ev->add_option("truth", ev_truth, "Ground-truth JSON")->required();
  ev->add_option("--sparse", ev_sparse, "E.csv for spike precision/recall");
  ev->add_option("--spike-threshold", ev_threshold, "|E| above this counts as a spike")
      ->check(CLI::NonNegativeNumber);
  ev->add_option("-o,--out", ev_out, "Metrics JSON")->required();

  // embed
  auto* emb = app.add_subcommand("embed", "Topic embeddings from X");
  std::string emb_in, emb_out;
  std::optional<std::string> emb_ppm;
  std::size_t emb_dims = 3;
  LayoutOpts emb_layout;
  emb->add_option("matrix", emb_in, "Low-rank CSV")->required();
  emb->add_option("-d,--dims", emb_dims, "Embedding dimension")->check(CLI::PositiveNumber);
  emb->add_option("-o,--out", emb_out, "Embedding CSV")->required();
  emb->add_option("--scatter", emb_ppm, "Also write a PPM scatter of dims 1-2");
  AddLayout(emb, &emb_layout);

  // render
  auto* ren = app.add_subcommand("render", "Heatmap of a matrix as PPM");
  std::string ren_in, ren_out;
  std::size_t ren_cell = 4;
  LayoutOpts ren_layout;
  ren->add_option("matrix", ren_in, "Input CSV")->required();
  ren->add_option("--cell", ren_cell, "Pixels per entry")->check(CLI::PositiveNumber);
  ren->add_option("-o,--out", ren_out, "Output PPM")->required();
  AddLayout(ren, &ren_layout);

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "Run synth/recover/extract/filter/evaluate");
  lrsb::app::PipelineConfig cfg;
  LayoutOpts pipe_layout;
  auto* spec_opt = pipe->add_option("--spec", cfg.spec_path, "Synthesize from this spec");
  auto* matrix_opt = pipe->add_option("--matrix", cfg.matrix_path, "Start from this matrix");
  spec_opt->excludes(matrix_opt);
  pipe->add_option("--truth", cfg.truth_path, "Ground truth for --matrix")->needs(matrix_opt);
  pipe->add_option("-o,--out", cfg.out_dir, "Output directory")->required();
  pipe->add_option("--reps", cfg.reps, "Independent repetitions (seed, seed+1, ...)")
      ->check(CLI::PositiveNumber);
  pipe->add_flag("--resume", cfg.resume, "Reuse X.csv/E.csv already in the output");
  pipe->add_flag("!--no-render", cfg.render, "Skip PPM output");
  AddRecover(pipe, &cfg.recover);
  AddExtract(pipe, &cfg.extract);
  AddFilter(pipe, &cfg.filter);
  AddLayout(pipe, &pipe_layout);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const std::uint64_t seed = seed_opt.value_or(0);
  std::string stage = "args";
  try {
    if (*synth) {
      stage = "synth";
      lrsb::BiclusterDataSpec spec;
      if (!synth_kind.empty() == !synth_spec.empty()) {
        return Fail(stage + ": give exactly one of a spec file or --preset");
      }
      spec = synth_kind.empty()
                 ? lrsb::ReadDataSpec(synth_spec)
                 : lrsb::BiclusterDataSpec::Benchmark(lrsb::ParseBiclusterKind(synth_kind), 0);
      if (seed_opt) spec.seed = *seed_opt;
      lrsb::app::CmdSynth(spec, synth_out);
    } else if (*prep) {
      stage = "preprocess";
      std::vector<lrsb::app::PreprocessStep> steps;
      for (const auto& m : prep_modes) steps.push_back(lrsb::app::ParsePreprocessStep(m));
      lrsb::app::CmdPreprocess(prep_in, prep_layout.Get(), steps, prep_levels, bin_lo, bin_hi,
                               prep_out);
    } else if (*rec) {
      stage = "recover";
      lrsb::app::CmdRecover(rec_in, rec_layout.Get(), rec_flags, rec_out);
    } else if (*ext) {
      stage = "extract";
      lrsb::app::CmdExtract(ext_in, ext_layout.Get(), ext_flags, ext_data, seed, ext_out);
    } else if (*flt) {
      stage = "filter";
      lrsb::app::CmdFilter(flt_bic, flt_data, flt_layout.Get(), flt_flags, flt_out);
    } else if (*ev) {
      stage = "evaluate";
      lrsb::app::CmdEvaluate(ev_pred, ev_truth, ev_sparse, ev_threshold, ev_out);
    } else if (*emb) {
      stage = "embed";
      lrsb::app::CmdEmbed(emb_in, emb_layout.Get(), emb_dims, emb_out, emb_ppm);
    } else if (*ren) {
      stage = "render";
      lrsb::app::CmdRender(ren_in, ren_layout.Get(), ren_out, ren_cell);
    } else if (*pipe) {
      stage = "pipeline";
      cfg.layout = pipe_layout.Get();
      cfg.seed = seed_opt;
      const lrsb::Json report = lrsb::app::CmdPipeline(cfg);
      std::cout << report["summary"].dump(2) << "\n";
    }
  } catch (const StageError& e) {
    return Fail(e.what());
  } catch (const std::exception& e) {
    return Fail(stage + ": " + e.what());
  }
  return 0;
}
