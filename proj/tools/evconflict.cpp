// evconflict: score response traces by evidential conflict, evaluate score
// tables, self-check the closed forms, and generate synthetic datasets.

#include <algorithm>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "evconflict/commands.hpp"
#include "evconflict/error.hpp"

namespace {

using evc::cli::kUsage;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evidential-conflict hallucination scoring"};
  app.require_subcommand(1);

  // score
  evc::cli::ScoreOptions score;
  std::string metric_list = "all";
  score.threads = std::max(1u, std::thread::hardware_concurrency());
  auto* score_app = app.add_subcommand("score", "Score ECT1 traces against ECP1 parameters into a CSV table");
  score_app->add_option("--params", score.params, "ECP1 parameter file")->required();
  score_app->add_option("--traces", score.traces, "ECT1 trace file")->required();
  score_app->add_option("--out", score.out, "output CSV")->required();
  score_app->add_option("--metrics", metric_list, "comma list of kappa,pe,ln_pe,ps,lps,length or 'all'")
      ->capture_default_str();
  score_app->add_option("--threads", score.threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();

  // eval
  evc::cli::EvalOptions eval;
  std::string metric_name = "kappa_max";
  auto* eval_app = app.add_subcommand("eval", "Evaluate one score column against the labels");
  eval_app->add_option("--scores", eval.scores, "score CSV produced by 'score'")->required();
  eval_app->add_option("--out", eval.out, "JSON report path");
  eval_app->add_option("--metric", metric_name, "kappa_max, pe, ln_pe, ps, lps or length")->capture_default_str();
  eval_app->add_option("--fpr", eval.fpr, "false-positive rate for the fixed-FPR block")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  // oracle
  evc::oracle::OracleConfig oracle;
  auto* oracle_app = app.add_subcommand("oracle", "Check closed forms against power-set combination");
  oracle_app->add_option("--cases", oracle.cases, "number of random cases")->capture_default_str();
  oracle_app->add_option("--max-frame", oracle.max_frame, "largest frame size (<= 12)")->capture_default_str();
  oracle_app->add_option("--seed", oracle.seed, "random seed")->capture_default_str();

  // synth
  evc::io::SynthConfig synth;
  std::string synth_params;
  std::string synth_traces;
  auto* synth_app = app.add_subcommand("synth", "Write a synthetic ECP1/ECT1 dataset");
  synth_app->add_option("--params", synth_params, "output ECP1 file")->required();
  synth_app->add_option("--traces", synth_traces, "output ECT1 file")->required();
  synth_app->add_option("--vocab", synth.vocab_size, "vocabulary size I")->capture_default_str();
  synth_app->add_option("--features", synth.feature_dim, "feature dimension J")->capture_default_str();
  synth_app->add_option("--n", synth.n_responses, "number of responses")->capture_default_str();
  synth_app->add_option("--max-tokens", synth.max_tokens, "longest response")->capture_default_str();
  synth_app->add_option("--hallucination-rate", synth.hallucination_rate, "fraction of hallucinated responses")
      ->capture_default_str();
  synth_app->add_option("--separation", synth.separation, "0 = indistinguishable, 1 = disjoint")
      ->capture_default_str();
  synth_app->add_option("--seed", synth.seed, "random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*score_app) {
    try {
      score.metrics = evc::cli::parse_metric_list(metric_list);
    } catch (const evc::Error& e) {
      std::cerr << "error [usage]: " << e.what() << '\n';
      return kUsage;
    }
    return evc::cli::score_cmd(score, std::cerr);
  }
  if (*eval_app) {
    const auto m = evc::metric_from_name(metric_name);
    if (!m) {
      std::cerr << "error [usage]: unknown metric \"" << metric_name << "\"\n";
      return kUsage;
    }
    eval.metric = *m;
    return evc::cli::eval_cmd(eval, std::cout, std::cerr);
  }
  if (*oracle_app) return evc::cli::oracle_cmd(oracle, std::cout, std::cerr);
  if (*synth_app) return evc::cli::synth_cmd(synth, synth_params, synth_traces, std::cerr);
  return kUsage;
}
