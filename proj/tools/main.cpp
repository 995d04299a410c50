// Command-line front end: load -> drop attributes -> assign class ->
// train / cross-validate / classify, plus feature derivation, synthetic data
// generation and tree rendering.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "c45/dataset.hpp"
#include "c45/eval.hpp"
#include "c45/features.hpp"
#include "c45/tree.hpp"
#include "text_util.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitModel = 4;

// Output is assembled fully in memory and moved into place, so a failing
// run never leaves a partial file behind.
void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw c45::DataError("cannot write to " + tmp);
    out << content;
    if (!out.flush()) throw c45::DataError("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::vector<std::string> parse_drop_list(const std::string& csv) {
  std::vector<std::string> names;
  for (const auto& cell : c45::detail::split_cells(csv))
    if (!cell.empty()) names.push_back(cell);
  return names;
}

struct Options {
  std::string data_path;
  std::string model_path;
  std::string out_path;
  std::string class_attr = "Ad_STATUS";
  std::string drop_csv = "SId,GEN,Sem_GPA,CUM_GPA";
  std::size_t folds = 10;
  std::uint64_t seed = 1;
  double min_cases = 2.0;
  double cf = 0.25;
  bool no_prune = false;
  double noise = 0.0;
  std::size_t n = 1000;
  std::string format = "text";
};

c45::InductionParams induction_params(const Options& opt) {
  if (opt.min_cases < 1.0) throw std::invalid_argument("--min-cases must be >= 1");
  if (opt.cf <= 0.0 || opt.cf >= 1.0) throw std::invalid_argument("--cf must lie in (0,1)");
  return {opt.min_cases, opt.cf, !opt.no_prune};
}

c45::Dataset load_training_data(const Options& opt) {
  auto drops = parse_drop_list(opt.drop_csv);
  for (const auto& name : drops)
    if (name == opt.class_attr)
      throw std::invalid_argument("--drop must not contain the class attribute");
  c45::Dataset ds = c45::load_dataset(opt.data_path);
  ds = c45::remove_attributes(ds, drops);
  return c45::assign_class(ds, opt.class_attr);
}

int cmd_train(const Options& opt) {
  c45::Dataset ds = load_training_data(opt);
  c45::Model model = c45::train(ds, induction_params(opt));
  write_output(opt.model_path, c45::save_model(model));
  return 0;
}

int cmd_evaluate(const Options& opt) {
  if (opt.folds < 2) throw std::invalid_argument("--folds must be at least 2");
  if (opt.format != "text" && opt.format != "json")
    throw std::invalid_argument("--format must be text or json");
  c45::Dataset ds = load_training_data(opt);
  c45::EvalReport report =
      c45::cross_validate(ds, opt.folds, opt.seed, induction_params(opt));
  write_output(opt.out_path,
               opt.format == "json" ? c45::report_json(report) : c45::report_text(report));
  return 0;
}

int cmd_classify(const Options& opt) {
  c45::Model model = c45::load_model_file(opt.model_path);
  c45::Dataset data = c45::load_dataset(opt.data_path);
  auto instances = c45::conform_instances(model, data);

  const auto& classes = model.class_spec().values;
  std::string out = "predicted";
  for (const auto& cls : classes) out += ",p_" + cls;
  out += "\n";
  for (const auto& inst : instances) {
    c45::ClassifyResult r = c45::classify(model.root, inst);
    out += classes[r.class_value];
    for (double p : r.distribution) out += "," + c45::detail::format_number(p);
    out += "\n";
  }
  write_output(opt.out_path, out);
  return 0;
}

int cmd_features(const Options& opt) {
  std::ifstream in(opt.data_path);
  if (!in) throw c45::DataError("cannot open data file: " + opt.data_path);
  auto students = c45::parse_course_csv(in);
  write_output(opt.out_path, c45::derive_features_csv(students));
  return 0;
}

int cmd_generate(const Options& opt) {
  if (opt.n < 1) throw std::invalid_argument("--n must be at least 1");
  if (opt.noise < 0.0 || opt.noise > 1.0)
    throw std::invalid_argument("--noise must lie in [0,1]");
  auto records = c45::generate_synthetic(opt.n, opt.seed, opt.noise);
  write_output(opt.out_path, c45::records_to_csv(records));
  return 0;
}

int cmd_render(const Options& opt) {
  if (opt.format != "text" && opt.format != "dot")
    throw std::invalid_argument("--format must be text or dot");
  c45::Model model = c45::load_model_file(opt.model_path);
  write_output(opt.out_path, opt.format == "dot" ? c45::render_graph(model)
                                                 : c45::render_text(model));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"C4.5 decision-tree toolkit for academic advising risk classification"};
  app.require_subcommand(1);
  Options opt;

  auto add_induction_flags = [&](CLI::App* cmd) {
    cmd->add_option("--min-cases", opt.min_cases, "Minimum branch weight for a split");
    cmd->add_option("--cf", opt.cf, "Pruning confidence factor in (0,1)");
    cmd->add_flag("--no-prune", opt.no_prune, "Disable pessimistic pruning");
  };
  auto add_data_flags = [&](CLI::App* cmd) {
    cmd->add_option("--data", opt.data_path, "Input data file (CSV or @attribute header)")
        ->required();
    cmd->add_option("--class", opt.class_attr, "Class attribute name");
    cmd->add_option("--drop", opt.drop_csv, "Comma-separated attributes to remove");
  };

  CLI::App* train = app.add_subcommand("train", "Induce a tree and save it as JSON");
  add_data_flags(train);
  train->add_option("--model", opt.model_path, "Output model path")->required();
  add_induction_flags(train);

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Stratified cross-validation report");
  add_data_flags(evaluate);
  evaluate->add_option("--folds", opt.folds, "Number of folds");
  evaluate->add_option("--seed", opt.seed, "Fold shuffle seed");
  add_induction_flags(evaluate);
  evaluate->add_option("--format", opt.format, "Report format: text | json");
  evaluate->add_option("--out", opt.out_path, "Report output path (default stdout)");

  CLI::App* classify = app.add_subcommand("classify", "Predict classes for a data file");
  classify->add_option("--data", opt.data_path, "Input data file")->required();
  classify->add_option("--model", opt.model_path, "Trained model path")->required();
  classify->add_option("--out", opt.out_path, "Prediction CSV path (default stdout)");

  CLI::App* features =
      app.add_subcommand("features", "Derive advising attributes from course records");
  features->add_option("--data", opt.data_path, "Course-record CSV")->required();
  features->add_option("--out", opt.out_path, "Derived CSV path (default stdout)");

  CLI::App* generate = app.add_subcommand("generate", "Write a synthetic advising CSV");
  generate->add_option("--n", opt.n, "Number of records");
  generate->add_option("--seed", opt.seed, "Generator seed");
  generate->add_option("--noise", opt.noise, "Label noise rate in [0,1]");
  generate->add_option("--out", opt.out_path, "CSV output path (default stdout)");

  CLI::App* render = app.add_subcommand("render", "Print a saved tree as text or DOT");
  render->add_option("--model", opt.model_path, "Trained model path")->required();
  render->add_option("--format", opt.format, "Output format: text | dot");
  render->add_option("--out", opt.out_path, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (train->parsed()) return cmd_train(opt);
    if (evaluate->parsed()) return cmd_evaluate(opt);
    if (classify->parsed()) return cmd_classify(opt);
    if (features->parsed()) return cmd_features(opt);
    if (generate->parsed()) return cmd_generate(opt);
    if (render->parsed()) return cmd_render(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const c45::ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kExitModel;
  } catch (const c45::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
