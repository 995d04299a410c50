#include "c45/tree.hpp"

#include "text_util.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <tuple>

#include <boost/math/distributions/normal.hpp>
#include <json.hpp>

namespace c45 {

using detail::format_number;
using detail::format_weight;

namespace {

// Gains at or below this are treated as zero when deciding admissibility.
constexpr double kGainEps = 1e-12;

// Working row: instance index plus the (possibly scaled) weight it carries
// on the current path.
struct WRow {
  std::size_t index;
  double weight;
};

struct Context {
  const Dataset& ds;
  std::size_t class_col;
  std::size_t k;
  double min_cases;
};

double cell_of(const Context& ctx, const WRow& row, std::size_t col) {
  return ctx.ds.instances[row.index].values[col];
}

std::size_t class_of(const Context& ctx, const WRow& row) {
  double c = cell_of(ctx, row, ctx.class_col);
  if (is_missing(c)) throw DataError("instance with missing class value");
  return static_cast<std::size_t>(c);
}

Context make_context(const Dataset& ds, double min_cases) {
  const auto& cls = ds.class_spec();
  return Context{ds, *ds.class_index, cls.values.size(), min_cases};
}

std::vector<WRow> all_rows(const Dataset& ds) {
  std::vector<WRow> rows;
  rows.reserve(ds.instances.size());
  for (std::size_t i = 0; i < ds.instances.size(); ++i)
    rows.push_back({i, ds.instances[i].weight});
  return rows;
}

std::vector<double> class_weights_of(const Context& ctx, const std::vector<WRow>& rows) {
  std::vector<double> w(ctx.k, 0.0);
  for (const auto& r : rows) w[class_of(ctx, r)] += r.weight;
  return w;
}

double entropy_of(const std::vector<double>& weights, double total) {
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (double w : weights)
    if (w > 0.0) h -= (w / total) * std::log2(w / total);
  return h;
}

std::size_t majority_of(const std::vector<double>& weights) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < weights.size(); ++i)
    if (weights[i] > weights[best]) best = i;
  return best;
}

std::size_t test_arity(const Context& ctx, const SplitTest& test) {
  return test.kind == TestKind::nominal ? ctx.ds.schema[test.attr].values.size() : 2;
}

std::size_t branch_of(const SplitTest& test, double v) {
  if (test.kind == TestKind::nominal) return static_cast<std::size_t>(v);
  return v <= test.threshold ? 0 : 1;
}

void check_test(const Context& ctx, const SplitTest& test) {
  if (test.attr >= ctx.ds.schema.size()) throw DataError("test attribute out of range");
  if (test.attr == ctx.class_col) throw DataError("cannot test the class attribute");
  bool nominal = ctx.ds.schema[test.attr].is_nominal();
  if (nominal != (test.kind == TestKind::nominal))
    throw DataError("test kind does not match attribute '" +
                    ctx.ds.schema[test.attr].name + "'");
}

struct SplitEval {
  double gain = 0.0;        // scaled by the observed-weight fraction
  double split_info = 0.0;  // over the observed branch weights
  std::vector<double> branch_weights;
  bool valid = false;  // some observed weight reached the partition
};

SplitEval evaluate_split(const Context& ctx, const std::vector<WRow>& rows,
                         const SplitTest& test) {
  const std::size_t arity = test_arity(ctx, test);
  SplitEval ev;
  ev.branch_weights.assign(arity, 0.0);
  std::vector<std::vector<double>> branch_class(arity, std::vector<double>(ctx.k, 0.0));
  std::vector<double> known_class(ctx.k, 0.0);
  double total = 0.0, known = 0.0;
  for (const auto& row : rows) {
    total += row.weight;
    double v = cell_of(ctx, row, test.attr);
    if (is_missing(v)) continue;
    std::size_t b = branch_of(test, v);
    std::size_t cls = class_of(ctx, row);
    ev.branch_weights[b] += row.weight;
    branch_class[b][cls] += row.weight;
    known_class[cls] += row.weight;
    known += row.weight;
  }
  if (known <= 0.0) return ev;

  double children_info = 0.0;
  for (std::size_t b = 0; b < arity; ++b)
    if (ev.branch_weights[b] > 0.0)
      children_info += (ev.branch_weights[b] / known) *
                       entropy_of(branch_class[b], ev.branch_weights[b]);
  ev.gain = (known / total) * (entropy_of(known_class, known) - children_info);
  ev.split_info = entropy_of(ev.branch_weights, known);
  ev.valid = true;
  return ev;
}

struct NumericCut {
  double threshold = 0.0;
  double gain = 0.0;
  double left_weight = 0.0;
  double right_weight = 0.0;
};

// Scans every boundary between consecutive distinct sorted values. The
// reported threshold is the largest observed value not above the winning
// midpoint, i.e. the lower boundary value itself.
std::optional<NumericCut> scan_thresholds(const Context& ctx,
                                          const std::vector<WRow>& rows,
                                          std::size_t attr, double min_branch) {
  struct Val {
    double v;
    std::size_t cls;
    double w;
  };
  std::vector<Val> vals;
  std::vector<double> known_class(ctx.k, 0.0);
  double total = 0.0, known = 0.0;
  for (const auto& row : rows) {
    total += row.weight;
    double v = cell_of(ctx, row, attr);
    if (is_missing(v)) continue;
    vals.push_back({v, class_of(ctx, row), row.weight});
    known_class[vals.back().cls] += row.weight;
    known += row.weight;
  }
  if (vals.size() < 2 || known <= 0.0) return std::nullopt;
  std::sort(vals.begin(), vals.end(), [](const Val& a, const Val& b) { return a.v < b.v; });

  const double h_known = entropy_of(known_class, known);
  std::vector<double> left_class(ctx.k, 0.0);
  double left_w = 0.0;
  std::optional<NumericCut> best;
  for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
    left_class[vals[i].cls] += vals[i].w;
    left_w += vals[i].w;
    if (vals[i].v == vals[i + 1].v) continue;
    double right_w = known - left_w;
    if (left_w < min_branch || right_w < min_branch) continue;
    double h_left = entropy_of(left_class, left_w);
    std::vector<double> right_class(ctx.k);
    for (std::size_t j = 0; j < ctx.k; ++j) right_class[j] = known_class[j] - left_class[j];
    double h_right = entropy_of(right_class, right_w);
    double gain = (known / total) *
                  (h_known - (left_w / known) * h_left - (right_w / known) * h_right);
    // near-ties keep the smaller threshold
    if (!best || gain > best->gain + kGainEps)
      best = NumericCut{vals[i].v, gain, left_w, right_w};
  }
  return best;
}

struct Candidate {
  SplitTest test;
  double gain;
  double ratio;
};

std::optional<SplitTest> select_split_rows(const Context& ctx,
                                           const std::vector<WRow>& rows) {
  std::vector<Candidate> candidates;
  for (std::size_t a = 0; a < ctx.ds.schema.size(); ++a) {
    if (a == ctx.class_col) continue;
    if (ctx.ds.schema[a].is_nominal()) {
      SplitTest test{TestKind::nominal, a, 0.0};
      SplitEval ev = evaluate_split(ctx, rows, test);
      if (!ev.valid || ev.gain <= kGainEps || ev.split_info <= 0.0) continue;
      int usable = 0;
      for (double w : ev.branch_weights)
        if (w >= ctx.min_cases) ++usable;
      if (usable < 2) continue;
      candidates.push_back({test, ev.gain, ev.gain / ev.split_info});
    } else {
      auto cut = scan_thresholds(ctx, rows, a, ctx.min_cases);
      if (!cut || cut->gain <= kGainEps) continue;
      double si = entropy_of({cut->left_weight, cut->right_weight},
                             cut->left_weight + cut->right_weight);
      if (si <= 0.0) continue;
      candidates.push_back(
          {SplitTest{TestKind::numeric_le, a, cut->threshold}, cut->gain, cut->gain / si});
    }
  }
  if (candidates.empty()) return std::nullopt;

  double mean_gain = 0.0, max_gain = 0.0;
  for (const auto& c : candidates) {
    mean_gain += c.gain;
    max_gain = std::max(max_gain, c.gain);
  }
  mean_gain = std::min(mean_gain / candidates.size(), max_gain);

  const Candidate* best = nullptr;
  for (const auto& c : candidates) {
    if (c.gain < mean_gain) continue;  // low-gain tests cannot win on ratio alone
    if (!best || c.ratio > best->ratio) best = &c;
  }
  return best->test;
}

DecisionNode make_leaf(std::vector<double> class_weights, std::size_t cls) {
  DecisionNode node;
  node.weight = std::accumulate(class_weights.begin(), class_weights.end(), 0.0);
  node.class_value = cls;
  node.class_weights = std::move(class_weights);
  return node;
}

DecisionNode build_rec(const Context& ctx, const std::vector<WRow>& rows,
                       const InductionParams& params) {
  std::vector<double> cw = class_weights_of(ctx, rows);
  double total = std::accumulate(cw.begin(), cw.end(), 0.0);
  std::size_t maj = majority_of(cw);

  bool pure = true;
  for (std::size_t j = 0; j < cw.size(); ++j)
    if (j != maj && cw[j] != 0.0) pure = false;
  if (pure || total < 2.0 * params.min_cases) return make_leaf(std::move(cw), maj);

  auto split = select_split_rows(ctx, rows);
  if (!split) return make_leaf(std::move(cw), maj);

  const std::size_t arity = test_arity(ctx, *split);
  std::vector<std::vector<WRow>> branch_rows(arity);
  std::vector<double> branch_w(arity, 0.0);
  std::vector<WRow> missing_rows;
  for (const auto& row : rows) {
    double v = cell_of(ctx, row, split->attr);
    if (is_missing(v)) {
      missing_rows.push_back(row);
      continue;
    }
    std::size_t b = branch_of(*split, v);
    branch_rows[b].push_back(row);
    branch_w[b] += row.weight;
  }
  double known = std::accumulate(branch_w.begin(), branch_w.end(), 0.0);
  // missing values descend every branch, scaled by the branch weight fraction
  for (const auto& row : missing_rows)
    for (std::size_t b = 0; b < arity; ++b) {
      double f = branch_w[b] / known;
      if (f > 0.0) branch_rows[b].push_back({row.index, row.weight * f});
    }

  DecisionNode node;
  node.test = *split;
  node.weight = total;
  node.children.reserve(arity);
  for (std::size_t b = 0; b < arity; ++b) {
    if (branch_rows[b].empty()) {
      // an empty partition becomes a leaf carrying the parent's majority
      DecisionNode leaf;
      leaf.class_value = maj;
      leaf.class_weights.assign(ctx.k, 0.0);
      node.children.push_back(std::move(leaf));
    } else {
      node.children.push_back(build_rec(ctx, branch_rows[b], params));
    }
  }
  return node;
}

void check_params(const InductionParams& params) {
  if (params.min_cases < 1.0) throw std::invalid_argument("min_cases must be >= 1");
  if (params.confidence_factor <= 0.0 || params.confidence_factor >= 1.0)
    throw std::invalid_argument("confidence_factor must lie in (0,1)");
}

double add_errs(double n, double e, double cf) {
  if (e < 1.0) {
    double base = n * (1.0 - std::pow(cf, 1.0 / n));
    if (e == 0.0) return base;
    return base + e * (add_errs(n, 1.0, cf) - base);
  }
  if (e + 0.5 >= n) return std::max(n - e, 0.0);
  const double z = boost::math::quantile(boost::math::normal_distribution<double>(), 1.0 - cf);
  const double f = (e + 0.5) / n;
  const double r =
      (f + z * z / (2.0 * n) + z * std::sqrt(f / n - f * f / n + z * z / (4.0 * n * n))) /
      (1.0 + z * z / n);
  return r * n - e;
}

void subtree_stats(const DecisionNode& nd, double cf, double& est,
                   std::vector<double>& cw) {
  if (nd.is_leaf()) {
    est += pessimistic_errors(nd.n(), nd.e(), cf);
    if (cw.empty()) cw.assign(nd.class_weights.size(), 0.0);
    for (std::size_t j = 0; j < nd.class_weights.size(); ++j) cw[j] += nd.class_weights[j];
    return;
  }
  for (const auto& ch : nd.children) subtree_stats(ch, cf, est, cw);
}

DecisionNode prune_rec(DecisionNode nd, double cf) {
  if (nd.is_leaf()) return nd;
  for (auto& ch : nd.children) ch = prune_rec(std::move(ch), cf);

  double subtree_est = 0.0;
  std::vector<double> cw;
  subtree_stats(nd, cf, subtree_est, cw);
  std::size_t maj = majority_of(cw);
  double n = std::accumulate(cw.begin(), cw.end(), 0.0);
  double leaf_est = pessimistic_errors(n, n - cw[maj], cf);
  if (leaf_est <= subtree_est + 0.1) return make_leaf(std::move(cw), maj);
  return nd;
}

std::vector<double> class_mix(const DecisionNode& nd, const Instance& inst) {
  if (nd.is_leaf()) {
    std::vector<double> d(nd.class_weights.size(), 0.0);
    if (nd.weight <= 0.0) {
      d[nd.class_value] = 1.0;
    } else {
      for (std::size_t j = 0; j < d.size(); ++j) d[j] = nd.class_weights[j] / nd.weight;
    }
    return d;
  }
  const SplitTest& test = *nd.test;
  if (test.attr >= inst.values.size())
    throw DataError("instance does not conform to the tree's schema");
  double v = inst.values[test.attr];
  if (is_missing(v)) {
    double total = 0.0;
    for (const auto& ch : nd.children) total += ch.weight;
    std::vector<double> acc;
    for (const auto& ch : nd.children) {
      double f = total > 0.0 ? ch.weight / total : 1.0 / nd.children.size();
      if (f <= 0.0) continue;
      auto d = class_mix(ch, inst);
      if (acc.empty()) acc.assign(d.size(), 0.0);
      for (std::size_t j = 0; j < d.size(); ++j) acc[j] += f * d[j];
    }
    return acc;
  }
  std::size_t b = branch_of(test, v);
  if (b >= nd.children.size())
    throw DataError("instance value out of range for the tree's schema");
  return class_mix(nd.children[b], inst);
}

std::string leaf_annotation(const DecisionNode& leaf, const AttributeSpec& cls) {
  std::string s = ": " + cls.values[leaf.class_value] + " (" + format_weight(leaf.n());
  if (leaf.e() > 1e-9) s += "/" + format_weight(leaf.e());
  return s + ")";
}

std::string branch_label(const SplitTest& test, std::size_t branch,
                         const std::vector<AttributeSpec>& schema) {
  const auto& attr = schema[test.attr];
  if (test.kind == TestKind::nominal) return attr.name + " = " + attr.values[branch];
  return attr.name + (branch == 0 ? " <= " : " > ") + format_number(test.threshold);
}

void render_branches(std::string& out, const DecisionNode& node, std::size_t depth,
                     const std::vector<AttributeSpec>& schema, const AttributeSpec& cls) {
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const auto& child = node.children[i];
    std::string line;
    for (std::size_t d = 0; d < depth; ++d) line += "| ";
    line += branch_label(*node.test, i, schema);
    if (child.is_leaf()) line += leaf_annotation(child, cls);
    out += line + "\n";
    if (!child.is_leaf()) render_branches(out, child, depth + 1, schema, cls);
  }
}

std::string escape_dot(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\\' || c == '"') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

double DecisionNode::e() const {
  if (class_weights.empty()) return 0.0;
  return weight - class_weights[class_value];
}

double entropy(const ClassFrequency& freq) {
  return entropy_of(freq.weights, freq.total);
}

double information_gain(const Dataset& ds, const SplitTest& test) {
  Context ctx = make_context(ds, 0.0);
  check_test(ctx, test);
  SplitEval ev = evaluate_split(ctx, all_rows(ds), test);
  return ev.valid ? ev.gain : 0.0;
}

double split_info(const std::vector<double>& partition_weights) {
  double total = 0.0;
  for (double w : partition_weights) {
    if (w < 0.0) throw DataError("negative partition weight");
    total += w;
  }
  if (total <= 0.0) throw DataError("split info of an all-zero partition");
  return entropy_of(partition_weights, total);
}

double gain_ratio(const Dataset& ds, const SplitTest& test) {
  Context ctx = make_context(ds, 0.0);
  check_test(ctx, test);
  SplitEval ev = evaluate_split(ctx, all_rows(ds), test);
  if (!ev.valid || ev.split_info <= 0.0)
    throw DataError("gain ratio of a single-branch partition");
  return ev.gain / ev.split_info;
}

std::optional<ThresholdChoice> best_threshold(const Dataset& ds, std::size_t attr,
                                              double min_branch_weight) {
  Context ctx = make_context(ds, 0.0);
  if (attr >= ds.schema.size()) throw DataError("attribute index out of range");
  if (!ds.schema[attr].is_numeric())
    throw DataError("threshold search on non-numeric attribute '" +
                    ds.schema[attr].name + "'");
  auto cut = scan_thresholds(ctx, all_rows(ds), attr, min_branch_weight);
  if (!cut) return std::nullopt;
  return ThresholdChoice{cut->threshold, cut->gain};
}

std::optional<ThresholdChoice> best_threshold(const Dataset& ds, const std::string& attr,
                                              double min_branch_weight) {
  return best_threshold(ds, ds.attribute_index(attr), min_branch_weight);
}

std::optional<SplitTest> select_split(const Dataset& ds, const InductionParams& params) {
  check_params(params);
  Context ctx = make_context(ds, params.min_cases);
  return select_split_rows(ctx, all_rows(ds));
}

DecisionNode build_tree(const Dataset& ds, const InductionParams& params) {
  check_params(params);
  Context ctx = make_context(ds, params.min_cases);
  if (ds.instances.empty() || ds.total_weight() <= 0.0)
    throw DataError("cannot induce a tree from an empty dataset");
  DecisionNode root = build_rec(ctx, all_rows(ds), params);
  if (params.prune_enabled) root = prune_rec(std::move(root), params.confidence_factor);
  return root;
}

double pessimistic_errors(double n, double e, double confidence_factor) {
  if (n <= 0.0) return 0.0;
  return std::max(e, 0.0) + add_errs(n, std::max(e, 0.0), confidence_factor);
}

DecisionNode prune(const DecisionNode& node, double confidence_factor) {
  if (confidence_factor <= 0.0 || confidence_factor >= 1.0)
    throw std::invalid_argument("confidence_factor must lie in (0,1)");
  return prune_rec(node, confidence_factor);
}

ClassifyResult classify(const DecisionNode& tree, const Instance& inst) {
  ClassifyResult res;
  res.distribution = class_mix(tree, inst);
  res.class_value = majority_of(res.distribution);
  return res;
}

Model train(const Dataset& ds, const InductionParams& params) {
  Model m;
  m.schema = ds.schema;
  m.class_index = *ds.class_index;
  m.root = build_tree(ds, params);
  return m;
}

std::vector<Instance> conform_instances(const Model& m, const Dataset& data) {
  std::vector<int> col(m.schema.size(), -1);
  for (std::size_t i = 0; i < m.schema.size(); ++i) {
    if (i == m.class_index) {
      for (std::size_t j = 0; j < data.schema.size(); ++j)
        if (data.schema[j].name == m.schema[i].name) col[i] = static_cast<int>(j);
      continue;  // the class column is optional in prediction data
    }
    col[i] = static_cast<int>(data.attribute_index(m.schema[i].name));
  }

  std::vector<Instance> out;
  out.reserve(data.instances.size());
  for (const auto& inst : data.instances) {
    Instance conformed;
    conformed.weight = inst.weight;
    conformed.values.assign(m.schema.size(), missing_cell());
    for (std::size_t i = 0; i < m.schema.size(); ++i) {
      if (col[i] < 0) continue;
      double cell = inst.values[col[i]];
      if (is_missing(cell)) continue;
      const auto& model_attr = m.schema[i];
      const auto& data_attr = data.schema[col[i]];
      if (model_attr.is_numeric()) {
        if (data_attr.is_numeric()) {
          conformed.values[i] = cell;
        } else {
          double v;
          const std::string& token = data_attr.values[static_cast<std::size_t>(cell)];
          if (!detail::parse_number(token, v))
            throw DataError("value '" + token + "' of attribute '" + model_attr.name +
                            "' is not numeric");
          conformed.values[i] = v;
        }
      } else {
        std::string token = data_attr.is_nominal()
                                ? data_attr.values[static_cast<std::size_t>(cell)]
                                : format_number(cell);
        int idx = model_attr.value_index(token);
        if (idx < 0)
          throw DataError("value '" + token + "' of attribute '" + model_attr.name +
                          "' is unknown to the model");
        conformed.values[i] = static_cast<double>(idx);
      }
    }
    out.push_back(std::move(conformed));
  }
  return out;
}

std::string render_text(const Model& m) {
  const auto& cls = m.class_spec();
  if (m.root.is_leaf()) return leaf_annotation(m.root, cls) + "\n";
  std::string out;
  render_branches(out, m.root, 0, m.schema, cls);
  return out;
}

std::string render_graph(const Model& m) {
  const auto& cls = m.class_spec();
  std::string nodes, edges;
  std::size_t next_id = 0;

  auto visit = [&](auto&& self, const DecisionNode& nd) -> std::size_t {
    std::size_t id = next_id++;
    std::string label;
    if (nd.is_leaf()) {
      label = cls.values[nd.class_value] + " (" + format_weight(nd.n());
      if (nd.e() > 1e-9) label += "/" + format_weight(nd.e());
      label += ")";
    } else {
      label = m.schema[nd.test->attr].name;
    }
    nodes += "  n" + std::to_string(id) + " [label=\"" + escape_dot(label) + "\"" +
             (nd.is_leaf() ? ", shape=box" : "") + "];\n";
    for (std::size_t i = 0; i < nd.children.size(); ++i) {
      std::size_t child_id = self(self, nd.children[i]);
      const auto& attr = m.schema[nd.test->attr];
      std::string cond = nd.test->kind == TestKind::nominal
                             ? "= " + attr.values[i]
                             : (i == 0 ? "<= " : "> ") + format_number(nd.test->threshold);
      edges += "  n" + std::to_string(id) + " -> n" + std::to_string(child_id) +
               " [label=\"" + escape_dot(cond) + "\"];\n";
    }
    return id;
  };
  visit(visit, m.root);
  return "digraph tree {\n" + nodes + edges + "}\n";
}

namespace {

using nlohmann::json;

json node_to_json(const DecisionNode& nd, const Model& m) {
  json j;
  if (nd.is_leaf()) {
    j["class"] = m.class_spec().values[nd.class_value];
    j["n"] = nd.n();
    j["e"] = nd.e();
    j["dist"] = nd.class_weights;
    return j;
  }
  const auto& attr = m.schema[nd.test->attr];
  json t;
  t["attr"] = attr.name;
  if (nd.test->kind == TestKind::nominal) {
    t["op"] = "=";
  } else {
    t["op"] = "<=";
    t["threshold"] = nd.test->threshold;
  }
  j["test"] = std::move(t);
  j["weight"] = nd.weight;
  j["children"] = json::array();
  for (const auto& ch : nd.children) j["children"].push_back(node_to_json(ch, m));
  return j;
}

DecisionNode node_from_json(const json& j, const Model& m) {
  const auto& cls = m.class_spec();
  if (j.contains("class")) {
    DecisionNode leaf;
    int idx = cls.value_index(j.at("class").get<std::string>());
    if (idx < 0) throw ModelError("leaf class not in the class value list");
    leaf.class_value = static_cast<std::size_t>(idx);
    double n = j.at("n").get<double>();
    double e = j.at("e").get<double>();
    auto dist = j.at("dist").get<std::vector<double>>();
    if (n < 0.0 || e < -1e-9 || e > n + 1e-9) throw ModelError("invalid leaf counts");
    if (dist.size() != cls.values.size()) throw ModelError("leaf distribution size mismatch");
    double sum = 0.0;
    for (double w : dist) {
      if (w < 0.0) throw ModelError("negative leaf class weight");
      sum += w;
    }
    if (std::abs(sum - n) > 1e-6 * std::max(1.0, n))
      throw ModelError("leaf distribution does not sum to n");
    leaf.weight = n;
    leaf.class_weights = std::move(dist);
    return leaf;
  }
  if (!j.contains("test")) throw ModelError("tree node is neither a test nor a leaf");
  const json& t = j.at("test");
  std::string name = t.at("attr").get<std::string>();
  std::string op = t.at("op").get<std::string>();
  std::size_t attr_idx = m.schema.size();
  for (std::size_t i = 0; i < m.schema.size(); ++i)
    if (m.schema[i].name == name) attr_idx = i;
  if (attr_idx == m.schema.size()) throw ModelError("test attribute '" + name + "' not in schema");

  DecisionNode nd;
  SplitTest test;
  test.attr = attr_idx;
  std::size_t arity;
  if (op == "=") {
    if (!m.schema[attr_idx].is_nominal())
      throw ModelError("'=' test on numeric attribute '" + name + "'");
    test.kind = TestKind::nominal;
    arity = m.schema[attr_idx].values.size();
  } else if (op == "<=") {
    if (!m.schema[attr_idx].is_numeric())
      throw ModelError("'<=' test on nominal attribute '" + name + "'");
    test.kind = TestKind::numeric_le;
    test.threshold = t.at("threshold").get<double>();
    arity = 2;
  } else {
    throw ModelError("unknown test op '" + op + "'");
  }
  const json& children = j.at("children");
  if (!children.is_array() || children.size() != arity)
    throw ModelError("child count does not match test arity for '" + name + "'");
  nd.test = test;
  nd.weight = j.at("weight").get<double>();
  if (nd.weight < 0.0) throw ModelError("negative node weight");
  for (const auto& cj : children) nd.children.push_back(node_from_json(cj, m));
  return nd;
}

}  // namespace

std::string save_model(const Model& m) {
  json j;
  j["format"] = "c45-tree";
  j["version"] = 1;
  j["schema"] = json::array();
  for (const auto& attr : m.schema) {
    json a;
    a["name"] = attr.name;
    a["kind"] = attr.is_nominal() ? "nominal" : "numeric";
    if (attr.is_nominal()) a["values"] = attr.values;
    j["schema"].push_back(std::move(a));
  }
  j["class"] = m.class_spec().name;
  j["tree"] = node_to_json(m.root, m);
  return j.dump(2) + "\n";
}

Model load_model(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& ex) {
    throw ModelError(std::string("malformed model JSON: ") + ex.what());
  }
  try {
    if (j.value("format", "") != "c45-tree") throw ModelError("not a c45-tree model file");
    Model m;
    for (const auto& a : j.at("schema")) {
      AttributeSpec attr;
      attr.name = a.at("name").get<std::string>();
      std::string kind = a.at("kind").get<std::string>();
      if (kind == "nominal") {
        attr.kind = AttributeKind::nominal;
        attr.values = a.at("values").get<std::vector<std::string>>();
        if (attr.values.empty()) throw ModelError("nominal attribute without values");
      } else if (kind == "numeric") {
        attr.kind = AttributeKind::numeric;
      } else {
        throw ModelError("unknown attribute kind '" + kind + "'");
      }
      for (const auto& prev : m.schema)
        if (prev.name == attr.name) throw ModelError("duplicate attribute '" + attr.name + "'");
      m.schema.push_back(std::move(attr));
    }
    std::string cls = j.at("class").get<std::string>();
    std::size_t cls_idx = m.schema.size();
    for (std::size_t i = 0; i < m.schema.size(); ++i)
      if (m.schema[i].name == cls) cls_idx = i;
    if (cls_idx == m.schema.size()) throw ModelError("class attribute '" + cls + "' not in schema");
    if (!m.schema[cls_idx].is_nominal()) throw ModelError("class attribute must be nominal");
    m.class_index = cls_idx;
    m.root = node_from_json(j.at("tree"), m);
    return m;
  } catch (const json::exception& ex) {
    throw ModelError(std::string("malformed model JSON: ") + ex.what());
  }
}

Model load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_model(ss.str());
}

}  // namespace c45
