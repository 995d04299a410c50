#ifndef C45_TREE_HPP
#define C45_TREE_HPP

#include <optional>
#include <string>
#include <vector>

#include "c45/dataset.hpp"

namespace c45 {

struct InductionParams {
  double min_cases = 2.0;          // minimum branch weight for a usable split
  double confidence_factor = 0.25; // pessimistic error confidence level
  bool prune_enabled = true;
};

enum class TestKind { nominal, numeric_le };

/// A node's branching test: one branch per value of a nominal attribute, or
/// the (<= threshold, > threshold) pair for a numeric one.
struct SplitTest {
  TestKind kind = TestKind::nominal;
  std::size_t attr = 0;
  double threshold = 0.0;  // numeric_le only
};

struct DecisionNode {
  std::optional<SplitTest> test;   // empty for leaves
  std::vector<DecisionNode> children;
  double weight = 0.0;             // training weight that reached this node

  // leaf payload: predicted class and per-class training weight
  std::size_t class_value = 0;
  std::vector<double> class_weights;

  bool is_leaf() const { return !test.has_value(); }
  double n() const { return weight; }
  double e() const;  // misclassified weight at a leaf
};

// Split criteria. Instances with a missing value on the tested attribute are
// excluded from the partition, and the gain is scaled by the observed-weight
// fraction.
double entropy(const ClassFrequency& freq);
double information_gain(const Dataset& ds, const SplitTest& test);
double split_info(const std::vector<double>& partition_weights);
double gain_ratio(const Dataset& ds, const SplitTest& test);

struct ThresholdChoice {
  double threshold = 0.0;  // largest observed value <= the winning midpoint
  double gain = 0.0;
};

/// Scans every midpoint between consecutive distinct values of a numeric
/// attribute. Cuts leaving either side below min_branch_weight are skipped;
/// ties go to the smaller threshold. Empty when no cut is admissible.
std::optional<ThresholdChoice> best_threshold(const Dataset& ds, std::size_t attr,
                                              double min_branch_weight = 0.0);
std::optional<ThresholdChoice> best_threshold(const Dataset& ds,
                                              const std::string& attr,
                                              double min_branch_weight = 0.0);

/// C4.5 split selection: among admissible tests (positive gain, positive
/// split info, at least two branches of min_cases weight), keeps those with
/// gain at or above the mean and returns the best gain ratio. Ties break by
/// schema order. Empty when nothing is admissible.
std::optional<SplitTest> select_split(const Dataset& ds, const InductionParams& params);

/// Grows a tree by recursive partitioning and, when enabled, applies
/// pessimistic pruning. Instances with a missing test value descend into
/// every child with their weight scaled by the child's weight fraction.
DecisionNode build_tree(const Dataset& ds, const InductionParams& params);

/// Bottom-up pessimistic pruning: a subtree collapses to a majority-class
/// leaf when the leaf's estimated error is no worse than the subtree's
/// summed estimate plus 0.1.
DecisionNode prune(const DecisionNode& node, double confidence_factor);

/// Upper-confidence-bound error count for a leaf with weight n and
/// misclassified weight e (normal-approximation binomial bound).
double pessimistic_errors(double n, double e, double confidence_factor);

struct ClassifyResult {
  std::size_t class_value = 0;
  std::vector<double> distribution;  // per class, sums to 1
};

/// Routes an instance down the tree. At a missing test value the instance
/// descends every child and the leaf distributions are mixed by the
/// children's training-weight fractions.
ClassifyResult classify(const DecisionNode& tree, const Instance& inst);

/// A trained tree together with the schema it was induced from.
struct Model {
  std::vector<AttributeSpec> schema;
  std::size_t class_index = 0;
  DecisionNode root;

  const AttributeSpec& class_spec() const { return schema[class_index]; }
};

Model train(const Dataset& ds, const InductionParams& params);

/// Classifies instances from a foreign dataset by matching the model's
/// attributes by name and remapping nominal values through the model's value
/// lists. Throws DataError when an attribute or value cannot be matched.
std::vector<Instance> conform_instances(const Model& m, const Dataset& data);

// Rendering. Text output is the branch-per-line indent grammar with
// "(n/e)" one-decimal leaf annotations; graph output is a DOT digraph with
// preorder node ids.
std::string render_text(const Model& m);
std::string render_graph(const Model& m);

// JSON model serialization; the schema is echoed so inputs can be validated.
std::string save_model(const Model& m);
Model load_model(const std::string& json_text);
Model load_model_file(const std::string& path);

}  // namespace c45

#endif  // C45_TREE_HPP
