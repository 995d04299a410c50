// Hand-built trees and datasets shared by the unit and acceptance suites.
#ifndef C45_TEST_FIXTURES_HPP
#define C45_TEST_FIXTURES_HPP

#include <string>
#include <vector>

#include "c45/tree.hpp"

namespace fixtures {

inline c45::DecisionNode leaf(std::size_t cls, std::vector<double> class_weights) {
  c45::DecisionNode nd;
  nd.class_value = cls;
  nd.class_weights = std::move(class_weights);
  for (double w : nd.class_weights) nd.weight += w;
  return nd;
}

inline c45::DecisionNode internal(c45::SplitTest test,
                                  std::vector<c45::DecisionNode> children) {
  c45::DecisionNode nd;
  nd.test = test;
  for (const auto& ch : children) nd.weight += ch.weight;
  nd.children = std::move(children);
  return nd;
}

// The advising tree of the published text rendering: a single-branch
// learning-status root over a credit-hour-difference split with nested
// registered-hours splits.
inline c45::Model figure2_model() {
  using c45::AttributeKind;
  using c45::SplitTest;
  using c45::TestKind;

  c45::Model m;
  m.schema = {
      {"Learning Status", AttributeKind::nominal, {"In Study"}},
      {"Different between Gained and Registered Credit hour", AttributeKind::numeric, {}},
      {"Total Registered Credit Hour", AttributeKind::numeric, {}},
      {"Ad_STATUS", AttributeKind::nominal, {"Normal", "Near To Risk", "In Risk"}},
  };
  m.class_index = 3;

  auto reg157 = internal(SplitTest{TestKind::numeric_le, 2, 157.0},
                         {leaf(0, {5.0, 1.0, 0.0}), leaf(1, {0.0, 5.0, 0.0})});
  auto reg137 = internal(SplitTest{TestKind::numeric_le, 2, 137.0},
                         {leaf(1, {0.0, 8.0, 0.0}), std::move(reg157)});
  auto diff36 = internal(SplitTest{TestKind::numeric_le, 1, 36.0},
                         {leaf(0, {161.0, 19.0, 0.0}), std::move(reg137)});
  std::vector<c45::DecisionNode> root_children;
  root_children.push_back(std::move(diff36));
  m.root = internal(SplitTest{TestKind::nominal, 0, 0.0}, std::move(root_children));
  return m;
}

// The In-Study subtree alone: three internal nodes and four leaves.
inline c45::Model figure2_subtree_model() {
  c45::Model full = figure2_model();
  c45::Model m;
  m.schema = full.schema;
  m.class_index = full.class_index;
  m.root = full.root.children[0];
  return m;
}

inline const std::string kFigure2Text =
    "Learning Status = In Study\n"
    "| Different between Gained and Registered Credit hour <= 36: Normal (180.0/19.0)\n"
    "| Different between Gained and Registered Credit hour > 36\n"
    "| | Total Registered Credit Hour <= 137: Near To Risk (8.0)\n"
    "| | Total Registered Credit Hour > 137\n"
    "| | | Total Registered Credit Hour <= 157: Normal (6.0/1.0)\n"
    "| | | Total Registered Credit Hour > 157: Near To Risk (5.0)\n";

/// An instance for the figure-2 schema; the class cell is left missing.
inline c45::Instance advising_instance(double diff, double reg) {
  c45::Instance inst;
  inst.values = {0.0, diff, reg, c45::missing_cell()};
  return inst;
}

}  // namespace fixtures

#endif  // C45_TEST_FIXTURES_HPP
