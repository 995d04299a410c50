#ifndef C45_DATASET_HPP
#define C45_DATASET_HPP

#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace c45 {

/// Raised for malformed input data, schema violations, and bad dataset
/// operations (unknown attributes, missing class labels, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for malformed or inconsistent serialized models.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class AttributeKind { nominal, numeric };

struct AttributeSpec {
  std::string name;
  AttributeKind kind = AttributeKind::numeric;
  std::vector<std::string> values;  // nominal only, declaration order

  bool is_nominal() const { return kind == AttributeKind::nominal; }
  bool is_numeric() const { return kind == AttributeKind::numeric; }

  /// Index of a nominal value, or -1 when absent.
  int value_index(std::string_view v) const;

  bool operator==(const AttributeSpec&) const = default;
};

// A cell is a double: the numeric value for numeric attributes, the
// value-list index for nominal attributes, NaN for a missing value.
inline double missing_cell() { return std::numeric_limits<double>::quiet_NaN(); }
inline bool is_missing(double cell) { return std::isnan(cell); }

struct Instance {
  std::vector<double> values;
  double weight = 1.0;
};

/// Cell-wise equality where missing == missing.
bool same_instance(const Instance& a, const Instance& b);

struct Dataset {
  std::vector<AttributeSpec> schema;
  std::vector<Instance> instances;
  std::optional<std::size_t> class_index;

  std::size_t attribute_index(std::string_view name) const;  // throws DataError
  const AttributeSpec& class_spec() const;                   // throws if unset
  double total_weight() const;
};

bool same_dataset(const Dataset& a, const Dataset& b);

/// Per-class training weight, in class value-list order. Classes that carry
/// no weight are still listed.
struct ClassFrequency {
  std::vector<std::string> classes;
  std::vector<double> weights;
  double total = 0.0;

  /// Heaviest class; ties go to the earliest declared value.
  std::size_t majority() const;
  double weight_of(std::string_view cls) const;
};

enum class DataFormat { csv, attribute_declared };

// Parsing and serialization.
//
// CSV dialect: comma separated, first row is the header, "?" marks a missing
// cell, "." is the decimal separator, no quoting. A column is numeric iff
// every non-missing cell parses as a finite real; otherwise it is nominal
// with values in first-appearance order.
//
// The attribute-declared format is a minimal ARFF subset: a header of
// `@attribute <name> numeric` / `@attribute <name> {v1,v2,...}` lines,
// then `@data`, then CSV rows.
Dataset parse_dataset(std::istream& in, DataFormat format);
Dataset parse_dataset(const std::string& text, DataFormat format);
std::string serialize_dataset(const Dataset& ds, DataFormat format);

/// Reads a dataset from a file, sniffing the format: content whose first
/// non-blank line starts with '@' is attribute-declared, otherwise CSV.
Dataset load_dataset(const std::string& path);

// Pure dataset operations; each returns a new value.
Dataset assign_class(const Dataset& ds, const std::string& name);
Dataset remove_attributes(const Dataset& ds, const std::vector<std::string>& names);
ClassFrequency class_frequency(const Dataset& ds);

}  // namespace c45

#endif  // C45_DATASET_HPP
