#include "c45/dataset.hpp"

#include "text_util.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

namespace c45 {

using detail::format_number;
using detail::parse_number;
using detail::split_cells;
using detail::trim;

namespace {

void check_schema(const std::vector<AttributeSpec>& schema) {
  std::unordered_set<std::string> names;
  for (const auto& a : schema) {
    if (a.name.empty()) throw DataError("attribute with empty name");
    if (!names.insert(a.name).second)
      throw DataError("duplicate attribute name: " + a.name);
    if (a.is_nominal()) {
      if (a.values.empty())
        throw DataError("nominal attribute '" + a.name + "' has no values");
      std::unordered_set<std::string> vs;
      for (const auto& v : a.values)
        if (!vs.insert(v).second)
          throw DataError("duplicate value '" + v + "' in attribute '" + a.name + "'");
    }
  }
}

std::vector<std::string> read_nonblank_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    lines.emplace_back(trim(line));
  }
  return lines;
}

// Turns raw string rows into typed instances. Columns without a declared
// kind (CSV) are inferred: numeric iff every non-missing cell parses.
Dataset build_dataset(std::vector<AttributeSpec> schema,
                      const std::vector<std::vector<std::string>>& rows,
                      bool kinds_declared) {
  const std::size_t ncols = schema.size();
  std::vector<bool> numeric_ok(ncols, true);
  if (!kinds_declared) {
    for (const auto& row : rows)
      for (std::size_t c = 0; c < ncols; ++c) {
        double v;
        if (row[c] != "?" && !parse_number(row[c], v)) numeric_ok[c] = false;
      }
    for (std::size_t c = 0; c < ncols; ++c)
      schema[c].kind = numeric_ok[c] ? AttributeKind::numeric : AttributeKind::nominal;
  }

  Dataset ds;
  ds.schema = std::move(schema);
  ds.instances.reserve(rows.size());
  for (const auto& row : rows) {
    Instance inst;
    inst.values.reserve(ncols);
    for (std::size_t c = 0; c < ncols; ++c) {
      auto& attr = ds.schema[c];
      const std::string& cell = row[c];
      if (cell == "?") {
        inst.values.push_back(missing_cell());
      } else if (attr.is_numeric()) {
        double v;
        if (!parse_number(cell, v))
          throw DataError("cell '" + cell + "' is not numeric in attribute '" +
                          attr.name + "'");
        inst.values.push_back(v);
      } else {
        int idx = attr.value_index(cell);
        if (idx < 0) {
          if (kinds_declared)
            throw DataError("value '" + cell + "' not declared for attribute '" +
                            attr.name + "'");
          idx = static_cast<int>(attr.values.size());
          attr.values.push_back(cell);  // first-appearance order
        }
        inst.values.push_back(static_cast<double>(idx));
      }
    }
    ds.instances.push_back(std::move(inst));
  }
  check_schema(ds.schema);
  return ds;
}

Dataset parse_csv(std::istream& in) {
  auto lines = read_nonblank_lines(in);
  if (lines.empty()) throw DataError("empty data stream");
  auto header = split_cells(lines[0]);
  std::vector<AttributeSpec> schema;
  for (auto& name : header) schema.push_back({name, AttributeKind::nominal, {}});

  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto cells = split_cells(lines[i]);
    if (cells.size() != header.size())
      throw DataError("row " + std::to_string(i + 1) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(header.size()));
    rows.push_back(std::move(cells));
  }
  return build_dataset(std::move(schema), rows, /*kinds_declared=*/false);
}

Dataset parse_declared(std::istream& in) {
  auto lines = read_nonblank_lines(in);
  if (lines.empty()) throw DataError("empty data stream");

  std::vector<AttributeSpec> schema;
  std::size_t i = 0;
  bool saw_data = false;
  for (; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (line == "@data") {
      saw_data = true;
      ++i;
      break;
    }
    const std::string_view kw = "@attribute";
    if (line.substr(0, kw.size()) != kw)
      throw DataError("expected @attribute or @data, got: " + std::string(line));
    auto rest = trim(line.substr(kw.size()));
    if (rest.empty()) throw DataError("@attribute without a name");
    AttributeSpec attr;
    if (rest.back() == '}') {
      auto brace = rest.find('{');
      if (brace == std::string_view::npos)
        throw DataError("malformed nominal declaration: " + std::string(line));
      attr.name = std::string(trim(rest.substr(0, brace)));
      attr.kind = AttributeKind::nominal;
      auto body = rest.substr(brace + 1, rest.size() - brace - 2);
      for (auto& v : split_cells(body)) attr.values.push_back(std::move(v));
    } else if (rest.size() > 8 && rest.substr(rest.size() - 7) == "numeric" &&
               (rest[rest.size() - 8] == ' ' || rest[rest.size() - 8] == '\t')) {
      attr.name = std::string(trim(rest.substr(0, rest.size() - 8)));
      attr.kind = AttributeKind::numeric;
    } else {
      throw DataError("malformed attribute declaration: " + std::string(line));
    }
    schema.push_back(std::move(attr));
  }
  if (!saw_data) throw DataError("missing @data section");
  if (schema.empty()) throw DataError("no attribute declarations");
  check_schema(schema);

  std::vector<std::vector<std::string>> rows;
  for (; i < lines.size(); ++i) {
    auto cells = split_cells(lines[i]);
    if (cells.size() != schema.size())
      throw DataError("data row has " + std::to_string(cells.size()) +
                      " cells, expected " + std::to_string(schema.size()));
    rows.push_back(std::move(cells));
  }
  return build_dataset(std::move(schema), rows, /*kinds_declared=*/true);
}

std::string cell_text(const Dataset& ds, std::size_t col, double cell) {
  if (is_missing(cell)) return "?";
  const auto& attr = ds.schema[col];
  if (attr.is_numeric()) return format_number(cell);
  auto idx = static_cast<std::size_t>(cell);
  if (idx >= attr.values.size())
    throw DataError("nominal index out of range in attribute '" + attr.name + "'");
  return attr.values[idx];
}

}  // namespace

int AttributeSpec::value_index(std::string_view v) const {
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] == v) return static_cast<int>(i);
  return -1;
}

bool same_instance(const Instance& a, const Instance& b) {
  if (a.weight != b.weight || a.values.size() != b.values.size()) return false;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    bool ma = is_missing(a.values[i]), mb = is_missing(b.values[i]);
    if (ma != mb) return false;
    if (!ma && a.values[i] != b.values[i]) return false;
  }
  return true;
}

std::size_t Dataset::attribute_index(std::string_view name) const {
  for (std::size_t i = 0; i < schema.size(); ++i)
    if (schema[i].name == name) return i;
  throw DataError("unknown attribute: " + std::string(name));
}

const AttributeSpec& Dataset::class_spec() const {
  if (!class_index) throw DataError("no class attribute assigned");
  return schema[*class_index];
}

double Dataset::total_weight() const {
  double t = 0.0;
  for (const auto& inst : instances) t += inst.weight;
  return t;
}

bool same_dataset(const Dataset& a, const Dataset& b) {
  if (a.schema != b.schema || a.class_index != b.class_index) return false;
  if (a.instances.size() != b.instances.size()) return false;
  for (std::size_t i = 0; i < a.instances.size(); ++i)
    if (!same_instance(a.instances[i], b.instances[i])) return false;
  return true;
}

std::size_t ClassFrequency::majority() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < weights.size(); ++i)
    if (weights[i] > weights[best]) best = i;
  return best;
}

double ClassFrequency::weight_of(std::string_view cls) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i] == cls) return weights[i];
  throw DataError("unknown class value: " + std::string(cls));
}

Dataset parse_dataset(std::istream& in, DataFormat format) {
  return format == DataFormat::csv ? parse_csv(in) : parse_declared(in);
}

Dataset parse_dataset(const std::string& text, DataFormat format) {
  std::istringstream in(text);
  return parse_dataset(in, format);
}

std::string serialize_dataset(const Dataset& ds, DataFormat format) {
  std::string out;
  if (format == DataFormat::attribute_declared) {
    for (const auto& attr : ds.schema) {
      out += "@attribute " + attr.name + " ";
      if (attr.is_numeric()) {
        out += "numeric";
      } else {
        out += "{";
        for (std::size_t i = 0; i < attr.values.size(); ++i) {
          if (i) out += ",";
          out += attr.values[i];
        }
        out += "}";
      }
      out += "\n";
    }
    out += "@data\n";
  } else {
    for (std::size_t c = 0; c < ds.schema.size(); ++c) {
      if (c) out += ",";
      out += ds.schema[c].name;
    }
    out += "\n";
  }
  for (const auto& inst : ds.instances) {
    for (std::size_t c = 0; c < ds.schema.size(); ++c) {
      if (c) out += ",";
      out += cell_text(ds, c, inst.values[c]);
    }
    out += "\n";
  }
  return out;
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file: " + path);
  std::string first;
  while (std::getline(in, first) && trim(first).empty()) {
  }
  bool declared = !trim(first).empty() && trim(first).front() == '@';
  in.clear();
  in.seekg(0);
  return parse_dataset(in, declared ? DataFormat::attribute_declared : DataFormat::csv);
}

Dataset assign_class(const Dataset& ds, const std::string& name) {
  Dataset out = ds;
  auto idx = ds.attribute_index(name);
  if (!ds.schema[idx].is_nominal())
    throw DataError("class attribute must be nominal: " + name);
  out.class_index = idx;
  return out;
}

Dataset remove_attributes(const Dataset& ds, const std::vector<std::string>& names) {
  std::vector<bool> drop(ds.schema.size(), false);
  for (const auto& name : names) {
    auto idx = ds.attribute_index(name);
    if (ds.class_index && *ds.class_index == idx)
      throw DataError("cannot remove the class attribute: " + name);
    drop[idx] = true;
  }
  Dataset out;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < ds.schema.size(); ++i) {
    if (drop[i]) continue;
    if (ds.class_index && *ds.class_index == i) out.class_index = out.schema.size();
    keep.push_back(i);
    out.schema.push_back(ds.schema[i]);
  }
  out.instances.reserve(ds.instances.size());
  for (const auto& inst : ds.instances) {
    Instance trimmed;
    trimmed.weight = inst.weight;
    trimmed.values.reserve(keep.size());
    for (auto i : keep) trimmed.values.push_back(inst.values[i]);
    out.instances.push_back(std::move(trimmed));
  }
  return out;
}

ClassFrequency class_frequency(const Dataset& ds) {
  const auto& cls = ds.class_spec();
  ClassFrequency freq;
  freq.classes = cls.values;
  freq.weights.assign(cls.values.size(), 0.0);
  for (const auto& inst : ds.instances) {
    double cell = inst.values[*ds.class_index];
    if (is_missing(cell)) throw DataError("instance with missing class value");
    freq.weights[static_cast<std::size_t>(cell)] += inst.weight;
    freq.total += inst.weight;
  }
  return freq;
}

}  // namespace c45
