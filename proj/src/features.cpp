#include "c45/features.hpp"

#include "text_util.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <random>

namespace c45 {

using detail::format_number;
using detail::parse_number;
using detail::split_cells;
using detail::trim;

namespace {

constexpr const char* kAdStatusValues[] = {"Normal", "Near To Risk", "In Risk"};

void check_course(const CourseOutcome& c) {
  if (c.credit_hours <= 0.0)
    throw DataError("course '" + c.course_id + "' has non-positive credit hours");
  if (c.grade_weight < 0.0 || c.grade_weight > 5.0)
    throw DataError("course '" + c.course_id + "' grade weight outside [0,5]");
  if (c.passed && !c.registered)
    throw DataError("course '" + c.course_id + "' passed but not registered");
}

std::string planted_label(const std::string& l_status, double diff, double reg) {
  if (l_status == "Graduated") return "Normal";
  if (l_status == "Dismissed") return "In Risk";
  if (diff <= 36.0) return "Normal";
  if (reg <= 137.0) return "Near To Risk";
  if (reg <= 157.0) return "Normal";
  return "Near To Risk";
}

// Portable uniform draws; std::uniform_int_distribution is
// implementation-defined, mt19937_64's output sequence is not.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

double draw_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool parse_bool(const std::string& token, const std::string& col) {
  std::string t;
  for (char c : token) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "1" || t == "true" || t == "yes") return true;
  if (t == "0" || t == "false" || t == "no") return false;
  throw DataError("cell '" + token + "' in column '" + col + "' is not a boolean");
}

}  // namespace

double credit_hour_difference(const std::vector<CourseOutcome>& courses) {
  double registered = 0.0, gained = 0.0;
  for (const auto& c : courses) {
    if (c.registered) registered += c.credit_hours;
    if (c.passed) gained += c.credit_hours;
  }
  return registered - gained;
}

double semester_gpa(const std::vector<CourseOutcome>& courses) {
  if (courses.empty()) throw DataError("semester GPA of an empty course list");
  double points = 0.0, hours = 0.0;
  for (const auto& c : courses) {
    points += c.grade_weight * c.credit_hours;
    hours += c.credit_hours;
  }
  return points / hours;
}

GpaBand gpa_band(double gpa) {
  if (gpa < 0.0 || gpa > 5.0)
    throw DataError("GPA outside the 5-point scale: " + format_number(gpa));
  if (gpa < 2.0) return GpaBand::below_2;
  if (gpa <= 2.75) return GpaBand::mid_2_to_2_75;
  return GpaBand::above_2_75;
}

Dataset derive_student_dataset(const std::vector<StudentRecord>& records) {
  if (records.empty()) throw DataError("no student records");

  Dataset ds;
  ds.schema = {
      {"Total_Reg_C_H", AttributeKind::numeric, {}},
      {"Total_Gain_C_H", AttributeKind::numeric, {}},
      {"Total_Cur_C_H", AttributeKind::numeric, {}},
      {"Diff_G_R_C_H", AttributeKind::numeric, {}},
      {"Catg", AttributeKind::nominal, {}},
      {"L_STATUS", AttributeKind::nominal, {}},
      {"Ad_STATUS",
       AttributeKind::nominal,
       {kAdStatusValues[0], kAdStatusValues[1], kAdStatusValues[2]}},
      {"Plan_Study", AttributeKind::nominal, {}},
  };

  auto open_nominal = [&](std::size_t col, const std::string& v) -> double {
    if (v.empty()) return missing_cell();
    auto& attr = ds.schema[col];
    int idx = attr.value_index(v);
    if (idx < 0) {
      idx = static_cast<int>(attr.values.size());
      attr.values.push_back(v);
    }
    return static_cast<double>(idx);
  };

  for (const auto& r : records) {
    if (r.total_gain_ch > r.total_reg_ch)
      throw DataError("record " + format_number(r.sid) +
                      ": gained hours exceed registered hours");
    int ad = ds.schema[6].value_index(r.ad_status);
    if (ad < 0)
      throw DataError("record " + format_number(r.sid) +
                      ": unknown advisory status '" + r.ad_status + "'");
    Instance inst;
    inst.values = {r.total_reg_ch,
                   r.total_gain_ch,
                   r.total_cur_ch,
                   r.total_reg_ch - r.total_gain_ch,
                   open_nominal(4, r.catg),
                   open_nominal(5, r.l_status),
                   static_cast<double>(ad),
                   open_nominal(7, r.plan_study)};
    ds.instances.push_back(std::move(inst));
  }
  ds.class_index = 6;
  return ds;
}

std::vector<StudentRecord> generate_synthetic(std::size_t n, std::uint64_t seed,
                                              double noise_rate) {
  if (n == 0) throw DataError("cannot generate an empty record set");
  if (noise_rate < 0.0 || noise_rate > 1.0)
    throw DataError("noise rate outside [0,1]");

  std::mt19937_64 rng(seed);
  std::vector<StudentRecord> records;
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    StudentRecord r;
    r.sid = static_cast<double>(1001 + i);
    auto status_roll = draw(rng, 0, 99);
    r.l_status = status_roll < 70 ? "In Study" : status_roll < 88 ? "Graduated" : "Dismissed";
    r.total_reg_ch = static_cast<double>(draw(rng, 12, 180));
    r.total_gain_ch = static_cast<double>(draw(rng, 0, static_cast<std::uint64_t>(r.total_reg_ch)));
    r.diff_gr_ch = r.total_reg_ch - r.total_gain_ch;
    r.total_cur_ch = static_cast<double>(draw(rng, 3, 21));
    r.sem_gpa = static_cast<double>(draw(rng, 0, 500)) / 100.0;
    r.cum_gpa = static_cast<double>(draw(rng, 0, 500)) / 100.0;
    r.catg = draw(rng, 0, 1) == 0 ? "A" : "B";
    r.gen = draw(rng, 0, 1) == 0 ? "M" : "F";
    switch (draw(rng, 0, 2)) {
      case 0: r.plan_study = "Old"; break;
      case 1: r.plan_study = "New"; break;
      default: r.plan_study = "Developed"; break;
    }
    r.ad_status = planted_label(r.l_status, r.diff_gr_ch, r.total_reg_ch);
    if (draw_unit(rng) < noise_rate) {
      // replace with one of the two other labels, uniformly
      std::vector<std::string> others;
      for (const char* v : kAdStatusValues)
        if (v != r.ad_status) others.push_back(v);
      r.ad_status = others[draw(rng, 0, 1)];
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::string records_to_csv(const std::vector<StudentRecord>& records) {
  std::string out =
      "SId,Total_Reg_C_H,Total_Gain_C_H,Total_Cur_C_H,Sem_GPA,CUM_GPA,"
      "Diff_G_R_C_H,Catg,L_STATUS,GEN,Ad_STATUS,Plan_Study\n";
  auto cell = [](const std::string& s) { return s.empty() ? std::string("?") : s; };
  for (const auto& r : records) {
    out += format_number(r.sid) + "," + format_number(r.total_reg_ch) + "," +
           format_number(r.total_gain_ch) + "," + format_number(r.total_cur_ch) +
           "," + format_number(r.sem_gpa) + "," + format_number(r.cum_gpa) +
           "," + format_number(r.diff_gr_ch) + "," + cell(r.catg) + "," +
           cell(r.l_status) + "," + cell(r.gen) + "," + cell(r.ad_status) + "," +
           cell(r.plan_study) + "\n";
  }
  return out;
}

std::vector<std::pair<double, std::vector<CourseOutcome>>> parse_course_csv(
    std::istream& in) {
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line))
    if (!trim(line).empty()) {
      header = split_cells(trim(line));
      break;
    }
  const std::vector<std::string> expected = {"studentId", "courseId", "creditHours",
                                             "gradeWeight", "registered", "passed"};
  if (header != expected)
    throw DataError(
        "course CSV header must be studentId,courseId,creditHours,gradeWeight,"
        "registered,passed");

  std::vector<std::pair<double, std::vector<CourseOutcome>>> students;
  std::size_t row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (trim(line).empty()) continue;
    auto cells = split_cells(trim(line));
    if (cells.size() != expected.size())
      throw DataError("course row " + std::to_string(row_no) + " has " +
                      std::to_string(cells.size()) + " cells, expected 6");
    double sid;
    if (!parse_number(cells[0], sid))
      throw DataError("course row " + std::to_string(row_no) +
                      ": studentId is not numeric");
    CourseOutcome c;
    c.course_id = cells[1];
    if (!parse_number(cells[2], c.credit_hours))
      throw DataError("course row " + std::to_string(row_no) +
                      ": creditHours is not numeric");
    if (!parse_number(cells[3], c.grade_weight))
      throw DataError("course row " + std::to_string(row_no) +
                      ": gradeWeight is not numeric");
    c.registered = parse_bool(cells[4], "registered");
    c.passed = parse_bool(cells[5], "passed");
    check_course(c);

    auto it = std::find_if(students.begin(), students.end(),
                           [&](const auto& s) { return s.first == sid; });
    if (it == students.end()) {
      students.push_back({sid, {std::move(c)}});
    } else {
      it->second.push_back(std::move(c));
    }
  }
  if (students.empty()) throw DataError("no course records");
  return students;
}

std::string derive_features_csv(
    const std::vector<std::pair<double, std::vector<CourseOutcome>>>& students) {
  std::vector<StudentRecord> rows;
  std::string out =
      "SId,Total_Reg_C_H,Total_Gain_C_H,Total_Cur_C_H,Sem_GPA,CUM_GPA,"
      "Diff_G_R_C_H,Catg,L_STATUS,GEN,Ad_STATUS,Plan_Study\n";
  for (const auto& [sid, courses] : students) {
    double reg = 0.0, gain = 0.0;
    for (const auto& c : courses) {
      if (c.registered) reg += c.credit_hours;
      if (c.passed) gain += c.credit_hours;
    }
    out += format_number(sid) + "," + format_number(reg) + "," + format_number(gain) +
           ",?," + format_number(semester_gpa(courses)) + ",?," +
           format_number(credit_hour_difference(courses)) + ",?,?,?,?,?\n";
  }
  return out;
}

}  // namespace c45
