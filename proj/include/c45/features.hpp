#ifndef C45_FEATURES_HPP
#define C45_FEATURES_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "c45/dataset.hpp"

namespace c45 {

/// One course a student registered for. `registered` marks courses counting
/// toward the registered credit hours, `passed` those counting toward the
/// gained credit hours. Invariants: passed implies registered,
/// credit_hours > 0, grade_weight in [0, 5].
struct CourseOutcome {
  std::string course_id;
  double credit_hours = 0.0;
  double grade_weight = 0.0;
  bool registered = false;
  bool passed = false;
};

/// One row of the advising table: identity, credit-hour counters, GPAs and
/// the advisory status label.
struct StudentRecord {
  double sid = 0.0;
  double total_reg_ch = 0.0;
  double total_gain_ch = 0.0;
  double total_cur_ch = 0.0;
  double diff_gr_ch = 0.0;
  double sem_gpa = 0.0;
  double cum_gpa = 0.0;
  std::string catg;
  std::string l_status;
  std::string gen;
  std::string plan_study;
  std::string ad_status;
};

enum class GpaBand { below_2, mid_2_to_2_75, above_2_75 };

/// Registered minus gained credit hours over a course list; empty list is 0.
double credit_hour_difference(const std::vector<CourseOutcome>& courses);

/// Credit-hour-weighted grade average over the listed courses.
/// Throws DataError on an empty list.
double semester_gpa(const std::vector<CourseOutcome>& courses);

/// Three-band grouping on the 5-point scale: < 2, [2, 2.75], > 2.75.
/// Throws DataError when gpa is outside [0, 5].
GpaBand gpa_band(double gpa);

/// Builds the classification dataset: the advising table minus
/// {SId, GEN, Sem_GPA, CUM_GPA}, Diff_G_R_C_H recomputed from the credit-hour
/// counters, class set to Ad_STATUS.
Dataset derive_student_dataset(const std::vector<StudentRecord>& records);

/// Deterministic synthetic advising records. Labels follow a planted rule
/// set on L_STATUS, Diff_G_R_C_H and Total_Reg_C_H; each label is then
/// flipped to a uniformly random different one with probability noise_rate.
std::vector<StudentRecord> generate_synthetic(std::size_t n, std::uint64_t seed,
                                              double noise_rate);

/// CSV with the full advising table schema (one column per StudentRecord field).
std::string records_to_csv(const std::vector<StudentRecord>& records);

/// Raw course-record CSV: columns studentId,courseId,creditHours,gradeWeight,
/// registered,passed. Returns per-student course lists in first-appearance
/// order of studentId.
std::vector<std::pair<double, std::vector<CourseOutcome>>> parse_course_csv(
    std::istream& in);

/// Aggregates raw course records into advising-table rows (one per student).
/// Columns that cannot be derived from course data are emitted as missing.
std::string derive_features_csv(
    const std::vector<std::pair<double, std::vector<CourseOutcome>>>& students);

}  // namespace c45

#endif  // C45_FEATURES_HPP
