#ifndef GRADECAST_SYNTHETIC_HPP
#define GRADECAST_SYNTHETIC_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gradecast/gradebook.hpp"

namespace gradecast {

/// Per-class generator profile: mark mean and spread per assessment
/// (percent scale). Scalars in the JSON form broadcast to every assessment.
struct ClassProfile {
  std::vector<double> means;
  std::vector<double> spreads;
};

/// Seeded synthetic gradebook description. Class counts come from
/// largest-remainder apportionment of class_mix over n_students; a class
/// with positive mix that would receive zero students is a config error.
struct SyntheticSpec {
  int n_students = 100;
  std::array<double, 3> class_mix{0.7, 0.2, 0.1};  // G, F, W
  int n_assessments = 8;
  int midpoint_count = 8;
  std::array<ClassProfile, 3> profiles;  // G, F, W
  double noise_std = 0.0;
  std::uint64_t seed = 0;

  static SyntheticSpec parse(const std::string& json_text);
  std::string to_json() const;
};

/// Apportion n seats across the mix by largest remainder; remainder ties
/// resolve to the earlier class.
std::array<int, 3> apportion_counts(int n, const std::array<double, 3>& mix);

/// Draw per-class marks from clipped normal profiles. The final grade is
/// the mean of all assessment marks plus Gaussian noise, clamped into the
/// grade range of the student's assigned class so derived labels always
/// match the apportioned mix. Deterministic by seed.
GradebookTable generate_synthetic(const SyntheticSpec& spec);

}  // namespace gradecast

#endif
